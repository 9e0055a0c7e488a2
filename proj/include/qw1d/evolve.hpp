#pragma once

#include <Eigen/Dense>
#include <map>

#include "qw1d/equivalence.hpp"
#include "qw1d/gauge.hpp"
#include "qw1d/walk_spec.hpp"

namespace qw1d {

struct LatticeState {
  int half_width = 0;
  Eigen::VectorXcd amp;  // dimension 2(2N+1), indexed like WindowOperator

  int index(int site, int spin) const { return 2 * (site + half_width) + spin; }
  Complex at(int site, int spin) const { return amp[index(site, spin)]; }
  double norm2() const { return amp.squaredNorm(); }
};

// site -> probability; zero entries omitted.
using Distribution = std::map<int, double>;

// Per-site column entries of the window, laid out for the banded kernel.
// apply() runs the nearest-neighbor gather
//   out(m,1) = ea(m+1) x(m+1,1) + eb(m+1) x(m+1,2)
//   out(m,2) = ec(m-1) x(m-1,1) + ed(m-1) x(m-1,2)
// in parallel over sites; apply_serial is the plain loop. Boundary columns
// are zeroed, matching the dense operator.
struct BandedWalkOperator {
  int half_width = 0;
  std::vector<Complex> ea, eb, ec, ed;  // indexed by n + half_width

  static BandedWalkOperator from_spec(const WalkSpec& spec, int half_width);

  void apply(const Complex* in, Complex* out) const;
  void apply_serial(const Complex* in, Complex* out) const;

  void step(LatticeState& state) const;  // in place, via apply()
};

LatticeState embed_at_origin(const C2Vector& phi, int half_width);

// U^t (phi at site 0), on the internally sized window N = t + 2. The banded
// kernel is the production path; throws NotUnitState for non-unit phi and
// InternalInconsistency if amplitude leaks into the two outermost sites.
LatticeState evolve(const WalkSpec& spec, const C2Vector& phi, int steps);

// Same evolution through the dense window matrix, serial. Reference
// implementation kept for testing and benchmarking.
LatticeState evolve_reference(const WalkSpec& spec, const C2Vector& phi,
                              int steps);

Distribution distribution(const LatticeState& state);

// Max over t <= t_max and sites of |P_A,t(n) - P_B,t(n)| where both sides
// start from (phiA, phiB) and the gauge maps (A, phiA) to (B, phiB).
// InvalidWitness if the gauge fails its operator identity or phiB != W_0 phiA.
double check_distribution_invariance(const WalkSpec& a, const C2Vector& phi_a,
                                     const WalkSpec& b, const C2Vector& phi_b,
                                     const GaugeTransform& gauge, int t_max);
double check_distribution_invariance(const WalkSpec& a, const C2Vector& phi_a,
                                     const WalkSpec& b, const C2Vector& phi_b,
                                     const EquivalenceWitness& witness,
                                     int t_max);

// Window-level variant, for canonical targets that exist only as window
// operators (general U_{r,theta} with sloped tails). Windows must share the
// gauge's half width.
double check_distribution_invariance_windows(const WindowOperator& a,
                                             const C2Vector& phi_a,
                                             const WindowOperator& b,
                                             const C2Vector& phi_b,
                                             const GaugeTransform& gauge,
                                             int t_max);

}  // namespace qw1d
