#pragma once

#include <optional>
#include <vector>

#include "qw1d/canonical.hpp"
#include "qw1d/gauge.hpp"
#include "qw1d/walk_spec.hpp"

namespace qw1d {

// Diagonal gauge witness W_n = diag(e^{i u_n}, e^{i v_n}) with global phase
// lambda, realizing e^{i lambda} W U_A W^* = U_B on a window.
struct EquivalenceWitness {
  int half_width = 0;
  double lambda = 0.0;
  std::vector<double> u;  // indexed by n + half_width
  std::vector<double> v;

  double u_at(int n) const { return u[n + half_width]; }
  double v_at(int n) const { return v[n + half_width]; }

  GaugeTransform to_gauge() const;

  // Additive composition: applying `first` then this.
  EquivalenceWitness after(const EquivalenceWitness& first) const;
};

// Residual of the witness identity on interior entries.
double witness_residual(const WalkSpec& a, const WalkSpec& b,
                        const EquivalenceWitness& w);

// Theorem-side decision: same-class canonical parameters, compared entrywise
// (phases mod 2pi within tolerances().phase, radii within tolerances().radius).
// Throws ClassMismatch for different classes and DegenerateParameters when a
// radial parameter sits on {0,1}; the caller falls back to gauge_search.
bool equivalent_params(const CanonicalForm& c1, const CanonicalForm& c2);

struct GaugeSearchResult {
  std::vector<EquivalenceWitness> witnesses;
  bool degenerate = false;  // some window site has r on {0,1}
};

// Proof-side oracle: entry matching yields linear congruences mod 2pi in
// (lambda, u, v); propagate them through the constraint graph with u_0 = 0,
// solve the cycle equations for lambda, and verify each candidate against
// the window identity. Enumerates all solutions up to max_witnesses; free
// phases (degenerate cases only) are sampled on a 16-point grid when
// `sample_free` is set.
GaugeSearchResult gauge_search_all(const WalkSpec& a, const WalkSpec& b,
                                   int half_width, bool sample_free,
                                   std::size_t max_witnesses = 64);

// First witness if one exists. N >= 3 required.
std::optional<EquivalenceWitness> gauge_search(const WalkSpec& a,
                                               const WalkSpec& b,
                                               int half_width);

// All (lambda, W) with e^{i lambda} W U W^* = U. For strict specs this is
// exactly {(0, I), (pi, (-1)^n I)}; degenerate specs throw
// DegenerateParameters unless allow_degenerate, in which case solution
// families are sampled and the result is best-effort.
std::vector<EquivalenceWitness> commutant(const WalkSpec& spec, int half_width,
                                          bool allow_degenerate = false);

}  // namespace qw1d
