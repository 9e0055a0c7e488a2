#pragma once

#include <cmath>

#include "qw1d/c2.hpp"
#include "qw1d/phase.hpp"

namespace qw1d {

// Standard-gauge coefficients of one walk site. The site contributes four
// matrix entries, written in column form (column = departure site n):
//
//   row (n-1, spin1) <- e^{ia} r   [from column (n, spin1)]
//   row (n-1, spin1) <- e^{ib} s   [from column (n, spin2)]
//   row (n+1, spin2) <- e^{ic} s   [from column (n, spin1)]
//   row (n+1, spin2) <- e^{id} r   [from column (n, spin2)]
//
// with s = sqrt(1 - r^2). Unitarity forces a - b = c - d + pi (mod 2pi)
// whenever both r and s are nonzero. At r = 0 the phases a, d multiply zero
// entries and are stored as 0; at r = 1 the same convention applies to b, c.
class CoeffSite {
 public:
  // Validating constructor. Throws ValidationError for r outside [0,1]
  // (beyond rounding slack) and PhaseConstraintViolation when the phase
  // constraint fails beyond tolerances().phase. Phases of vanishing
  // entries are normalized to 0.
  static CoeffSite make(double r, double a, double b, double c, double d);

  // No validation, no conventions. Test scaffolding and callers that
  // construct provably consistent data.
  static CoeffSite make_unchecked(double r, double a, double b, double c,
                                  double d);

  double r() const { return r_; }
  double s() const { return std::sqrt(std::max(0.0, 1.0 - r_ * r_)); }
  Phase a() const { return a_; }
  Phase b() const { return b_; }
  Phase c() const { return c_; }
  Phase d() const { return d_; }

  bool degenerate() const { return r_ == 0.0 || r_ == 1.0; }

  // Phases with the vanishing entries re-chosen so that the constraint
  // a - b = c - d + pi holds exactly: the canonicalization recursions
  // assume it sitewise. For nondegenerate sites these are the stored
  // phases unchanged.
  double a_eff() const { return r_ == 0.0 ? 0.0 : a_.value(); }
  double b_eff() const { return r_ == 1.0 ? 0.0 : b_.value(); }
  double c_eff() const {
    if (r_ == 1.0) return wrap_angle(a_.value() + d_.value() - pi);
    return c_.value();
  }
  double d_eff() const {
    if (r_ == 0.0) return wrap_angle(b_.value() + c_.value() + pi);
    return d_.value();
  }

  // The four column entries.
  Complex entry_a() const { return unit_phasor(a_.value()) * r_; }
  Complex entry_b() const { return unit_phasor(b_.value()) * s(); }
  Complex entry_c() const { return unit_phasor(c_.value()) * s(); }
  Complex entry_d() const { return unit_phasor(d_.value()) * r_; }

  bool approx_equal(const CoeffSite& o, double r_eps, double phase_eps) const;

 private:
  CoeffSite(double r, double a, double b, double c, double d)
      : r_(r), a_(a), b_(b), c_(c), d_(d) {}

  double r_ = 1.0;
  Phase a_, b_, c_, d_;
};

// Step-1 conversion: reads the walk coefficients off one site's vector data.
//   r = |<xi_right, zeta_to_left>|
//   a, b, c, d = arg of <xi_right, zeta_to_left>, <xi_left, zeta_to_left>,
//                <xi_right, zeta_to_right>, <xi_left, zeta_to_right>.
// Throws NonOrthonormal if either pair fails orthonormality, and
// PhaseConstraintViolation if the resulting phases are inconsistent.
CoeffSite coeffs_from_vectors(const SiteVectors& sv);

}  // namespace qw1d
