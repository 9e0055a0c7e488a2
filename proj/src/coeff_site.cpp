#include "qw1d/coeff_site.hpp"

#include <sstream>

#include "qw1d/errors.hpp"

namespace qw1d {

namespace {
constexpr double kRadiusRoundoff = 1e-12;
// Amplitudes at or below this are treated as exact zeros when reading
// coefficients off vector data; their phases are pure rounding noise.
constexpr double kZeroAmp = 1e-12;
}  // namespace

CoeffSite CoeffSite::make(double r, double a, double b, double c, double d) {
  if (r < -kRadiusRoundoff || r > 1.0 + kRadiusRoundoff) {
    std::ostringstream msg;
    msg << "site radius r = " << r << " outside [0, 1]";
    throw ValidationError(msg.str());
  }
  r = std::min(1.0, std::max(0.0, r));

  if (r == 1.0) {
    b = 0.0;
    c = 0.0;
  } else if (r == 0.0) {
    a = 0.0;
    d = 0.0;
  } else {
    // a - b = c - d + pi (mod 2pi), Eq. of the standard gauge
    double residual = phase_distance(a - b, c - d + pi);
    if (residual > tolerances().phase) {
      std::ostringstream msg;
      msg << "phase constraint a-b = c-d+pi violated by " << residual
          << " rad";
      throw PhaseConstraintViolation(msg.str());
    }
  }
  return CoeffSite(r, wrap_angle(a), wrap_angle(b), wrap_angle(c),
                   wrap_angle(d));
}

CoeffSite CoeffSite::make_unchecked(double r, double a, double b, double c,
                                    double d) {
  return CoeffSite(r, wrap_angle(a), wrap_angle(b), wrap_angle(c),
                   wrap_angle(d));
}

bool CoeffSite::approx_equal(const CoeffSite& o, double r_eps,
                             double phase_eps) const {
  if (std::abs(r_ - o.r_) > r_eps) return false;
  // only the phases of nonvanishing entries matter (stored conventions
  // already zero the others)
  if (r_ > 0.0 || o.r_ > 0.0) {
    if (!a_.equal(o.a_, phase_eps) || !d_.equal(o.d_, phase_eps)) return false;
  }
  if (r_ < 1.0 || o.r_ < 1.0) {
    if (!b_.equal(o.b_, phase_eps) || !c_.equal(o.c_, phase_eps)) return false;
  }
  return true;
}

CoeffSite coeffs_from_vectors(const SiteVectors& sv) {
  if (!sv.orthonormal(tolerances().norm)) {
    throw NonOrthonormal(
        "site vectors: xi or zeta pair is not orthonormal within tolerance");
  }

  const Complex pa = inner(sv.xi_right, sv.zeta_to_left);
  const Complex pb = inner(sv.xi_left, sv.zeta_to_left);
  const Complex pc = inner(sv.xi_right, sv.zeta_to_right);
  const Complex pd = inner(sv.xi_left, sv.zeta_to_right);

  const double r = std::min(1.0, std::abs(pa));
  const double s = std::sqrt(std::max(0.0, 1.0 - r * r));

  // arg() of a vanishing inner product is noise; apply the storage
  // convention directly.
  const bool r_zero = r <= kZeroAmp;
  const bool s_zero = s <= kZeroAmp;
  const double a = r_zero ? 0.0 : std::arg(pa);
  const double d = r_zero ? 0.0 : std::arg(pd);
  const double b = s_zero ? 0.0 : std::arg(pb);
  const double c = s_zero ? 0.0 : std::arg(pc);

  const double rr = r_zero ? 0.0 : (s_zero ? 1.0 : r);
  return CoeffSite::make(rr, a, b, c, d);
}

}  // namespace qw1d
