#pragma once

#include <cmath>
#include <complex>

#include "qw1d/tolerances.hpp"

namespace qw1d {

using Complex = std::complex<double>;

inline Complex unit_phasor(double angle) {
  return {std::cos(angle), std::sin(angle)};
}

// Vector in one cell H_n = C^2, components on the standard basis {e1, e2}.
struct C2Vector {
  Complex c1{0.0, 0.0};
  Complex c2{0.0, 0.0};

  double norm2() const { return std::norm(c1) + std::norm(c2); }
  bool is_unit(double eps) const { return std::abs(norm2() - 1.0) <= eps; }
};

// <x, y>, conjugate-linear in x.
inline Complex inner(const C2Vector& x, const C2Vector& y) {
  return std::conj(x.c1) * y.c1 + std::conj(x.c2) * y.c2;
}

// The four site vectors of the walk at one cell: the outgoing pair
// {xi_right, xi_left} and the incoming pair {zeta_to_left, zeta_to_right}.
// Each pair must be an orthonormal basis of C^2.
struct SiteVectors {
  C2Vector xi_right;       // emitted toward n+1
  C2Vector xi_left;        // emitted toward n-1
  C2Vector zeta_to_left;   // absorbed from the column moving to n-1
  C2Vector zeta_to_right;  // absorbed from the column moving to n+1

  bool orthonormal(double eps) const {
    return xi_right.is_unit(eps) && xi_left.is_unit(eps) &&
           zeta_to_left.is_unit(eps) && zeta_to_right.is_unit(eps) &&
           std::abs(inner(xi_right, xi_left)) <= eps &&
           std::abs(inner(zeta_to_left, zeta_to_right)) <= eps;
  }
};

}  // namespace qw1d
