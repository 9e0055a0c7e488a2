#pragma once

namespace qw1d {

// Numerical slack for the exact-arithmetic identities the library checks.
// All values are overridable (CLI reads QW1D_TOLERANCE_PHASE); set them
// before spawning parallel work, reads are unsynchronized.
struct Tolerances {
  double norm = 1e-12;          // unit-vector / orthonormality deviation
  double phase = 1e-9;          // phase congruences mod 2pi
  double unitary = 1e-12;       // window unitarity deviation
  double radius = 1e-9;         // radial parameter equality and degeneracy
  double gauge = 1e-10;         // gauge identity / witness verification
  double distribution = 1e-10;  // per-site probability comparison
};

Tolerances& tolerances();

}  // namespace qw1d
