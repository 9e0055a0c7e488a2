#include "qw1d/tolerances.hpp"

namespace qw1d {

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

}  // namespace qw1d
