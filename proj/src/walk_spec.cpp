#include "qw1d/walk_spec.hpp"

#include <cstdlib>

namespace qw1d {

WalkSpec::WalkSpec(CoeffSite left_tail, CoeffSite right_tail,
                   std::map<int, CoeffSite> exceptions)
    : left_(left_tail), right_(right_tail), exceptions_(std::move(exceptions)) {}

const CoeffSite& WalkSpec::site(int n) const {
  auto it = exceptions_.find(n);
  if (it != exceptions_.end()) return it->second;
  return n < 0 ? left_ : right_;
}

std::map<int, CoeffSite> WalkSpec::effective_exceptions(
    double r_eps, double phase_eps) const {
  std::map<int, CoeffSite> out;
  for (const auto& [n, site] : exceptions_) {
    const CoeffSite& tail = n < 0 ? left_ : right_;
    if (!site.approx_equal(tail, r_eps, phase_eps)) out.emplace(n, site);
  }
  return out;
}

int WalkSpec::core_radius() const {
  int radius = 0;
  for (const auto& [n, site] : exceptions_) {
    radius = std::max(radius, std::abs(n));
  }
  return radius;
}

bool WalkSpec::strict(int half_width, double r_eps) const {
  for (int n = -half_width; n <= half_width; ++n) {
    double r = site(n).r();
    if (r <= r_eps || r >= 1.0 - r_eps) return false;
  }
  return true;
}

}  // namespace qw1d
