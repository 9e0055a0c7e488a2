#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qw1d/walk_spec.hpp"

namespace qw1d {

// Finite realization of the walk on sites [-N, N]: a dense complex matrix
// of dimension 2(2N+1), indexed by (site, spin). Columns at the boundary
// sites +-N are zero-padded; all contracts are on interior columns.
class WindowOperator {
 public:
  WindowOperator(int half_width, Eigen::MatrixXcd matrix);

  int half_width() const { return half_width_; }
  int dim() const { return 2 * (2 * half_width_ + 1); }

  // spin is 0 (e1) or 1 (e2)
  int index(int site, int spin) const {
    return 2 * (site + half_width_) + spin;
  }
  bool in_window(int site) const {
    return site >= -half_width_ && site <= half_width_;
  }
  bool interior(int site) const {
    return site > -half_width_ && site < half_width_;
  }

  const Eigen::MatrixXcd& matrix() const { return mat_; }
  Complex entry(int row_site, int row_spin, int col_site, int col_spin) const {
    return mat_(index(row_site, row_spin), index(col_site, col_spin));
  }

 private:
  int half_width_;
  Eigen::MatrixXcd mat_;
};

// Realizes the spec's coefficients on [-N, N]. Throws WindowTooSmall for
// N < 2.
WindowOperator build_window_operator(const WalkSpec& spec, int half_width);

// Canonical U_{r,theta} window from per-site profiles indexed by n + N,
// size 2N+1 each. Site n carries column entries
//   (n-1,1) <- r_n,  (n-1,1) <- e^{i theta_n} s_n,
//   (n+1,2) <- -e^{-i theta_n} s_n,  (n+1,2) <- r_n.
WindowOperator build_window_rtheta(const std::vector<double>& r,
                                   const std::vector<double>& theta,
                                   int half_width);

// Max-norm deviation of (U^* U - I) over interior columns.
double check_unitary(const WindowOperator& op);

// Max-norm entry difference, restricted to interior columns of both.
double interior_max_diff(const WindowOperator& x, const WindowOperator& y);

// Second singular value of the 2x2 block (row_site, col_site); the walk
// definition demands rank exactly 1 on nonzero blocks.
double block_second_singular_value(const WindowOperator& op, int row_site,
                                   int col_site);

}  // namespace qw1d
