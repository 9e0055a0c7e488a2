#include "qw1d/window.hpp"

#include <Eigen/SVD>
#include <sstream>

#include "qw1d/errors.hpp"
#include "qw1d/phase.hpp"

namespace qw1d {

WindowOperator::WindowOperator(int half_width, Eigen::MatrixXcd matrix)
    : half_width_(half_width), mat_(std::move(matrix)) {
  if (mat_.rows() != dim() || mat_.cols() != dim()) {
    throw InternalInconsistency("window matrix dimension mismatch");
  }
}

namespace {

void require_half_width(int half_width) {
  if (half_width < 2) {
    std::ostringstream msg;
    msg << "window half width " << half_width << " < 2";
    throw WindowTooSmall(msg.str());
  }
}

}  // namespace

WindowOperator build_window_operator(const WalkSpec& spec, int half_width) {
  require_half_width(half_width);
  const int dim = 2 * (2 * half_width + 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  auto idx = [half_width](int site, int spin) {
    return 2 * (site + half_width) + spin;
  };
  // interior columns only; +-N stay zero-padded
  for (int n = -half_width + 1; n <= half_width - 1; ++n) {
    const CoeffSite& cs = spec.site(n);
    m(idx(n - 1, 0), idx(n, 0)) = cs.entry_a();
    m(idx(n - 1, 0), idx(n, 1)) = cs.entry_b();
    m(idx(n + 1, 1), idx(n, 0)) = cs.entry_c();
    m(idx(n + 1, 1), idx(n, 1)) = cs.entry_d();
  }
  return WindowOperator(half_width, std::move(m));
}

WindowOperator build_window_rtheta(const std::vector<double>& r,
                                   const std::vector<double>& theta,
                                   int half_width) {
  require_half_width(half_width);
  const std::size_t sites = 2 * half_width + 1;
  if (r.size() != sites || theta.size() != sites) {
    throw InternalInconsistency("r/theta profile length != window sites");
  }
  const int dim = 2 * (2 * half_width + 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  auto idx = [half_width](int site, int spin) {
    return 2 * (site + half_width) + spin;
  };
  for (int n = -half_width + 1; n <= half_width - 1; ++n) {
    const double rn = r[n + half_width];
    const double sn = std::sqrt(std::max(0.0, 1.0 - rn * rn));
    const double th = theta[n + half_width];
    m(idx(n - 1, 0), idx(n, 0)) = rn;
    m(idx(n - 1, 0), idx(n, 1)) = unit_phasor(th) * sn;
    m(idx(n + 1, 1), idx(n, 0)) = -unit_phasor(-th) * sn;
    m(idx(n + 1, 1), idx(n, 1)) = rn;
  }
  return WindowOperator(half_width, std::move(m));
}

double check_unitary(const WindowOperator& op) {
  const int n = op.half_width();
  const Eigen::MatrixXcd& u = op.matrix();
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  // restrict to interior columns: indices of sites in (-N, N)
  const int lo = op.index(-n + 1, 0);
  const int hi = op.index(n - 1, 1);
  double dev = 0.0;
  for (int i = lo; i <= hi; ++i) {
    for (int j = lo; j <= hi; ++j) {
      const Complex expected = i == j ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      dev = std::max(dev, std::abs(gram(i, j) - expected));
    }
  }
  return dev;
}

double interior_max_diff(const WindowOperator& x, const WindowOperator& y) {
  if (x.half_width() != y.half_width()) {
    throw InternalInconsistency("window size mismatch in comparison");
  }
  const int n = x.half_width();
  double dev = 0.0;
  for (int col = -n + 1; col <= n - 1; ++col) {
    for (int spin = 0; spin < 2; ++spin) {
      const int j = x.index(col, spin);
      for (int i = 0; i < x.dim(); ++i) {
        dev = std::max(dev, std::abs(x.matrix()(i, j) - y.matrix()(i, j)));
      }
    }
  }
  return dev;
}

double block_second_singular_value(const WindowOperator& op, int row_site,
                                   int col_site) {
  Eigen::Matrix2cd block;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      block(i, j) = op.entry(row_site, i, col_site, j);
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(block);
  return svd.singularValues()(1);
}

}  // namespace qw1d
