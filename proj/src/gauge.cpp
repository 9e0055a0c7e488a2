#include "qw1d/gauge.hpp"

#include "qw1d/errors.hpp"
#include "qw1d/phase.hpp"

namespace qw1d {

GaugeTransform::GaugeTransform(int half_width, double global_phase,
                               std::vector<Eigen::Matrix2cd> blocks)
    : half_width_(half_width),
      global_phase_(wrap_angle(global_phase)),
      blocks_(std::move(blocks)) {
  if (blocks_.size() != std::size_t(2 * half_width_ + 1)) {
    throw InternalInconsistency("gauge block count != window sites");
  }
}

GaugeTransform GaugeTransform::identity(int half_width) {
  std::vector<Eigen::Matrix2cd> blocks(2 * half_width + 1,
                                       Eigen::Matrix2cd::Identity());
  return GaugeTransform(half_width, 0.0, std::move(blocks));
}

GaugeTransform GaugeTransform::diagonal(int half_width, double global_phase,
                                        std::vector<double> u,
                                        std::vector<double> v) {
  const std::size_t sites = 2 * half_width + 1;
  if (u.size() != sites || v.size() != sites) {
    throw InternalInconsistency("gauge phase vectors != window sites");
  }
  std::vector<Eigen::Matrix2cd> blocks(sites);
  for (std::size_t i = 0; i < sites; ++i) {
    blocks[i] = Eigen::Matrix2cd::Zero();
    blocks[i](0, 0) = unit_phasor(u[i]);
    blocks[i](1, 1) = unit_phasor(v[i]);
  }
  return GaugeTransform(half_width, global_phase, std::move(blocks));
}

bool GaugeTransform::blocks_unitary(double eps) const {
  for (const auto& w : blocks_) {
    if (((w.adjoint() * w) - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() >
        eps) {
      return false;
    }
  }
  return true;
}

WindowOperator GaugeTransform::apply(const WindowOperator& op) const {
  if (op.half_width() != half_width_) {
    throw InternalInconsistency("gauge/window size mismatch");
  }
  const int dim = op.dim();
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = -half_width_; n <= half_width_; ++n) {
    const Eigen::Matrix2cd& bl = block(n);
    const int i = op.index(n, 0);
    w.block<2, 2>(i, i) = bl;
  }
  Eigen::MatrixXcd out =
      unit_phasor(global_phase_) * (w * op.matrix() * w.adjoint());
  return WindowOperator(half_width_, std::move(out));
}

C2Vector GaugeTransform::apply_block(int site, const C2Vector& phi) const {
  const Eigen::Matrix2cd& w = block(site);
  Eigen::Vector2cd x(phi.c1, phi.c2);
  Eigen::Vector2cd y = w * x;
  return C2Vector{y(0), y(1)};
}

void GaugeTransform::rescale_blocks(Complex unit) {
  for (auto& w : blocks_) w *= unit;
}

}  // namespace qw1d
