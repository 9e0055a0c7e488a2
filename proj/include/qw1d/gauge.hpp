#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "qw1d/c2.hpp"
#include "qw1d/window.hpp"

namespace qw1d {

// Block-diagonal unitary W = (+) W_n together with a global phase lambda.
// Acts on window operators as M -> e^{i lambda} W M W^* and on states as
// phi -> W phi (no global phase; states are rays).
class GaugeTransform {
 public:
  static GaugeTransform identity(int half_width);
  // W_n = diag(e^{i u_n}, e^{i v_n}), u/v indexed by n + N.
  static GaugeTransform diagonal(int half_width, double global_phase,
                                 std::vector<double> u, std::vector<double> v);

  int half_width() const { return half_width_; }
  double global_phase() const { return global_phase_; }
  const Eigen::Matrix2cd& block(int site) const {
    return blocks_[site + half_width_];
  }

  bool blocks_unitary(double eps) const;

  WindowOperator apply(const WindowOperator& op) const;
  C2Vector apply_block(int site, const C2Vector& phi) const;

  // Multiplies every block by the given unit scalar (a rephasing of W that
  // leaves the operator action unchanged).
  void rescale_blocks(Complex unit);

  GaugeTransform(int half_width, double global_phase,
                 std::vector<Eigen::Matrix2cd> blocks);

 private:
  int half_width_;
  double global_phase_;
  std::vector<Eigen::Matrix2cd> blocks_;
};

// The phase bookkeeping behind the general canonicalization: the two
// telescoping sequences g, h, the combined k_n = b_n - g_{n-1} + h_n, and
// the halved slope ell = k_1 / 2. Normalizations g_0 = 0, k_0 = 0.
struct GaugeDerivation {
  std::map<int, double> g;
  std::map<int, double> h;
  std::map<int, double> k;
  double ell = 0.0;
};

}  // namespace qw1d
