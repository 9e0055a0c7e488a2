#include <catch2/catch_amalgamated.hpp>

#include "qw1d/coeff_site.hpp"
#include "qw1d/errors.hpp"
#include "qw1d/window.hpp"
#include "support/generators.hpp"

using namespace qw1d;
using qw1d::testing::Rng;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

WalkSpec hadamard_spec() {
  CoeffSite h = CoeffSite::make(kInvSqrt2, 0.0, 0.0, 0.0, pi);
  return WalkSpec(h, h);
}

WalkSpec shift_spec() {
  CoeffSite s = CoeffSite::make(1.0, 0.0, 0.0, 0.0, 0.0);
  return WalkSpec(s, s);
}
}  // namespace

TEST_CASE("coeffs_from_vectors reads the Hadamard site") {
  SiteVectors sv;
  sv.xi_right = {1.0, 0.0};
  sv.xi_left = {0.0, 1.0};
  sv.zeta_to_left = {kInvSqrt2, kInvSqrt2};
  sv.zeta_to_right = {kInvSqrt2, -kInvSqrt2};
  CoeffSite cs = coeffs_from_vectors(sv);
  REQUIRE(cs.r() == Catch::Approx(kInvSqrt2).margin(1e-15));
  REQUIRE(phase_distance(cs.a().value(), 0.0) < 1e-12);
  REQUIRE(phase_distance(cs.b().value(), 0.0) < 1e-12);
  REQUIRE(phase_distance(cs.c().value(), 0.0) < 1e-12);
  REQUIRE(phase_distance(cs.d().value(), pi) < 1e-12);
}

TEST_CASE("coeffs_from_vectors on the pure shift applies conventions") {
  SiteVectors sv;
  sv.xi_right = {1.0, 0.0};
  sv.xi_left = {0.0, 1.0};
  sv.zeta_to_left = {1.0, 0.0};
  sv.zeta_to_right = {0.0, 1.0};
  CoeffSite cs = coeffs_from_vectors(sv);
  REQUIRE(cs.r() == 1.0);
  REQUIRE(cs.a().value() == 0.0);
  REQUIRE(cs.d().value() == 0.0);
  REQUIRE(cs.b().value() == 0.0);  // vanishing entries stored as 0
  REQUIRE(cs.c().value() == 0.0);
}

TEST_CASE("coeffs_from_vectors rejects non-orthonormal pairs") {
  SiteVectors sv;
  sv.xi_right = {1.0, 0.0};
  sv.xi_left = {0.0, 1.0};
  sv.zeta_to_left = {kInvSqrt2, kInvSqrt2};
  sv.zeta_to_right = {kInvSqrt2, kInvSqrt2};  // equal: not orthogonal
  REQUIRE_THROWS_AS(coeffs_from_vectors(sv), NonOrthonormal);
}

TEST_CASE("random orthonormal site vectors satisfy the phase constraint") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    CoeffSite cs = coeffs_from_vectors(qw1d::testing::random_site_vectors(rng));
    REQUIRE(cs.r() >= 0.0);
    REQUIRE(cs.r() <= 1.0);
    if (!cs.degenerate()) {
      REQUIRE(phase_distance(cs.a().value() - cs.b().value(),
                             cs.c().value() - cs.d().value() + pi) < 1e-9);
    }
  }
}

TEST_CASE("CoeffSite validates inputs") {
  REQUIRE_THROWS_AS(CoeffSite::make(1.5, 0, 0, 0, 0), ValidationError);
  REQUIRE_THROWS_AS(CoeffSite::make(0.5, 0.3, 0.0, 0.0, 0.0),
                    PhaseConstraintViolation);
  // degenerate radii are exempt from the constraint
  REQUIRE_NOTHROW(CoeffSite::make(1.0, 0.3, 0.0, 0.0, 2.2));
  REQUIRE_NOTHROW(CoeffSite::make(0.0, 0.0, 1.0, 2.0, 0.0));
}

TEST_CASE("WalkSpec resolves tails and exceptions") {
  CoeffSite left = CoeffSite::make(0.3, 0, 0, pi, 0);
  CoeffSite right = CoeffSite::make(0.7, 0, 0, pi, 0);
  CoeffSite defect = CoeffSite::make(0.5, 0, 0, pi, 0);
  WalkSpec spec(left, right, {{0, defect}});
  REQUIRE(spec.site(-1).r() == 0.3);
  REQUIRE(spec.site(-100).r() == 0.3);
  REQUIRE(spec.site(0).r() == 0.5);
  REQUIRE(spec.site(1).r() == 0.7);
  REQUIRE(spec.site(100).r() == 0.7);
  REQUIRE(spec.core_radius() == 0);
  // a no-op exception is dropped from the effective map
  WalkSpec redundant(left, right, {{0, right}, {2, defect}});
  auto eff = redundant.effective_exceptions(1e-9, 1e-9);
  REQUIRE(eff.size() == 1);
  REQUIRE(eff.begin()->first == 2);
}

TEST_CASE("shift window is the two-sided shift on interior columns") {
  WindowOperator w = build_window_operator(shift_spec(), 2);
  for (int n = -1; n <= 1; ++n) {
    REQUIRE(w.entry(n - 1, 0, n, 0) == Complex(1.0, 0.0));
    REQUIRE(w.entry(n + 1, 1, n, 1) == Complex(1.0, 0.0));
    REQUIRE(std::abs(w.entry(n - 1, 0, n, 1)) == 0.0);
    REQUIRE(std::abs(w.entry(n + 1, 1, n, 0)) == 0.0);
  }
  REQUIRE(check_unitary(w) < 1e-12);
}

TEST_CASE("Hadamard window column entries at N=3") {
  WindowOperator w = build_window_operator(hadamard_spec(), 3);
  REQUIRE(std::abs(w.entry(-1, 0, 0, 0) - Complex(kInvSqrt2, 0)) < 1e-15);
  REQUIRE(std::abs(w.entry(1, 1, 0, 0) - Complex(kInvSqrt2, 0)) < 1e-15);
  REQUIRE(std::abs(w.entry(-1, 0, 0, 1) - Complex(kInvSqrt2, 0)) < 1e-15);
  REQUIRE(std::abs(w.entry(1, 1, 0, 1) - Complex(-kInvSqrt2, 0)) < 1e-15);
  REQUIRE(check_unitary(w) < 1e-12);
}

TEST_CASE("window operator is banded with rank-1 blocks") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    WalkSpec spec = qw1d::testing::random_spec_any(rng);
    const int N = 4;
    WindowOperator w = build_window_operator(spec, N);
    for (int m = -N; m <= N; ++m) {
      for (int n = -N + 1; n <= N - 1; ++n) {
        double block = 0.0;
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            block = std::max(block, std::abs(w.entry(m, i, n, j)));
          }
        }
        if (m == n + 1 || m == n - 1) {
          REQUIRE(block > 0.0);
          REQUIRE(block_second_singular_value(w, m, n) < 1e-12);
        } else {
          REQUIRE(block == 0.0);
        }
      }
    }
  }
}

TEST_CASE("every valid random spec yields a unitary window") {
  Rng rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    WalkSpec spec = qw1d::testing::random_spec_any(rng, 0.0, 1.0);
    REQUIRE(check_unitary(build_window_operator(spec, 5)) < 1e-12);
  }
  // degenerate radii included
  for (double r : {0.0, 1.0}) {
    CoeffSite s = CoeffSite::make(r, 0.4, 1.2, 0.9, r == 0.0 ? 0.0 : 2.0);
    REQUIRE(check_unitary(build_window_operator(WalkSpec(s, s), 4)) < 1e-12);
  }
}

TEST_CASE("a constraint-violating site is detectably non-unitary") {
  // r=0.5, b=c=0 forces a+d = pi; take a=d=0 instead
  CoeffSite bad = CoeffSite::make_unchecked(0.5, 0.0, 0.0, 0.0, 0.0);
  WalkSpec spec(bad, bad);
  REQUIRE(check_unitary(build_window_operator(spec, 4)) >= 0.1);
}

TEST_CASE("window construction rejects tiny windows") {
  REQUIRE_THROWS_AS(build_window_operator(shift_spec(), 1), WindowTooSmall);
}
