#include <catch2/catch_amalgamated.hpp>

#include "qw1d/canonical.hpp"
#include "qw1d/equivalence.hpp"
#include "qw1d/errors.hpp"
#include "support/generators.hpp"

using namespace qw1d;
using qw1d::testing::Rng;

namespace {
WalkSpec ti_spec(double r) {
  CoeffSite s = CoeffSite::make(r, 0.0, 0.0, pi, 0.0);
  return WalkSpec(s, s);
}
}  // namespace

TEST_CASE("gauge_search finds the identity witness on equal walks") {
  auto w = gauge_search(ti_spec(0.6), ti_spec(0.6), 4);
  REQUIRE(w.has_value());
  REQUIRE(phase_distance(w->lambda, 0.0) < 1e-12);
  for (int n = -4; n <= 4; ++n) {
    REQUIRE(phase_distance(w->u_at(n), 0.0) < 1e-12);
    REQUIRE(phase_distance(w->v_at(n), 0.0) < 1e-12);
  }
  REQUIRE(witness_residual(ti_spec(0.6), ti_spec(0.6), *w) < 1e-10);
}

TEST_CASE("gauge_search separates different TI radii") {
  REQUIRE_FALSE(gauge_search(ti_spec(0.6), ti_spec(0.8), 6).has_value());
}

TEST_CASE("the alternating-sign symmetry is recovered with lambda = pi") {
  Rng rng(3);
  WalkSpec spec = qw1d::testing::random_spec(rng, WalkClass::TwoPhaseDefect);
  auto all = gauge_search_all(spec, spec, 6, /*sample_free=*/false);
  REQUIRE(all.witnesses.size() == 2);
  bool found_alternating = false;
  for (const auto& w : all.witnesses) {
    if (phase_distance(w.lambda, pi) < 1e-9) {
      found_alternating = true;
      for (int n = -6; n <= 6; ++n) {
        REQUIRE(phase_distance(w.u_at(n), wrap_angle(n * pi)) < 1e-9);
        REQUIRE(phase_distance(w.v_at(n), wrap_angle(n * pi)) < 1e-9);
      }
    }
  }
  REQUIRE(found_alternating);
}

TEST_CASE("gauge_search recovers constructed witnesses") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    WalkSpec spec = qw1d::testing::random_spec_any(rng);
    auto copy = qw1d::testing::gauged_copy(rng, spec, 6, trial % 2 == 0);
    REQUIRE(witness_residual(spec, copy.spec, copy.witness) < 1e-10);
    auto found = gauge_search(spec, copy.spec, 6);
    REQUIRE(found.has_value());
    REQUIRE(witness_residual(spec, copy.spec, *found) < 1e-10);
    // symmetry
    REQUIRE(gauge_search(copy.spec, spec, 6).has_value());
  }
}

TEST_CASE("witness composition is transitive") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    WalkSpec a = qw1d::testing::random_spec_any(rng);
    auto b = qw1d::testing::gauged_copy(rng, a, 6, false);
    auto c = qw1d::testing::gauged_copy(rng, b.spec, 6, false);
    EquivalenceWitness ac = c.witness.after(b.witness);
    REQUIRE(witness_residual(a, c.spec, ac) < 1e-10);
  }
}

TEST_CASE("equivalent_params compares canonical parameters") {
  CanonicalForm a = CanonicalTI{0.6};
  CanonicalForm b = CanonicalTI{0.6};
  CanonicalForm c = CanonicalTI{0.8};
  REQUIRE(equivalent_params(a, b));
  REQUIRE_FALSE(equivalent_params(a, c));

  CanonicalTwoPhaseDefect m1{0.6, 0.7, 0.5, Phase(0.2), Phase(0.4), Phase(1.1)};
  CanonicalTwoPhaseDefect m2 = m1;
  m2.mu3 = Phase(1.2);
  REQUIRE(equivalent_params(CanonicalForm{m1}, CanonicalForm{m1}));
  REQUIRE_FALSE(equivalent_params(CanonicalForm{m1}, CanonicalForm{m2}));

  REQUIRE_THROWS_AS(equivalent_params(a, CanonicalForm{m1}), ClassMismatch);
  REQUIRE_THROWS_AS(
      equivalent_params(CanonicalForm{CanonicalTI{1.0}},
                        CanonicalForm{CanonicalTI{1.0}}),
      DegenerateParameters);
}

TEST_CASE("oracle and theorem decisions agree on random strict pairs") {
  Rng rng(13);
  const WalkClass classes[] = {WalkClass::TI, WalkClass::OneDefect,
                               WalkClass::CompleteTwoPhase,
                               WalkClass::TwoPhaseDefect, WalkClass::General};
  for (int trial = 0; trial < 25; ++trial) {
    WalkClass cls = classes[trial % 5];
    WalkSpec a = qw1d::testing::random_spec(rng, cls);
    const bool make_equivalent = trial % 2 == 0;
    WalkSpec b = make_equivalent
                     ? qw1d::testing::gauged_copy(rng, a, 8, false).spec
                     : qw1d::testing::random_spec(rng, cls);
    bool via_params = equivalent_params(canonicalize(a, cls, 8).form,
                                        canonicalize(b, cls, 8).form);
    bool via_oracle = gauge_search(a, b, 8).has_value();
    REQUIRE(via_params == via_oracle);
    if (make_equivalent) REQUIRE(via_params);
  }
}

TEST_CASE("commutant of strict walks is the two-element group") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    WalkSpec mu_form = canonical_to_spec(CanonicalTwoPhaseDefect{
        qw1d::testing::uniform(rng, 0.1, 0.9),
        qw1d::testing::uniform(rng, 0.1, 0.9),
        qw1d::testing::uniform(rng, 0.1, 0.9),
        Phase(qw1d::testing::uniform(rng, 0.0, two_pi)),
        Phase(qw1d::testing::uniform(rng, 0.0, two_pi)),
        Phase(qw1d::testing::uniform(rng, 0.0, two_pi))});
    auto ws = commutant(mu_form, 6);
    REQUIRE(ws.size() == 2);
    bool has_identity = false, has_alternating = false;
    for (const auto& w : ws) {
      if (phase_distance(w.lambda, 0.0) < 1e-9) {
        has_identity = true;
        for (int n = -6; n <= 6; ++n) {
          REQUIRE(phase_distance(w.u_at(n), 0.0) < 1e-9);
          REQUIRE(phase_distance(w.v_at(n), 0.0) < 1e-9);
        }
      }
      if (phase_distance(w.lambda, pi) < 1e-9) has_alternating = true;
      REQUIRE(witness_residual(mu_form, mu_form, w) < 1e-10);
    }
    REQUIRE(has_identity);
    REQUIRE(has_alternating);

    WalkSpec sigma_form = canonical_to_spec(CanonicalCompleteTwoPhase{
        qw1d::testing::uniform(rng, 0.1, 0.9),
        qw1d::testing::uniform(rng, 0.1, 0.9),
        Phase(qw1d::testing::uniform(rng, 0.0, two_pi)),
        Phase(qw1d::testing::uniform(rng, 0.0, two_pi))});
    REQUIRE(commutant(sigma_form, 6).size() == 2);
  }
}

TEST_CASE("commutant of the shift walk decouples into families") {
  REQUIRE_THROWS_AS(commutant(ti_spec(1.0), 4), DegenerateParameters);
  auto ws = commutant(ti_spec(1.0), 4, /*allow_degenerate=*/true);
  REQUIRE(ws.size() > 2);
  for (const auto& w : ws) {
    REQUIRE(witness_residual(ti_spec(1.0), ti_spec(1.0), w) < 1e-10);
  }
}

TEST_CASE("gauge_search requires a window of half width >= 3") {
  REQUIRE_THROWS_AS(gauge_search(ti_spec(0.5), ti_spec(0.5), 2),
                    WindowTooSmall);
}
