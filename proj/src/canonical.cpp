#include "qw1d/canonical.hpp"

#include <cmath>
#include <sstream>

#include "qw1d/errors.hpp"

namespace qw1d {

namespace {

// entries at or below this magnitude carry no phase information
constexpr double kZeroAmp = 1e-12;

void require_half_width(int half_width) {
  if (half_width < 2) {
    std::ostringstream msg;
    msg << "window half width " << half_width << " < 2";
    throw WindowTooSmall(msg.str());
  }
}

double checked_residual(const WindowOperator& gauged,
                        const WindowOperator& canon, const char* what) {
  double residual = interior_max_diff(gauged, canon);
  if (residual > tolerances().gauge) {
    std::ostringstream msg;
    msg << what << ": gauge identity residual " << residual
        << " exceeds tolerance " << tolerances().gauge;
    throw InternalInconsistency(msg.str());
  }
  return residual;
}

}  // namespace

std::string to_string(WalkClass c) {
  switch (c) {
    case WalkClass::TI: return "TI";
    case WalkClass::OneDefect: return "OneDefect";
    case WalkClass::CompleteTwoPhase: return "CompleteTwoPhase";
    case WalkClass::TwoPhaseDefect: return "TwoPhaseDefect";
    case WalkClass::General: return "General";
  }
  return "General";
}

std::optional<WalkClass> walk_class_from_string(const std::string& s) {
  if (s == "TI" || s == "ti") return WalkClass::TI;
  if (s == "OneDefect" || s == "one-defect") return WalkClass::OneDefect;
  if (s == "CompleteTwoPhase" || s == "complete-two-phase")
    return WalkClass::CompleteTwoPhase;
  if (s == "TwoPhaseDefect" || s == "two-phase-defect")
    return WalkClass::TwoPhaseDefect;
  if (s == "General" || s == "general") return WalkClass::General;
  return std::nullopt;
}

WalkClass classify(const WalkSpec& spec) {
  const double r_eps = tolerances().radius;
  const double p_eps = tolerances().phase;
  const auto eff = spec.effective_exceptions(r_eps, p_eps);
  const bool tails_equal =
      spec.left_tail().approx_equal(spec.right_tail(), r_eps, p_eps);
  const bool only_origin = eff.size() == 1 && eff.begin()->first == 0;

  if (eff.empty() && tails_equal) return WalkClass::TI;
  if (tails_equal && only_origin) return WalkClass::OneDefect;
  if (eff.empty()) return WalkClass::CompleteTwoPhase;
  if (only_origin) return WalkClass::TwoPhaseDefect;
  return WalkClass::General;
}

WalkClass form_class(const CanonicalForm& form) {
  struct Visitor {
    WalkClass operator()(const CanonicalTI&) { return WalkClass::TI; }
    WalkClass operator()(const CanonicalOneDefect&) {
      return WalkClass::OneDefect;
    }
    WalkClass operator()(const CanonicalCompleteTwoPhase&) {
      return WalkClass::CompleteTwoPhase;
    }
    WalkClass operator()(const CanonicalTwoPhaseDefect&) {
      return WalkClass::TwoPhaseDefect;
    }
    WalkClass operator()(const CanonicalGeneral&) { return WalkClass::General; }
  };
  return std::visit(Visitor{}, form);
}

// --- canonical spec builders ----------------------------------------------

WalkSpec canonical_to_spec(const CanonicalTwoPhaseDefect& f) {
  const double m1 = f.mu1.value(), m2 = f.mu2.value(), m3 = f.mu3.value();
  CoeffSite left = CoeffSite::make(f.r_minus, 0.0, 0.0, pi, 0.0);
  CoeffSite right = CoeffSite::make(f.r_plus, 0.0, 0.0, pi + m3, m3);
  CoeffSite origin = CoeffSite::make(f.r_0, 0.0, m1, pi + m2, m1 + m2);
  return WalkSpec(left, right, {{0, origin}});
}

WalkSpec canonical_to_spec(const CanonicalCompleteTwoPhase& f) {
  const double s1 = f.sigma1.value(), s2 = f.sigma2.value();
  CoeffSite left = CoeffSite::make(f.r_minus, 0.0, s2, pi, s2);
  CoeffSite right = CoeffSite::make(f.r_plus, 0.0, 0.0, pi + s1, s1);
  return WalkSpec(left, right);
}

WalkSpec canonical_to_spec(const CanonicalOneDefect& f) {
  const double n1 = f.nu1.value(), n2 = f.nu2.value();
  CoeffSite tail = CoeffSite::make(f.r_pm, 0.0, 0.0, pi, 0.0);
  CoeffSite origin = CoeffSite::make(f.r_0, 0.0, n1, pi + n2, n1 + n2);
  return WalkSpec(tail, tail, {{0, origin}});
}

WalkSpec canonical_to_spec(const CanonicalTI& f) {
  CoeffSite tail = CoeffSite::make(f.r, 0.0, 0.0, pi, 0.0);
  return WalkSpec(tail, tail);
}

WindowOperator canonical_window(const CanonicalForm& form, int half_width) {
  if (const auto* g = std::get_if<CanonicalGeneral>(&form)) {
    if (g->half_width == half_width) {
      return build_window_rtheta(g->r, g->theta, half_width);
    }
    // extend/trim the profiles with the recorded affine tails
    std::vector<double> r(2 * half_width + 1), theta(2 * half_width + 1);
    for (int n = -half_width; n <= half_width; ++n) {
      const int m = std::clamp(n, -g->half_width, g->half_width);
      double th = g->theta_at(m);
      if (n > g->half_width) th += (n - g->half_width) * g->slope_right;
      if (n < -g->half_width) th += (n + g->half_width) * g->slope_left;
      r[n + half_width] = g->r_at(m);
      theta[n + half_width] = wrap_angle(th);
    }
    return build_window_rtheta(r, theta, half_width);
  }
  struct Visitor {
    int half_width;
    WindowOperator operator()(const CanonicalTI& f) {
      return build_window_operator(canonical_to_spec(f), half_width);
    }
    WindowOperator operator()(const CanonicalOneDefect& f) {
      return build_window_operator(canonical_to_spec(f), half_width);
    }
    WindowOperator operator()(const CanonicalCompleteTwoPhase& f) {
      return build_window_operator(canonical_to_spec(f), half_width);
    }
    WindowOperator operator()(const CanonicalTwoPhaseDefect& f) {
      return build_window_operator(canonical_to_spec(f), half_width);
    }
    WindowOperator operator()(const CanonicalGeneral&) {
      throw InternalInconsistency("unreachable");
    }
  };
  return std::visit(Visitor{half_width}, form);
}

// --- general canonicalization ----------------------------------------------

GeneralCanonicalization canonicalize_general(const WalkSpec& spec,
                                             int half_width) {
  require_half_width(half_width);
  const int N = half_width;

  // Step 2 recursions on the effective phases (the stored phases of the
  // nonvanishing entries; vanishing entries get the constraint-consistent
  // completion so the telescoping works sitewise).
  GaugeDerivation der;
  auto& g = der.g;
  auto& h = der.h;
  auto& k = der.k;
  g[0] = 0.0;
  for (int n = 1; n <= N; ++n) g[n] = g[n - 1] - spec.site(n).a_eff();
  for (int n = 0; n >= -N; --n) g[n - 1] = g[n] + spec.site(n).a_eff();
  h[0] = g[-1] - spec.site(0).b_eff();
  for (int n = 0; n < N; ++n) h[n + 1] = h[n] + spec.site(n).d_eff();
  for (int n = 0; n > -N; --n) h[n - 1] = h[n] - spec.site(n - 1).d_eff();
  for (int n = -N; n <= N; ++n) {
    k[n] = spec.site(n).b_eff() - g[n - 1] + h[n];
  }
  const double k1 = k[1];
  der.ell = wrap_angle(k1) / 2.0;

  CanonicalGeneral form;
  form.half_width = N;
  form.r.resize(2 * N + 1);
  form.theta.resize(2 * N + 1);
  for (int n = -N; n <= N; ++n) {
    form.r[n + N] = spec.site(n).r();
    form.theta[n + N] = wrap_angle(k[n] - n * k1);
  }
  form.theta[0 + N] = 0.0;
  form.theta[1 + N] = 0.0;
  // theta is eventually affine: increment a_n + d_n - k_1 once the site data
  // is pure tail
  form.slope_right = wrap_angle(spec.right_tail().a_eff() +
                                spec.right_tail().d_eff() - k1);
  form.slope_left = wrap_angle(spec.left_tail().a_eff() +
                               spec.left_tail().d_eff() - k1);

  std::vector<double> u(2 * N + 1), v(2 * N + 1);
  for (int n = -N; n <= N; ++n) {
    u[n + N] = wrap_angle(-(g[n] + n * der.ell));
    v[n + N] = wrap_angle(-(h[n] - n * der.ell));
  }
  GaugeTransform gauge =
      GaugeTransform::diagonal(N, wrap_angle(-der.ell), std::move(u),
                               std::move(v));

  WindowOperator gauged = gauge.apply(build_window_operator(spec, N));
  WindowOperator canon = build_window_rtheta(form.r, form.theta, N);
  double residual = checked_residual(gauged, canon, "canonicalize_general");

  return GeneralCanonicalization{std::move(form), std::move(gauge),
                                 std::move(der), residual};
}

// --- special-class canonicalizations ---------------------------------------

namespace {

// phase of the gauged entry, or fallback when the amplitude vanishes
double arg_or(const Complex& entry, double fallback) {
  if (std::abs(entry) <= kZeroAmp) return fallback;
  return wrap_angle(std::arg(entry));
}

struct TwoPhaseGauge {
  GaugeTransform gauge;
  WindowOperator gauged;
};

// Common machinery of Step 2' and Step 2'': the two-sided affine phase
// ladders determined by ell and the tails, applied to the spec's window.
TwoPhaseGauge apply_two_phase_gauge(const WalkSpec& spec, int N, double ell,
                                    double g_of_n(int, double, const WalkSpec&),
                                    double h_of_n(int, double,
                                                  const WalkSpec&)) {
  std::vector<double> u(2 * N + 1), v(2 * N + 1);
  for (int n = -N; n <= N; ++n) {
    u[n + N] = wrap_angle(-g_of_n(n, ell, spec));
    v[n + N] = wrap_angle(-h_of_n(n, ell, spec));
  }
  GaugeTransform gauge = GaugeTransform::diagonal(N, wrap_angle(-ell),
                                                  std::move(u), std::move(v));
  WindowOperator gauged = gauge.apply(build_window_operator(spec, N));
  return TwoPhaseGauge{std::move(gauge), std::move(gauged)};
}

}  // namespace

TwoPhaseDefectCanonicalization canonicalize_two_phase_defect(
    const WalkSpec& spec, int half_width) {
  require_half_width(half_width);
  const auto eff =
      spec.effective_exceptions(tolerances().radius, tolerances().phase);
  for (const auto& [n, site] : eff) {
    if (n != 0) {
      std::ostringstream msg;
      msg << "two-phase-defect walk has an exception at n = " << n;
      throw NotInClass(msg.str());
    }
  }
  const int N = half_width;
  const CoeffSite& minus = spec.left_tail();
  const CoeffSite& plus = spec.right_tail();
  const CoeffSite& origin = spec.site(0);

  // Step 2': ell = (b_- + c_- + pi)/2 and the affine ladders
  //   g_n = n(ell - a_+)                      (n >= 0)
  //         n(ell - a_-) - a_- + a_0          (n <= -1)
  //   h_n = (n-1)(ell - a_+) - b_+ + ell      (n >= 1)
  //         (n-1)(ell - a_-) + c_- + a_0 - a_- - ell + pi   (n <= 0)
  const double ell =
      wrap_angle((minus.b_eff() + minus.c_eff() + pi) / 2.0);
  auto g_fn = [](int n, double l, const WalkSpec& sp) {
    if (n >= 0) return n * (l - sp.right_tail().a_eff());
    return n * (l - sp.left_tail().a_eff()) - sp.left_tail().a_eff() +
           sp.site(0).a_eff();
  };
  auto h_fn = [](int n, double l, const WalkSpec& sp) {
    if (n >= 1) return (n - 1) * (l - sp.right_tail().a_eff()) -
                       sp.right_tail().b_eff() + l;
    return (n - 1) * (l - sp.left_tail().a_eff()) + sp.left_tail().c_eff() +
           sp.site(0).a_eff() - sp.left_tail().a_eff() - l + pi;
  };
  auto [gauge, gauged] = apply_two_phase_gauge(spec, N, ell, g_fn, h_fn);

  // Parameter read-off from the gauged operator. mu2 deliberately comes
  // from the realized |e2^1><e1^0| entry.
  CanonicalTwoPhaseDefect form;
  form.r_plus = plus.r();
  form.r_minus = minus.r();
  form.r_0 = origin.r();
  const double mu1 = arg_or(gauged.entry(-1, 0, 0, 1), 0.0);
  double mu2;
  if (origin.s() > kZeroAmp) {
    mu2 = arg_or(-gauged.entry(1, 1, 0, 0), 0.0);
  } else {
    mu2 = wrap_angle(arg_or(gauged.entry(1, 1, 0, 1), 0.0) - mu1);
  }
  const double mu3 = plus.s() > kZeroAmp
                         ? arg_or(-gauged.entry(2, 1, 1, 0), 0.0)
                         : arg_or(gauged.entry(2, 1, 1, 1), 0.0);
  form.mu1 = Phase(mu1);
  form.mu2 = Phase(mu2);
  form.mu3 = Phase(mu3);

  WindowOperator canon = build_window_operator(canonical_to_spec(form), N);
  double residual =
      checked_residual(gauged, canon, "canonicalize_two_phase_defect");
  return TwoPhaseDefectCanonicalization{form, std::move(gauge), residual};
}

CompleteTwoPhaseCanonicalization canonicalize_complete_two_phase(
    const WalkSpec& spec, int half_width) {
  require_half_width(half_width);
  if (!spec.effective_exceptions(tolerances().radius, tolerances().phase)
           .empty()) {
    throw NotInClass("complete two-phase walk must have no exceptions");
  }
  const int N = half_width;
  const CoeffSite& minus = spec.left_tail();
  const CoeffSite& plus = spec.right_tail();

  // Step 2'': ell = (b_+ + c_- + pi)/2; ladders as in Step 2' with the
  // defect column removed (a_0 -> a_+).
  const double ell = wrap_angle((plus.b_eff() + minus.c_eff() + pi) / 2.0);
  auto g_fn = [](int n, double l, const WalkSpec& sp) {
    if (n >= 0) return n * (l - sp.right_tail().a_eff());
    return n * (l - sp.left_tail().a_eff()) - sp.left_tail().a_eff() +
           sp.right_tail().a_eff();
  };
  auto h_fn = [](int n, double l, const WalkSpec& sp) {
    if (n >= 1) return (n - 1) * (l - sp.right_tail().a_eff()) -
                       sp.right_tail().b_eff() + l;
    return (n - 1) * (l - sp.left_tail().a_eff()) + sp.left_tail().c_eff() +
           sp.right_tail().a_eff() - sp.left_tail().a_eff() - l + pi;
  };
  auto [gauge, gauged] = apply_two_phase_gauge(spec, N, ell, g_fn, h_fn);

  CanonicalCompleteTwoPhase form;
  form.r_plus = plus.r();
  form.r_minus = minus.r();
  const double sigma1 = plus.s() > kZeroAmp
                            ? arg_or(-gauged.entry(1, 1, 0, 0), 0.0)
                            : arg_or(gauged.entry(1, 1, 0, 1), 0.0);
  const double sigma2 = minus.s() > kZeroAmp
                            ? arg_or(gauged.entry(-2, 0, -1, 1), 0.0)
                            : arg_or(gauged.entry(0, 1, -1, 1), 0.0);
  form.sigma1 = Phase(sigma1);
  form.sigma2 = Phase(sigma2);

  WindowOperator canon = build_window_operator(canonical_to_spec(form), N);
  double residual =
      checked_residual(gauged, canon, "canonicalize_complete_two_phase");
  return CompleteTwoPhaseCanonicalization{form, std::move(gauge), residual};
}

OneDefectCanonicalization canonicalize_one_defect(const WalkSpec& spec,
                                                  int half_width) {
  if (!spec.left_tail().approx_equal(spec.right_tail(), tolerances().radius,
                                     tolerances().phase)) {
    throw NotInClass("one-defect walk must have equal tails");
  }
  auto tp = canonicalize_two_phase_defect(spec, half_width);
  if (phase_distance(tp.form.mu3.value(), 0.0) > tolerances().phase) {
    std::ostringstream msg;
    msg << "one-defect reduction produced mu3 = " << tp.form.mu3.value()
        << ", expected 0";
    throw InternalInconsistency(msg.str());
  }
  CanonicalOneDefect form;
  form.r_pm = tp.form.r_plus;
  form.r_0 = tp.form.r_0;
  form.nu1 = tp.form.mu1;
  form.nu2 = tp.form.mu2;
  return OneDefectCanonicalization{form, std::move(tp.gauge), tp.residual};
}

TICanonicalization canonicalize_ti(const WalkSpec& spec, int half_width) {
  if (classify(spec) != WalkClass::TI) {
    throw NotInClass("translation-invariant walk must have identical sites");
  }
  auto tp = canonicalize_two_phase_defect(spec, half_width);
  for (double mu :
       {tp.form.mu1.value(), tp.form.mu2.value(), tp.form.mu3.value()}) {
    if (phase_distance(mu, 0.0) > tolerances().phase) {
      throw InternalInconsistency(
          "translation-invariant reduction left a nonzero mu");
    }
  }
  CanonicalTI form{tp.form.r_0};
  // re-verify against the exactly-mu-free window
  WindowOperator gauged =
      tp.gauge.apply(build_window_operator(spec, half_width));
  WindowOperator canon =
      build_window_operator(canonical_to_spec(form), half_width);
  double residual = checked_residual(gauged, canon, "canonicalize_ti");
  return TICanonicalization{form, std::move(tp.gauge), residual};
}

Canonicalization canonicalize(const WalkSpec& spec, WalkClass cls,
                              int half_width) {
  switch (cls) {
    case WalkClass::TI: {
      auto c = canonicalize_ti(spec, half_width);
      return Canonicalization{c.form, std::move(c.gauge), c.residual};
    }
    case WalkClass::OneDefect: {
      auto c = canonicalize_one_defect(spec, half_width);
      return Canonicalization{c.form, std::move(c.gauge), c.residual};
    }
    case WalkClass::CompleteTwoPhase: {
      auto c = canonicalize_complete_two_phase(spec, half_width);
      return Canonicalization{c.form, std::move(c.gauge), c.residual};
    }
    case WalkClass::TwoPhaseDefect: {
      auto c = canonicalize_two_phase_defect(spec, half_width);
      return Canonicalization{c.form, std::move(c.gauge), c.residual};
    }
    case WalkClass::General: {
      auto c = canonicalize_general(spec, half_width);
      return Canonicalization{std::move(c.form), std::move(c.gauge),
                              c.residual};
    }
  }
  throw InternalInconsistency("unknown walk class");
}

Canonicalization canonicalize_auto(const WalkSpec& spec, int half_width) {
  return canonicalize(spec, classify(spec), half_width);
}

StateCanonicalization canonicalize_with_state(
    const WalkSpec& spec, const C2Vector& phi,
    std::optional<WalkClass> class_hint, int half_width) {
  if (!phi.is_unit(tolerances().norm)) {
    throw NotUnitState("initial state is not a unit vector");
  }
  WalkClass cls = class_hint.value_or(classify(spec));
  Canonicalization c = canonicalize(spec, cls, half_width);

  C2Vector wphi = c.gauge.apply_block(0, phi);
  const double m1 = std::abs(wphi.c1);
  const double m2 = std::abs(wphi.c2);

  CanonicalState state;
  double strip;  // phase removed from W phi to make the leading amplitude real
  if (m2 <= kZeroAmp) {
    state.alpha = 1.0;
    state.theta = Phase(0.0);
    strip = std::arg(wphi.c1);
  } else if (m1 <= kZeroAmp) {
    state.alpha = 0.0;
    state.theta = Phase(0.0);
    strip = std::arg(wphi.c2);
  } else {
    state.alpha = std::min(1.0, m1);
    state.theta = Phase(std::arg(wphi.c2) - std::arg(wphi.c1));
    strip = std::arg(wphi.c1);
  }
  c.gauge.rescale_blocks(unit_phasor(-strip));
  return StateCanonicalization{std::move(c.form), state, std::move(c.gauge),
                               c.residual};
}

}  // namespace qw1d
