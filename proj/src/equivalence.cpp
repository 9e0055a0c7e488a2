#include "qw1d/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "qw1d/errors.hpp"

namespace qw1d {

namespace {
constexpr double kZeroAmp = 1e-12;
}

GaugeTransform EquivalenceWitness::to_gauge() const {
  return GaugeTransform::diagonal(half_width, lambda, u, v);
}

EquivalenceWitness EquivalenceWitness::after(
    const EquivalenceWitness& first) const {
  if (half_width != first.half_width) {
    throw InternalInconsistency("witness composition: window mismatch");
  }
  EquivalenceWitness out;
  out.half_width = half_width;
  out.lambda = wrap_angle(lambda + first.lambda);
  out.u.resize(u.size());
  out.v.resize(v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    out.u[i] = wrap_angle(u[i] + first.u[i]);
    out.v[i] = wrap_angle(v[i] + first.v[i]);
  }
  return out;
}

double witness_residual(const WalkSpec& a, const WalkSpec& b,
                        const EquivalenceWitness& w) {
  WindowOperator wa = build_window_operator(a, w.half_width);
  WindowOperator wb = build_window_operator(b, w.half_width);
  return interior_max_diff(w.to_gauge().apply(wa), wb);
}

// --- canonical-parameter decision -------------------------------------------

namespace {

void require_strict_radius(double r, const char* name) {
  const double eps = tolerances().radius;
  if (r <= eps || r >= 1.0 - eps) {
    std::ostringstream msg;
    msg << "radial parameter " << name << " = " << r
        << " is degenerate; decide via gauge_search";
    throw DegenerateParameters(msg.str());
  }
}

bool radii_equal(double x, double y) {
  return std::abs(x - y) <= tolerances().radius;
}

bool phases_equal(double x, double y) {
  return phase_equal(x, y, tolerances().phase);
}

}  // namespace

bool equivalent_params(const CanonicalForm& c1, const CanonicalForm& c2) {
  if (form_class(c1) != form_class(c2)) {
    throw ClassMismatch("canonical forms of different classes: " +
                        to_string(form_class(c1)) + " vs " +
                        to_string(form_class(c2)));
  }
  if (const auto* a = std::get_if<CanonicalTI>(&c1)) {
    const auto& b = std::get<CanonicalTI>(c2);
    require_strict_radius(a->r, "r");
    require_strict_radius(b.r, "r'");
    return radii_equal(a->r, b.r);
  }
  if (const auto* a = std::get_if<CanonicalOneDefect>(&c1)) {
    const auto& b = std::get<CanonicalOneDefect>(c2);
    require_strict_radius(a->r_pm, "r_pm");
    require_strict_radius(a->r_0, "r_0");
    require_strict_radius(b.r_pm, "r_pm'");
    require_strict_radius(b.r_0, "r_0'");
    return radii_equal(a->r_pm, b.r_pm) && radii_equal(a->r_0, b.r_0) &&
           phases_equal(a->nu1.value(), b.nu1.value()) &&
           phases_equal(a->nu2.value(), b.nu2.value());
  }
  if (const auto* a = std::get_if<CanonicalCompleteTwoPhase>(&c1)) {
    const auto& b = std::get<CanonicalCompleteTwoPhase>(c2);
    require_strict_radius(a->r_plus, "r_plus");
    require_strict_radius(a->r_minus, "r_minus");
    require_strict_radius(b.r_plus, "r_plus'");
    require_strict_radius(b.r_minus, "r_minus'");
    return radii_equal(a->r_plus, b.r_plus) &&
           radii_equal(a->r_minus, b.r_minus) &&
           phases_equal(a->sigma1.value(), b.sigma1.value()) &&
           phases_equal(a->sigma2.value(), b.sigma2.value());
  }
  if (const auto* a = std::get_if<CanonicalTwoPhaseDefect>(&c1)) {
    const auto& b = std::get<CanonicalTwoPhaseDefect>(c2);
    require_strict_radius(a->r_plus, "r_plus");
    require_strict_radius(a->r_minus, "r_minus");
    require_strict_radius(a->r_0, "r_0");
    require_strict_radius(b.r_plus, "r_plus'");
    require_strict_radius(b.r_minus, "r_minus'");
    require_strict_radius(b.r_0, "r_0'");
    return radii_equal(a->r_plus, b.r_plus) &&
           radii_equal(a->r_minus, b.r_minus) && radii_equal(a->r_0, b.r_0) &&
           phases_equal(a->mu1.value(), b.mu1.value()) &&
           phases_equal(a->mu2.value(), b.mu2.value()) &&
           phases_equal(a->mu3.value(), b.mu3.value());
  }
  const auto& a = std::get<CanonicalGeneral>(c1);
  const auto& b = std::get<CanonicalGeneral>(c2);
  if (a.half_width != b.half_width) {
    throw InternalInconsistency(
        "general canonical forms over different windows");
  }
  for (double r : a.r) require_strict_radius(r, "r_n");
  for (double r : b.r) require_strict_radius(r, "r_n'");
  for (std::size_t i = 0; i < a.r.size(); ++i) {
    if (!radii_equal(a.r[i], b.r[i])) return false;
    if (!phases_equal(a.theta[i], b.theta[i])) return false;
  }
  return phases_equal(a.slope_left, b.slope_left) &&
         phases_equal(a.slope_right, b.slope_right);
}

// --- gauge search ------------------------------------------------------------

namespace {

// Unknown phases x are tracked as x = alpha + beta * lambda along a spanning
// tree of the entry-matching constraints; closing a cycle either checks a
// lambda-free congruence or pins  m * lambda = rhs  (mod 2pi).
struct Assignment {
  double alpha = 0.0;
  int beta = 0;
  int root = -1;
  bool set = false;
};

struct Edge {
  int from = 0;
  int to = 0;
  double delta = 0.0;  // x_to = x_from + lam * lambda + delta
  int lam = 0;
};

struct LambdaEq {
  int m = 0;  // > 0
  double rhs = 0.0;
};

struct ConstraintSystem {
  int half_width = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adjacency;  // var -> edge indices
  std::vector<Assignment> vars;
  std::vector<LambdaEq> equations;
  std::vector<double> checks;  // must be = 0 (mod 2pi)
  std::vector<int> secondary_roots;
  bool magnitudes_match = true;
  bool degenerate = false;

  int uid(int n) const { return 2 * (n + half_width); }
  int vid(int n) const { return 2 * (n + half_width) + 1; }
};

ConstraintSystem build_system(const WalkSpec& a, const WalkSpec& b, int N) {
  ConstraintSystem sys;
  sys.half_width = N;
  sys.vars.resize(2 * (2 * N + 1));
  sys.adjacency.resize(sys.vars.size());

  auto add_edge = [&sys](int from, int to, double delta, int lam) {
    sys.adjacency[from].push_back(int(sys.edges.size()));
    sys.adjacency[to].push_back(int(sys.edges.size()));
    sys.edges.push_back(Edge{from, to, delta, lam});
  };

  const double r_eps = tolerances().radius;
  for (int n = -N + 1; n <= N - 1; ++n) {
    const CoeffSite& sa = a.site(n);
    const CoeffSite& sb = b.site(n);
    if (std::abs(sa.r() - sb.r()) > r_eps) {
      sys.magnitudes_match = false;  // |entries| are gauge invariants
      return sys;
    }
    if (sa.r() <= r_eps || sa.r() >= 1.0 - r_eps) sys.degenerate = true;

    const double da = sb.a().value() - sa.a().value();
    const double db = sb.b().value() - sa.b().value();
    const double dc = sb.c().value() - sa.c().value();
    const double dd = sb.d().value() - sa.d().value();

    // u_n = u_{n-1} + lambda - da_n        (r entries)
    // v_{n+1} = v_n - lambda + dd_n
    // v_n = u_{n-1} + lambda - db_n        (s entries)
    // v_{n+1} = u_n - lambda + dc_n
    if (std::min(sa.r(), sb.r()) > kZeroAmp) {
      add_edge(sys.uid(n - 1), sys.uid(n), -da, +1);
      add_edge(sys.vid(n), sys.vid(n + 1), dd, -1);
    }
    if (std::min(sa.s(), sb.s()) > kZeroAmp) {
      add_edge(sys.uid(n - 1), sys.vid(n), -db, +1);
      add_edge(sys.uid(n), sys.vid(n + 1), dc, -1);
    }
  }
  return sys;
}

void propagate(ConstraintSystem& sys) {
  auto bfs_from = [&sys](int root) {
    sys.vars[root] = Assignment{0.0, 0, root, true};
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int ei : sys.adjacency[x]) {
        const Edge& e = sys.edges[ei];
        const bool forward = e.from == x;
        const int y = forward ? e.to : e.from;
        const Assignment& ax = sys.vars[x];
        Assignment implied;
        implied.alpha = forward ? ax.alpha + e.delta : ax.alpha - e.delta;
        implied.beta = forward ? ax.beta + e.lam : ax.beta - e.lam;
        implied.root = ax.root;
        implied.set = true;
        if (!sys.vars[y].set) {
          sys.vars[y] = implied;
          queue.push_back(y);
        } else {
          const Assignment& ay = sys.vars[y];
          const int dbeta = implied.beta - ay.beta;
          const double dalpha = implied.alpha - ay.alpha;
          if (dbeta == 0) {
            sys.checks.push_back(dalpha);
          } else {
            // dbeta * lambda + dalpha = 0  (mod 2pi)
            LambdaEq eq{dbeta, -dalpha};
            if (eq.m < 0) {
              eq.m = -eq.m;
              eq.rhs = -eq.rhs;
            }
            sys.equations.push_back(eq);
          }
        }
      }
    }
  };

  // the proofs' normalization: u_0 = 0 first, then everything reachable
  bfs_from(sys.uid(0));
  for (std::size_t x = 0; x < sys.vars.size(); ++x) {
    if (!sys.vars[x].set) {
      const bool has_edges = !sys.adjacency[x].empty();
      if (has_edges) sys.secondary_roots.push_back(int(x));
      bfs_from(int(x));
    }
  }
}

std::vector<double> lambda_candidates(const ConstraintSystem& sys,
                                      bool sample_free, double eps) {
  if (sys.equations.empty()) {
    if (!sample_free) return {0.0};
    std::vector<double> grid;
    for (int k = 0; k < 16; ++k) grid.push_back(two_pi * k / 16.0);
    return grid;
  }
  const LambdaEq* base = &sys.equations.front();
  for (const auto& eq : sys.equations) {
    if (eq.m < base->m) base = &eq;
  }
  std::vector<double> candidates;
  for (int j = 0; j < base->m; ++j) {
    double lam = (base->rhs + two_pi * j) / base->m;
    bool ok = true;
    for (const auto& eq : sys.equations) {
      if (std::abs(std::remainder(eq.m * lam - eq.rhs, two_pi)) > eps) {
        ok = false;
        break;
      }
    }
    if (ok) candidates.push_back(wrap_angle(lam));
  }
  return candidates;
}

bool same_witness(const EquivalenceWitness& a, const EquivalenceWitness& b,
                  double eps) {
  if (!phase_equal(a.lambda, b.lambda, eps)) return false;
  for (std::size_t i = 0; i < a.u.size(); ++i) {
    if (!phase_equal(a.u[i], b.u[i], eps)) return false;
    if (!phase_equal(a.v[i], b.v[i], eps)) return false;
  }
  return true;
}

}  // namespace

GaugeSearchResult gauge_search_all(const WalkSpec& a, const WalkSpec& b,
                                   int half_width, bool sample_free,
                                   std::size_t max_witnesses) {
  if (half_width < 3) {
    throw WindowTooSmall("gauge search needs a window half width >= 3");
  }
  const int N = half_width;
  const double eps = tolerances().phase;

  ConstraintSystem sys = build_system(a, b, N);
  GaugeSearchResult result;
  result.degenerate = sys.degenerate;
  if (!sys.magnitudes_match) return result;

  propagate(sys);
  for (double c : sys.checks) {
    if (std::abs(std::remainder(c, two_pi)) > eps) return result;
  }

  const std::vector<double> lambdas = lambda_candidates(sys, sample_free, eps);
  if (lambdas.empty()) return result;

  // free component offsets: fixed to zero unless we are enumerating families
  std::vector<double> offset_grid{0.0};
  if (sample_free) {
    for (int k = 1; k < 16; ++k) offset_grid.push_back(two_pi * k / 16.0);
  }
  const std::size_t roots = sys.secondary_roots.size();
  std::size_t combos = 1;
  for (std::size_t i = 0; i < roots; ++i) {
    if (combos > 4096) break;
    combos *= offset_grid.size();
  }
  combos = std::min<std::size_t>(combos, 4096);

  WindowOperator wa = build_window_operator(a, N);
  WindowOperator wb = build_window_operator(b, N);

  std::vector<std::size_t> odo(roots, 0);
  for (double lam : lambdas) {
    for (std::size_t combo = 0; combo < combos; ++combo) {
      // decode the odometer
      std::size_t rest = combo;
      for (std::size_t i = 0; i < roots; ++i) {
        odo[i] = rest % offset_grid.size();
        rest /= offset_grid.size();
      }
      std::vector<double> root_offset(sys.vars.size(), 0.0);
      for (std::size_t i = 0; i < roots; ++i) {
        root_offset[sys.secondary_roots[i]] = offset_grid[odo[i]];
      }

      EquivalenceWitness w;
      w.half_width = N;
      w.lambda = wrap_angle(lam);
      w.u.resize(2 * N + 1);
      w.v.resize(2 * N + 1);
      for (int n = -N; n <= N; ++n) {
        const Assignment& au = sys.vars[sys.uid(n)];
        const Assignment& av = sys.vars[sys.vid(n)];
        w.u[n + N] = wrap_angle(au.alpha + au.beta * lam +
                                root_offset[au.root]);
        w.v[n + N] = wrap_angle(av.alpha + av.beta * lam +
                                root_offset[av.root]);
      }
      if (interior_max_diff(w.to_gauge().apply(wa), wb) >
          tolerances().gauge) {
        continue;
      }
      bool duplicate = false;
      for (const auto& seen : result.witnesses) {
        if (same_witness(seen, w, 10 * eps)) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) result.witnesses.push_back(std::move(w));
      if (result.witnesses.size() >= max_witnesses) return result;
    }
  }
  return result;
}

std::optional<EquivalenceWitness> gauge_search(const WalkSpec& a,
                                               const WalkSpec& b,
                                               int half_width) {
  GaugeSearchResult res = gauge_search_all(a, b, half_width,
                                           /*sample_free=*/false,
                                           /*max_witnesses=*/1);
  if (res.witnesses.empty()) return std::nullopt;
  return res.witnesses.front();
}

std::vector<EquivalenceWitness> commutant(const WalkSpec& spec, int half_width,
                                          bool allow_degenerate) {
  if (half_width < 3) {
    throw WindowTooSmall("commutant needs a window half width >= 3");
  }
  const bool strict = spec.strict(half_width, tolerances().radius);
  if (!strict && !allow_degenerate) {
    throw DegenerateParameters(
        "commutant of a walk with degenerate sites; rerun with "
        "allow_degenerate for a sampled best-effort enumeration");
  }
  GaugeSearchResult res = gauge_search_all(spec, spec, half_width,
                                           /*sample_free=*/!strict,
                                           /*max_witnesses=*/64);
  return std::move(res.witnesses);
}

}  // namespace qw1d
