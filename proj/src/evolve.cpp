#include "qw1d/evolve.hpp"

#include <sstream>

#include "qw1d/errors.hpp"

namespace qw1d {

namespace {
// below this many sites the parallel dispatch is pure overhead
constexpr int kParallelThreshold = 4096;
constexpr double kLeak = 1e-15;
}  // namespace

BandedWalkOperator BandedWalkOperator::from_spec(const WalkSpec& spec,
                                                 int half_width) {
  if (half_width < 2) throw WindowTooSmall("window half width < 2");
  BandedWalkOperator op;
  op.half_width = half_width;
  const std::size_t sites = 2 * half_width + 1;
  op.ea.assign(sites, Complex{});
  op.eb.assign(sites, Complex{});
  op.ec.assign(sites, Complex{});
  op.ed.assign(sites, Complex{});
  for (int n = -half_width + 1; n <= half_width - 1; ++n) {
    const CoeffSite& cs = spec.site(n);
    op.ea[n + half_width] = cs.entry_a();
    op.eb[n + half_width] = cs.entry_b();
    op.ec[n + half_width] = cs.entry_c();
    op.ed[n + half_width] = cs.entry_d();
  }
  return op;
}

void BandedWalkOperator::apply(const Complex* in, Complex* out) const {
  const int sites = 2 * half_width + 1;
#pragma omp parallel for schedule(static) if (sites >= kParallelThreshold)
  for (int i = 0; i < sites; ++i) {
    // spin 1 at site m gathers from the column at m+1, spin 2 from m-1
    Complex up{};
    if (i + 1 < sites) up = ea[i + 1] * in[2 * (i + 1)] + eb[i + 1] * in[2 * (i + 1) + 1];
    Complex dn{};
    if (i - 1 >= 0) dn = ec[i - 1] * in[2 * (i - 1)] + ed[i - 1] * in[2 * (i - 1) + 1];
    out[2 * i] = up;
    out[2 * i + 1] = dn;
  }
}

void BandedWalkOperator::apply_serial(const Complex* in, Complex* out) const {
  const int sites = 2 * half_width + 1;
  for (int i = 0; i < sites; ++i) {
    Complex up{};
    if (i + 1 < sites) up = ea[i + 1] * in[2 * (i + 1)] + eb[i + 1] * in[2 * (i + 1) + 1];
    Complex dn{};
    if (i - 1 >= 0) dn = ec[i - 1] * in[2 * (i - 1)] + ed[i - 1] * in[2 * (i - 1) + 1];
    out[2 * i] = up;
    out[2 * i + 1] = dn;
  }
}

void BandedWalkOperator::step(LatticeState& state) const {
  Eigen::VectorXcd next(state.amp.size());
  apply(state.amp.data(), next.data());
  state.amp.swap(next);
}

LatticeState embed_at_origin(const C2Vector& phi, int half_width) {
  LatticeState st;
  st.half_width = half_width;
  st.amp = Eigen::VectorXcd::Zero(2 * (2 * half_width + 1));
  st.amp[st.index(0, 0)] = phi.c1;
  st.amp[st.index(0, 1)] = phi.c2;
  return st;
}

namespace {

void require_unit(const C2Vector& phi) {
  if (!phi.is_unit(tolerances().norm)) {
    throw NotUnitState("initial state is not a unit vector");
  }
}

void check_leakage(const LatticeState& st, int steps) {
  const int N = st.half_width;
  for (int n : {-N, -N + 1, N - 1, N}) {
    if (std::abs(st.at(n, 0)) > kLeak || std::abs(st.at(n, 1)) > kLeak) {
      std::ostringstream msg;
      msg << "amplitude leaked to site " << n << " after " << steps
          << " steps";
      throw InternalInconsistency(msg.str());
    }
  }
}

}  // namespace

LatticeState evolve(const WalkSpec& spec, const C2Vector& phi, int steps) {
  require_unit(phi);
  const int N = steps + 2;
  BandedWalkOperator op = BandedWalkOperator::from_spec(spec, N);
  LatticeState st = embed_at_origin(phi, N);
  for (int t = 0; t < steps; ++t) op.step(st);
  check_leakage(st, steps);
  return st;
}

LatticeState evolve_reference(const WalkSpec& spec, const C2Vector& phi,
                              int steps) {
  require_unit(phi);
  const int N = steps + 2;
  WindowOperator w = build_window_operator(spec, N);
  LatticeState st = embed_at_origin(phi, N);
  for (int t = 0; t < steps; ++t) st.amp = w.matrix() * st.amp;
  check_leakage(st, steps);
  return st;
}

Distribution distribution(const LatticeState& state) {
  Distribution dist;
  for (int n = -state.half_width; n <= state.half_width; ++n) {
    const double p = std::norm(state.at(n, 0)) + std::norm(state.at(n, 1));
    if (p > 0.0) dist[n] = p;
  }
  return dist;
}

namespace {

double max_dist_diff(const Distribution& a, const Distribution& b) {
  double dev = 0.0;
  for (const auto& [site, p] : a) {
    auto it = b.find(site);
    dev = std::max(dev, std::abs(p - (it == b.end() ? 0.0 : it->second)));
  }
  for (const auto& [site, p] : b) {
    if (a.find(site) == a.end()) dev = std::max(dev, p);
  }
  return dev;
}

BandedWalkOperator banded_from_window(const WindowOperator& w) {
  BandedWalkOperator op;
  op.half_width = w.half_width();
  const std::size_t sites = 2 * w.half_width() + 1;
  op.ea.assign(sites, Complex{});
  op.eb.assign(sites, Complex{});
  op.ec.assign(sites, Complex{});
  op.ed.assign(sites, Complex{});
  for (int n = -w.half_width() + 1; n <= w.half_width() - 1; ++n) {
    op.ea[n + w.half_width()] = w.entry(n - 1, 0, n, 0);
    op.eb[n + w.half_width()] = w.entry(n - 1, 0, n, 1);
    op.ec[n + w.half_width()] = w.entry(n + 1, 1, n, 0);
    op.ed[n + w.half_width()] = w.entry(n + 1, 1, n, 1);
  }
  return op;
}

}  // namespace

double check_distribution_invariance_windows(const WindowOperator& a,
                                             const C2Vector& phi_a,
                                             const WindowOperator& b,
                                             const C2Vector& phi_b,
                                             const GaugeTransform& gauge,
                                             int t_max) {
  require_unit(phi_a);
  require_unit(phi_b);
  if (a.half_width() != gauge.half_width() ||
      b.half_width() != gauge.half_width()) {
    throw InvalidWitness("gauge window does not match operator windows");
  }
  if (interior_max_diff(gauge.apply(a), b) > tolerances().gauge) {
    throw InvalidWitness("gauge does not map the first walk to the second");
  }
  {
    C2Vector mapped = gauge.apply_block(0, phi_a);
    const double diff = std::max(std::abs(mapped.c1 - phi_b.c1),
                                 std::abs(mapped.c2 - phi_b.c2));
    if (diff > 1e-8) {
      throw InvalidWitness("gauge does not map the first state to the second");
    }
  }

  BandedWalkOperator opa = banded_from_window(a);
  BandedWalkOperator opb = banded_from_window(b);
  LatticeState sa = embed_at_origin(phi_a, a.half_width());
  LatticeState sb = embed_at_origin(phi_b, b.half_width());

  double dev = max_dist_diff(distribution(sa), distribution(sb));
  for (int t = 1; t <= t_max; ++t) {
    opa.step(sa);
    opb.step(sb);
    dev = std::max(dev, max_dist_diff(distribution(sa), distribution(sb)));
  }
  return dev;
}

double check_distribution_invariance(const WalkSpec& a, const C2Vector& phi_a,
                                     const WalkSpec& b, const C2Vector& phi_b,
                                     const GaugeTransform& gauge, int t_max) {
  const int N = gauge.half_width();
  if (N < t_max + 2) {
    throw WindowTooSmall(
        "gauge window too small for the requested number of steps");
  }
  return check_distribution_invariance_windows(build_window_operator(a, N),
                                               phi_a,
                                               build_window_operator(b, N),
                                               phi_b, gauge, t_max);
}

double check_distribution_invariance(const WalkSpec& a, const C2Vector& phi_a,
                                     const WalkSpec& b, const C2Vector& phi_b,
                                     const EquivalenceWitness& witness,
                                     int t_max) {
  return check_distribution_invariance(a, phi_a, b, phi_b, witness.to_gauge(),
                                       t_max);
}

}  // namespace qw1d
