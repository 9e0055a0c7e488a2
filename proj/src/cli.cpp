#include "qw1d/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "qw1d/canonical.hpp"
#include "qw1d/equivalence.hpp"
#include "qw1d/errors.hpp"
#include "qw1d/evolve.hpp"
#include "qw1d/io.hpp"

namespace qw1d {

namespace {

void apply_env_overrides() {
  if (const char* env = std::getenv("QW1D_TOLERANCE_PHASE")) {
    try {
      double v = std::stod(env);
      if (v > 0) tolerances().phase = v;
    } catch (const std::exception&) {
      throw ValidationError("QW1D_TOLERANCE_PHASE is not a number");
    }
  }
}

int auto_window(int requested, const WalkSpec& a,
                const WalkSpec* b = nullptr) {
  if (requested > 0) return requested;
  int n = std::max(8, a.core_radius() + 4);
  if (b) n = std::max(n, b->core_radius() + 4);
  return n;
}

C2Vector parse_state_arg(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ParseError("state must be two comma-separated complex numbers");
  }
  C2Vector phi{parse_complex(text.substr(0, comma)),
               parse_complex(text.substr(comma + 1))};
  if (!phi.is_unit(tolerances().norm)) {
    throw ValidationError("state: not a unit vector");
  }
  return phi;
}

int cmd_canonicalize(const std::string& in_path, const std::string& cls_name,
                     int window, const std::string& gauge_path,
                     std::ostream& out) {
  LoadedSpec loaded = load_spec_file(in_path);
  const int N = auto_window(window, loaded.spec);

  std::optional<WalkClass> hint;
  if (cls_name != "auto") {
    hint = walk_class_from_string(cls_name);
    if (!hint) throw ValidationError("unknown class '" + cls_name + "'");
  }

  std::string doc;
  GaugeTransform gauge = GaugeTransform::identity(N);
  if (loaded.state) {
    StateCanonicalization c =
        canonicalize_with_state(loaded.spec, *loaded.state, hint, N);
    doc = canonical_to_json(c.form, c.state);
    gauge = std::move(c.gauge);
  } else {
    Canonicalization c =
        hint ? canonicalize(loaded.spec, *hint, N)
             : canonicalize_auto(loaded.spec, N);
    doc = canonical_to_json(c.form);
    gauge = std::move(c.gauge);
  }
  out << doc << "\n";
  if (!gauge_path.empty()) {
    std::ofstream gf(gauge_path);
    if (!gf) throw ValidationError("cannot write '" + gauge_path + "'");
    gf << gauge_to_json(gauge) << "\n";
  }
  return 0;
}

int cmd_classify(const std::string& in_path, std::ostream& out) {
  LoadedSpec loaded = load_spec_file(in_path);
  out << to_string(classify(loaded.spec)) << "\n";
  return 0;
}

int cmd_equiv(const std::string& a_path, const std::string& b_path,
              bool force_oracle, int window, std::ostream& out) {
  LoadedSpec la = load_spec_file(a_path);
  LoadedSpec lb = load_spec_file(b_path);
  const int N = auto_window(window, la.spec, &lb.spec);

  const WalkClass class_a = classify(la.spec);
  const WalkClass class_b = classify(lb.spec);

  bool equivalent = false;
  bool degenerate = false;
  std::string method;
  if (!force_oracle) {
    // the general reduction covers every class, and its parameters are the
    // complete invariant for strict walks
    try {
      auto ca = canonicalize_general(la.spec, N);
      auto cb = canonicalize_general(lb.spec, N);
      equivalent = equivalent_params(CanonicalForm{std::move(ca.form)},
                                     CanonicalForm{std::move(cb.form)});
      method = "params";
    } catch (const DegenerateParameters&) {
      degenerate = true;
    }
  }
  if (force_oracle || degenerate) {
    GaugeSearchResult res =
        gauge_search_all(la.spec, lb.spec, std::max(N, 3),
                         /*sample_free=*/false, /*max_witnesses=*/1);
    equivalent = !res.witnesses.empty();
    degenerate = res.degenerate;
    method = "oracle";
  }
  out << "{\"equivalent\":" << (equivalent ? "true" : "false") << ",\"method\":\""
      << method << "\",\"class_a\":\"" << to_string(class_a)
      << "\",\"class_b\":\"" << to_string(class_b) << "\",\"degenerate\":"
      << (degenerate ? "true" : "false") << "}\n";
  return equivalent ? 0 : 1;
}

int cmd_simulate(const std::string& in_path, const std::string& state_arg,
                 int steps, const std::string& out_path, std::ostream& out) {
  LoadedSpec loaded = load_spec_file(in_path);
  C2Vector phi;
  if (!state_arg.empty()) {
    phi = parse_state_arg(state_arg);
  } else if (loaded.state) {
    phi = *loaded.state;
  } else {
    throw ValidationError("simulate needs --state or a state in the spec");
  }
  if (steps < 0) throw ValidationError("--steps must be >= 0");

  const int N = steps + 2;
  BandedWalkOperator op = BandedWalkOperator::from_spec(loaded.spec, N);
  LatticeState st = embed_at_origin(phi, N);
  std::vector<Distribution> per_step;
  per_step.reserve(steps + 1);
  per_step.push_back(distribution(st));
  for (int t = 1; t <= steps; ++t) {
    op.step(st);
    per_step.push_back(distribution(st));
  }

  if (out_path.empty() || out_path == "-") {
    write_distribution_csv(out, per_step);
  } else {
    std::ofstream f(out_path);
    if (!f) throw ValidationError("cannot write '" + out_path + "'");
    write_distribution_csv(f, per_step);
  }
  return 0;
}

int cmd_commutant(const std::string& in_path, int window, bool allow_degenerate,
                  std::ostream& out) {
  LoadedSpec loaded = load_spec_file(in_path);
  const int N = std::max(3, auto_window(window, loaded.spec));
  std::vector<EquivalenceWitness> ws =
      commutant(loaded.spec, N, allow_degenerate);
  const bool degenerate = !loaded.spec.strict(N, tolerances().radius);
  out << "{\"degenerate\":" << (degenerate ? "true" : "false")
      << ",\"count\":" << ws.size() << ",\"witnesses\":[";
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) out << ",";
    out << witness_to_json(ws[i]);
  }
  out << "]}\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"one-dimensional quantum walks: canonical forms, unitary "
               "equivalence, simulation"};
  app.name("qw1d");
  app.require_subcommand(1);

  std::string in_path, a_path, b_path, gauge_path, out_path, state_arg;
  std::string cls_name = "auto";
  int window = 0;
  int steps = 0;
  bool oracle = false;
  bool allow_degenerate = false;

  auto* canon = app.add_subcommand(
      "canonicalize", "reduce a walk (and optional state) to canonical form");
  canon->add_option("--in", in_path, "walk spec JSON file")->required();
  canon->add_option("--class", cls_name,
                    "auto|ti|one-defect|complete-two-phase|two-phase-defect|"
                    "general");
  canon->add_option("--window", window, "window half width (default: auto)");
  canon->add_option("--gauge", gauge_path, "write the gauge JSON here");

  auto* cls = app.add_subcommand("classify", "print the structural class");
  cls->add_option("--in", in_path, "walk spec JSON file")->required();

  auto* eq = app.add_subcommand(
      "equiv", "decide unitary equivalence (exit 0 yes, 1 no, 2 error)");
  eq->add_option("--a", a_path, "first walk spec")->required();
  eq->add_option("--b", b_path, "second walk spec")->required();
  eq->add_flag("--oracle", oracle, "use the gauge-search oracle");
  eq->add_option("--window", window, "window half width (default: auto)");

  auto* sim = app.add_subcommand("simulate",
                                 "evolve a state and write the distribution CSV");
  sim->add_option("--in", in_path, "walk spec JSON file")->required();
  sim->add_option("--state", state_arg, "initial state, e.g. \"0.6,0.8i\"");
  sim->add_option("--steps", steps, "number of steps")->required();
  sim->add_option("--out", out_path, "CSV path ('-' for stdout)");

  auto* comm = app.add_subcommand("commutant",
                                  "enumerate self-equivalence witnesses");
  comm->add_option("--in", in_path, "walk spec JSON file")->required();
  comm->add_option("--window", window, "window half width (default: auto)");
  comm->add_flag("--allow-degenerate", allow_degenerate,
                 "sampled enumeration for walks with r on {0,1}");

  std::vector<const char*> argv;
  argv.push_back("qw1d");
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    apply_env_overrides();
    if (canon->parsed()) {
      return cmd_canonicalize(in_path, cls_name, window, gauge_path, out);
    }
    if (cls->parsed()) return cmd_classify(in_path, out);
    if (eq->parsed()) return cmd_equiv(a_path, b_path, oracle, window, out);
    if (sim->parsed()) {
      return cmd_simulate(in_path, state_arg, steps, out_path, out);
    }
    if (comm->parsed()) {
      return cmd_commutant(in_path, window, allow_degenerate, out);
    }
    err << "error: no subcommand\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qw1d
