#include "qw1d/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qw1d/errors.hpp"

namespace qw1d {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw ParseError("empty complex number");

  auto parse_part = [&](const std::string& part) -> std::pair<double, bool> {
    // returns (value, is_imaginary)
    bool imag = !part.empty() && (part.back() == 'i' || part.back() == 'I');
    std::string num = imag ? part.substr(0, part.size() - 1) : part;
    if (imag && (num.empty() || num == "+" || num == "-")) {
      return {num == "-" ? -1.0 : 1.0, true};
    }
    try {
      std::size_t used = 0;
      double v = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
      return {v, imag};
    } catch (const std::exception&) {
      throw ParseError("bad complex component '" + part + "' in '" + text +
                       "'");
    }
  };

  // split at the last top-level +/- (not part of an exponent)
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
    }
  }
  double re = 0.0, im = 0.0;
  auto accumulate = [&](const std::string& part) {
    auto [v, is_imag] = parse_part(part);
    (is_imag ? im : re) += v;
  };
  if (split == std::string::npos) {
    accumulate(s);
  } else {
    accumulate(s.substr(0, split));
    accumulate(s.substr(split));
  }
  return {re, im};
}

// --- parsing -----------------------------------------------------------------

namespace {

double require_number(const json& j, const std::string& ctx) {
  if (!j.is_number()) throw ParseError(ctx + ": expected a number");
  return j.get<double>();
}

Complex parse_pair(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(ctx + ": expected [re, im]");
  }
  return {require_number(j[0], ctx), require_number(j[1], ctx)};
}

C2Vector parse_c2(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(ctx + ": expected [[re,im],[re,im]]");
  }
  return {parse_pair(j[0], ctx), parse_pair(j[1], ctx)};
}

CoeffSite parse_site(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw ParseError(ctx + ": expected a site object");
  if (j.contains("r")) {
    for (const char* key : {"r", "a", "b", "c", "d"}) {
      if (!j.contains(key)) {
        throw ParseError(ctx + ": missing coefficient '" + key + "'");
      }
    }
    try {
      return CoeffSite::make(require_number(j["r"], ctx + ".r"),
                             require_number(j["a"], ctx + ".a"),
                             require_number(j["b"], ctx + ".b"),
                             require_number(j["c"], ctx + ".c"),
                             require_number(j["d"], ctx + ".d"));
    } catch (const PhaseConstraintViolation& e) {
      throw ValidationError(ctx + ": phase constraint: " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(ctx + ": " + e.what());
    }
  }
  if (j.contains("xi_right")) {
    for (const char* key :
         {"xi_right", "xi_left", "zeta_to_left", "zeta_to_right"}) {
      if (!j.contains(key)) {
        throw ParseError(ctx + ": missing vector '" + key + "'");
      }
    }
    SiteVectors sv{parse_c2(j["xi_right"], ctx + ".xi_right"),
                   parse_c2(j["xi_left"], ctx + ".xi_left"),
                   parse_c2(j["zeta_to_left"], ctx + ".zeta_to_left"),
                   parse_c2(j["zeta_to_right"], ctx + ".zeta_to_right")};
    try {
      return coeffs_from_vectors(sv);
    } catch (const NonOrthonormal& e) {
      throw ValidationError(ctx + ": " + e.what());
    } catch (const PhaseConstraintViolation& e) {
      throw ValidationError(ctx + ": phase constraint: " + e.what());
    }
  }
  throw ParseError(ctx + ": site needs either coefficients (r,a,b,c,d) or "
                         "vectors (xi_right, ...)");
}

}  // namespace

LoadedSpec parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("spec document must be an object");
  if (!doc.contains("left_tail") || !doc.contains("right_tail")) {
    throw ParseError("spec needs 'left_tail' and 'right_tail'");
  }
  CoeffSite left = parse_site(doc["left_tail"], "left_tail");
  CoeffSite right = parse_site(doc["right_tail"], "right_tail");
  std::map<int, CoeffSite> exceptions;
  if (doc.contains("exceptions")) {
    if (!doc["exceptions"].is_object()) {
      throw ParseError("'exceptions' must map site indices to sites");
    }
    for (const auto& [key, value] : doc["exceptions"].items()) {
      int n = 0;
      try {
        std::size_t used = 0;
        n = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ParseError("exception key '" + key +
                         "' is not a site index");
      }
      exceptions.emplace(n, parse_site(value, "exceptions[" + key + "]"));
    }
  }
  LoadedSpec out{WalkSpec(left, right, std::move(exceptions)), std::nullopt};
  if (doc.contains("state")) {
    out.state = parse_c2(doc["state"], "state");
    if (!out.state->is_unit(tolerances().norm)) {
      throw ValidationError("state: not a unit vector");
    }
  }
  return out;
}

LoadedSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

// --- emission ----------------------------------------------------------------

namespace {

void emit_site(std::ostringstream& os, const CoeffSite& s) {
  os << "{\"r\":" << fmt17(s.r()) << ",\"a\":" << fmt17(s.a().value())
     << ",\"b\":" << fmt17(s.b().value()) << ",\"c\":" << fmt17(s.c().value())
     << ",\"d\":" << fmt17(s.d().value()) << "}";
}

void emit_phase_map(std::ostringstream& os, const std::vector<double>& values,
                    int half_width) {
  os << "{";
  for (int n = -half_width; n <= half_width; ++n) {
    if (n > -half_width) os << ",";
    os << "\"" << n << "\":" << fmt17(values[n + half_width]);
  }
  os << "}";
}

}  // namespace

std::string spec_to_json(const WalkSpec& spec) {
  std::ostringstream os;
  os << "{\"left_tail\":";
  emit_site(os, spec.left_tail());
  os << ",\"right_tail\":";
  emit_site(os, spec.right_tail());
  os << ",\"exceptions\":{";
  bool first = true;
  for (const auto& [n, site] : spec.exceptions()) {
    if (!first) os << ",";
    first = false;
    os << "\"" << n << "\":";
    emit_site(os, site);
  }
  os << "}}";
  return os.str();
}

std::string canonical_to_json(const CanonicalForm& form,
                              const std::optional<CanonicalState>& state) {
  std::ostringstream os;
  os << "{\"class\":\"" << to_string(form_class(form)) << "\",\"params\":";
  struct Visitor {
    std::ostringstream& os;
    void operator()(const CanonicalTI& f) {
      os << "{\"r\":" << fmt17(f.r) << "}";
    }
    void operator()(const CanonicalOneDefect& f) {
      os << "{\"r_pm\":" << fmt17(f.r_pm) << ",\"r_0\":" << fmt17(f.r_0)
         << ",\"nu1\":" << fmt17(f.nu1.value())
         << ",\"nu2\":" << fmt17(f.nu2.value()) << "}";
    }
    void operator()(const CanonicalCompleteTwoPhase& f) {
      os << "{\"r_plus\":" << fmt17(f.r_plus)
         << ",\"r_minus\":" << fmt17(f.r_minus)
         << ",\"sigma1\":" << fmt17(f.sigma1.value())
         << ",\"sigma2\":" << fmt17(f.sigma2.value()) << "}";
    }
    void operator()(const CanonicalTwoPhaseDefect& f) {
      os << "{\"r_plus\":" << fmt17(f.r_plus)
         << ",\"r_minus\":" << fmt17(f.r_minus) << ",\"r_0\":" << fmt17(f.r_0)
         << ",\"mu1\":" << fmt17(f.mu1.value())
         << ",\"mu2\":" << fmt17(f.mu2.value())
         << ",\"mu3\":" << fmt17(f.mu3.value()) << "}";
    }
    void operator()(const CanonicalGeneral& f) {
      os << "{\"window\":[" << -f.half_width << "," << f.half_width
         << "],\"r\":";
      emit_phase_map(os, f.r, f.half_width);
      os << ",\"theta\":";
      emit_phase_map(os, f.theta, f.half_width);
      os << ",\"slope_left\":" << fmt17(f.slope_left)
         << ",\"slope_right\":" << fmt17(f.slope_right) << "}";
    }
  };
  std::visit(Visitor{os}, form);
  if (state) {
    os << ",\"state\":{\"alpha\":" << fmt17(state->alpha)
       << ",\"theta\":" << fmt17(state->theta.value()) << "}";
  }
  os << "}";
  return os.str();
}

std::string witness_to_json(const EquivalenceWitness& w) {
  std::ostringstream os;
  os << "{\"lambda\":" << fmt17(w.lambda) << ",\"u\":";
  emit_phase_map(os, w.u, w.half_width);
  os << ",\"v\":";
  emit_phase_map(os, w.v, w.half_width);
  os << "}";
  return os.str();
}

std::string gauge_to_json(const GaugeTransform& g) {
  std::ostringstream os;
  os << "{\"global_phase\":" << fmt17(g.global_phase()) << ",\"window\":["
     << -g.half_width() << "," << g.half_width() << "],\"blocks\":{";
  for (int n = -g.half_width(); n <= g.half_width(); ++n) {
    if (n > -g.half_width()) os << ",";
    const Eigen::Matrix2cd& w = g.block(n);
    os << "\"" << n << "\":[";
    for (int i = 0; i < 2; ++i) {
      if (i) os << ",";
      os << "[";
      for (int j = 0; j < 2; ++j) {
        if (j) os << ",";
        os << "[" << fmt17(w(i, j).real()) << "," << fmt17(w(i, j).imag())
           << "]";
      }
      os << "]";
    }
    os << "]";
  }
  os << "}}";
  return os.str();
}

void write_distribution_csv(std::ostream& out,
                            const std::vector<Distribution>& per_step) {
  out << "t,site,probability\n";
  for (std::size_t t = 0; t < per_step.size(); ++t) {
    for (const auto& [site, p] : per_step[t]) {
      if (p <= 0.0) continue;
      out << t << "," << site << "," << fmt17(p) << "\n";
    }
  }
}

}  // namespace qw1d
