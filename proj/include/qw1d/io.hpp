#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "qw1d/canonical.hpp"
#include "qw1d/equivalence.hpp"
#include "qw1d/evolve.hpp"
#include "qw1d/walk_spec.hpp"

namespace qw1d {

// %.17g — lossless round trip for doubles.
std::string fmt17(double x);

// "a+bi" with optional real/imaginary part, e.g. "1", "-0.5i", "0.3-0.7i".
Complex parse_complex(const std::string& text);

struct LoadedSpec {
  WalkSpec spec;
  std::optional<C2Vector> state;
};

// Walk spec document: coefficient sites {"r":..,"a":..,"b":..,"c":..,"d":..}
// or vector sites {"xi_right": [[re,im],[re,im]], ...} (converted through
// coeffs_from_vectors on load), under "left_tail" / "right_tail" /
// "exceptions" (site index keys as decimal strings). Optional "state":
// [[re,im],[re,im]]. Throws ParseError / ValidationError.
LoadedSpec parse_spec_text(const std::string& text);
LoadedSpec load_spec_file(const std::string& path);

std::string spec_to_json(const WalkSpec& spec);

// {"class": ..., "params": {...}}
std::string canonical_to_json(const CanonicalForm& form,
                              const std::optional<CanonicalState>& state =
                                  std::nullopt);

// {"lambda": ..., "u": {...}, "v": {...}}
std::string witness_to_json(const EquivalenceWitness& w);

std::string gauge_to_json(const GaugeTransform& g);

// header t,site,probability; sites ascending per step, zero rows omitted.
void write_distribution_csv(std::ostream& out,
                            const std::vector<Distribution>& per_step);

}  // namespace qw1d
