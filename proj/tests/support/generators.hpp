#pragma once

#include <random>

#include "qw1d/canonical.hpp"
#include "qw1d/equivalence.hpp"
#include "qw1d/walk_spec.hpp"

namespace qw1d::testing {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);

// phases free, d pinned by the constraint; r in (r_lo, r_hi)
CoeffSite random_site(Rng& rng, double r_lo = 0.05, double r_hi = 0.95);

WalkSpec random_spec(Rng& rng, WalkClass cls, double r_lo = 0.05,
                     double r_hi = 0.95);

// any class, weighted toward the special ones
WalkSpec random_spec_any(Rng& rng, double r_lo = 0.05, double r_hi = 0.95);

C2Vector random_unit_state(Rng& rng);

// xi pair and zeta pair are columns of independent Haar-ish 2x2 unitaries
SiteVectors random_site_vectors(Rng& rng);

struct GaugedCopy {
  WalkSpec spec;
  EquivalenceWitness witness;  // maps the source window to the copy's
};

// Applies a random diagonal gauge e^{i lambda} W . W^* with eventually-linear
// phases u_n = v_n = p n (+ optional per-site noise on [-2,2], which turns
// the copy into a General-class spec). Class-preserving when noise is off.
GaugedCopy gauged_copy(Rng& rng, const WalkSpec& src, int half_width,
                       bool with_site_noise);

}  // namespace qw1d::testing
