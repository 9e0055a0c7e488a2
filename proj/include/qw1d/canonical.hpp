#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qw1d/gauge.hpp"
#include "qw1d/walk_spec.hpp"

namespace qw1d {

enum class WalkClass { TI, OneDefect, CompleteTwoPhase, TwoPhaseDefect, General };

std::string to_string(WalkClass c);
std::optional<WalkClass> walk_class_from_string(const std::string& s);

// Most specific structural class of the spec, testing site-data equality
// within the given tolerances.
WalkClass classify(const WalkSpec& spec);

// --- canonical parameterizations -----------------------------------------

// U_{r,theta}: column n carries (r_n e1 + e^{i theta_n} s_n e2) into
// (n-1, spin1) and (-e^{-i theta_n} s_n e1 + r_n e2) into (n+1, spin2),
// with theta_0 = theta_1 = 0. Values over a finite window; outside it
// theta_n continues affinely with the recorded tail slopes (mod 2pi).
struct CanonicalGeneral {
  int half_width = 0;
  std::vector<double> r;      // indexed by n + half_width
  std::vector<double> theta;  // same indexing, values in [0, 2pi)
  // forward differences theta_{n+1} - theta_n (mod 2pi) in the constant
  // tail regions, defining the profile beyond the window
  double slope_left = 0.0;
  double slope_right = 0.0;

  double r_at(int n) const { return r[n + half_width]; }
  double theta_at(int n) const { return theta[n + half_width]; }
};

struct CanonicalTwoPhaseDefect {
  double r_plus = 0.0, r_minus = 0.0, r_0 = 0.0;
  Phase mu1, mu2, mu3;
};

struct CanonicalCompleteTwoPhase {
  double r_plus = 0.0, r_minus = 0.0;
  Phase sigma1, sigma2;
};

struct CanonicalOneDefect {
  double r_pm = 0.0, r_0 = 0.0;
  Phase nu1, nu2;
};

struct CanonicalTI {
  double r = 0.0;
};

using CanonicalForm = std::variant<CanonicalTI, CanonicalOneDefect,
                                   CanonicalCompleteTwoPhase,
                                   CanonicalTwoPhaseDefect, CanonicalGeneral>;

WalkClass form_class(const CanonicalForm& form);

// Canonical state Phi_{alpha,theta} = alpha e1 + e^{i theta} sqrt(1-a^2) e2,
// alpha in [0,1]; theta = 0 by convention when alpha is 0 or 1.
struct CanonicalState {
  double alpha = 1.0;
  Phase theta;
};

// The eventually-constant spec whose window realizes the canonical form.
// Not available for General forms with nonzero tail slopes; use
// build_window_rtheta on the profiles instead.
WalkSpec canonical_to_spec(const CanonicalTwoPhaseDefect& f);
WalkSpec canonical_to_spec(const CanonicalCompleteTwoPhase& f);
WalkSpec canonical_to_spec(const CanonicalOneDefect& f);
WalkSpec canonical_to_spec(const CanonicalTI& f);

WindowOperator canonical_window(const CanonicalForm& form, int half_width);

// --- canonicalizers -------------------------------------------------------

// Every canonicalizer returns the parameters together with the gauge that
// realizes them and the verified residual
//   max | e^{i lambda} W U W^* - U_canon |  over interior window entries,
// which is checked against tolerances().gauge before returning
// (InternalInconsistency otherwise).

struct GeneralCanonicalization {
  CanonicalGeneral form;
  GaugeTransform gauge;
  GaugeDerivation derivation;
  double residual = 0.0;
};

struct TwoPhaseDefectCanonicalization {
  CanonicalTwoPhaseDefect form;
  GaugeTransform gauge;
  double residual = 0.0;
};

struct CompleteTwoPhaseCanonicalization {
  CanonicalCompleteTwoPhase form;
  GaugeTransform gauge;
  double residual = 0.0;
};

struct OneDefectCanonicalization {
  CanonicalOneDefect form;
  GaugeTransform gauge;
  double residual = 0.0;
};

struct TICanonicalization {
  CanonicalTI form;
  GaugeTransform gauge;
  double residual = 0.0;
};

// Full reduction to U_{r,theta} via the phase recursions
//   g_0 = 0,  g_{n-1} - g_n = a_n,
//   h_0 = g_{-1} - b_0,  h_{n+1} - h_n = d_n,
//   k_n = b_n - g_{n-1} + h_n,  theta_n = k_n - n k_1,
// with global phase ell = k_1 / 2 (representative of k_1 taken in [0,2pi)
// before halving). theta_0 = theta_1 = 0 exactly.
GeneralCanonicalization canonicalize_general(const WalkSpec& spec,
                                             int half_width);

// Walks with left tail for n <= -1, right tail for n >= 1 and one special
// site at 0. NotInClass if exceptions exist outside {0}.
TwoPhaseDefectCanonicalization canonicalize_two_phase_defect(
    const WalkSpec& spec, int half_width = 8);

// Walks with no exceptions. NotInClass otherwise.
CompleteTwoPhaseCanonicalization canonicalize_complete_two_phase(
    const WalkSpec& spec, int half_width = 8);

// left tail = right tail, exceptions only at 0. Delegates to the two-phase
// defect reduction and checks mu3 = 0.
OneDefectCanonicalization canonicalize_one_defect(const WalkSpec& spec,
                                                  int half_width = 8);

// All sites identical.
TICanonicalization canonicalize_ti(const WalkSpec& spec, int half_width = 8);

struct Canonicalization {
  CanonicalForm form;
  GaugeTransform gauge;
  double residual = 0.0;
};

// Dispatches on the class (or the caller's explicit choice; NotInClass if
// the structural precondition fails).
Canonicalization canonicalize(const WalkSpec& spec, WalkClass cls,
                              int half_width);
Canonicalization canonicalize_auto(const WalkSpec& spec, int half_width);

struct StateCanonicalization {
  CanonicalForm form;
  CanonicalState state;
  GaugeTransform gauge;  // rescaled so that W phi = Phi_{alpha,theta} exactly
  double residual = 0.0;
};

// Joint reduction of (walk, initial state in H_0). The walk gauge W is
// rephased by the inverse of the leading amplitude's argument, so the
// returned gauge maps phi to Phi_{alpha,theta} on the nose.
StateCanonicalization canonicalize_with_state(
    const WalkSpec& spec, const C2Vector& phi,
    std::optional<WalkClass> class_hint = std::nullopt, int half_width = 8);

}  // namespace qw1d
