#pragma once

// The theorem dispatcher. Tries reduction rules in a fixed order, builds
// replayable certificates out of twist cocycles and terminal witnesses, and
// records number-field inputs as named axioms instead of re-proving them.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rapcert/action.hpp"
#include "rapcert/cohomology.hpp"
#include "rapcert/group.hpp"

namespace rapcert {

enum class step_rule {
  sylow_reduction,
  inner_form,
  section_twist,
  char_quotient,
  abelian,
  two_group_action
};

const char *rule_name(step_rule r);
std::optional<step_rule> rule_from_name(const std::string &name);

// the dispatcher attempts, in the fixed order. the antisolvable attempt is
// not a step label: it emits SECTION_TWIST and CHAR_QUOTIENT steps.
enum class dispatch_rule {
  abelian,
  two_group_action,
  sylow_reduction,
  inner_form,
  section_twist,
  antisolvable
};

const char *dispatch_name(dispatch_rule r);
std::optional<dispatch_rule> dispatch_from_name(const std::string &name);

struct ReductionStep {
  step_rule rule = step_rule::abelian;
  std::string citation;
  std::string input_fp;
  std::string output_fp; // equals input_fp on terminal steps
  nlohmann::json witness;
};

struct Certificate {
  std::string verdict; // "RA_HOLDS" or "UNKNOWN"
  std::vector<ReductionStep> chain;
  std::vector<std::string> axioms;  // sorted, unique
  std::vector<std::string> caveats; // sorted, unique
  nlohmann::json refusals;          // rule name -> reason, for UNKNOWN
};

inline const char *axiom_abelian = "Sansuc-abelian";
inline const char *axiom_weak_approx = "HW-ThmB";
inline const char *axiom_descent = "GLA-Brnr-6.1";
inline const char *axiom_neutrality = "GLA-Antisolvable-3";

// FNV-1a 64 over a canonical little-endian serialization of gamma table,
// module table and action arrays; 16 hex characters
std::string fingerprint_module(const GaloisModule &m);

struct certify_options {
  limits lim = default_limits();
  // restrict the first dispatch decision to one rule (diagnostics and
  // path-specific tests); recursion after a successful reduction is
  // unrestricted so chains still reach a base case
  std::optional<dispatch_rule> only_rule;
};

// fixed rule order: abelian, two-group action, sylow reduction (recursing on
// the submodule), inner form, section twist, antisolvable induction.
// RA_HOLDS with the first complete chain; otherwise UNKNOWN with per-rule
// refusal reasons.
Certificate certify(const GaloisModule &m, const certify_options &opt = {});

// one reduction attempt; steps carry the twist cocycles that replay needs
struct reduction_result {
  bool ok = false;
  std::string refusal;
  GaloisModule out;
  std::vector<ReductionStep> steps;
  std::vector<std::string> axioms;
  std::vector<std::string> caveats;
};

// restriction of the module to an invariant 2-Sylow subgroup (proper only)
reduction_result sylow_reduce(const GaloisModule &m,
                              const limits &lim = default_limits());

// centerless module with every action automorphism inner: twist by the
// inverse of the unique inner witnesses, yielding the constant form
reduction_result inner_form_normalize(const GaloisModule &m,
                                      const limits &lim = default_limits());

// almost complete module with a 2-group outer action: twist by a cocycle
// carrying the action onto a section of Aut -> Out. takes the table path
// within automorphism bounds and the wreath path on characteristically
// simple modules beyond them.
reduction_result almost_complete_twist(const GaloisModule &m,
                                       const limits &lim = default_limits());

// the antisolvable induction: characteristic quotient, section twist on the
// quotient, cocycle lift, recursion on the characteristic subgroup. the
// output action image is a 2-group.
reduction_result antisolvable_inner_form(const GaloisModule &m,
                                         const limits &lim = default_limits());

struct replay_result {
  bool ok = false;
  std::string first_failure; // empty when ok
};

// re-executes the chain from the recorded witnesses: fingerprint checks,
// cocycle verification and twisting, terminal witness validation. no
// searches are repeated.
replay_result replay(const Certificate &cert, const GaloisModule &m);

nlohmann::json certificate_to_json(const Certificate &cert);
Certificate certificate_from_json(const nlohmann::json &j);

// sorted keys, no insignificant whitespace
std::string canonical_dump(const nlohmann::json &j);

struct empirical_report {
  bool evaluated = false; // false when cohomology bounds blocked the check
  bool agrees = true;     // false only flags a finite-model discrepancy
  bool finite_model_only = false;
  std::string detail;
  SurjectivityReport surjectivity;
};

// juxtaposes the certificate verdict with the finite-level diagonal map;
// discrepancies are informational and always carry the caveat flag
empirical_report empirical_check(const GaloisModule &m,
                                 const LocalPlaceModel &places,
                                 const Certificate &cert,
                                 const limits &lim = default_limits());

} // namespace rapcert
