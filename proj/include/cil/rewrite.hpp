#pragma once

// The sense-rule rewriting system: rule schemas with computed parameters,
// leftmost-innermost normalization and the rewrite-based equivalence test.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cil/cil.hpp"

namespace cil {

class RewriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Declaration order is the rule priority.
enum class RuleId {
  R1, R2, R3, R4, R5, R6, R7, R8, R9, R10, R11, R12, R13, R14, R15, R16, R17, R18, R19, R20, R21,
  R20inv, R22, R23, REXSORT, RFF, RDUMOUT, RDUMCAP
};

const std::vector<RuleId>& all_rules();
std::string to_string(RuleId r);
std::optional<RuleId> rule_from_string(std::string_view s);

/// A rule instance.  `after` is the rewritten subterm with all parameters
/// already computed; `before` is kept to detect stale redexes.
struct Redex {
  RuleId rule;
  Path path;
  TermPtr before;
  TermPtr after;
};

struct RedexOptions {
  /// R20inv is a right-to-left rule and would loop with R20; it is only
  /// offered when asked for.
  bool include_inverse = false;
};

/// Redexes rooted at t, in rule order, taking t to have no parent.  Within
/// a term, RFF is not matched at a link whose parent is a per.
std::vector<Redex> root_redexes(const TermPtr& t, const RedexOptions& opt = {});
/// All redexes, leftmost-innermost first, then by rule order.
std::vector<Redex> applicable_redexes(const TermPtr& t, const RedexOptions& opt = {});
TermPtr apply_rule(const TermPtr& t, const Redex& r);

struct Step {
  RuleId rule;
  Path path;
  TermPtr before;
  TermPtr after;
};

struct NormalizeOptions {
  std::size_t fuel = 100000;
  std::function<void(const Step&)> on_step;
  std::size_t* steps = nullptr;  // receives the number of steps taken
};

TermPtr normalize(const TermPtr& t, const NormalizeOptions& opt = {});

/// Structural check of the canonical-form conditions: log prefix with
/// ordered quantifier masks and no vacuous quantified wire, dum over per over
/// link over a primitive or a comb of a primitive, modifiers fixed-free for
/// the comb, no comb argument exporting an unused wire.
bool is_canonical(const TermPtr& t);

/// Normalizes both and compares the trees.  With `validate`, also checks
/// agreement with the translation oracle and throws RewriteError on a
/// disagreement.
bool sense_equiv(const TermPtr& a, const TermPtr& b, const Signature& sig, bool validate = false);

/// Per wire: does it occur in the J-image's body.
std::vector<bool> used_wires(const TermPtr& t);
/// Removes the flagged wires, which must be unused; the J-image of the
/// result is the J-image of t with those v-sequence entries deleted.
TermPtr drop_wires(const TermPtr& t, const std::vector<bool>& drop);

}  // namespace cil
