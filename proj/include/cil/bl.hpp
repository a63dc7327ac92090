#pragma once

// BL: first-order logic whose terms include intensional abstracts
// [phi]_{x1...xn}.  Provides the AST, variable analysis, capture-avoiding
// substitution, alpha-equivalence, the metasyntactic operations LOG / DUM /
// PER / LINK / COMB on abstracts and the extraction lemmas they invert.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cil/seqcomb.hpp"

namespace cil::bl {

class BlError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Formula;
struct Term;
using FormulaPtr = std::shared_ptr<const Formula>;
using TermPtr = std::shared_ptr<const Term>;

struct Var {
  std::string name;
};
struct Const {
  std::string name;
};
struct Abstract {
  FormulaPtr scope;
  std::vector<std::string> vseq;
};
struct Term {
  std::variant<Var, Const, Abstract> node;
};

struct Pred {
  std::string name;
  std::vector<TermPtr> args;
};
struct Not {
  FormulaPtr body;
};
struct And {
  FormulaPtr left, right;
};
struct Exists {
  std::string var;
  FormulaPtr body;
};
struct Forall {
  std::string var;
  FormulaPtr body;
};
struct Formula {
  std::variant<Pred, Not, And, Exists, Forall> node;
};

// Distinguished predicate symbols.
inline const std::string kEqI = "Eq_I";
inline const std::string kEqN = "Eq_N";
inline const std::string kTruth = "Truth";

// ----------------------------------------------------------------- builders

TermPtr var(std::string name);
TermPtr constant(std::string name);
TermPtr abstract(FormulaPtr scope, std::vector<std::string> vseq = {});
FormulaPtr pred(std::string name, std::vector<TermPtr> args = {});
FormulaPtr eq_i(TermPtr a, TermPtr b);
FormulaPtr eq_n(TermPtr a, TermPtr b);
FormulaPtr neg(FormulaPtr f);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr exists(std::string v, FormulaPtr f);
FormulaPtr forall(std::string v, FormulaPtr f);
/// Sugar over ~ and &.
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);

const Abstract& as_abstract(const TermPtr& t);
bool is_abstract(const TermPtr& t);

// -------------------------------------------------------------- variables

struct VarSets {
  std::set<std::string> free;
  std::set<std::string> bound;
};
VarSets analyze_vars(const TermPtr& t);
VarSets analyze_vars(const FormulaPtr& f);
std::set<std::string> free_vars(const TermPtr& t);
std::set<std::string> free_vars(const FormulaPtr& f);
/// Free variables in order of first occurrence (left to right).
std::vector<std::string> free_vars_ordered(const TermPtr& t);
std::vector<std::string> free_vars_ordered(const FormulaPtr& f);
/// Every variable name occurring anywhere (free, bound, or in a v-sequence).
std::set<std::string> all_var_names(const TermPtr& t);
std::set<std::string> all_var_names(const FormulaPtr& f);

/// Fixed total order on variable names: user names lexicographically, then
/// generated names v1 < v2 < ... .
bool var_less(const std::string& a, const std::string& b);
bool is_generated_name(const std::string& n);

/// Source of fresh variables v<k>, strictly above every reserved name.
class FreshSupply {
 public:
  FreshSupply() = default;
  void reserve(const std::string& name);
  void reserve(const TermPtr& t);
  void reserve(const FormulaPtr& f);
  std::string next();
  static FreshSupply above(const TermPtr& t) {
    FreshSupply s;
    s.reserve(t);
    return s;
  }

 private:
  std::size_t next_ = 1;
};

// ----------------------------------------------------------- substitution

using Substitution = std::map<std::string, TermPtr>;
/// Capture-avoiding simultaneous substitution of free variables.
FormulaPtr substitute(const FormulaPtr& f, const Substitution& sub, FreshSupply& fresh);
TermPtr substitute(const TermPtr& t, const Substitution& sub, FreshSupply& fresh);
/// Rename the v-sequence of an abstract to the given names.
TermPtr rename_vseq(const TermPtr& abs, const std::vector<std::string>& names, FreshSupply& fresh);
/// Substitute predicate symbols: P(t1..tn) becomes scope[vseq := t].
FormulaPtr substitute_predicates(const FormulaPtr& f, const std::map<std::string, TermPtr>& by,
                                 FreshSupply& fresh);

// ------------------------------------------------------------------- alpha

/// Canonical text for the alpha-class.  Bound variables are numbered in
/// binding order, `all` is read as `~ex~`, and quantifiers over a variable
/// that does not occur free in their body are dropped.
std::string alpha_key(const TermPtr& t);
std::string alpha_key(const FormulaPtr& f);
bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b);
/// Term depth: abstracts nest, formulas count connectives.
std::size_t depth(const TermPtr& t);
std::size_t depth(const FormulaPtr& f);

std::string to_string(const TermPtr& t);
std::string to_string(const FormulaPtr& f);
bool structurally_equal(const TermPtr& a, const TermPtr& b);
bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

// ----------------------------------------------- metasyntactic operations

TermPtr apply_log_not(const TermPtr& t);
/// Both abstracts need v-sequences of equal length; the second is renamed
/// onto the first.
TermPtr apply_log_and(const TermPtr& a, const TermPtr& b, FreshSupply& fresh);
/// Quantifies the 1-positions of s, leftmost outermost.
TermPtr apply_log_exists(const std::vector<bool>& s, const TermPtr& t);
TermPtr apply_dum(const DumSeq& s, const TermPtr& t, FreshSupply& fresh);
TermPtr apply_per(const Permutation& p, const TermPtr& t);
/// Identifies v-sequence variables sharing a block with the block minimum.
TermPtr apply_link(const Partition& s, const TermPtr& t, FreshSupply& fresh);
/// Generalised substitution.  `args` holds one term per non-star entry:
/// abstracts of arity >= entry, or constants / variables where the entry is 0.
TermPtr apply_comb(const CombSeq& s, const TermPtr& head, const std::vector<TermPtr>& args,
                   FreshSupply& fresh);

// ---------------------------------------------------------- classification

struct AbstractClass {
  bool atomic = false;
  bool elementary = false;
  bool non_redundant = false;
  bool ordered = false;
  bool unlinked = false;
};
AbstractClass classify(const TermPtr& t);

struct FSequence {
  std::vector<std::vector<std::string>> entries;
  /// Permutation taking <+f> onto the v-sequence (non-redundant only).
  std::optional<Permutation> assoc_perm;
  AbstractClass cls;
};
FSequence f_sequence(const TermPtr& t);

/// Tree of LOG operations over atomic abstracts.
struct LogTree {
  enum class Kind { Leaf, Not, And, Exists };
  Kind kind = Kind::Leaf;
  std::vector<bool> ex;          // for Exists
  TermPtr leaf;                  // for Leaf
  std::vector<LogTree> children;
  TermPtr rebuild(FreshSupply& fresh) const;
};
/// `all` is read as `~ex~`; consecutive existentials merge into one node
/// quantifying trailing v-sequence positions; vacuous quantifiers vanish.
LogTree logical_tree_decompose(const TermPtr& t, FreshSupply& fresh);

/// How the variables exported by one argument are ordered in the core.
enum class BlockOrder {
  FirstOccurrence,  // order of first occurrence inside the argument
  VseqOrder,        // order of the abstract's own v-sequence
};

struct Modifiers {
  std::optional<DumSeq> dum;
  std::optional<Permutation> per;
  std::optional<Partition> link;
  TermPtr core;
  TermPtr rebuild(FreshSupply& fresh) const;
};
/// t = DUM PER LINK core with core atomic, non-redundant, unlinked and
/// block-contiguous.
Modifiers extract_modifiers(const TermPtr& t, FreshSupply& fresh,
                            BlockOrder order = BlockOrder::FirstOccurrence);

struct CombExtraction {
  CombSeq seq;
  TermPtr head;                // elementary
  std::vector<TermPtr> args;
  TermPtr rebuild(FreshSupply& fresh) const;
};
/// Inverse of COMB for a non-elementary, non-redundant, unlinked atomic
/// abstract whose v-sequence is the concatenation of per-argument blocks.
CombExtraction extract_comb(const TermPtr& t, FreshSupply& fresh);

}  // namespace cil::bl
