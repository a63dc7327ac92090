#pragma once

// CIL terms: primitives, pseudo-variables and the operator families comb,
// link, per, dum, not, and, ex.  Every node carries its sort, checked on
// construction.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cil/seqcomb.hpp"

namespace cil {

class SortError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sort value carried by pseudo-variables, which have none.
inline constexpr int kNoSort = -2;

class Signature {
 public:
  /// Always contains Eq_I : 2, Eq_N : 2 and Truth : 0.
  Signature();
  void declare(const std::string& name, int sort);
  std::optional<int> sort_of(const std::string& name) const;
  bool contains(const std::string& name) const { return prims_.count(name) > 0; }
  const std::map<std::string, int>& primitives() const { return prims_; }
  /// Names of sort -1.
  std::set<std::string> constants() const;
  bool operator==(const Signature&) const = default;

 private:
  std::map<std::string, int> prims_;
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Prim {
  std::string name;
};
struct PseudoVar {
  std::string name;
};
struct Comb {
  CombSeq seq;
  TermPtr head;
  std::vector<TermPtr> args;
};
struct Link {
  Partition seq;
  TermPtr body;
};
struct Per {
  Permutation seq;
  TermPtr body;
};
struct Dum {
  DumSeq seq;
  TermPtr body;
};
struct Neg {
  TermPtr body;
};
struct Conj {
  TermPtr left, right;
};
struct Ex {
  std::vector<bool> seq;
  TermPtr body;
};

struct Term {
  std::variant<Prim, PseudoVar, Comb, Link, Per, Dum, Neg, Conj, Ex> node;
  int sort = 0;
};

enum class Kind { Prim, PseudoVar, Comb, Link, Per, Dum, Neg, Conj, Ex };
inline Kind kind(const TermPtr& t) { return static_cast<Kind>(t->node.index()); }
template <class T>
const T& as(const TermPtr& t) {
  return std::get<T>(t->node);
}
template <class T>
const T* get(const TermPtr& t) {
  return std::get_if<T>(&t->node);
}

// Smart constructors; each checks operand sorts and throws SortError.
TermPtr prim(const std::string& name, int sort);
TermPtr prim(const std::string& name, const Signature& sig);
TermPtr pseudo(const std::string& name);
TermPtr comb(const CombSeq& s, TermPtr head, std::vector<TermPtr> args);
/// Rejects the trivial partition.
TermPtr link(const Partition& s, TermPtr body);
/// Rejects the identity.
TermPtr per(const Permutation& p, TermPtr body);
/// Rejects sequences inserting nothing.
TermPtr dum(const DumSeq& s, TermPtr body);
TermPtr neg(TermPtr body);
TermPtr conj(TermPtr a, TermPtr b);
/// Rejects all-zero masks.
TermPtr ex(std::vector<bool> s, TermPtr body);

/// Re-derives the sort of t against `sig`, checking every node.
int sort_of(const TermPtr& t, const Signature& sig);

bool equal(const TermPtr& a, const TermPtr& b);
std::size_t size(const TermPtr& t);
std::size_t depth(const TermPtr& t);
std::set<std::string> pseudo_vars(const TermPtr& t);
std::set<std::string> primitive_names(const TermPtr& t);
bool has_pseudo(const TermPtr& t);

/// Entry of the application-sequence of a comb node.
struct AppEntry {
  bool star = false;
  std::size_t arg = 0;  // index into the argument list
  int used = 0;         // the comb entry
  int residual = 0;     // argument sort minus the entry (0 for sorts -1 and none)
};
std::vector<AppEntry> application_sequence(const TermPtr& t);

/// `comb[*,1](K, link[{1,2}](L))` style text; 1-based parameters.
std::string to_string(const TermPtr& t);
std::string to_string(const Signature& sig);

/// Child subterms in order (head before arguments).
std::vector<TermPtr> children(const TermPtr& t);
/// Same node with children replaced (same count); sorts re-checked.
TermPtr with_children(const TermPtr& t, const std::vector<TermPtr>& kids);

/// Path of child indices from the root.
using Path = std::vector<std::size_t>;
TermPtr subterm_at(const TermPtr& t, const Path& p);
TermPtr replace_at(const TermPtr& t, const Path& p, TermPtr replacement);
std::string to_string(const Path& p);

}  // namespace cil
