#pragma once

// Finite term models: the carrier is a depth-bounded family of closed BL
// terms taken up to alpha-equivalence, extensions assign relations to the
// predicate symbols, and truth is computed either along the Bealer
// decomposition of an element or by saturating it to a closed formula.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cil/bl.hpp"
#include "cil/cil.hpp"

namespace cil::model {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A carrier element: a closed BL term with its alpha key and sort index.
struct Element {
  bl::TermPtr term;
  std::string key;
  int sort = -1;
};
/// Requires a closed term; constants have sort -1, abstracts their arity.
Element make_element(const bl::TermPtr& t);

struct CarrierSpec {
  std::size_t depth = 1;
  int max_sort = 2;
  std::size_t max_elements = 48;
  /// Predicates used by the enumeration; empty means every declared
  /// predicate except Eq_I and Eq_N.
  std::vector<std::string> predicates;
  /// Extra closed terms, placed right after the constants.
  std::vector<bl::TermPtr> extra;
};

class Carrier {
 public:
  /// Constants, then `extra`, then atomic abstracts [P(a1..ak)]_{x1..xn}
  /// level by level.  Arguments are variables of the v-sequence or elements
  /// of lower levels; every variable occurs and first occurrences follow
  /// the v-sequence; a level-d abstract has an argument of level d-1.
  static Carrier enumerate(const Signature& sig, const CarrierSpec& spec);

  const std::vector<Element>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  const Element* find(const std::string& key) const;
  bool contains(const bl::TermPtr& t) const;
  std::vector<Element> of_sort(int n) const;
  std::size_t depth_bound() const { return depth_; }
  /// True when max_elements cut the enumeration short.
  bool truncated() const { return truncated_; }

 private:
  std::vector<Element> elems_;
  std::map<std::string, std::size_t> index_;
  std::size_t depth_ = 0;
  bool truncated_ = false;
};

/// Relations of one state of affairs: predicate -> listed tuples of closed
/// terms.  Sort-0 predicates hold when the empty tuple is listed.
struct Extension {
  std::string name;
  std::map<std::string, std::vector<std::vector<bl::TermPtr>>> facts;

  void add(const std::string& pred, const std::vector<bl::TermPtr>& tuple) { facts[pred].push_back(tuple); }
};

enum class QuantifierRange { All, Individuals };
enum class Evaluator { Decomposition, Saturation };

using Assignment = std::map<std::string, bl::TermPtr>;

struct ModelConfig {
  Signature sig;
  CarrierSpec carrier;
  std::vector<Extension> extensions;
  std::string actual;  // name of the actual extension
  /// Primitive -> element of its sort; missing predicates denote their
  /// elementary abstract.
  std::map<std::string, bl::TermPtr> interpretation;
  /// Free variable / pseudo-variable -> element.
  Assignment assignment;
  QuantifierRange range = QuantifierRange::All;
};

class Model {
 public:
  explicit Model(ModelConfig cfg);
  ~Model();
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  const ModelConfig& config() const { return cfg_; }
  const Carrier& carrier() const { return carrier_; }
  const std::vector<Element>& domain() const { return domain_; }
  std::size_t extension_count() const { return cfg_.extensions.size(); }
  std::size_t actual() const { return actual_; }

  /// Membership of `tuple` in H_h(d).  Tuple entries must be carrier
  /// elements and match the arity of d.
  bool eval_extension(std::size_t h, const bl::TermPtr& d, const std::vector<bl::TermPtr>& tuple,
                      Evaluator ev = Evaluator::Decomposition) const;
  /// Same without the carrier-membership check on the tuple.
  bool holds(std::size_t h, const Element& d, const std::vector<Element>& tuple,
             Evaluator ev = Evaluator::Decomposition) const;
  /// d ~_N d': equal extensions in every H.
  bool eq_n(const Element& a, const Element& b, Evaluator ev = Evaluator::Decomposition) const;

  /// M[phi]: the assignment and the interpretation applied, as a closed
  /// sort-0 abstract.
  bl::TermPtr interpret(const bl::FormulaPtr& phi) const;
  bl::TermPtr interpret(const bl::TermPtr& t) const;
  bl::TermPtr interpret(const bl::TermPtr& t, const Assignment& a) const;
  /// CIL terms go through J; pseudo-variables are read from the assignment.
  bl::TermPtr interpret(const TermPtr& t) const;

  bool satisfies(const bl::FormulaPtr& phi, Evaluator ev = Evaluator::Decomposition) const;
  bool satisfies(const TermPtr& t, Evaluator ev = Evaluator::Decomposition) const;
  /// Satisfaction under the assignment with `changes` applied.
  bool satisfies_under(const bl::FormulaPtr& phi, const Assignment& changes,
                       Evaluator ev = Evaluator::Decomposition) const;
  bool satisfies_in(std::size_t h, const bl::FormulaPtr& phi, Evaluator ev = Evaluator::Decomposition) const;

  /// The CIL term the decomposition evaluator walks for d.
  TermPtr decomposition(const Element& d) const;

 private:
  struct Ctx;
  struct Cache;
  bool eval_element(std::size_t h, const Element& d, const std::vector<Element>& t, Evaluator ev, Ctx& c) const;
  bool eval_cil(std::size_t h, const TermPtr& t, const std::vector<Element>& tuple, Ctx& c) const;
  bool eval_formula(std::size_t h, const bl::FormulaPtr& f, Ctx& c) const;
  bool eq_n(const Element& a, const Element& b, Evaluator ev, Ctx& c) const;
  bool atom(std::size_t h, const std::string& pred, const std::vector<Element>& args, Evaluator ev, Ctx& c) const;
  Element arg_element(const TermPtr& arg) const;
  bool exists_fill(std::size_t h, const TermPtr& body, const std::vector<bool>& mask,
                   std::vector<Element>& slots, std::size_t from, Ctx& c) const;
  bool for_tuples(std::size_t n, const std::function<bool(const std::vector<Element>&)>& f) const;

  ModelConfig cfg_;
  Carrier carrier_;
  std::vector<Element> domain_;
  std::size_t actual_ = 0;
  std::vector<std::map<std::string, std::set<std::vector<std::string>>>> facts_;  // by extension, as keys
  std::unique_ptr<Cache> cache_;
};

/// Closed term with the whole v-sequence filled: [phi]_{x1..xn} with xi := ti.
bl::TermPtr saturate(const bl::TermPtr& d, const std::vector<bl::TermPtr>& tuple);
/// Fills the last |tuple| positions, keeping the leading ones abstracted.
bl::TermPtr saturate_tail(const bl::TermPtr& d, const std::vector<bl::TermPtr>& tuple);

struct Check {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string witness;  // first failure
  bool pass() const { return failures == 0 && instances > 0; }
};

struct Report {
  std::string title;
  std::vector<Check> checks;
  bool ok() const;
  std::string to_text() const;
};

/// (N), (S), eq_I forcing, Truth, T not ~_N F and the eq_N equivalence laws.
Report check_model_conditions(const Model& m);

enum class Suite { Fol, Eq, Nec, S5, Subst, Lemmas };
const std::vector<Suite>& all_suites();
std::string to_string(Suite s);
Suite suite_from_string(const std::string& s);

struct HarnessOptions {
  std::size_t max_instances = 150;  // per scheme
  unsigned seed = 1;
};
Report validity_harness(const Model& m, Suite s, const HarnessOptions& opt = {});

}  // namespace cil::model
