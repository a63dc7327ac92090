#pragma once

// The bundled inference corpus: natural-language inferences about belief,
// truth and that-clauses, formalized in BL and checked in a term model.

#include <cstddef>
#include <string>
#include <vector>

#include "cil/json_io.hpp"
#include "cil/model.hpp"

namespace cil::demo {

inline constexpr const char* kCorpusSchema = "cil-demo/1";

struct Inference {
  enum class Expect { Valid, Countermodel };
  std::string name;
  std::string text;
  std::vector<std::string> premises;  // BL formulas
  std::string conclusion;
  Expect expect = Expect::Valid;
  /// Closed terms added to the carrier in the random sweep.
  std::vector<std::string> extra;
};

struct Equivalence {
  std::string a, b;  // CIL terms
  bool expect = true;
};

struct Corpus {
  Signature sig;
  std::vector<Inference> inferences;
  Signature cil_sig;
  std::vector<Equivalence> equivalences;
  model::ModelConfig model;
};

/// Reads `dir`/prelude.json and the model file it names.
Corpus load_corpus(const std::string& dir);
Corpus corpus_from_json(const io::Json& corpus, const io::Json& model);

struct Verdict {
  std::string formula;
  std::string cil;  // the formula's sense as a CIL term
  bool holds = false;
  bool agree = false;  // formula, CIL term and both evaluators give one answer
};

struct Outcome {
  std::string name;
  std::vector<Verdict> premises;
  Verdict conclusion;
  bool as_expected = false;
  std::string to_text() const;
};

/// Parses, sort-checks and evaluates every formula of the inference.
Outcome evaluate(const Inference& inf, const model::Model& m);

struct Sweep {
  std::size_t trials = 0;
  std::size_t premise_models = 0;   // trials where all premises hold
  std::size_t counterexamples = 0;  // ... and the conclusion fails
  std::size_t carrier_size = 0;
};

/// Random single-extension fact sets over the carrier of constants plus
/// `inf.extra`, with the corpus model's assignment.
Sweep random_sweep(const Inference& inf, const Corpus& c, std::size_t trials, unsigned seed);

}  // namespace cil::demo
