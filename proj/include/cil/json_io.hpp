#pragma once

// JSON forms of CIL terms, BL terms and formulas, signatures and model
// configurations.  Documents carry a "schema" field; readers report the
// JSON path of the first violation.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cil/bl.hpp"
#include "cil/cil.hpp"
#include "cil/model.hpp"
#include "cil/syntax.hpp"
#include "json.hpp"

namespace cil::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kTermSchema = "cil-terms/1";
inline constexpr const char* kModelSchema = "cil-model/1";

class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& path, const std::string& msg)
      : std::runtime_error((path.empty() ? std::string("/") : path) + ": " + msg), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Json parse_json(const std::string& text);

Json to_json(const TermPtr& t);
TermPtr term_from_json(const Json& j, const Signature& sig, const std::string& path = "");

/// Declared primitives only; the built-in ones are implied.
Json to_json(const Signature& sig);
Signature signature_from_json(const Json& j, const std::string& path = "");

Json to_json(const bl::TermPtr& t);
Json to_json(const bl::FormulaPtr& f);
bl::TermPtr bl_term_from_json(const Json& j, const std::string& path = "");
bl::FormulaPtr bl_formula_from_json(const Json& j, const std::string& path = "");

/// {"schema", "signature", "terms": [{"name", "term"}]}.
Json to_json(const CilProgram& p);
CilProgram program_from_json(const Json& j);

/// Terms inside a model configuration are written in BL surface syntax.
Json to_json(const model::ModelConfig& cfg);
model::ModelConfig model_config_from_json(const Json& j);

Json to_json(const model::Report& r);

}  // namespace cil::io
