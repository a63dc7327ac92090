#pragma once

// Surface syntax for BL formulas / terms and CIL terms / signatures.

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cil/bl.hpp"
#include "cil/cil.hpp"

namespace cil {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Identifiers listed in `constants` parse as constants, all others as
/// variables.
bl::FormulaPtr parse_bl_formula(std::string_view text, const std::set<std::string>& constants = {});
bl::TermPtr parse_bl_term(std::string_view text, const std::set<std::string>& constants = {});

/// A source file: `prim A, B : 2.` declarations, `let name = term.`
/// bindings and bare terms.  CIL statements end with '.' or ';'.
struct CilProgram {
  Signature sig;
  std::vector<std::pair<std::string, TermPtr>> terms;  // unnamed terms have ""
};
CilProgram parse_cil_program(std::string_view text, Signature base = {});
TermPtr parse_cil_term(std::string_view text, const Signature& sig);

/// `prim` declarations (ending in '.') followed by BL terms separated by ';'.
struct BlProgram {
  Signature sig;
  std::vector<bl::TermPtr> terms;
};
BlProgram parse_bl_program(std::string_view text, Signature base = {});

}  // namespace cil
