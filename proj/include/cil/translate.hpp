#pragma once

// The translation J from CIL to BL abstracts, the Bealer decomposition from
// BL back to CIL, and the sense-equivalence oracle built on them.

#include <map>
#include <string>

#include "cil/bl.hpp"
#include "cil/cil.hpp"

namespace cil {

/// Pseudo-variable name -> BL variable name.  Unmapped pseudo-variables
/// translate to the variable of the same name.
using PseudoVarMap = std::map<std::string, std::string>;

bl::TermPtr j_translate(const TermPtr& t, const Signature& sig, const PseudoVarMap& pvmap = {});
bl::TermPtr j_translate(const TermPtr& t, const Signature& sig, const PseudoVarMap& pvmap, bl::FreshSupply& fresh);

/// Decomposes an abstract into a CIL term whose J-image is alpha-equal to it.
/// Free variables are allowed only when they appear in `inverse_pvmap`
/// (BL variable -> pseudo-variable name).
TermPtr bealer_decompose(const bl::TermPtr& t, const Signature& sig, const PseudoVarMap& inverse_pvmap = {});

struct OracleVerdict {
  bool equivalent = false;
  std::string diagnostic;
};
OracleVerdict oracle_check(const TermPtr& a, const TermPtr& b, const Signature& sig,
                           const PseudoVarMap& pvmap = {});
bool oracle_sense_equiv(const TermPtr& a, const TermPtr& b, const Signature& sig,
                        const PseudoVarMap& pvmap = {});

/// Term of sort n+1 whose J-image is J(t) with the variable of X appended to
/// the v-sequence.
TermPtr pseudo_bind(const TermPtr& t, const std::string& x, const Signature& sig);

/// The canonical form: Bealer decomposition of the J-image.  Pseudo-variables
/// stay pseudo-variables.
TermPtr canonical_form(const TermPtr& t, const Signature& sig);

}  // namespace cil
