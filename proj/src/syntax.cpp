#include "cil/syntax.hpp"

#include <algorithm>
#include <cctype>

namespace cil {

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }
  bool peek(std::string_view tok) {
    skip();
    return s_.substr(pos_, tok.size()) == tok;
  }
  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  bool peek_ident() {
    skip();
    return pos_ < s_.size() && ident_start(s_[pos_]);
  }
  /// Keyword followed by a non-identifier character.
  bool accept_keyword(std::string_view kw) {
    skip();
    if (s_.substr(pos_, kw.size()) != kw) return false;
    std::size_t e = pos_ + kw.size();
    if (e < s_.size() && ident_char(s_[e])) return false;
    pos_ = e;
    return true;
  }
  std::string ident() {
    skip();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected identifier");
    std::size_t b = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }
  long integer() {
    skip();
    std::size_t b = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == b || (pos_ == b + 1 && s_[b] == '-')) fail("expected integer");
    return std::stol(std::string(s_.substr(b, pos_ - b)));
  }
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

bool reserved(const std::string& n) { return n == "all" || n == "ex"; }

class BlParser {
 public:
  BlParser(std::string_view s, const std::set<std::string>& consts) : lx_(s), consts_(consts) {}

  bl::FormulaPtr formula() {
    auto f = impl();
    while (lx_.accept("<->")) f = bl::iff(f, impl());
    return f;
  }

  bl::TermPtr term() {
    if (lx_.accept("[")) {
      auto f = formula();
      lx_.expect("]");
      std::vector<std::string> vs;
      if (lx_.accept("_")) {
        if (lx_.accept("{")) {
          while (!lx_.accept("}")) vs.push_back(var_name());
        } else {
          vs.push_back(var_name());
        }
      }
      try {
        return bl::abstract(f, std::move(vs));
      } catch (const bl::BlError& e) {
        lx_.fail(e.what());
      }
    }
    auto n = lx_.ident();
    if (reserved(n)) lx_.fail("keyword '" + n + "' used as a term");
    return consts_.count(n) ? bl::constant(n) : bl::var(n);
  }

  Lexer& lexer() { return lx_; }

 private:
  std::string var_name() {
    auto n = lx_.ident();
    if (reserved(n) || consts_.count(n)) lx_.fail("'" + n + "' cannot be bound");
    return n;
  }

  bl::FormulaPtr impl() {
    auto f = disj();
    if (lx_.accept("->")) return bl::implies(f, impl());
    return f;
  }
  bl::FormulaPtr disj() {
    auto f = conj();
    while (lx_.accept("|")) f = bl::disj(f, conj());
    return f;
  }
  bl::FormulaPtr conj() {
    auto f = unary();
    while (lx_.accept("&")) f = bl::conj(f, unary());
    return f;
  }
  bl::FormulaPtr unary() {
    if (lx_.accept("~")) return bl::neg(unary());
    bool all = lx_.accept_keyword("all");
    if (all || lx_.accept_keyword("ex")) {
      std::vector<std::string> vs;
      while (!lx_.accept(".")) vs.push_back(var_name());
      if (vs.empty()) lx_.fail("quantifier without variables");
      auto body = formula();
      for (auto it = vs.rbegin(); it != vs.rend(); ++it)
        body = all ? bl::forall(*it, body) : bl::exists(*it, body);
      return body;
    }
    if (lx_.accept("(")) {
      auto f = formula();
      lx_.expect(")");
      return f;
    }
    if (lx_.peek("[")) return equation(term());
    std::size_t start = lx_.pos();
    auto n = lx_.ident();
    if (reserved(n)) lx_.fail("unexpected keyword '" + n + "'");
    if (lx_.accept("(")) {
      std::vector<bl::TermPtr> args;
      if (!lx_.accept(")")) {
        do args.push_back(term());
        while (lx_.accept(","));
        lx_.expect(")");
      }
      return bl::pred(n, std::move(args));
    }
    if (lx_.peek("=i") || lx_.peek("=n")) {
      lx_.set_pos(start);
      return equation(term());
    }
    return bl::pred(n);
  }
  bl::FormulaPtr equation(bl::TermPtr lhs) {
    if (lx_.accept("=i")) return bl::eq_i(lhs, term());
    if (lx_.accept("=n")) return bl::eq_n(lhs, term());
    lx_.fail("expected '=i' or '=n' after term");
  }

  Lexer lx_;
  const std::set<std::string>& consts_;
};

}  // namespace

bl::FormulaPtr parse_bl_formula(std::string_view text, const std::set<std::string>& constants) {
  BlParser p(text, constants);
  auto f = p.formula();
  if (!p.lexer().at_end()) p.lexer().fail("trailing input");
  return f;
}

bl::TermPtr parse_bl_term(std::string_view text, const std::set<std::string>& constants) {
  BlParser p(text, constants);
  auto t = p.term();
  if (!p.lexer().at_end()) p.lexer().fail("trailing input");
  return t;
}

namespace {

const std::set<std::string> kCilKeywords = {"comb", "link", "per", "dum", "not", "and", "ex", "prim", "let"};

class CilParser {
 public:
  CilParser(std::string_view s, Signature& sig) : lx_(s), sig_(sig) {}

  Lexer& lexer() { return lx_; }

  TermPtr term() {
    std::size_t at = lx_.pos();
    try {
      return term_inner();
    } catch (const SeqError& e) {
      throw ParseError(e.what(), at);
    }
  }

  void declaration() {
    std::vector<std::string> names;
    do {
      auto n = lx_.ident();
      if (kCilKeywords.count(n) || n == "all") lx_.fail("keyword '" + n + "' cannot name a primitive");
      names.push_back(n);
    } while (lx_.accept(","));
    lx_.expect(":");
    long s = lx_.integer();
    for (const auto& n : names) sig_.declare(n, static_cast<int>(s));
  }

 private:
  std::vector<long> int_list() {
    std::vector<long> out;
    lx_.expect("[");
    if (lx_.accept("]")) return out;
    do out.push_back(lx_.integer());
    while (lx_.accept(","));
    lx_.expect("]");
    return out;
  }

  TermPtr body1() {
    lx_.expect("(");
    auto t = term();
    lx_.expect(")");
    return t;
  }

  TermPtr term_inner() {
    if (lx_.accept("?")) return pseudo(lx_.ident());
    std::size_t at = lx_.pos();
    auto n = lx_.ident();
    if (n == "comb" && lx_.peek("[")) {
      lx_.expect("[");
      std::vector<int> entries;
      if (!lx_.accept("]")) {
        do {
          if (lx_.accept("*"))
            entries.push_back(kStar);
          else {
            long v = lx_.integer();
            if (v < 0) lx_.fail("negative comb entry");
            entries.push_back(static_cast<int>(v));
          }
        } while (lx_.accept(","));
        lx_.expect("]");
      }
      if (entries.empty()) throw ParseError("empty comb-sequence", at);
      CombSeq s(std::move(entries));
      lx_.expect("(");
      auto head = term();
      std::vector<TermPtr> args;
      while (lx_.accept(",")) args.push_back(term());
      lx_.expect(")");
      return comb(s, head, std::move(args));
    }
    if (n == "link" && lx_.peek("[")) {
      lx_.expect("[");
      std::vector<std::vector<std::size_t>> blocks;
      std::size_t ground = 0;
      do {
        lx_.expect("{");
        std::vector<std::size_t> b;
        do {
          long v = lx_.integer();
          if (v < 1) lx_.fail("link positions start at 1");
          b.push_back(static_cast<std::size_t>(v - 1));
          ground = std::max(ground, static_cast<std::size_t>(v));
        } while (lx_.accept(","));
        lx_.expect("}");
        blocks.push_back(std::move(b));
      } while (lx_.accept(","));
      lx_.expect("]");
      auto part = Partition::from_blocks(ground, std::move(blocks));
      return link(part, body1());
    }
    if (n == "per" && lx_.peek("[")) {
      std::vector<std::size_t> img;
      for (long v : int_list()) {
        if (v < 1) lx_.fail("per images start at 1");
        img.push_back(static_cast<std::size_t>(v - 1));
      }
      Permutation p(std::move(img));
      return per(p, body1());
    }
    if (n == "dum" && lx_.peek("[")) {
      std::vector<unsigned> e;
      for (long v : int_list()) {
        if (v < 0) lx_.fail("negative dum entry");
        e.push_back(static_cast<unsigned>(v));
      }
      DumSeq d(std::move(e));
      return dum(d, body1());
    }
    if (n == "ex" && lx_.peek("[")) {
      std::vector<bool> e;
      for (long v : int_list()) {
        if (v != 0 && v != 1) lx_.fail("ex entries are 0 or 1");
        e.push_back(v == 1);
      }
      return ex(std::move(e), body1());
    }
    if (n == "not" && lx_.peek("(")) return neg(body1());
    if (n == "and" && lx_.peek("(")) {
      lx_.expect("(");
      auto a = term();
      lx_.expect(",");
      auto b = term();
      lx_.expect(")");
      return conj(a, b);
    }
    if (kCilKeywords.count(n)) throw ParseError("malformed '" + n + "' term", at);
    if (!sig_.contains(n)) throw ParseError("undeclared primitive " + n, at);
    return prim(n, sig_);
  }

  Lexer lx_;
  Signature& sig_;
};

bool statement_end(Lexer& lx) { return lx.accept(".") || lx.accept(";") || lx.at_end(); }

}  // namespace

CilProgram parse_cil_program(std::string_view text, Signature base) {
  CilProgram prog{std::move(base), {}};
  CilParser p(text, prog.sig);
  auto& lx = p.lexer();
  while (!lx.at_end()) {
    std::string name;
    if (lx.accept_keyword("prim")) {
      p.declaration();
      if (!statement_end(lx)) lx.fail("expected '.' after declaration");
      continue;
    }
    if (lx.accept_keyword("let")) {
      name = lx.ident();
      lx.expect("=");
    }
    auto t = p.term();
    if (!statement_end(lx)) lx.fail("expected '.' after term");
    prog.terms.emplace_back(std::move(name), std::move(t));
  }
  return prog;
}

TermPtr parse_cil_term(std::string_view text, const Signature& sig) {
  Signature copy = sig;
  CilParser p(text, copy);
  auto t = p.term();
  if (!p.lexer().at_end()) p.lexer().fail("trailing input");
  return t;
}

BlProgram parse_bl_program(std::string_view text, Signature base) {
  BlProgram prog{std::move(base), {}};
  CilParser decl(text, prog.sig);
  auto& dl = decl.lexer();
  while (dl.accept_keyword("prim")) {
    decl.declaration();
    dl.expect(".");
  }
  std::size_t start = dl.pos();
  auto consts = prog.sig.constants();
  std::string_view rest = text.substr(start);
  BlParser bp(rest, consts);
  while (!bp.lexer().at_end()) {
    try {
      prog.terms.push_back(bp.term());
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " (BL section)", start + e.offset());
    }
    if (!bp.lexer().accept(";") && !bp.lexer().at_end()) throw ParseError("expected ';'", start + bp.lexer().pos());
  }
  return prog;
}

}  // namespace cil
