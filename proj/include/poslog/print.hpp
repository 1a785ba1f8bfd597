#pragma once

#include <string>

#include "poslog/formula.hpp"
#include "poslog/kb.hpp"
#include "poslog/syntax.hpp"

namespace poslog {

inline std::string to_string(const Term& t) { return t.name(); }

inline std::string to_string(const Atom& a) {
  if (a.args().empty()) return a.predicate();
  std::string out = a.predicate() + "(";
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (i > 0) out += ", ";
    out += a.args()[i].name();
  }
  out += ")";
  return out;
}

inline std::string to_string(const Literal& lit) {
  return lit.positive() ? to_string(lit.atom()) : "!" + to_string(lit.atom());
}

/// Canonical clause text: sorted literals joined by " | "; "False" if empty.
inline std::string to_string(const Clause& c) {
  if (c.empty()) return "False";
  std::string out;
  for (std::size_t i = 0; i < c.literals().size(); ++i) {
    if (i > 0) out += " | ";
    out += to_string(c.literals()[i]);
  }
  return out;
}

namespace detail {

inline int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not: return 4;
    default: return 5;
  }
}

inline std::string print_formula(const Formula& f);

inline std::string wrap(const Formula& f, int min_prec) {
  std::string s = print_formula(f);
  if (precedence(f.kind()) < min_prec) return "(" + s + ")";
  return s;
}

inline std::string print_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return "True";
    case Formula::Kind::False: return "False";
    case Formula::Kind::Atom: return to_string(f.atom());
    case Formula::Kind::Not: return "!" + wrap(f.operand(), 4);
    case Formula::Kind::And: {
      std::string out;
      for (std::size_t i = 0; i < f.operands().size(); ++i) {
        if (i > 0) out += " & ";
        out += wrap(f.operands()[i], 3);
      }
      return out;
    }
    case Formula::Kind::Or: {
      std::string out;
      for (std::size_t i = 0; i < f.operands().size(); ++i) {
        if (i > 0) out += " | ";
        out += wrap(f.operands()[i], 2);
      }
      return out;
    }
    case Formula::Kind::Implies:
      return wrap(f.premise(), 2) + " -> " + wrap(f.conclusion(), 1);
  }
  return "";
}

}  // namespace detail

/// Minimal-parentheses rendering; reparsing yields a structurally equal tree.
inline std::string to_string(const Formula& f) { return detail::print_formula(f); }

inline std::string to_string(const KnowledgeBase::Entry& e) {
  std::string body = entry_is_clause(e) ? to_string(std::get<PossClause>(e).clause)
                                        : to_string(std::get<PossFormula>(e).formula);
  return body + " [" + entry_weight(e).to_string() + "].";
}

inline std::string print_kb(const KnowledgeBase& kb) {
  std::string out;
  for (const KnowledgeBase::Entry& e : kb.entries()) {
    out += to_string(e);
    out += "\n";
  }
  return out;
}

}  // namespace poslog
