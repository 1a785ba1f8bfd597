#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "poslog/formula.hpp"
#include "poslog/kb.hpp"
#include "poslog/print.hpp"
#include "poslog/unify.hpp"

namespace poslog {

/// Raised when a base cannot be put in clausal form without changing its
/// inconsistency degree.
class ClausalError : public std::runtime_error {
 public:
  explicit ClausalError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::vector<Clause> cnf_or_combine(const std::vector<std::vector<Clause>>& parts) {
  std::vector<Clause> acc;
  acc.emplace_back();
  for (const std::vector<Clause>& part : parts) {
    std::vector<Clause> next;
    for (const Clause& left : acc) {
      for (const Clause& right : part) {
        std::vector<Literal> lits = left.literals();
        lits.insert(lits.end(), right.literals().begin(), right.literals().end());
        Clause merged(std::move(lits));
        if (merged.is_tautology()) continue;
        next.push_back(std::move(merged));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    acc = std::move(next);
  }
  return acc;
}

inline std::vector<Clause> cnf_rec(const Formula& f, bool negated) {
  switch (f.kind()) {
    case Formula::Kind::True:
      if (negated) return {Clause()};
      return {};
    case Formula::Kind::False:
      if (negated) return {};
      return {Clause()};
    case Formula::Kind::Atom:
      return {Clause({Literal(f.atom(), !negated)})};
    case Formula::Kind::Not:
      return cnf_rec(f.operand(), !negated);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool conjunctive = (f.kind() == Formula::Kind::And) != negated;
      if (conjunctive) {
        std::vector<Clause> out;
        for (const Formula& k : f.operands()) {
          std::vector<Clause> part = cnf_rec(k, negated);
          out.insert(out.end(), part.begin(), part.end());
        }
        return out;
      }
      std::vector<std::vector<Clause>> parts;
      for (const Formula& k : f.operands()) parts.push_back(cnf_rec(k, negated));
      return cnf_or_combine(parts);
    }
    case Formula::Kind::Implies:
      // a -> b  ==  !a | b
      if (negated) {
        std::vector<Clause> out = cnf_rec(f.premise(), false);
        std::vector<Clause> rest = cnf_rec(f.conclusion(), true);
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
      }
      return cnf_or_combine({cnf_rec(f.premise(), true), cnf_rec(f.conclusion(), false)});
  }
  return {};
}

}  // namespace detail

/// Conjunctive normal form by negation pushing and distribution, with
/// tautological clauses dropped and duplicates merged.
inline std::vector<Clause> to_cnf(const Formula& f) {
  std::vector<Clause> out = detail::cnf_rec(f, false);
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Clause& c) { return c.is_tautology(); }),
            out.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// The clauses of the negated query; each is to be asserted with weight (N 1)
/// when running a refutation.
inline std::vector<Clause> negate_query(const Formula& f) {
  return to_cnf(Formula::negation(f));
}

/// Recognizes formulas that already are clauses: False, a literal, or a
/// disjunction of literals.
inline std::optional<Clause> as_clause(const Formula& f) {
  auto literal_of = [](const Formula& g) -> std::optional<Literal> {
    if (g.kind() == Formula::Kind::Atom) return Literal(g.atom(), true);
    if (g.kind() == Formula::Kind::Not && g.operand().kind() == Formula::Kind::Atom)
      return Literal(g.operand().atom(), false);
    return std::nullopt;
  };
  if (f.kind() == Formula::Kind::False) return Clause();
  if (auto lit = literal_of(f)) return Clause({*lit});
  if (f.kind() != Formula::Kind::Or) return std::nullopt;
  std::vector<Literal> lits;
  for (const Formula& k : f.operands()) {
    auto lit = literal_of(k);
    if (!lit) return std::nullopt;
    lits.push_back(*lit);
  }
  return Clause(std::move(lits));
}

/// Converts every entry to weighted clauses. A necessity-weighted formula
/// contributes one clause per CNF conjunct, each inheriting the formula's
/// weight; this preserves the inconsistency degree. Possibility-weighted
/// entries must already be clauses: splitting a Pi-weighted conjunction
/// weakens it, so no inconsistency-preserving clausal form exists and such
/// entries are rejected.
inline KnowledgeBase to_clausal(const KnowledgeBase& kb) {
  KnowledgeBase out;
  for (const KnowledgeBase::Entry& e : kb.entries()) {
    if (const auto* pc = std::get_if<PossClause>(&e)) {
      out.add(*pc);
      continue;
    }
    const PossFormula& pf = std::get<PossFormula>(e);
    if (pf.weight.is_necessity()) {
      for (Clause& c : to_cnf(pf.formula)) out.add(PossClause{std::move(c), pf.weight});
      continue;
    }
    if (auto c = as_clause(pf.formula)) {
      out.add(PossClause{std::move(*c), pf.weight});
      continue;
    }
    throw ClausalError("no inconsistency-preserving clausal form exists for the "
                       "possibility-weighted formula '" +
                       to_string(pf.formula) + "'; only clauses may carry Pi weights");
  }
  return out;
}

/// Replaces every clause by all of its ground instances over the given
/// constants joined with the base's own. An empty universe gets one fresh
/// constant so that quantification stays over a non-empty domain.
inline KnowledgeBase ground_kb(const KnowledgeBase& kb, std::set<std::string> constants = {}) {
  for (const std::string& c : kb.constants()) constants.insert(c);
  bool has_variables = false;
  for (const KnowledgeBase::Entry& e : kb.entries()) {
    if (const auto* pc = std::get_if<PossClause>(&e)) {
      if (!pc->clause.is_ground()) has_variables = true;
    }
  }
  if (constants.empty() && has_variables) {
    std::string fresh = "C0";
    for (int k = 0; constants.count(fresh) > 0; ++k) fresh = "C" + std::to_string(k);
    constants.insert(fresh);
  }
  std::vector<Term> universe;
  for (const std::string& name : constants) universe.push_back(Term::constant(name));

  KnowledgeBase out;
  for (const KnowledgeBase::Entry& e : kb.entries()) {
    const auto* pc = std::get_if<PossClause>(&e);
    if (pc == nullptr || pc->clause.is_ground()) {
      out.add(e);
      continue;
    }
    std::vector<std::string> vars = pc->clause.variables();
    std::vector<Clause> instances;
    std::vector<std::size_t> pick(vars.size(), 0);
    while (true) {
      Substitution subst;
      for (std::size_t i = 0; i < vars.size(); ++i) subst.set(vars[i], universe[pick[i]]);
      Clause inst = subst.apply(pc->clause);
      if (std::find(instances.begin(), instances.end(), inst) == instances.end())
        instances.push_back(std::move(inst));
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < universe.size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
    for (Clause& inst : instances) out.add(PossClause{std::move(inst), pc->weight});
  }
  return out;
}

}  // namespace poslog
