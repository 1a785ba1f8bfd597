#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "poslog/formula.hpp"
#include "poslog/syntax.hpp"
#include "poslog/valuation.hpp"

namespace poslog {

/// A weighted clause, possibly with universally quantified variables.
struct PossClause {
  Clause clause;
  Valuation weight;

  bool operator==(const PossClause&) const = default;
};

/// A weighted ground formula.
struct PossFormula {
  Formula formula;
  Valuation weight;
};

/// An ordered list of weighted entries. A base whose entries are all
/// clauses is "clausal" and accepted by the proof engines; the semantic
/// oracle additionally requires it to be ground.
class KnowledgeBase {
 public:
  using Entry = std::variant<PossClause, PossFormula>;

  KnowledgeBase() = default;
  explicit KnowledgeBase(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  static KnowledgeBase from_clauses(std::vector<PossClause> clauses) {
    KnowledgeBase kb;
    for (PossClause& pc : clauses) kb.add(std::move(pc));
    return kb;
  }

  void add(PossClause pc) { entries_.emplace_back(std::move(pc)); }
  void add(PossFormula pf) { entries_.emplace_back(std::move(pf)); }
  void add(Entry e) { entries_.push_back(std::move(e)); }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Copy of this base extended by one entry.
  KnowledgeBase with(Entry e) const {
    KnowledgeBase kb(*this);
    kb.add(std::move(e));
    return kb;
  }

  bool is_clausal() const {
    for (const Entry& e : entries_)
      if (!std::holds_alternative<PossClause>(e)) return false;
    return true;
  }

  bool is_ground() const {
    for (const Entry& e : entries_) {
      if (const auto* pc = std::get_if<PossClause>(&e)) {
        if (!pc->clause.is_ground()) return false;
      }
    }
    return true;
  }

  std::vector<PossClause> clauses() const {
    std::vector<PossClause> out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_) {
      const auto* pc = std::get_if<PossClause>(&e);
      if (pc == nullptr) throw std::invalid_argument("knowledge base is not clausal");
      out.push_back(*pc);
    }
    return out;
  }

  /// Predicate symbols with their arities.
  std::map<std::string, std::size_t> predicates() const {
    std::map<std::string, std::size_t> out;
    auto note = [&](const Atom& a) { out.emplace(a.predicate(), a.arity()); };
    for (const Entry& e : entries_) {
      if (const auto* pc = std::get_if<PossClause>(&e)) {
        for (const Literal& lit : pc->clause.literals()) note(lit.atom());
      } else {
        std::get<PossFormula>(e).formula.for_each_atom(note);
      }
    }
    return out;
  }

  std::set<std::string> constants() const {
    std::set<std::string> out;
    auto note = [&](const Atom& a) { a.collect_constants(out); };
    for (const Entry& e : entries_) {
      if (const auto* pc = std::get_if<PossClause>(&e)) {
        for (const Literal& lit : pc->clause.literals()) note(lit.atom());
      } else {
        std::get<PossFormula>(e).formula.for_each_atom(note);
      }
    }
    return out;
  }

  /// The sorted ground atoms occurring in the base. Requires is_ground().
  std::vector<Atom> ground_atoms() const {
    std::set<Atom> s;
    for (const Entry& e : entries_) {
      if (const auto* pc = std::get_if<PossClause>(&e)) {
        if (!pc->clause.is_ground())
          throw std::invalid_argument("ground knowledge base required");
        for (const Literal& lit : pc->clause.literals()) s.insert(lit.atom());
      } else {
        std::get<PossFormula>(e).formula.for_each_atom([&](const Atom& a) { s.insert(a); });
      }
    }
    return {s.begin(), s.end()};
  }

 private:
  std::vector<Entry> entries_;
};

inline const Valuation& entry_weight(const KnowledgeBase::Entry& e) {
  if (const auto* pc = std::get_if<PossClause>(&e)) return pc->weight;
  return std::get<PossFormula>(e).weight;
}

inline bool entry_is_clause(const KnowledgeBase::Entry& e) {
  return std::holds_alternative<PossClause>(e);
}

/// The entry body as a ground formula (clauses become their disjunction).
inline Formula entry_formula(const KnowledgeBase::Entry& e) {
  if (const auto* pc = std::get_if<PossClause>(&e)) return clause_to_formula(pc->clause);
  return std::get<PossFormula>(e).formula;
}

/// The level cut: entries whose weight is >= w.
inline KnowledgeBase cut(const KnowledgeBase& kb, const Valuation& w) {
  KnowledgeBase out;
  for (const KnowledgeBase::Entry& e : kb.entries())
    if (w <= entry_weight(e)) out.add(e);
  return out;
}

/// The strict level cut: entries whose weight is > w.
inline KnowledgeBase cut_strict(const KnowledgeBase& kb, const Valuation& w) {
  KnowledgeBase out;
  for (const KnowledgeBase::Entry& e : kb.entries())
    if (w < entry_weight(e)) out.add(e);
  return out;
}

}  // namespace poslog
