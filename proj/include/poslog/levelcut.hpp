#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "poslog/kb.hpp"
#include "poslog/resolution.hpp"
#include "poslog/syntax.hpp"
#include "poslog/unify.hpp"

namespace poslog {

enum class Decision { Consistent, Inconsistent, Unknown };

namespace detail {

// Backtracking model search with unit propagation. Complete on ground
// clauses, so the answer is always decisive here.
class GroundSolver {
 public:
  explicit GroundSolver(const std::vector<Clause>& clauses) {
    std::set<Atom> atom_set;
    for (const Clause& c : clauses)
      for (const Literal& lit : c.literals()) atom_set.insert(lit.atom());
    std::vector<Atom> atoms(atom_set.begin(), atom_set.end());
    std::map<Atom, int> index;
    for (std::size_t i = 0; i < atoms.size(); ++i) index.emplace(atoms[i], static_cast<int>(i));
    atom_count_ = atoms.size();
    for (const Clause& c : clauses) {
      std::vector<std::pair<int, bool>> lits;
      for (const Literal& lit : c.literals()) lits.emplace_back(index[lit.atom()], lit.positive());
      clauses_.push_back(std::move(lits));
    }
  }

  bool satisfiable() {
    std::vector<int8_t> assign(atom_count_, -1);
    return solve(assign);
  }

 private:
  bool solve(std::vector<int8_t>& assign) {
    // unit propagation to fixpoint
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& clause : clauses_) {
        int unassigned = -1;
        bool unassigned_sign = false;
        std::size_t open = 0;
        bool satisfied = false;
        for (const auto& [var, sign] : clause) {
          if (assign[var] < 0) {
            ++open;
            unassigned = var;
            unassigned_sign = sign;
          } else if ((assign[var] == 1) == sign) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) continue;
        if (open == 0) return false;  // conflict
        if (open == 1) {
          assign[unassigned] = unassigned_sign ? 1 : 0;
          changed = true;
        }
      }
    }
    int branch = -1;
    for (std::size_t v = 0; v < assign.size(); ++v) {
      if (assign[v] < 0) {
        branch = static_cast<int>(v);
        break;
      }
    }
    if (branch < 0) return true;  // total assignment without conflict
    for (int8_t value : {int8_t{1}, int8_t{0}}) {
      std::vector<int8_t> next = assign;
      next[branch] = value;
      if (solve(next)) return true;
    }
    return false;
  }

  std::size_t atom_count_ = 0;
  std::vector<std::vector<std::pair<int, bool>>> clauses_;
};

// Budgeted classical saturation for first-order clause sets: resolution
// without weights, with tautology deletion and subsumption.
inline Decision fo_saturation(const std::vector<Clause>& input, const SearchBudget& budget) {
  std::vector<Clause> retained;
  std::vector<char> alive;
  std::vector<std::size_t> queue;
  std::size_t inferences = 0;

  auto insert = [&](Clause c) -> std::optional<Decision> {
    if (c.is_tautology()) return std::nullopt;
    for (std::size_t i = 0; i < retained.size(); ++i)
      if (alive[i] && subsumes(retained[i], c)) return std::nullopt;
    if (c.empty()) return Decision::Inconsistent;
    for (std::size_t i = 0; i < retained.size(); ++i)
      if (alive[i] && subsumes(c, retained[i])) alive[i] = 0;
    retained.push_back(std::move(c));
    alive.push_back(1);
    queue.push_back(retained.size() - 1);
    if (retained.size() > budget.max_retained) return Decision::Unknown;
    return std::nullopt;
  };

  for (const Clause& c : input)
    if (auto done = insert(c)) return *done;

  std::size_t processed = 0;
  while (processed < queue.size()) {
    std::size_t given = queue[processed++];
    if (!alive[given]) continue;
    for (std::size_t other = 0; other <= given; ++other) {
      if (!alive[other] && other != given) continue;
      std::set<std::string> taken;
      for (const std::string& v : retained[given].variables()) taken.insert(v);
      Clause partner =
          taken.empty() ? retained[other] : rename_apart(retained[other], taken).first;
      for (const Literal& l : retained[given].literals()) {
        for (const Literal& r : partner.literals()) {
          if (l.positive() == r.positive()) continue;
          auto sigma = unify(l.atom(), r.atom());
          if (!sigma) continue;
          if (++inferences > budget.max_inferences) return Decision::Unknown;
          std::vector<Literal> lits;
          for (const Literal& keep : retained[given].literals())
            if (!(keep == l)) lits.push_back(sigma->apply(keep));
          for (const Literal& keep : partner.literals())
            if (!(keep == r)) lits.push_back(sigma->apply(keep));
          if (auto done = insert(Clause(std::move(lits)))) return *done;
        }
      }
      // factors of the given clause
      if (other == given) {
        const auto& lits = retained[given].literals();
        for (std::size_t i = 0; i < lits.size(); ++i) {
          for (std::size_t j = i + 1; j < lits.size(); ++j) {
            if (lits[i].positive() != lits[j].positive()) continue;
            auto sigma = unify(lits[i].atom(), lits[j].atom());
            if (!sigma || sigma->empty()) continue;
            if (++inferences > budget.max_inferences) return Decision::Unknown;
            if (auto done = insert(sigma->apply(retained[given]))) return *done;
          }
        }
      }
    }
  }
  return Decision::Consistent;
}

}  // namespace detail

/// Classical refutability of a plain clause set: decisive for ground input,
/// budgeted (and possibly Unknown) in the first-order case.
inline Decision classical_inconsistent(const std::vector<Clause>& clauses,
                                       const SearchBudget& budget = {}) {
  bool ground = true;
  for (const Clause& c : clauses) ground = ground && c.is_ground();
  if (ground) {
    detail::GroundSolver solver(clauses);
    return solver.satisfiable() ? Decision::Consistent : Decision::Inconsistent;
  }
  return detail::fo_saturation(clauses, budget);
}

struct CutResult {
  Valuation degree;
  bool exhausted;  // some candidate level hit the budget; the degree is then a lower bound
};

/// Inconsistency degree by descending weight-level cuts reduced to classical
/// refutation. A necessity candidate (N a) holds when the classical clauses
/// of the necessity entries with degree >= a are jointly unsatisfiable. A
/// possibility candidate (Pi b) holds when one possibility clause of degree
/// bj >= b together with the necessity clauses of degree > 1 - bj is
/// unsatisfiable; a minimal inconsistent subset never needs more than one
/// possibility entry.
inline CutResult incons_cut(const std::vector<PossClause>& clauses, const SearchBudget& budget = {}) {
  std::set<Rational> necessity_degrees;
  std::set<Rational> possibility_degrees;
  for (const PossClause& pc : clauses) {
    if (pc.weight.is_necessity()) {
      necessity_degrees.insert(pc.weight.degree());
    } else if (!pc.weight.degree().is_zero()) {
      possibility_degrees.insert(pc.weight.degree());
    }
  }

  bool exhausted = false;
  for (auto it = necessity_degrees.rbegin(); it != necessity_degrees.rend(); ++it) {
    std::vector<Clause> level;
    for (const PossClause& pc : clauses)
      if (pc.weight.is_necessity() && *it <= pc.weight.degree()) level.push_back(pc.clause);
    Decision d = classical_inconsistent(level, budget);
    if (d == Decision::Inconsistent) return {Valuation::necessity(*it), exhausted};
    if (d == Decision::Unknown) exhausted = true;
  }
  for (auto it = possibility_degrees.rbegin(); it != possibility_degrees.rend(); ++it) {
    const Rational& beta = *it;
    for (const PossClause& witness : clauses) {
      if (!witness.weight.is_possibility() || witness.weight.degree() < beta) continue;
      std::vector<Clause> level{witness.clause};
      for (const PossClause& pc : clauses) {
        if (pc.weight.is_necessity() &&
            Rational::sum_exceeds_one(pc.weight.degree(), witness.weight.degree()))
          level.push_back(pc.clause);
      }
      Decision d = classical_inconsistent(level, budget);
      if (d == Decision::Inconsistent) return {Valuation::possibility(beta), exhausted};
      if (d == Decision::Unknown) exhausted = true;
    }
  }
  return {Valuation::bottom(), exhausted};
}

inline CutResult incons_cut(const KnowledgeBase& kb, const SearchBudget& budget = {}) {
  return incons_cut(kb.clauses(), budget);
}

}  // namespace poslog
