#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "poslog/clausal.hpp"
#include "poslog/kb.hpp"
#include "poslog/print.hpp"
#include "poslog/unify.hpp"
#include "poslog/valuation.hpp"

namespace poslog {

/// Search limits for refutation search. A level of the search stops, and is
/// reported as exhausted rather than silently truncated, once it retains
/// more clauses or performs more inferences than allowed.
struct SearchBudget {
  std::size_t max_retained = 100'000;
  std::size_t max_inferences = 100'000;
};

struct ProofStep {
  enum class Rule { Input, Resolve, Factor };

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Rule rule;
  PossClause clause;
  std::size_t parent_a = npos;
  std::size_t parent_b = npos;
  Substitution mgu;
  std::size_t input_index = npos;  // position in the input clause list (Rule::Input)
  bool from_query = false;         // input clause stems from the negated query
};

/// A derivation DAG ending in the empty clause. Steps are stored in
/// topological order; the last step is the weighted empty clause.
class RefutationProof {
 public:
  explicit RefutationProof(std::vector<ProofStep> steps) : steps_(std::move(steps)) {}

  const std::vector<ProofStep>& steps() const { return steps_; }
  const ProofStep& root() const { return steps_.back(); }

  /// Re-derives the root valuation by folding the combination operator
  /// bottom-up over the DAG; factoring preserves its parent's valuation.
  Valuation recomputed_valuation() const {
    std::vector<Valuation> vals;
    vals.reserve(steps_.size());
    for (const ProofStep& s : steps_) {
      switch (s.rule) {
        case ProofStep::Rule::Input: vals.push_back(s.clause.weight); break;
        case ProofStep::Rule::Factor: vals.push_back(vals[s.parent_a]); break;
        case ProofStep::Rule::Resolve: vals.push_back(vals[s.parent_a].combine(vals[s.parent_b])); break;
      }
    }
    return vals.back();
  }

  /// True when some leaf of the DAG is the given input position.
  bool uses_input(std::size_t input_index) const {
    for (const ProofStep& s : steps_)
      if (s.rule == ProofStep::Rule::Input && s.input_index == input_index) return true;
    return false;
  }

  std::size_t possibility_leaf_count() const {
    std::size_t n = 0;
    for (const ProofStep& s : steps_)
      if (s.rule == ProofStep::Rule::Input && s.clause.weight.is_possibility()) ++n;
    return n;
  }

  /// Line-oriented trace, one step per line:
  ///   k: <clause> [<mode> <degree>] from <rule>(i, j) σ={...}
  std::string to_trace() const {
    std::string out;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      const ProofStep& s = steps_[i];
      out += std::to_string(i + 1) + ": " + to_string(s.clause.clause) + " [" +
             s.clause.weight.to_string() + "]";
      switch (s.rule) {
        case ProofStep::Rule::Input:
          out += s.from_query ? " from query(" : " from input(";
          out += std::to_string(s.input_index + 1) + ")";
          break;
        case ProofStep::Rule::Resolve:
          out += " from resolve(" + std::to_string(s.parent_a + 1) + ", " +
                 std::to_string(s.parent_b + 1) + ")";
          break;
        case ProofStep::Rule::Factor:
          out += " from factor(" + std::to_string(s.parent_a + 1) + ")";
          break;
      }
      if (s.rule != ProofStep::Rule::Input && !s.mgu.empty()) out += " σ=" + s.mgu.to_string();
      out += "\n";
    }
    return out;
  }

 private:
  std::vector<ProofStep> steps_;
};

struct Refutation {
  Valuation valuation;
  RefutationProof proof;
};

/// Result of a refutation search. Saturated is only reported when the whole
/// search space was closed within budget; BudgetExhausted carries the best
/// refutation found so far, if any.
struct SearchOutcome {
  enum class Status { RefutationFound, Saturated, BudgetExhausted };

  Status status;
  std::optional<Refutation> best;
  std::vector<Refutation> alternates;  // further refutations at strictly lower valuations

  bool found() const { return best.has_value(); }
  Valuation value_or_bottom() const { return best ? best->valuation : Valuation::bottom(); }
};

namespace detail {

struct Derived {
  Clause clause;
  Valuation weight;
  Substitution mgu;
};

/// All binary resolvents of two weighted clauses, after standardizing the
/// second apart from the first.
inline std::vector<Derived> resolvents_info(const PossClause& left, const PossClause& right) {
  std::vector<Derived> out;
  std::set<std::string> left_vars;
  for (const std::string& v : left.clause.variables()) left_vars.insert(v);
  Clause other = right.clause;
  if (!left_vars.empty()) other = rename_apart(right.clause, left_vars).first;

  Valuation weight = left.weight.combine(right.weight);
  for (const Literal& l : left.clause.literals()) {
    for (const Literal& r : other.literals()) {
      if (l.positive() == r.positive()) continue;
      auto sigma = unify(l.atom(), r.atom());
      if (!sigma) continue;
      std::vector<Literal> lits;
      for (const Literal& keep : left.clause.literals())
        if (!(keep == l)) lits.push_back(sigma->apply(keep));
      for (const Literal& keep : other.literals())
        if (!(keep == r)) lits.push_back(sigma->apply(keep));
      out.push_back(Derived{Clause(std::move(lits)), weight, std::move(*sigma)});
    }
  }
  return out;
}

inline std::vector<Derived> factors_info(const PossClause& pc) {
  std::vector<Derived> out;
  const auto& lits = pc.clause.literals();
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (lits[i].positive() != lits[j].positive()) continue;
      auto sigma = unify(lits[i].atom(), lits[j].atom());
      if (!sigma || sigma->empty()) continue;
      out.push_back(Derived{sigma->apply(pc.clause), pc.weight, std::move(*sigma)});
    }
  }
  return out;
}

struct LevelInput {
  PossClause clause;
  std::size_t input_index;
  bool from_query;
};

struct LevelResult {
  std::optional<RefutationProof> proof;
  bool exhausted = false;
};

/// One deterministic given-clause saturation over a fixed clause set.
/// Smaller clauses are selected first, ties by age. Tautologies and
/// bottom-valued clauses are discarded; a clause subsumed by a retained
/// clause of at least its valuation is dropped, and retained clauses
/// subsumed by a stronger new one are removed.
class Saturation {
 public:
  // At a possibility level only a possibility-valued empty clause counts: an
  // all-necessity refutation there re-derives what some necessity level
  // already covers (its clause set is a necessity cut), so it is skipped
  // rather than allowed to end the level.
  Saturation(const SearchBudget& budget, bool possibility_root)
      : budget_(budget), possibility_root_(possibility_root) {}

  LevelResult run(const std::vector<LevelInput>& inputs) {
    for (const LevelInput& in : inputs) {
      ProofStep step{ProofStep::Rule::Input, in.clause, ProofStep::npos, ProofStep::npos, {},
                     in.input_index, in.from_query};
      if (insert(std::move(step)) == Insert::FoundEmpty) return {extract(), false};
      if (over_budget()) return {std::nullopt, true};
    }
    while (!passive_.empty()) {
      std::size_t given = passive_.top().node;
      passive_.pop();
      if (!alive_[given]) continue;
      active_.push_back(given);
      for (const Derived& d : factors_info(arena_[given].clause)) {
        ++inferences_;
        ProofStep step{ProofStep::Rule::Factor, PossClause{d.clause, d.weight}, given,
                       ProofStep::npos, d.mgu, ProofStep::npos, false};
        if (insert(std::move(step)) == Insert::FoundEmpty) return {extract(), false};
        if (over_budget()) return {std::nullopt, true};
      }
      for (std::size_t partner : active_) {
        if (!alive_[partner] && partner != given) continue;
        for (const Derived& d : resolvents_info(arena_[given].clause, arena_[partner].clause)) {
          ++inferences_;
          ProofStep step{ProofStep::Rule::Resolve, PossClause{d.clause, d.weight}, given, partner,
                         d.mgu, ProofStep::npos, false};
          if (insert(std::move(step)) == Insert::FoundEmpty) return {extract(), false};
          if (over_budget()) return {std::nullopt, true};
        }
        if (over_budget()) return {std::nullopt, true};
      }
    }
    return {std::nullopt, false};
  }

 private:
  enum class Insert { Dropped, Added, FoundEmpty };

  struct PassiveEntry {
    std::size_t node;
    std::size_t size;
  };
  struct PassiveOrder {
    bool operator()(const PassiveEntry& a, const PassiveEntry& b) const {
      if (a.size != b.size) return a.size > b.size;
      return a.node > b.node;
    }
  };

  bool over_budget() const {
    return retained_count_ > budget_.max_retained || inferences_ > budget_.max_inferences;
  }

  Insert insert(ProofStep step) {
    const PossClause& pc = step.clause;
    if (pc.weight == Valuation::bottom()) return Insert::Dropped;
    if (pc.clause.is_tautology()) return Insert::Dropped;
    if (pc.clause.empty() && possibility_root_ && pc.weight.is_necessity()) return Insert::Dropped;
    for (std::size_t id : retained_) {
      if (!alive_[id]) continue;
      const PossClause& old = arena_[id].clause;
      if (pc.weight <= old.weight && subsumes(old.clause, pc.clause)) return Insert::Dropped;
    }
    arena_.push_back(std::move(step));
    alive_.push_back(true);
    std::size_t node = arena_.size() - 1;
    if (arena_[node].clause.clause.empty()) {
      root_ = node;
      return Insert::FoundEmpty;
    }
    for (std::size_t id : retained_) {
      if (!alive_[id]) continue;
      const PossClause& old = arena_[id].clause;
      if (old.weight <= arena_[node].clause.weight && subsumes(arena_[node].clause.clause, old.clause)) {
        alive_[id] = false;
        --retained_count_;
      }
    }
    retained_.push_back(node);
    ++retained_count_;
    passive_.push(PassiveEntry{node, arena_[node].clause.clause.size()});
    return Insert::Added;
  }

  RefutationProof extract() const {
    std::vector<char> needed(arena_.size(), 0);
    std::vector<std::size_t> stack{root_};
    while (!stack.empty()) {
      std::size_t id = stack.back();
      stack.pop_back();
      if (needed[id]) continue;
      needed[id] = 1;
      const ProofStep& s = arena_[id];
      if (s.parent_a != ProofStep::npos) stack.push_back(s.parent_a);
      if (s.parent_b != ProofStep::npos) stack.push_back(s.parent_b);
    }
    std::vector<std::size_t> remap(arena_.size(), ProofStep::npos);
    std::vector<ProofStep> steps;
    for (std::size_t id = 0; id < arena_.size(); ++id) {
      if (!needed[id]) continue;
      ProofStep s = arena_[id];
      if (s.parent_a != ProofStep::npos) s.parent_a = remap[s.parent_a];
      if (s.parent_b != ProofStep::npos) s.parent_b = remap[s.parent_b];
      remap[id] = steps.size();
      steps.push_back(std::move(s));
    }
    return RefutationProof(std::move(steps));
  }

  SearchBudget budget_;
  bool possibility_root_;
  std::vector<ProofStep> arena_;
  std::vector<char> alive_;
  std::vector<std::size_t> retained_;
  std::vector<std::size_t> active_;
  std::priority_queue<PassiveEntry, std::vector<PassiveEntry>, PassiveOrder> passive_;
  std::size_t retained_count_ = 0;
  std::size_t inferences_ = 0;
  std::size_t root_ = ProofStep::npos;
};

inline SearchOutcome refute_impl(const std::vector<LevelInput>& inputs, const SearchBudget& budget,
                                 bool exhaustive) {
  // Candidate valuations are the weights present in the input, visited in
  // descending order; the first level that closes with the empty clause is
  // therefore optimal. A necessity level (N a) admits the necessity clauses
  // of degree >= a. A possibility level (Pi b) admits the possibility
  // clauses of degree >= b plus the necessity clauses whose degree keeps the
  // combination above bottom (alpha + b > 1); any derivation outside these
  // sets has a strictly smaller valuation.
  std::set<Rational> necessity_degrees;
  std::set<Rational> possibility_degrees;
  for (const LevelInput& in : inputs) {
    if (in.clause.weight.is_necessity()) {
      necessity_degrees.insert(in.clause.weight.degree());
    } else if (!in.clause.weight.degree().is_zero()) {
      possibility_degrees.insert(in.clause.weight.degree());
    }
  }

  std::vector<Refutation> found;
  bool exhausted_before_best = false;
  bool exhausted_any = false;

  auto run_level = [&](bool possibility_level, auto&& admit) {
    std::vector<LevelInput> members;
    for (const LevelInput& in : inputs)
      if (admit(in.clause.weight)) members.push_back(in);
    Saturation sat(budget, possibility_level);
    LevelResult r = sat.run(members);
    if (r.exhausted) {
      exhausted_any = true;
      if (found.empty()) exhausted_before_best = true;
    }
    if (r.proof) found.push_back(Refutation{r.proof->recomputed_valuation(), std::move(*r.proof)});
    return r.proof.has_value();
  };

  for (auto it = necessity_degrees.rbegin(); it != necessity_degrees.rend(); ++it) {
    const Rational& alpha = *it;
    bool hit =
        run_level(false, [&](const Valuation& w) { return w.is_necessity() && alpha <= w.degree(); });
    if (hit && !exhaustive) break;
  }
  if (found.empty() || exhaustive) {
    for (auto it = possibility_degrees.rbegin(); it != possibility_degrees.rend(); ++it) {
      const Rational& beta = *it;
      bool hit = run_level(true, [&](const Valuation& w) {
        if (w.is_possibility()) return beta <= w.degree();
        return Rational::sum_exceeds_one(w.degree(), beta);
      });
      if (hit && !exhaustive) break;
    }
  }

  SearchOutcome out{SearchOutcome::Status::Saturated, std::nullopt, {}};
  if (!found.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < found.size(); ++i)
      if (found[best].valuation < found[i].valuation) best = i;
    out.best = std::move(found[best]);
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (i == best) continue;
      bool seen = found[i].valuation == out.best->valuation;
      for (const Refutation& alt : out.alternates) seen = seen || alt.valuation == found[i].valuation;
      if (!seen) out.alternates.push_back(std::move(found[i]));
    }
    out.status = exhausted_before_best ? SearchOutcome::Status::BudgetExhausted
                                       : SearchOutcome::Status::RefutationFound;
  } else {
    out.status = exhausted_any ? SearchOutcome::Status::BudgetExhausted : SearchOutcome::Status::Saturated;
  }
  return out;
}

inline std::vector<LevelInput> as_inputs(const std::vector<PossClause>& clauses) {
  std::vector<LevelInput> inputs;
  inputs.reserve(clauses.size());
  for (std::size_t i = 0; i < clauses.size(); ++i) inputs.push_back(LevelInput{clauses[i], i, false});
  return inputs;
}

}  // namespace detail

/// All resolvents of two weighted clauses under the weighted resolution
/// rule. Resolvents whose valuation is (Pi 0) are still emitted; the search
/// discards them since the bottom valuation entails nothing.
inline std::vector<PossClause> resolve(const PossClause& a, const PossClause& b) {
  std::vector<PossClause> out;
  for (detail::Derived& d : detail::resolvents_info(a, b))
    out.push_back(PossClause{std::move(d.clause), d.weight});
  return out;
}

/// All binary factors; the valuation is unchanged.
inline std::vector<PossClause> factor(const PossClause& pc) {
  std::vector<PossClause> out;
  for (detail::Derived& d : detail::factors_info(pc))
    out.push_back(PossClause{std::move(d.clause), d.weight});
  return out;
}

/// Searches for a refutation of maximal valuation. With `exhaustive` set,
/// all candidate levels are searched and lower-valued refutations are
/// reported as alternates (one per distinct valuation).
inline SearchOutcome refute(const std::vector<PossClause>& clauses, const SearchBudget& budget = {},
                            bool exhaustive = false) {
  return detail::refute_impl(detail::as_inputs(clauses), budget, exhaustive);
}

inline SearchOutcome refute(const KnowledgeBase& kb, const SearchBudget& budget = {},
                            bool exhaustive = false) {
  return refute(kb.clauses(), budget, exhaustive);
}

/// Answer to a graded query against a clausal base.
struct QueryAnswer {
  SearchOutcome search;       // refutation search on base + negated query
  SearchOutcome base_search;  // refutation search on the base alone
  Valuation value;            // valuation of the optimal refutation, (Pi 0) if none
  Valuation base_value;       // inconsistency degree of the base by refutation
  bool nontrivial;            // value strictly exceeds the base inconsistency
};

/// Computes Val(base, query) by refutation: the negated query's clauses are
/// added with weight (N 1) and the optimal refutation valuation is the
/// answer. Also reports whether the deduction strictly exceeds the base's
/// own inconsistency degree.
inline QueryAnswer val_query(const std::vector<PossClause>& kb, const Formula& query,
                             const SearchBudget& budget = {}, bool exhaustive = true) {
  std::vector<detail::LevelInput> inputs = detail::as_inputs(kb);
  for (Clause& c : negate_query(query)) {
    std::size_t index = inputs.size();
    inputs.push_back(detail::LevelInput{PossClause{std::move(c), Valuation::top()}, index, true});
  }
  SearchOutcome search = detail::refute_impl(inputs, budget, exhaustive);
  SearchOutcome base_search = refute(kb, budget, false);
  Valuation value = search.value_or_bottom();
  Valuation base_value = base_search.value_or_bottom();
  bool nontrivial = base_value < value;
  return QueryAnswer{std::move(search), std::move(base_search), value, base_value, nontrivial};
}

inline QueryAnswer val_query(const KnowledgeBase& kb, const Formula& query,
                             const SearchBudget& budget = {}, bool exhaustive = true) {
  return val_query(kb.clauses(), query, budget, exhaustive);
}

}  // namespace poslog
