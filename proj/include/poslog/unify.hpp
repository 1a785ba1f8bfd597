#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "poslog/print.hpp"
#include "poslog/syntax.hpp"

namespace poslog {

/// An idempotent substitution from variables to terms. Domain variables do
/// not occur in range terms, so applying it twice equals applying it once.
class Substitution {
 public:
  Substitution() = default;

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<std::string, Term>& bindings() const { return bindings_; }

  std::optional<Term> lookup(const std::string& var) const {
    auto it = bindings_.find(var);
    if (it == bindings_.end()) return std::nullopt;
    return it->second;
  }

  void set(std::string var, Term value) { bindings_.insert_or_assign(std::move(var), std::move(value)); }

  Term apply(const Term& t) const {
    if (t.is_variable()) {
      auto it = bindings_.find(t.name());
      if (it != bindings_.end()) return it->second;
    }
    return t;
  }

  Atom apply(const Atom& a) const {
    std::vector<Term> args;
    args.reserve(a.args().size());
    for (const Term& t : a.args()) args.push_back(apply(t));
    return Atom(a.predicate(), std::move(args));
  }

  Literal apply(const Literal& lit) const { return Literal(apply(lit.atom()), lit.positive()); }

  Clause apply(const Clause& c) const {
    std::vector<Literal> lits;
    lits.reserve(c.size());
    for (const Literal& lit : c.literals()) lits.push_back(apply(lit));
    return Clause(std::move(lits));
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [var, term] : bindings_) {
      if (!first) out += ", ";
      first = false;
      out += var + "↦" + term.name();
    }
    out += "}";
    return out;
  }

 private:
  std::map<std::string, Term> bindings_;
};

/// Most general unifier of two atoms, or nullopt. In the function-free
/// fragment a variable can only be bound to a constant or another variable,
/// so no occurs check is needed.
inline std::optional<Substitution> unify(const Atom& a, const Atom& b) {
  if (a.predicate() != b.predicate() || a.arity() != b.arity()) return std::nullopt;
  std::map<std::string, Term> bind;
  auto chase = [&bind](Term t) {
    while (t.is_variable()) {
      auto it = bind.find(t.name());
      if (it == bind.end()) break;
      t = it->second;
    }
    return t;
  };
  for (std::size_t i = 0; i < a.arity(); ++i) {
    Term s = chase(a.args()[i]);
    Term t = chase(b.args()[i]);
    if (s == t) continue;
    if (s.is_variable()) {
      bind.insert_or_assign(s.name(), t);
    } else if (t.is_variable()) {
      bind.insert_or_assign(t.name(), s);
    } else {
      return std::nullopt;  // distinct constants
    }
  }
  Substitution out;
  for (const auto& [var, term] : bind) out.set(var, chase(Term::variable(var)));
  return out;
}

namespace detail {

// One-way matching: binds variables of `pattern` only; `target` is rigid.
inline bool match_atom(const Atom& pattern, const Atom& target, std::map<std::string, Term>& bind) {
  if (pattern.predicate() != target.predicate() || pattern.arity() != target.arity()) return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    const Term& p = pattern.args()[i];
    const Term& t = target.args()[i];
    if (p.is_variable()) {
      auto it = bind.find(p.name());
      if (it == bind.end()) {
        bind.emplace(p.name(), t);
      } else if (!(it->second == t)) {
        return false;
      }
    } else if (!(p == t)) {
      return false;
    }
  }
  return true;
}

inline bool subsume_rec(const Clause& general, const Clause& specific, std::size_t i,
                        std::map<std::string, Term>& bind) {
  if (i == general.size()) return true;
  const Literal& lit = general.literals()[i];
  for (const Literal& cand : specific.literals()) {
    if (cand.positive() != lit.positive()) continue;
    std::map<std::string, Term> next = bind;
    if (!match_atom(lit.atom(), cand.atom(), next)) continue;
    if (subsume_rec(general, specific, i + 1, next)) {
      bind = std::move(next);
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Theta-subsumption: some substitution maps `general` into a subset of
/// `specific`. Restricted to |general| <= |specific|.
inline bool subsumes(const Clause& general, const Clause& specific) {
  if (general.size() > specific.size()) return false;
  std::map<std::string, Term> bind;
  return detail::subsume_rec(general, specific, 0, bind);
}

/// Renames the variables of `clause` that collide with `taken` to fresh
/// ones; returns the renamed clause and the renaming used.
inline std::pair<Clause, Substitution> rename_apart(const Clause& clause,
                                                    const std::set<std::string>& taken) {
  std::set<std::string> used(taken);
  for (const std::string& v : clause.variables()) used.insert(v);
  Substitution renaming;
  std::size_t counter = 0;
  for (const std::string& v : clause.variables()) {
    if (taken.count(v) == 0) continue;
    std::string fresh;
    do {
      fresh = "v" + std::to_string(++counter);
    } while (used.count(fresh) > 0);
    used.insert(fresh);
    renaming.set(v, Term::variable(fresh));
  }
  return {renaming.apply(clause), renaming};
}

}  // namespace poslog
