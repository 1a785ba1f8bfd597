#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "poslog/syntax.hpp"

namespace poslog {

/// A ground classical formula over atoms with the connectives !, &, |, ->
/// and the constants True and False. Immutable; subtrees are shared.
///
/// Conjunction and disjunction are n-ary and flattened at construction, and
/// neutral/absorbing constants are folded away, so structurally equal
/// formulas have a unique shape and print canonically.
class Formula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or, Implies };

  static Formula truth() { return Formula(make_node(Kind::True)); }
  static Formula falsity() { return Formula(make_node(Kind::False)); }

  static Formula atom(class Atom a) {
    if (!a.is_ground()) throw std::invalid_argument("formula atoms must be ground");
    auto node = make_node(Kind::Atom);
    node->atom = std::move(a);
    return Formula(std::move(node));
  }

  static Formula negation(Formula f) {
    if (f.kind() == Kind::True) return falsity();
    if (f.kind() == Kind::False) return truth();
    auto node = make_node(Kind::Not);
    node->kids.push_back(std::move(f));
    return Formula(std::move(node));
  }

  static Formula conjunction(std::vector<Formula> fs) {
    std::vector<Formula> kids;
    for (Formula& f : fs) {
      switch (f.kind()) {
        case Kind::True: break;
        case Kind::False: return falsity();
        case Kind::And:
          for (const Formula& k : f.operands()) kids.push_back(k);
          break;
        default: kids.push_back(std::move(f));
      }
    }
    if (kids.empty()) return truth();
    if (kids.size() == 1) return kids.front();
    auto node = make_node(Kind::And);
    node->kids = std::move(kids);
    return Formula(std::move(node));
  }

  static Formula disjunction(std::vector<Formula> fs) {
    std::vector<Formula> kids;
    for (Formula& f : fs) {
      switch (f.kind()) {
        case Kind::False: break;
        case Kind::True: return truth();
        case Kind::Or:
          for (const Formula& k : f.operands()) kids.push_back(k);
          break;
        default: kids.push_back(std::move(f));
      }
    }
    if (kids.empty()) return falsity();
    if (kids.size() == 1) return kids.front();
    auto node = make_node(Kind::Or);
    node->kids = std::move(kids);
    return Formula(std::move(node));
  }

  static Formula conjunction(Formula a, Formula b) {
    std::vector<Formula> fs;
    fs.push_back(std::move(a));
    fs.push_back(std::move(b));
    return conjunction(std::move(fs));
  }

  static Formula disjunction(Formula a, Formula b) {
    std::vector<Formula> fs;
    fs.push_back(std::move(a));
    fs.push_back(std::move(b));
    return disjunction(std::move(fs));
  }

  static Formula implication(Formula premise, Formula conclusion) {
    auto node = make_node(Kind::Implies);
    node->kids.push_back(std::move(premise));
    node->kids.push_back(std::move(conclusion));
    return Formula(std::move(node));
  }

  Kind kind() const { return node_->kind; }

  const class Atom& atom() const { return node_->atom; }
  const Formula& operand() const { return node_->kids.front(); }
  const std::vector<Formula>& operands() const { return node_->kids; }
  const Formula& premise() const { return node_->kids[0]; }
  const Formula& conclusion() const { return node_->kids[1]; }

  bool operator==(const Formula& o) const {
    if (node_ == o.node_) return true;
    if (kind() != o.kind()) return false;
    if (kind() == Kind::Atom) return atom() == o.atom();
    if (node_->kids.size() != o.node_->kids.size()) return false;
    for (std::size_t i = 0; i < node_->kids.size(); ++i)
      if (!(node_->kids[i] == o.node_->kids[i])) return false;
    return true;
  }

  template <typename F>
  void for_each_atom(F&& fn) const {
    if (kind() == Kind::Atom) {
      fn(atom());
      return;
    }
    for (const Formula& k : node_->kids) k.for_each_atom(fn);
  }

  /// All atoms of the formula, sorted and unique.
  std::vector<class Atom> atoms() const {
    std::set<class Atom> s;
    for_each_atom([&](const class Atom& a) { s.insert(a); });
    return {s.begin(), s.end()};
  }

 private:
  struct Node {
    Kind kind = Kind::True;
    class Atom atom;
    std::vector<Formula> kids;
  };

  static std::shared_ptr<Node> make_node(Kind kind) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    return node;
  }

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// The disjunction of a ground clause's literals; the empty clause is False.
inline Formula clause_to_formula(const Clause& clause) {
  if (!clause.is_ground()) throw std::invalid_argument("only ground clauses convert to formulas");
  std::vector<Formula> parts;
  parts.reserve(clause.size());
  for (const Literal& lit : clause.literals()) {
    Formula f = Formula::atom(lit.atom());
    parts.push_back(lit.positive() ? f : Formula::negation(f));
  }
  return Formula::disjunction(std::move(parts));
}

}  // namespace poslog
