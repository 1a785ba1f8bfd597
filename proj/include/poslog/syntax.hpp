#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace poslog {

/// A term of the function-free first-order fragment: a variable or a
/// constant. The two namespaces are disjoint and distinguished lexically:
/// lowercase-initial names are variables, uppercase-initial names are
/// constants.
class Term {
 public:
  enum class Kind { Variable, Constant };

  static Term variable(std::string name) {
    if (name.empty() || !is_lower(name.front()))
      throw std::invalid_argument("variable names start with a lowercase letter: " + name);
    return Term(Kind::Variable, std::move(name));
  }

  static Term constant(std::string name) {
    if (name.empty() || !is_upper(name.front()))
      throw std::invalid_argument("constant names start with an uppercase letter: " + name);
    return Term(Kind::Constant, std::move(name));
  }

  static Term from_name(std::string name) {
    if (!name.empty() && is_upper(name.front())) return constant(std::move(name));
    return variable(std::move(name));
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_constant() const { return kind_ == Kind::Constant; }

  auto operator<=>(const Term&) const = default;

 private:
  static bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
  static bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

  Term(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_ = Kind::Constant;
  std::string name_;
};

/// A predicate applied to terms; arity 0 gives a propositional atom.
class Atom {
 public:
  Atom() = default;
  Atom(std::string predicate, std::vector<Term> args = {})
      : predicate_(std::move(predicate)), args_(std::move(args)) {}

  const std::string& predicate() const { return predicate_; }
  const std::vector<Term>& args() const { return args_; }
  std::size_t arity() const { return args_.size(); }

  bool is_ground() const {
    for (const Term& t : args_)
      if (t.is_variable()) return false;
    return true;
  }

  void collect_variables(std::set<std::string>& out) const {
    for (const Term& t : args_)
      if (t.is_variable()) out.insert(t.name());
  }

  void collect_constants(std::set<std::string>& out) const {
    for (const Term& t : args_)
      if (t.is_constant()) out.insert(t.name());
  }

  auto operator<=>(const Atom&) const = default;

 private:
  std::string predicate_;
  std::vector<Term> args_;
};

class Literal {
 public:
  Literal(Atom atom, bool positive) : atom_(std::move(atom)), positive_(positive) {}

  const Atom& atom() const { return atom_; }
  bool positive() const { return positive_; }
  bool is_ground() const { return atom_.is_ground(); }

  Literal complement() const { return Literal(atom_, !positive_); }

  auto operator<=>(const Literal&) const = default;

 private:
  Atom atom_;
  bool positive_;
};

/// A clause: a finite set of literals read as their disjunction, with free
/// variables universally quantified. The empty clause is the contradiction.
/// Duplicate literals are merged silently.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
  }

  const std::vector<Literal>& literals() const { return literals_; }
  bool empty() const { return literals_.empty(); }
  std::size_t size() const { return literals_.size(); }

  bool contains(const Literal& lit) const {
    return std::binary_search(literals_.begin(), literals_.end(), lit);
  }

  /// Contains some literal together with its complement.
  bool is_tautology() const {
    for (std::size_t i = 0; i + 1 < literals_.size(); ++i) {
      if (literals_[i].atom() == literals_[i + 1].atom() &&
          literals_[i].positive() != literals_[i + 1].positive())
        return true;
    }
    return false;
  }

  bool is_ground() const {
    for (const Literal& lit : literals_)
      if (!lit.is_ground()) return false;
    return true;
  }

  std::vector<std::string> variables() const {
    std::set<std::string> names;
    for (const Literal& lit : literals_) lit.atom().collect_variables(names);
    return {names.begin(), names.end()};
  }

  auto operator<=>(const Clause&) const = default;

 private:
  std::vector<Literal> literals_;
};

}  // namespace poslog
