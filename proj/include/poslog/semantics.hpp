#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "poslog/formula.hpp"
#include "poslog/kb.hpp"
#include "poslog/print.hpp"
#include "poslog/rational.hpp"
#include "poslog/valuation.hpp"

namespace poslog {

/// Raised when a formula mentions an atom outside the signature of the
/// structure it is evaluated against, or when a non-ground base reaches the
/// model-enumeration oracle.
class SignatureError : public std::runtime_error {
 public:
  explicit SignatureError(const std::string& what) : std::runtime_error(what) {}
};

/// An interpretation over a fixed, sorted list of ground atoms: either an
/// ordinary world (a total truth assignment, encoded as a bit mask) or the
/// absurd world, which satisfies every formula including False.
struct Interpretation {
  static Interpretation absurd() { return Interpretation{true, 0}; }
  static Interpretation ordinary(std::uint32_t mask) { return Interpretation{false, mask}; }

  bool is_absurd = false;
  std::uint32_t mask = 0;
};

namespace detail {

inline std::size_t atom_index(std::span<const Atom> atoms, const Atom& a) {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
  if (it == atoms.end() || !(*it == a))
    throw SignatureError("atom '" + to_string(a) + "' is not in the signature");
  return static_cast<std::size_t>(it - atoms.begin());
}

/// A formula compiled to a postfix program over atom bit indices, so world
/// enumeration does not re-resolve atoms.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, std::span<const Atom> atoms) { emit(f, atoms); }

  bool eval(std::uint32_t mask) const {
    stack_.clear();
    for (const Ins& ins : program_) {
      switch (ins.op) {
        case Op::PushTrue: stack_.push_back(1); break;
        case Op::PushFalse: stack_.push_back(0); break;
        case Op::PushAtom: stack_.push_back((mask >> ins.arg) & 1u); break;
        case Op::Negate: stack_.back() ^= 1u; break;
        case Op::AndFold:
        case Op::OrFold: {
          bool any = false;
          bool all = true;
          for (std::uint32_t k = 0; k < ins.arg; ++k) {
            char v = stack_[stack_.size() - 1 - k];
            any = any || v != 0;
            all = all && v != 0;
          }
          stack_.resize(stack_.size() - ins.arg);
          stack_.push_back(ins.op == Op::AndFold ? (all ? 1 : 0) : (any ? 1 : 0));
          break;
        }
        case Op::Imply: {
          char b = stack_.back();
          stack_.pop_back();
          char a = stack_.back();
          stack_.back() = static_cast<char>(a == 0 || b != 0);
          break;
        }
      }
    }
    return stack_.back() != 0;
  }

 private:
  enum class Op : std::uint8_t { PushTrue, PushFalse, PushAtom, Negate, AndFold, OrFold, Imply };
  struct Ins {
    Op op;
    std::uint32_t arg = 0;
  };

  void emit(const Formula& f, std::span<const Atom> atoms) {
    switch (f.kind()) {
      case Formula::Kind::True: program_.push_back({Op::PushTrue}); break;
      case Formula::Kind::False: program_.push_back({Op::PushFalse}); break;
      case Formula::Kind::Atom:
        program_.push_back({Op::PushAtom, static_cast<std::uint32_t>(atom_index(atoms, f.atom()))});
        break;
      case Formula::Kind::Not:
        emit(f.operand(), atoms);
        program_.push_back({Op::Negate});
        break;
      case Formula::Kind::And:
      case Formula::Kind::Or:
        for (const Formula& k : f.operands()) emit(k, atoms);
        program_.push_back({f.kind() == Formula::Kind::And ? Op::AndFold : Op::OrFold,
                            static_cast<std::uint32_t>(f.operands().size())});
        break;
      case Formula::Kind::Implies:
        emit(f.premise(), atoms);
        emit(f.conclusion(), atoms);
        program_.push_back({Op::Imply});
        break;
    }
  }

  std::vector<Ins> program_;
  mutable std::vector<char> stack_;
};

}  // namespace detail

/// Classical satisfaction at an interpretation; the absurd world satisfies
/// everything. Atoms outside `atoms` raise SignatureError.
inline bool eval_formula(const Formula& f, std::span<const Atom> atoms, const Interpretation& i) {
  detail::CompiledFormula compiled(f, atoms);  // resolves atoms (and reports mismatches) eagerly
  if (i.is_absurd) return true;
  return compiled.eval(i.mask);
}

/// A normalized possibility distribution over all 2^n ordinary worlds of a
/// ground signature plus the absurd world.
class PossibilityDistribution {
 public:
  PossibilityDistribution(std::vector<Atom> atoms, std::vector<Rational> ordinary, Rational absurd)
      : atoms_(std::move(atoms)), ordinary_(std::move(ordinary)), absurd_(std::move(absurd)) {
    if (atoms_.size() > max_atoms)
      throw SignatureError("signature too large for model enumeration");
    if (ordinary_.size() != (std::size_t{1} << atoms_.size()))
      throw std::invalid_argument("distribution must cover all ordinary worlds");
    const Rational zero;
    const Rational one = Rational::integer(1);
    Rational top = absurd_;
    for (const Rational& v : ordinary_) {
      if (v < zero || one < v) throw std::invalid_argument("distribution values must lie in [0, 1]");
      top = rational_max(top, v);
    }
    if (absurd_ < zero || one < absurd_) throw std::invalid_argument("distribution values must lie in [0, 1]");
    if (!top.is_one()) throw std::invalid_argument("distribution must be normalized over the extended world set");
  }

  static constexpr std::size_t max_atoms = 24;

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t world_count() const { return ordinary_.size(); }
  const Rational& ordinary(std::uint32_t mask) const { return ordinary_[mask]; }
  const Rational& absurd() const { return absurd_; }

  const Rational& value(const Interpretation& i) const { return i.is_absurd ? absurd_ : ordinary_[i.mask]; }

  /// Row order used for printed tables: first atom varies slowest, true
  /// before false, so all-true comes first and all-false last.
  static std::uint32_t display_mask(std::uint32_t row, std::size_t atom_count) {
    std::uint32_t mask = 0;
    for (std::size_t j = 0; j < atom_count; ++j) {
      if (((row >> (atom_count - 1 - j)) & 1u) == 0) mask |= (std::uint32_t{1} << j);
    }
    return mask;
  }

  /// Sup of the distribution over the worlds satisfying f. The absurd world
  /// satisfies every formula, so the result is at least its value.
  Rational possibility(const Formula& f) const {
    detail::CompiledFormula compiled(f, atoms_);
    Rational best = absurd_;
    for (std::uint32_t mask = 0; mask < ordinary_.size(); ++mask) {
      if (best < ordinary_[mask] && compiled.eval(mask)) best = ordinary_[mask];
    }
    return best;
  }

  /// Inf of 1 - value over the ordinary worlds falsifying f (the absurd
  /// world falsifies nothing); 1 when no world falsifies f.
  Rational necessity(const Formula& f) const {
    detail::CompiledFormula compiled(f, atoms_);
    Rational best = Rational::integer(1);
    for (std::uint32_t mask = 0; mask < ordinary_.size(); ++mask) {
      if (!compiled.eval(mask)) best = rational_min(best, ordinary_[mask].complement());
    }
    return best;
  }

  bool satisfies(const PossFormula& pf) const {
    if (pf.weight.is_necessity()) return pf.weight.degree() <= necessity(pf.formula);
    return pf.weight.degree() <= possibility(pf.formula);
  }

  bool satisfies(const PossClause& pc) const {
    return satisfies(PossFormula{clause_to_formula(pc.clause), pc.weight});
  }

  bool satisfies(const KnowledgeBase& kb) const {
    for (const KnowledgeBase::Entry& e : kb.entries()) {
      if (const auto* pc = std::get_if<PossClause>(&e)) {
        if (!satisfies(*pc)) return false;
      } else if (!satisfies(std::get<PossFormula>(e))) {
        return false;
      }
    }
    return true;
  }

 private:
  std::vector<Atom> atoms_;
  std::vector<Rational> ordinary_;
  Rational absurd_;
};

/// The pointwise-greatest distribution satisfying the necessity part of the
/// base: each ordinary world gets min over the necessity entries it
/// falsifies of 1 - alpha (1 if it falsifies none). The absurd world then
/// gets the least value making the whole base satisfied: 0 when the
/// ordinary part already is normalized and satisfies every possibility
/// entry, otherwise the max of the degrees of possibility entries left
/// unsatisfied over ordinary worlds, raised to 1 when normalization forces it.
inline PossibilityDistribution maximal_distribution(const KnowledgeBase& kb) {
  if (!kb.is_ground()) throw SignatureError("ground knowledge base required");
  std::vector<Atom> atoms = kb.ground_atoms();
  if (atoms.size() > PossibilityDistribution::max_atoms)
    throw SignatureError("signature too large for model enumeration");
  const std::size_t worlds = std::size_t{1} << atoms.size();
  const Rational one = Rational::integer(1);

  struct Weighted {
    detail::CompiledFormula body;
    Rational degree;
  };
  std::vector<Weighted> necessities;
  std::vector<Weighted> possibilities;
  for (const KnowledgeBase::Entry& e : kb.entries()) {
    Weighted w{detail::CompiledFormula(entry_formula(e), atoms), entry_weight(e).degree()};
    if (entry_weight(e).is_necessity()) {
      necessities.push_back(std::move(w));
    } else if (!w.degree.is_zero()) {
      possibilities.push_back(std::move(w));
    }
  }

  std::vector<Rational> ordinary(worlds, one);
  for (std::uint32_t mask = 0; mask < worlds; ++mask) {
    for (const Weighted& n : necessities) {
      if (!n.body.eval(mask)) ordinary[mask] = rational_min(ordinary[mask], n.degree.complement());
    }
  }

  Rational ordinary_sup;
  for (const Rational& v : ordinary) ordinary_sup = rational_max(ordinary_sup, v);

  Rational forced;  // least admissible value of the absurd world
  for (const Weighted& p : possibilities) {
    Rational sup;
    for (std::uint32_t mask = 0; mask < worlds; ++mask) {
      if (sup < ordinary[mask] && p.body.eval(mask)) sup = ordinary[mask];
    }
    if (sup < p.degree) forced = rational_max(forced, p.degree);
  }
  Rational absurd = ordinary_sup.is_one() ? forced : one;
  return PossibilityDistribution(std::move(atoms), std::move(ordinary), std::move(absurd));
}

enum class ConsistencyClass {
  CompletelyConsistent,
  PossiblyInconsistent,
  NecessarilyInconsistent,
  CompletelyInconsistent,
};

inline const char* to_string(ConsistencyClass c) {
  switch (c) {
    case ConsistencyClass::CompletelyConsistent: return "completely consistent";
    case ConsistencyClass::PossiblyInconsistent: return "possibly inconsistent";
    case ConsistencyClass::NecessarilyInconsistent: return "necessarily inconsistent";
    case ConsistencyClass::CompletelyInconsistent: return "completely inconsistent";
  }
  return "";
}

inline ConsistencyClass classify(const Valuation& degree) {
  if (degree.is_possibility())
    return degree.degree().is_zero() ? ConsistencyClass::CompletelyConsistent
                                     : ConsistencyClass::PossiblyInconsistent;
  return degree.degree().is_one() ? ConsistencyClass::CompletelyInconsistent
                                  : ConsistencyClass::NecessarilyInconsistent;
}

/// The inconsistency degree together with its place on the consistency
/// hierarchy and a minimizing witness distribution.
struct InconsistencyReport {
  Valuation degree;
  ConsistencyClass classification;
  PossibilityDistribution witness;
};

/// Exact inconsistency degree of a ground base, computed in closed form
/// from the maximal distribution: the least forced value of Pi-hat(False)
/// over all satisfying distributions, or of N-hat(False) once no ordinary
/// world can keep value 1.
inline InconsistencyReport incons(const KnowledgeBase& kb) {
  PossibilityDistribution witness = maximal_distribution(kb);
  Rational ordinary_sup;
  for (std::uint32_t mask = 0; mask < witness.world_count(); ++mask)
    ordinary_sup = rational_max(ordinary_sup, witness.ordinary(mask));
  Valuation degree = Valuation::bottom();
  if (!ordinary_sup.is_one()) {
    degree = Valuation::necessity(ordinary_sup.complement());
  } else if (!witness.absurd().is_zero()) {
    degree = Valuation::possibility(witness.absurd());
  }
  return InconsistencyReport{degree, classify(degree), std::move(witness)};
}

/// Graded entailment by reduction to inconsistency: the base entails
/// (phi, w) exactly when adding (!phi, N 1) drives the inconsistency degree
/// to w or above.
inline bool entails(const KnowledgeBase& kb, const PossFormula& pf) {
  KnowledgeBase extended = kb.with(PossFormula{Formula::negation(pf.formula), Valuation::top()});
  return pf.weight <= incons(extended).degree;
}

/// The strongest valuation with which the base entails f.
inline Valuation val_of(const KnowledgeBase& kb, const Formula& f) {
  KnowledgeBase extended = kb.with(PossFormula{Formula::negation(f), Valuation::top()});
  return incons(extended).degree;
}

}  // namespace poslog
