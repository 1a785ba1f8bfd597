#pragma once

#include <compare>
#include <stdexcept>
#include <string>

#include "poslog/rational.hpp"

namespace poslog {

/// Whether a weight is a lower bound on a necessity or a possibility measure.
enum class Mode { Possibility, Necessity };

/// A weight attached to a formula: (N alpha) with alpha in (0, 1], or
/// (Pi beta) with beta in [0, 1].
///
/// Valuations are totally ordered: degrees compare within a mode, and every
/// necessity valuation dominates every possibility valuation. (N 1) is the
/// top element, (Pi 0) the bottom.
class Valuation {
 public:
  static Valuation necessity(Rational degree) {
    if (degree.is_zero()) throw std::invalid_argument("necessity degree must be strictly positive");
    if (Rational::integer(1) < degree) throw std::invalid_argument("degree must not exceed 1");
    return Valuation(Mode::Necessity, degree);
  }

  static Valuation possibility(Rational degree) {
    if (degree < Rational()) throw std::invalid_argument("degree must be non-negative");
    if (Rational::integer(1) < degree) throw std::invalid_argument("degree must not exceed 1");
    return Valuation(Mode::Possibility, degree);
  }

  static const Valuation& top() {
    static const Valuation v(Mode::Necessity, Rational::integer(1));
    return v;
  }

  static const Valuation& bottom() {
    static const Valuation v(Mode::Possibility, Rational());
    return v;
  }

  Mode mode() const { return mode_; }
  const Rational& degree() const { return degree_; }
  bool is_necessity() const { return mode_ == Mode::Necessity; }
  bool is_possibility() const { return mode_ == Mode::Possibility; }

  std::strong_ordering operator<=>(const Valuation& o) const {
    if (mode_ != o.mode_) {
      return mode_ == Mode::Possibility ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return degree_ <=> o.degree_;
  }
  bool operator==(const Valuation& o) const { return mode_ == o.mode_ && degree_ == o.degree_; }

  /// The weight-combination operator of the weighted resolution rule:
  ///   (N a) * (N b)   = (N min(a, b))
  ///   (N a) * (Pi b)  = (Pi b) if a + b > 1, else (Pi 0)
  ///   (Pi a) * (Pi b) = (Pi 0)
  /// Commutative, associative, and bounded above by both arguments.
  Valuation combine(const Valuation& o) const {
    if (is_necessity() && o.is_necessity()) {
      return Valuation(Mode::Necessity, rational_min(degree_, o.degree_));
    }
    if (is_possibility() && o.is_possibility()) {
      return bottom();
    }
    const Rational& alpha = is_necessity() ? degree_ : o.degree_;
    const Rational& beta = is_necessity() ? o.degree_ : degree_;
    if (Rational::sum_exceeds_one(alpha, beta)) return Valuation(Mode::Possibility, beta);
    return bottom();
  }

  std::string to_string() const {
    return (is_necessity() ? "N " : "Pi ") + degree_.to_string();
  }

 private:
  Valuation(Mode mode, Rational degree) : mode_(mode), degree_(std::move(degree)) {}

  Mode mode_;
  Rational degree_;
};

}  // namespace poslog
