#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace poslog;
using testsupport::parse_formula;
using testsupport::parse_text;

TEST_CASE("necessity formulas split into CNF clauses of the same weight", "[clausal]") {
  KnowledgeBase kb = to_clausal(parse_text("p & q [N 0.6]."));
  REQUIRE(kb.size() == 2);
  for (const auto& e : kb.entries())
    CHECK(entry_weight(e) == Valuation::necessity(Rational(6, 10)));

  KnowledgeBase already = parse_text("p | q [N 1].");
  KnowledgeBase converted = to_clausal(already);
  REQUIRE(converted.size() == 1);
  CHECK(std::get<PossClause>(converted.entries()[0]) == std::get<PossClause>(already.entries()[0]));
}

TEST_CASE("possibility-weighted conjunctions are rejected", "[clausal]") {
  CHECK_THROWS_AS(to_clausal(parse_text("p & q [Pi 0.4].")), ClausalError);
  // a possibility-weighted clause written as a formula is fine
  KnowledgeBase kb;
  kb.add(PossFormula{parse_formula("!p | q"), Valuation::possibility(Rational(4, 10))});
  CHECK(to_clausal(kb).is_clausal());
}

TEST_CASE("splitting a possibility conjunction loses inconsistency", "[clausal]") {
  // The weakened clausal form of the rejected base must report a strictly
  // smaller inconsistency degree than the original.
  KnowledgeBase original = testsupport::load_corpus("pi_conjunction.pkb");
  KnowledgeBase weakened = testsupport::load_corpus("pi_conjunction_clausal.pkb");
  CHECK(incons(original).degree == Valuation::possibility(Rational(4, 10)));
  CHECK(incons(weakened).degree == Valuation::bottom());
}

TEST_CASE("CNF preserves the truth table", "[clausal]") {
  std::mt19937 rng(88);
  for (int iter = 0; iter < 300; ++iter) {
    Formula f = testsupport::random_formula(rng, 4, 3);
    CHECK(testsupport::equivalent(f, to_cnf(f)));
    for (const Clause& c : to_cnf(f)) CHECK_FALSE(c.is_tautology());
  }
}

TEST_CASE("query negation", "[clausal]") {
  CHECK(negate_query(parse_formula("Elected(Mary)")) ==
        std::vector<Clause>{Clause({Literal(Atom("Elected", {Term::constant("Mary")}), false)})});
  CHECK(negate_query(parse_formula("p & q")) ==
        std::vector<Clause>{Clause({Literal(Atom("p"), false), Literal(Atom("q"), false)})});
  std::vector<Clause> units = negate_query(parse_formula("p | q"));
  REQUIRE(units.size() == 2);
  CHECK(units[0].size() == 1);
  CHECK(units[1].size() == 1);

  std::mt19937 rng(89);
  for (int iter = 0; iter < 200; ++iter) {
    Formula f = testsupport::random_formula(rng, 4, 3);
    CHECK(testsupport::equivalent(Formula::negation(f), negate_query(f)));
  }
}

TEST_CASE("clausal form preserves the degree of necessity-only bases", "[clausal]") {
  std::mt19937 rng(90);
  for (int iter = 0; iter < 200; ++iter) {
    KnowledgeBase kb;
    std::size_t entries = 1 + rng() % 4;
    for (std::size_t i = 0; i < entries; ++i)
      kb.add(PossFormula{testsupport::random_formula(rng, 3, 3),
                         Valuation::necessity(Rational(1 + rng() % 10, 10))});
    Valuation semantic = incons(kb).degree;
    CHECK(incons(to_clausal(kb)).degree == semantic);
    // and the optimal refutation over the clausal form reaches exactly it
    CHECK(refute(to_clausal(kb).clauses()).value_or_bottom() == semantic);
  }
}

TEST_CASE("clausal form refines the weight multiset", "[clausal]") {
  std::mt19937 rng(91);
  for (int iter = 0; iter < 100; ++iter) {
    KnowledgeBase kb;
    std::size_t entries = 1 + rng() % 4;
    for (std::size_t i = 0; i < entries; ++i)
      kb.add(PossFormula{testsupport::random_formula(rng, 3, 2),
                         Valuation::necessity(Rational(1 + rng() % 10, 10))});
    KnowledgeBase clausal = to_clausal(kb);
    std::set<Valuation> input_weights;
    for (const auto& e : kb.entries()) input_weights.insert(entry_weight(e));
    for (const auto& e : clausal.entries()) CHECK(input_weights.count(entry_weight(e)) == 1);
  }
}

TEST_CASE("grounding enumerates substitution instances", "[clausal]") {
  KnowledgeBase kb = parse_text("!Supports(John, x) | Elected(x) [N 0.6].");
  KnowledgeBase ground =
      ground_kb(kb, {"John", "Mary", "Peter"});
  CHECK(ground.size() == 3);
  for (const auto& e : ground.entries()) {
    CHECK(std::get<PossClause>(e).clause.is_ground());
    CHECK(entry_weight(e) == Valuation::necessity(Rational(6, 10)));
  }

  KnowledgeBase already = testsupport::load_corpus("u.pkb");
  CHECK(print_kb(ground_kb(already)) == print_kb(already));

  KnowledgeBase no_constants = parse_text("p(x) [N 0.5].");
  KnowledgeBase fresh = ground_kb(no_constants);
  REQUIRE(fresh.size() == 1);
  CHECK(std::get<PossClause>(fresh.entries()[0]).clause.is_ground());
}

TEST_CASE("grounding a two-variable clause covers the product space", "[clausal]") {
  KnowledgeBase kb = parse_text("p(x) | q(y) [N 0.5].");
  KnowledgeBase ground = ground_kb(kb, {"A", "B"});
  CHECK(ground.size() == 4);
}
