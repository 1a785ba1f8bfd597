#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace poslog;
using testsupport::load_corpus;
using testsupport::parse_text;

namespace {

std::vector<Clause> clause_bodies(const std::string& text) {
  std::vector<Clause> out;
  for (const PossClause& pc : parse_text(text).clauses()) out.push_back(pc.clause);
  return out;
}

}  // namespace

TEST_CASE("classical refutability of ground clause sets", "[levelcut]") {
  CHECK(classical_inconsistent(clause_bodies("p [N 1].\n!p [N 1].")) == Decision::Inconsistent);
  CHECK(classical_inconsistent(clause_bodies("p | q [N 1].")) == Decision::Consistent);
  // the alpha = 0.6 cut of the stratified base plus a negated query
  CHECK(classical_inconsistent(clause_bodies("!r [N 1].\np [N 1].\n!p | r [N 1].")) ==
        Decision::Inconsistent);
  CHECK(classical_inconsistent({Clause()}) == Decision::Inconsistent);
  CHECK(classical_inconsistent({}) == Decision::Consistent);
}

TEST_CASE("classical refutability of first-order clause sets", "[levelcut]") {
  CHECK(classical_inconsistent(clause_bodies("!p(x) | q(x) [N 1].\np(A) [N 1].\n!q(A) [N 1].")) ==
        Decision::Inconsistent);
  CHECK(classical_inconsistent(clause_bodies("!p(x) | q(x) [N 1].\np(A) [N 1].")) ==
        Decision::Consistent);
  SearchBudget tiny{100'000, 0};
  CHECK(classical_inconsistent(clause_bodies("!p(x) | q(x) [N 1].\np(A) [N 1].\n!q(A) [N 1]."),
                               tiny) == Decision::Unknown);
}

TEST_CASE("level-cut inconsistency degrees on the corpus bases", "[levelcut]") {
  CHECK(incons_cut(load_corpus("u.pkb").clauses()).degree ==
        Valuation::necessity(Rational(3, 10)));
  CHECK(incons_cut(load_corpus("h.pkb").clauses()).degree ==
        Valuation::possibility(Rational(7, 10)));
  CHECK(incons_cut(load_corpus("election.pkb").clauses()).degree == Valuation::bottom());
  CHECK(incons_cut(load_corpus("election1.pkb").clauses()).degree ==
        Valuation::necessity(Rational(5, 10)));
  CHECK_FALSE(incons_cut(load_corpus("u.pkb").clauses()).exhausted);
}

TEST_CASE("cuts shrink as the level rises", "[levelcut]") {
  std::mt19937 rng(600);
  std::vector<Valuation> grid;
  for (int d = 1; d <= 10; ++d) grid.push_back(Valuation::necessity(Rational(d, 10)));
  for (int d = 0; d <= 10; ++d) grid.push_back(Valuation::possibility(Rational(d, 10)));
  for (int iter = 0; iter < 100; ++iter) {
    KnowledgeBase kb = KnowledgeBase::from_clauses(testsupport::random_clausal(rng));
    const Valuation& w1 = grid[rng() % grid.size()];
    const Valuation& w2 = grid[rng() % grid.size()];
    if (!(w1 <= w2)) continue;
    KnowledgeBase high = cut(kb, w2);
    KnowledgeBase low = cut(kb, w1);
    CHECK(high.size() <= low.size());
    for (const auto& e : high.entries()) CHECK(w1 <= entry_weight(e));

    // classical inconsistency propagates downward to looser necessity cuts
    auto necessity_bodies = [](const KnowledgeBase& part) {
      std::vector<Clause> out;
      for (const auto& e : part.entries())
        if (entry_weight(e).is_necessity()) out.push_back(std::get<PossClause>(e).clause);
      return out;
    };
    if (classical_inconsistent(necessity_bodies(high)) == Decision::Inconsistent)
      CHECK(classical_inconsistent(necessity_bodies(low)) == Decision::Inconsistent);
  }
}

TEST_CASE("a possibility answer needs its witness clause", "[levelcut]") {
  std::mt19937 rng(601);
  int seen = 0;
  for (int iter = 0; iter < 400 && seen < 40; ++iter) {
    std::vector<PossClause> clauses = testsupport::random_clausal(rng);
    CutResult r = incons_cut(clauses);
    if (!r.degree.is_possibility() || r.degree.degree().is_zero()) continue;
    ++seen;
    // dropping every possibility clause at the answering degree strictly
    // lowers the result
    std::vector<PossClause> dropped;
    for (const PossClause& pc : clauses) {
      if (pc.weight.is_possibility() && pc.weight.degree() == r.degree.degree()) continue;
      dropped.push_back(pc);
    }
    CHECK(incons_cut(dropped).degree < r.degree);
  }
  CHECK(seen >= 40);
}

TEST_CASE("engine agreement on random ground bases", "[levelcut]") {
  std::mt19937 rng(602);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<PossClause> clauses = testsupport::random_clausal(rng);
    Valuation via_oracle = incons(KnowledgeBase::from_clauses(clauses)).degree;
    Valuation via_resolution = refute(clauses).value_or_bottom();
    Valuation via_cut = incons_cut(clauses).degree;
    CHECK(via_oracle == via_resolution);
    CHECK(via_oracle == via_cut);
  }
}
