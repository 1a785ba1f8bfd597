// Acceptance suite: one pass/fail line per criterion, exit status 0 only
// when every criterion holds. All expected values are exact; there are no
// tolerances anywhere.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace poslog;
using testsupport::load_corpus;
using testsupport::parse_formula;
using testsupport::parse_text;

namespace {

int failures = 0;
int checks = 0;
std::ostringstream detail;

void expect(bool ok, const std::string& what) {
  ++checks;
  if (!ok) {
    ++failures;
    detail << "    FAILED: " << what << "\n";
  }
}

template <typename T>
void expect_eq(const T& got, const T& want, const std::string& what) {
  ++checks;
  if (!(got == want)) {
    ++failures;
    detail << "    FAILED: " << what << "\n";
  }
}

void criterion(int number, const std::string& title, const std::function<void()>& body) {
  int before = failures;
  detail.str("");
  try {
    body();
  } catch (const std::exception& e) {
    ++failures;
    detail << "    exception: " << e.what() << "\n";
  }
  bool ok = failures == before;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title << "\n";
  if (!ok) std::cout << detail.str();
}

Valuation N(int tenths) { return Valuation::necessity(Rational(tenths, 10)); }
Valuation Pi(int tenths) { return Valuation::possibility(Rational(tenths, 10)); }

Valuation cut_val(const std::vector<PossClause>& clauses, const Formula& query) {
  std::vector<PossClause> extended = clauses;
  for (Clause& c : negate_query(query)) extended.push_back(PossClause{std::move(c), Valuation::top()});
  return incons_cut(extended).degree;
}

}  // namespace

int main() {
  criterion(1, "the two-entry base entails (q [Pi 0.8]) on all three engines", [] {
    KnowledgeBase kb = load_corpus("basic.pkb");
    Formula q = parse_formula("q");
    expect(entails(kb, PossFormula{q, Pi(8)}), "oracle entailment at Pi 0.8");
    expect_eq(val_of(kb, q), Pi(8), "oracle Val");
    expect_eq(val_query(to_clausal(kb).clauses(), q).value, Pi(8), "resolution Val");
    expect_eq(cut_val(to_clausal(kb).clauses(), q), Pi(8), "level-cut Val");
  });

  criterion(2, "stratified base: degree, witness table, graded query", [] {
    KnowledgeBase kb = load_corpus("u.pkb");
    InconsistencyReport report = incons(kb);
    expect_eq(report.degree, N(3), "Incons = N 0.3");
    const int bounds[8] = {1, 4, 7, 4, 1, 2, 2, 2};
    for (std::uint32_t row = 0; row < 8; ++row) {
      expect_eq(report.witness.ordinary(PossibilityDistribution::display_mask(row, 3)),
                Rational(bounds[row], 10), "witness row " + std::to_string(row));
    }
    expect_eq(report.witness.absurd(), Rational::integer(1), "witness absurd world");
    expect_eq(val_of(kb, parse_formula("r")), N(6), "Val(u, r) = N 0.6");
    expect(!entails(kb, PossFormula{parse_formula("r"), N(7)}), "no entailment at N 0.7");
  });

  criterion(3, "possibly inconsistent base reports Pi 0.7", [] {
    KnowledgeBase kb = load_corpus("h.pkb");
    InconsistencyReport report = incons(kb);
    expect_eq(report.degree, Pi(7), "oracle degree");
    expect(report.classification == ConsistencyClass::PossiblyInconsistent, "classification");
    expect_eq(refute(kb.clauses()).value_or_bottom(), Pi(7), "resolution degree");
    expect_eq(incons_cut(kb.clauses()).degree, Pi(7), "level-cut degree");
  });

  criterion(4, "possibility conjunction: exact degree, rejection, weakened form", [] {
    KnowledgeBase original = load_corpus("pi_conjunction.pkb");
    expect_eq(incons(original).degree, Pi(4), "oracle degree of the conjunction base");
    bool rejected = false;
    try {
      to_clausal(original);
    } catch (const ClausalError&) {
      rejected = true;
    }
    expect(rejected, "clausal pipeline rejects the possibility conjunction");
    expect_eq(incons(load_corpus("pi_conjunction_clausal.pkb")).degree, Valuation::bottom(),
              "weakened clausal form drops to Pi 0");
  });

  criterion(5, "election scenario end to end from the corpus", [] {
    KnowledgeBase election = load_corpus("election.pkb");
    expect(refute(election).status == SearchOutcome::Status::Saturated, "base is consistent");
    expect_eq(refute(election).value_or_bottom(), Valuation::bottom(), "Incons = Pi 0");

    Formula mary = parse_formula("Elected(Mary)");
    QueryAnswer ans = val_query(election, mary);
    expect_eq(ans.value, N(5), "Val(base, Elected(Mary)) = N 0.5");
    expect(ans.nontrivial, "the deduction is nontrivial");
    expect(ans.search.best.has_value(), "optimal proof present");
    if (ans.search.best) {
      expect(ans.search.best->valuation == N(5) && ans.search.best->proof.uses_input(2) &&
                 ans.search.best->proof.uses_input(3),
             "N 0.5 path through the former-president clauses");
    }
    bool has_possibility_path = false;
    for (const Refutation& alt : ans.search.alternates) {
      if (alt.valuation == Pi(8) && alt.proof.uses_input(4) && alt.proof.uses_input(5))
        has_possibility_path = true;
      expect(alt.valuation < ans.value, "alternates lose under the valuation order");
    }
    expect(has_possibility_path, "Pi 0.8 path through the supporter clauses");

    KnowledgeBase updated = load_corpus("election1.pkb");
    expect_eq(refute(updated).value_or_bottom(), N(5), "Incons after the update = N 0.5");

    QueryAnswer not_mary = val_query(updated, parse_formula("!Elected(Mary)"));
    expect_eq(not_mary.value, N(9), "Val(updated, !Elected(Mary)) = N 0.9");
    expect(not_mary.nontrivial, "flagged nontrivial");

    QueryAnswer peter = val_query(updated, parse_formula("Elected(Peter)"));
    expect_eq(peter.value, N(9), "Val(updated, Elected(Peter)) = N 0.9");

    QueryAnswer mary_again = val_query(updated, mary);
    expect_eq(mary_again.value, N(5), "Val(updated, Elected(Mary)) = N 0.5");
    expect(!mary_again.nontrivial, "flagged trivial");

    expect_eq(refute(load_corpus("election_query.pkb")).value_or_bottom(), N(5),
              "query-augmented corpus file");
    expect_eq(refute(load_corpus("election1_query.pkb")).value_or_bottom(), N(9),
              "updated query-augmented corpus file");
  });

  criterion(6, "engine triangulation on 1000 random ground bases", [] {
    std::mt19937 rng(20240);
    for (int iter = 0; iter < 1000; ++iter) {
      std::vector<PossClause> clauses = testsupport::random_clausal(rng);
      Valuation a = incons(KnowledgeBase::from_clauses(clauses)).degree;
      Valuation b = refute(clauses).value_or_bottom();
      Valuation c = incons_cut(clauses).degree;
      if (!(a == b && a == c)) {
        expect(false, "engines disagree on instance " + std::to_string(iter) + ": oracle " +
                          a.to_string() + ", resolution " + b.to_string() + ", cut " +
                          c.to_string());
        return;
      }
    }
    expect(true, "");
  });

  criterion(7, "soundness: every proof step entailed on 200 random bases", [] {
    std::mt19937 rng(20241);
    for (int iter = 0; iter < 200; ++iter) {
      std::vector<PossClause> clauses = testsupport::random_clausal(rng);
      KnowledgeBase kb = KnowledgeBase::from_clauses(clauses);
      SearchOutcome out = refute(clauses, {}, true);
      std::vector<const Refutation*> proofs;
      if (out.best) proofs.push_back(&*out.best);
      for (const Refutation& alt : out.alternates) proofs.push_back(&alt);
      for (const Refutation* ref : proofs) {
        for (const ProofStep& step : ref->proof.steps()) {
          if (!entails(kb, PossFormula{clause_to_formula(step.clause.clause), step.clause.weight})) {
            expect(false, "unsound step on instance " + std::to_string(iter));
            return;
          }
        }
      }
    }
    expect(true, "");
  });

  criterion(8, "reduction to inconsistency on 500 random triples, two routes", [] {
    std::mt19937 rng(20242);
    for (int iter = 0; iter < 500; ++iter) {
      std::vector<PossClause> clauses = testsupport::random_clausal(rng, 3, 6);
      KnowledgeBase kb = KnowledgeBase::from_clauses(clauses);
      Formula query = testsupport::random_formula(rng, 3, 2);
      Valuation w = testsupport::random_weight(rng);
      bool via_oracle = entails(kb, PossFormula{query, w});
      bool via_resolution = w <= val_query(clauses, query, {}, false).value;
      if (via_oracle != via_resolution) {
        expect(false, "routes disagree on instance " + std::to_string(iter));
        return;
      }
    }
    expect(true, "");
  });

  criterion(9, "lattice and measure property suites, all exact", [] {
    std::vector<Valuation> grid;
    for (int d = 1; d <= 10; ++d) grid.push_back(N(d));
    for (int d = 0; d <= 10; ++d) grid.push_back(Pi(d));
    for (const Valuation& a : grid) {
      expect(Valuation::bottom() <= a && a <= Valuation::top(), "bounds");
      for (const Valuation& b : grid) {
        int holds = (a < b ? 1 : 0) + (b < a ? 1 : 0) + (a == b ? 1 : 0);
        if (holds != 1) {
          expect(false, "order is not total");
          return;
        }
        Valuation ab = a.combine(b);
        if (!(ab == b.combine(a)) || !(ab <= a) || !(ab <= b)) {
          expect(false, "combination fails commutativity or the min bound");
          return;
        }
        for (const Valuation& c : grid) {
          if (!(ab.combine(c) == a.combine(b.combine(c)))) {
            expect(false, "combination is not associative");
            return;
          }
          if (a <= b && !(a.combine(c) <= b.combine(c))) {
            expect(false, "combination is not monotone");
            return;
          }
        }
      }
    }
    std::mt19937 rng(20243);
    for (int iter = 0; iter < 1000; ++iter) {
      std::size_t n = 1 + rng() % 3;
      std::vector<Atom> atoms(testsupport::small_atoms().begin(),
                              testsupport::small_atoms().begin() + n);
      PossibilityDistribution d = testsupport::random_distribution(rng, atoms);
      Formula f = testsupport::random_formula(rng, n, 3);
      Formula g = testsupport::random_formula(rng, n, 3);
      bool duality = d.possibility(f) == rational_max(d.possibility(Formula::falsity()),
                                                      d.necessity(Formula::negation(f)).complement());
      bool decompose =
          d.necessity(Formula::conjunction(f, g)) == rational_min(d.necessity(f), d.necessity(g)) &&
          d.possibility(Formula::disjunction(f, g)) == rational_max(d.possibility(f), d.possibility(g));
      if (!duality || !decompose) {
        expect(false, "measure identity fails on instance " + std::to_string(iter));
        return;
      }
    }
    expect(true, "");
  });

  criterion(10, "cut properties and the triviality floor on 300 random instances", [] {
    std::mt19937 rng(20244);
    for (int iter = 0; iter < 300; ++iter) {
      std::vector<PossClause> clauses = testsupport::random_clausal(rng, 3, 6);
      KnowledgeBase kb = KnowledgeBase::from_clauses(clauses);
      Formula query = testsupport::random_formula(rng, 3, 2);
      Valuation w = testsupport::random_weight(rng);

      // deduction at weight w only needs the w-cut
      bool whole = entails(kb, PossFormula{query, w});
      bool cut_only = entails(cut(kb, w), PossFormula{query, w});
      if (whole != cut_only) {
        expect(false, "cut property fails on instance " + std::to_string(iter));
        return;
      }

      // the base, its cut at the inconsistency degree, and the strict cut
      // plus (False, degree) satisfy the same distributions
      InconsistencyReport report = incons(kb);
      KnowledgeBase at_degree = cut(kb, report.degree);
      KnowledgeBase strict = cut_strict(kb, report.degree);
      strict.add(PossFormula{Formula::falsity(), report.degree});
      std::vector<Atom> atoms = kb.ground_atoms();
      if (atoms.empty()) atoms.push_back(Atom("p"));
      for (int sample = 0; sample < 40; ++sample) {
        PossibilityDistribution d = testsupport::random_distribution(rng, atoms);
        bool s0 = d.satisfies(kb);
        bool s1 = d.satisfies(at_degree);
        bool s2 = d.satisfies(strict);
        if (s0 != s1 || s0 != s2) {
          expect(false, "equivalence fails on instance " + std::to_string(iter));
          return;
        }
      }

      // nothing is entailed below the inconsistency degree
      if (!(report.degree <= val_of(kb, query))) {
        expect(false, "triviality floor fails on instance " + std::to_string(iter));
        return;
      }
    }
    expect(true, "");
  });

  criterion(11, "first-order incompleteness gap is exactly as documented", [] {
    KnowledgeBase fo = parse_text("p(x) [Pi 0.5].");
    Formula query = parse_formula("p(A) & p(B)");
    QueryAnswer ans = val_query(fo, query);
    expect(ans.search.status == SearchOutcome::Status::Saturated,
           "resolution terminates by saturation");
    expect_eq(ans.value, Valuation::bottom(), "no refutation above Pi 0");

    // the semantic value on the grounded instance over {A, B}: one entry
    // asserting the possibility of the whole conjunction
    KnowledgeBase ground;
    ground.add(PossFormula{parse_formula("p(A) & p(B)"), Pi(5)});
    Valuation semantic = val_of(ground, query);
    expect_eq(semantic, Pi(5), "oracle reports the semantic value");
    expect(ans.value < semantic, "the engines are permitted to disagree here");
  });

  criterion(12, "round trips and corpus files", [] {
    std::mt19937 rng(20245);
    for (int iter = 0; iter < 500; ++iter) {
      KnowledgeBase kb = KnowledgeBase::from_clauses(testsupport::random_clausal(rng));
      auto reparsed = parse_kb(print_kb(kb));
      const auto* back = std::get_if<KnowledgeBase>(&reparsed);
      if (back == nullptr || back->size() != kb.size()) {
        expect(false, "round trip fails on instance " + std::to_string(iter));
        return;
      }
      for (std::size_t i = 0; i < kb.size(); ++i) {
        if (!(std::get<PossClause>(back->entries()[i]) == std::get<PossClause>(kb.entries()[i]))) {
          expect(false, "round trip changes entry on instance " + std::to_string(iter));
          return;
        }
      }
    }
    const char* corpus[] = {"basic.pkb",          "u.pkb",
                            "h.pkb",              "pi_conjunction.pkb",
                            "pi_conjunction_clausal.pkb", "election.pkb",
                            "election_query.pkb", "election1.pkb",
                            "election1_query.pkb"};
    for (const char* name : corpus) {
      try {
        load_corpus(name);
      } catch (const std::exception& e) {
        expect(false, std::string(name) + ": " + e.what());
      }
    }
    expect(true, "");
  });

  std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " (" << checks
            << " checks, " << failures << " failures)\n";
  return failures == 0 ? 0 : 1;
}
