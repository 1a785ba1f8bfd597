// API walkthrough on the election base from corpus/election.pkb: builds the
// base, queries it, updates it with certain news, and shows how the former
// best conclusion degrades into a trivial deduction.

#include <iostream>

#include "poslog/poslog.hpp"

using namespace poslog;

namespace {

KnowledgeBase parse_or_die(const char* text) {
  auto parsed = parse_kb(text);
  if (const auto* err = std::get_if<ParseError>(&parsed)) {
    std::cerr << "parse error at " << err->to_string() << "\n";
    std::exit(1);
  }
  return std::get<KnowledgeBase>(parsed);
}

void report(const char* label, const QueryAnswer& answer) {
  std::cout << label << " = " << answer.value.to_string()
            << (answer.nontrivial ? "  (nontrivial)" : "  (trivial, equals Incons)") << "\n";
  if (answer.search.best) {
    std::cout << answer.search.best->proof.to_trace();
    for (const Refutation& alt : answer.search.alternates)
      std::cout << "alternate at " << alt.valuation.to_string() << ":\n" << alt.proof.to_trace();
  }
  std::cout << "\n";
}

}  // namespace

int main() {
  KnowledgeBase election = parse_or_die(R"(
Elected(Peter) | Elected(Mary) [N 1].
!Elected(Peter) | !Elected(Mary) [N 1].
!Former-president(x) | Elected(x) [N 0.5].
Former-president(Mary) [N 1].
!Supports(John, x) | Elected(x) [N 0.6].
Supports(John, Mary) [Pi 0.8].
!Victim-of-an-affair(x) | !Elected(x) [N 0.9].
)");

  SearchOutcome base = refute(election);
  std::cout << "Incons(base) = " << base.value_or_bottom().to_string() << "\n\n";

  Formula mary = std::get<Formula>(parse_query("Elected(Mary)"));
  report("Val(base, Elected(Mary))", val_query(election, mary));

  // Certain news arrives: Mary is the victim of an affair.
  KnowledgeBase updated = election.with(
      PossClause{Clause({Literal(Atom("Victim-of-an-affair", {Term::constant("Mary")}), true)}),
                 Valuation::top()});
  std::cout << "after update, Incons = " << refute(updated).value_or_bottom().to_string() << "\n\n";

  report("Val(updated, !Elected(Mary))", val_query(updated, Formula::negation(mary)));
  report("Val(updated, Elected(Mary))", val_query(updated, mary));

  // The oracle agrees once the base is grounded over its constants.
  KnowledgeBase ground = ground_kb(updated);
  std::cout << "oracle: Incons = " << incons(ground).degree.to_string()
            << ", Val(!Elected(Mary)) = "
            << val_of(ground, Formula::negation(mary)).to_string() << "\n";
  return 0;
}
