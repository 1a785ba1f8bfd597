// Command-line front end for the possibilistic inference engines: parses
// .pkb knowledge bases and answers inconsistency and graded-entailment
// queries with the oracle, resolution, or level-cut engine.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "poslog/poslog.hpp"

namespace {

using nlohmann::json;
using namespace poslog;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr std::size_t kOracleAtomLimit = 20;

std::string fraction(const Rational& r) {
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

json valuation_json(const Valuation& v) {
  return json{{"mode", v.is_necessity() ? "N" : "Pi"},
              {"rational", fraction(v.degree())},
              {"decimal", v.degree().to_string()}};
}

json proof_json(const RefutationProof& proof) {
  json steps = json::array();
  for (std::size_t i = 0; i < proof.steps().size(); ++i) {
    const ProofStep& s = proof.steps()[i];
    json step{{"id", i + 1},
              {"clause", to_string(s.clause.clause)},
              {"valuation", s.clause.weight.to_string()}};
    switch (s.rule) {
      case ProofStep::Rule::Input:
        step["rule"] = s.from_query ? "query" : "input";
        step["source"] = s.input_index + 1;
        break;
      case ProofStep::Rule::Resolve:
        step["rule"] = "resolve";
        step["parents"] = {s.parent_a + 1, s.parent_b + 1};
        break;
      case ProofStep::Rule::Factor:
        step["rule"] = "factor";
        step["parents"] = {s.parent_a + 1};
        break;
    }
    if (s.rule != ProofStep::Rule::Input && !s.mgu.empty()) {
      json mgu = json::object();
      for (const auto& [var, term] : s.mgu.bindings()) mgu[var] = term.name();
      step["mgu"] = mgu;
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

struct Failure {
  int exit_code;
  std::string message;
};

std::variant<KnowledgeBase, Failure> load_kb(const std::string& path) {
  std::ifstream in(path);
  if (!in) return Failure{kExitInput, path + ": cannot open file"};
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto parsed = parse_kb(buffer.str());
  if (const auto* err = std::get_if<ParseError>(&parsed))
    return Failure{kExitInput, path + ":" + err->to_string()};
  return std::get<KnowledgeBase>(std::move(parsed));
}

enum class Engine { Auto, Oracle, Resolution, Cut };

Engine pick_engine(Engine requested, const KnowledgeBase& kb) {
  if (requested != Engine::Auto) return requested;
  if (!kb.is_ground()) return Engine::Resolution;
  if (kb.ground_atoms().size() <= kOracleAtomLimit) return Engine::Oracle;
  return Engine::Cut;
}

// The oracle enumerates models, so first-order input is grounded first and
// refused when the ground signature would be too large.
std::variant<KnowledgeBase, Failure> oracle_ready(const KnowledgeBase& kb,
                                                  const std::set<std::string>& extra_constants) {
  KnowledgeBase ground = kb.is_ground() && extra_constants.empty() ? kb : ground_kb(kb, extra_constants);
  if (ground.ground_atoms().size() > kOracleAtomLimit) {
    return Failure{kExitInput,
                   "the model-enumeration oracle handles at most " +
                       std::to_string(kOracleAtomLimit) +
                       " ground atoms; use --engine=resolution or --engine=cut"};
  }
  return ground;
}

void print_witness_table(std::ostream& os, const PossibilityDistribution& d) {
  const std::size_t n = d.atoms().size();
  const std::size_t rows = d.world_count();
  if (rows > 256) {
    os << "  (witness table with " << rows << " worlds omitted)\n";
    return;
  }
  for (std::size_t row = 0; row < rows; ++row) {
    std::uint32_t mask = PossibilityDistribution::display_mask(static_cast<std::uint32_t>(row), n);
    std::string label = "[";
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) label += ", ";
      if (((mask >> j) & 1u) == 0) label += "!";
      label += to_string(d.atoms()[j]);
    }
    label += "]";
    os << "  pi" << label << " = " << d.ordinary(mask).to_string() << "\n";
  }
  os << "  pi[absurd] = " << d.absurd().to_string() << "\n";
}

json witness_json(const PossibilityDistribution& d) {
  json atoms = json::array();
  for (const Atom& a : d.atoms()) atoms.push_back(to_string(a));
  json rows = json::array();
  for (std::size_t row = 0; row < d.world_count(); ++row) {
    std::uint32_t mask = PossibilityDistribution::display_mask(static_cast<std::uint32_t>(row),
                                                               d.atoms().size());
    json truth = json::array();
    for (std::size_t j = 0; j < d.atoms().size(); ++j) truth.push_back(((mask >> j) & 1u) != 0);
    rows.push_back(json{{"assignment", truth}, {"value", d.ordinary(mask).to_string()}});
  }
  return json{{"atoms", atoms}, {"worlds", rows}, {"absurd", d.absurd().to_string()}};
}

int fail(const Failure& f) {
  std::cerr << "error: " << f.message << "\n";
  return f.exit_code;
}

struct InconsOptions {
  std::string file;
  Engine engine = Engine::Auto;
  std::size_t budget = 100'000;
  bool as_json = false;
};

int run_incons(const InconsOptions& opt) {
  auto loaded = load_kb(opt.file);
  if (const auto* f = std::get_if<Failure>(&loaded)) return fail(*f);
  const KnowledgeBase& kb = std::get<KnowledgeBase>(loaded);
  SearchBudget budget{opt.budget, opt.budget};
  Engine engine = pick_engine(opt.engine, kb);

  json out{{"command", "incons"}, {"file", opt.file}};
  Valuation degree = Valuation::bottom();
  bool exhausted = false;
  std::optional<std::string> trace;

  try {
    switch (engine) {
      case Engine::Oracle: {
        auto ready = oracle_ready(kb, {});
        if (const auto* f = std::get_if<Failure>(&ready)) return fail(*f);
        InconsistencyReport report = incons(std::get<KnowledgeBase>(ready));
        degree = report.degree;
        out["engine"] = "oracle";
        out["witness"] = witness_json(report.witness);
        if (!opt.as_json) {
          std::cout << "Incons = " << degree.to_string() << " (" << to_string(classify(degree))
                    << ")\n";
          print_witness_table(std::cout, report.witness);
        }
        break;
      }
      case Engine::Resolution: {
        SearchOutcome outcome = refute(to_clausal(kb), budget, false);
        degree = outcome.value_or_bottom();
        exhausted = outcome.status == SearchOutcome::Status::BudgetExhausted;
        out["engine"] = "resolution";
        if (outcome.best) {
          trace = outcome.best->proof.to_trace();
          out["proof"] = proof_json(outcome.best->proof);
        }
        if (!opt.as_json) {
          std::cout << "Incons = " << degree.to_string() << " (" << to_string(classify(degree))
                    << ")" << (exhausted ? " [budget exhausted: lower bound]" : "") << "\n";
          if (trace) std::cout << *trace;
        }
        break;
      }
      case Engine::Cut: {
        CutResult r = incons_cut(to_clausal(kb).clauses(), budget);
        degree = r.degree;
        exhausted = r.exhausted;
        out["engine"] = "cut";
        if (!opt.as_json) {
          std::cout << "Incons = " << degree.to_string() << " (" << to_string(classify(degree))
                    << ")" << (exhausted ? " [budget exhausted: lower bound]" : "") << "\n";
        }
        break;
      }
      case Engine::Auto: break;
    }
  } catch (const ClausalError& e) {
    return fail(Failure{kExitInput, e.what()});
  } catch (const SignatureError& e) {
    return fail(Failure{kExitInput, e.what()});
  }

  if (opt.as_json) {
    out["degree"] = valuation_json(degree);
    out["classification"] = to_string(classify(degree));
    out["exhausted"] = exhausted;
    std::cout << out.dump(2) << "\n";
  }
  return exhausted ? kExitBudget : kExitOk;
}

struct EntailOptions {
  std::string file;
  std::string query;
  Engine engine = Engine::Auto;
  std::size_t budget = 100'000;
  bool as_json = false;
};

int run_entail(const EntailOptions& opt) {
  auto loaded = load_kb(opt.file);
  if (const auto* f = std::get_if<Failure>(&loaded)) return fail(*f);
  const KnowledgeBase& kb = std::get<KnowledgeBase>(loaded);
  auto parsed_query = parse_query(opt.query);
  if (const auto* err = std::get_if<ParseError>(&parsed_query))
    return fail(Failure{kExitInput, "query:" + err->to_string()});
  const Formula& query = std::get<Formula>(parsed_query);
  SearchBudget budget{opt.budget, opt.budget};
  Engine engine = pick_engine(opt.engine, kb);

  json out{{"command", "entail"}, {"file", opt.file}, {"query", to_string(query)}};
  Valuation value = Valuation::bottom();
  Valuation base = Valuation::bottom();
  bool nontrivial = false;
  bool exhausted = false;

  try {
    switch (engine) {
      case Engine::Oracle: {
        std::set<std::string> query_constants;
        query.for_each_atom([&](const Atom& a) { a.collect_constants(query_constants); });
        auto ready = oracle_ready(kb, query_constants);
        if (const auto* f = std::get_if<Failure>(&ready)) return fail(*f);
        const KnowledgeBase& ground = std::get<KnowledgeBase>(ready);
        value = val_of(ground, query);
        base = incons(ground).degree;
        nontrivial = base < value;
        out["engine"] = "oracle";
        break;
      }
      case Engine::Resolution: {
        QueryAnswer ans = val_query(to_clausal(kb).clauses(), query, budget, true);
        value = ans.value;
        base = ans.base_value;
        nontrivial = ans.nontrivial;
        exhausted = ans.search.status == SearchOutcome::Status::BudgetExhausted ||
                    ans.base_search.status == SearchOutcome::Status::BudgetExhausted;
        out["engine"] = "resolution";
        if (ans.search.best) {
          out["proof"] = proof_json(ans.search.best->proof);
          json alternates = json::array();
          for (const Refutation& alt : ans.search.alternates) alternates.push_back(proof_json(alt.proof));
          out["alternate_proofs"] = alternates;
        }
        if (!opt.as_json && ans.search.best) {
          std::cout << "optimal refutation:\n" << ans.search.best->proof.to_trace();
          for (const Refutation& alt : ans.search.alternates)
            std::cout << "alternate refutation (" << alt.valuation.to_string() << "):\n"
                      << alt.proof.to_trace();
        }
        break;
      }
      case Engine::Cut: {
        std::vector<PossClause> clauses = to_clausal(kb).clauses();
        CutResult base_r = incons_cut(clauses, budget);
        for (Clause& c : negate_query(query)) clauses.push_back(PossClause{std::move(c), Valuation::top()});
        CutResult r = incons_cut(clauses, budget);
        value = r.degree;
        base = base_r.degree;
        nontrivial = base < value;
        exhausted = r.exhausted || base_r.exhausted;
        out["engine"] = "cut";
        break;
      }
      case Engine::Auto: break;
    }
  } catch (const ClausalError& e) {
    return fail(Failure{kExitInput, e.what()});
  } catch (const SignatureError& e) {
    return fail(Failure{kExitInput, e.what()});
  }

  if (opt.as_json) {
    out["value"] = valuation_json(value);
    out["incons"] = valuation_json(base);
    out["nontrivial"] = nontrivial;
    out["exhausted"] = exhausted;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "Val = " << value.to_string()
              << (nontrivial ? " (nontrivial)" : " (trivial, equals Incons)")
              << (exhausted ? " [budget exhausted: lower bound]" : "") << "\n"
              << "Incons = " << base.to_string() << "\n";
  }
  return exhausted ? kExitBudget : kExitOk;
}

int run_check(const std::string& file) {
  auto loaded = load_kb(file);
  if (const auto* f = std::get_if<Failure>(&loaded)) return fail(*f);
  const KnowledgeBase& kb = std::get<KnowledgeBase>(loaded);
  std::size_t clause_count = 0;
  std::size_t formula_count = 0;
  for (const KnowledgeBase::Entry& e : kb.entries())
    entry_is_clause(e) ? ++clause_count : ++formula_count;
  std::cout << clause_count << " clauses, ";
  if (formula_count > 0) std::cout << formula_count << " formulas, ";
  std::cout << kb.predicates().size() << " predicates";
  if (!kb.constants().empty()) std::cout << ", " << kb.constants().size() << " constants";
  if (!kb.is_ground()) std::cout << " (first-order)";
  std::cout << "\n";
  return kExitOk;
}

struct GenOptions {
  std::uint32_t seed = 0;
  std::size_t atoms = 4;
  std::size_t clauses = 6;
  std::string out_file;
};

// Deterministic for a given seed: mt19937 and the modulo draws below are
// fully specified, so generated corpora are reproducible across platforms.
int run_gen(const GenOptions& opt) {
  static const char* names[] = {"p", "q", "r", "s", "t", "u", "v", "w"};
  std::mt19937 rng(opt.seed);
  std::size_t atom_count = std::min<std::size_t>(opt.atoms, 8);
  KnowledgeBase kb;
  for (std::size_t c = 0; c < opt.clauses; ++c) {
    std::size_t lits = 1 + rng() % 3;
    std::vector<Literal> v;
    for (std::size_t l = 0; l < lits; ++l)
      v.emplace_back(Atom(names[rng() % atom_count]), rng() % 2 == 0);
    Valuation w = rng() % 2 == 0 ? Valuation::necessity(Rational(1 + rng() % 10, 10))
                                 : Valuation::possibility(Rational(rng() % 11, 10));
    kb.add(PossClause{Clause(std::move(v)), w});
  }
  std::string text = print_kb(kb);
  if (opt.out_file.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out_file);
    if (!out) return fail(Failure{kExitInput, opt.out_file + ": cannot write"});
    out << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"possibilistic-logic inference over .pkb knowledge bases"};
  app.require_subcommand(1);

  std::map<std::string, Engine> engine_names{{"auto", Engine::Auto},
                                             {"oracle", Engine::Oracle},
                                             {"resolution", Engine::Resolution},
                                             {"cut", Engine::Cut}};

  std::string check_file;
  CLI::App* check = app.add_subcommand("check", "parse a base and print its signature summary");
  check->add_option("file", check_file, "knowledge base (.pkb)")->required();

  InconsOptions incons_opt;
  CLI::App* inc = app.add_subcommand("incons", "compute the inconsistency degree");
  inc->add_option("file", incons_opt.file, "knowledge base (.pkb)")->required();
  inc->add_option("--engine", incons_opt.engine, "oracle | resolution | cut")
      ->transform(CLI::CheckedTransformer(engine_names, CLI::ignore_case));
  inc->add_option("--budget", incons_opt.budget, "retained-clause and inference limit per level");
  inc->add_flag("--json", incons_opt.as_json, "machine-readable output");

  EntailOptions entail_opt;
  CLI::App* ent = app.add_subcommand("entail", "compute Val(base, query)");
  ent->add_option("file", entail_opt.file, "knowledge base (.pkb)")->required();
  ent->add_option("--query", entail_opt.query, "ground query formula")->required();
  ent->add_option("--engine", entail_opt.engine, "oracle | resolution | cut")
      ->transform(CLI::CheckedTransformer(engine_names, CLI::ignore_case));
  ent->add_option("--budget", entail_opt.budget, "retained-clause and inference limit per level");
  ent->add_flag("--json", entail_opt.as_json, "machine-readable output");

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "generate a random ground clausal base");
  gen->add_option("--seed", gen_opt.seed, "random seed");
  gen->add_option("--atoms", gen_opt.atoms, "number of distinct atoms (max 8)");
  gen->add_option("--clauses", gen_opt.clauses, "number of clauses");
  gen->add_option("--out", gen_opt.out_file, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (check->parsed()) return run_check(check_file);
  if (inc->parsed()) return run_incons(incons_opt);
  if (ent->parsed()) return run_entail(entail_opt);
  if (gen->parsed()) return run_gen(gen_opt);
  return kExitInput;
}
