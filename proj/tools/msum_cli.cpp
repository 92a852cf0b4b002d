// msum: satisfiability for sums of Kripke frames.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "msum/corpus.hpp"
#include "msum/io.hpp"
#include "msum/reductions.hpp"
#include "msum/solver.hpp"

using namespace msum;

namespace {

constexpr int kSat = 10;
constexpr int kUnsat = 20;
constexpr int kUsage = 2;

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return nlohmann::json::parse(in);
}

void print_stats(const SearchStats& s) {
  std::cout << "oracle_calls " << s.oracle_calls << "\n"
            << "max_recursion_depth " << s.max_recursion_depth << "\n"
            << "memo_hits " << s.memo_hits << "\n";
}

int run_solve(const std::string& logic, const std::string& text, bool witness, std::size_t budget) {
  const LogicPreset& p = preset(logic);
  const Formula f = parse(text, p.alphabet ? p.alphabet : UINT32_MAX);
  SearchStats st;
  const bool sat = solve(p, f, {}, &st) == Verdict::Sat;
  std::cout << (sat ? "SAT" : "UNSAT") << "\n";
  print_stats(st);
  if (witness && sat) {
    std::optional<std::pair<Model, World>> m;
    if (p.brute_class) m = find_model(*p.brute_class, budget, f);
    if (m) {
      auto j = model_to_json(m->first);
      j["world"] = m->second;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "no witness within budget\n";
    }
  }
  return sat ? kSat : kUnsat;
}

int run_model_check(const std::string& model_path, World w, const std::string& text,
                    const std::string& cond_path) {
  const Model m = model_from_json(read_json(model_path));
  if (w >= m.frame.world_count()) throw std::invalid_argument("world out of range");
  const Formula f = parse(text, m.frame.alphabet());
  bool r = false;
  if (cond_path.empty()) {
    r = eval(m, w, f);
  } else {
    r = eval_cond(m, w, condition_from_json(read_json(cond_path)), f);
  }
  std::cout << (r ? "true" : "false") << "\n";
  return r ? kSat : kUnsat;
}

int run_encode_qbf(const std::string& text) {
  std::cout << render(ladner_encode(parse_qbf(text))) << "\n";
  return 0;
}

// Compares solve with brute-force search over the preset's frame class.
int run_cross_check(const std::string& logic, std::size_t max_size, std::size_t budget, std::uint64_t seed,
                    std::size_t samples, bool corrupt) {
  const LogicPreset& p = preset(logic);
  if (!p.brute_class) throw std::invalid_argument("logic " + logic + " has no brute-force frame class");
  CorpusSpec spec{max_size, 2, 1};
  std::vector<Formula> corpus;
  if (samples == 0) {
    corpus = enumerate_formulas(spec);
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) corpus.push_back(random_formula(rng, spec));
  }
  std::size_t bad = 0;
  for (const auto& f : corpus) {
    bool s = solve(p, f) == Verdict::Sat;
    if (corrupt && f.kind() == Kind::Dia) s = !s;
    const std::size_t worlds = budget ? budget : Closure(f).size() + 1;
    const bool b = find_model(*p.brute_class, worlds, f).has_value();
    if (s != b) {
      ++bad;
      std::cout << "disagreement: " << render(f) << " solver=" << (s ? "SAT" : "UNSAT")
                << " brute=" << (b ? "SAT" : "UNSAT") << "\n";
    }
  }
  std::cout << corpus.size() << " formulas, " << bad << " disagreements\n";
  return bad == 0 ? 0 : 1;
}

int run_list_logics() {
  for (const auto& p : presets())
    std::cout << p.name << "\talphabet=" << (p.alphabet ? std::to_string(p.alphabet) : "any") << "\t" << p.recipe
              << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satisfiability for modal logics of sums of Kripke frames"};
  app.require_subcommand(1);

  std::string logic, formula, formula_flag, model_path, cond_path, qbf;
  World world = 0;
  std::size_t budget = 0, max_size = 4, samples = 0;
  std::uint64_t seed = 1;
  bool stats = false, witness = false, corrupt = false;

  auto* solve_cmd = app.add_subcommand("solve", "Decide satisfiability in a logic");
  solve_cmd->add_option("--logic", logic, "Logic name (see list-logics)")->required();
  solve_cmd->add_option("FORMULA", formula, "Formula");
  solve_cmd->add_option("--formula", formula_flag, "Formula");
  solve_cmd->add_option("--budget", budget, "Worlds for --witness search")->default_val(4);
  solve_cmd->add_flag("--witness", witness, "Search a model by brute force");
  solve_cmd->add_flag("--stats", stats, "Print search statistics (always on)");

  auto* mc_cmd = app.add_subcommand("model-check", "Evaluate a formula in a JSON model");
  mc_cmd->add_option("--model", model_path, "Model JSON file")->required();
  mc_cmd->add_option("--world", world, "World")->default_val(0);
  mc_cmd->add_option("FORMULA", formula, "Formula");
  mc_cmd->add_option("--formula", formula_flag, "Formula");
  mc_cmd->add_option("--condition", cond_path, "Condition JSON file");

  auto* qbf_cmd = app.add_subcommand("encode-qbf", "Print the Ladner encoding of a QBF");
  qbf_cmd->add_option("qbf", qbf, "QBF, e.g. \"A1 E2 : (p1 <-> p2)\"")->required();

  auto* cc_cmd = app.add_subcommand("cross-check", "Compare solve with brute-force model search");
  cc_cmd->add_option("--logic", logic, "Logic name")->required();
  cc_cmd->add_option("--max-size", max_size, "Largest #phi")->default_val(4);
  cc_cmd->add_option("--budget", budget, "Worlds for brute force; 0 means #phi+1")->default_val(0);
  cc_cmd->add_option("--seed", seed, "Seed for --samples")->default_val(1);
  cc_cmd->add_option("--samples", samples, "Random formulas instead of all of them")->default_val(0);
  cc_cmd->add_flag("--corrupt", corrupt)->group("");

  auto* list_cmd = app.add_subcommand("list-logics", "List logic presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const std::string& text = formula_flag.empty() ? formula : formula_flag;
    if (solve_cmd->parsed() || mc_cmd->parsed()) {
      if (text.empty()) throw std::invalid_argument("missing formula");
    }
    if (solve_cmd->parsed()) return run_solve(logic, text, witness, budget);
    if (mc_cmd->parsed()) return run_model_check(model_path, world, text, cond_path);
    if (qbf_cmd->parsed()) return run_encode_qbf(qbf);
    if (cc_cmd->parsed()) return run_cross_check(logic, max_size, budget, seed, samples, corrupt);
    if (list_cmd->parsed()) return run_list_logics();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad JSON: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
