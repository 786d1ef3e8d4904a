// Command-line front end: eliminate, check, mondec, wqo, bench.
// Exit codes: 0 positive answer, 1 negative answer, 2 unknown, 3 usage or error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ramsey/applications.hpp"
#include "ramsey/bench.hpp"
#include "ramsey/frontend.hpp"
#include "ramsey/ramsey.hpp"
#include "ramsey/solver.hpp"

using namespace ramsey;

namespace {

constexpr int kPositive = 0, kNegative = 1, kUnknown = 2, kError = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Script load(const std::string& path) { return parse_script(slurp(path), path); }

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int verdict_code(const Verdict& v) {
  if (v.is_sat()) return kPositive;
  if (v.is_unsat()) return kNegative;
  return kUnknown;
}

void print_stats(const char* label, const SizeMetrics& m) {
  std::cerr << label << ": vars=" << m.vars << " atoms=" << m.atoms << " length=" << m.length << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramsey quantifier elimination for linear arithmetic"};
  app.require_subcommand(1);
  app.fallthrough();

  SolverConfig cfg = SolverConfig::from_env();
  std::string solver_path;
  int timeout_ms = cfg.timeout_ms;
  app.add_option("--solver", solver_path, "SMT solver executable");
  app.add_option("--timeout", timeout_ms, "solver timeout in milliseconds")->check(CLI::PositiveNumber);

  // eliminate
  auto* elim = app.add_subcommand("eliminate", "replace the Ramsey quantifier by an existential formula");
  std::string elim_in, elim_out, elim_domain;
  bool elim_stats = false, elim_split = false;
  elim->add_option("input", elim_in, "input script")->required();
  elim->add_option("-o,--output", elim_out, "output file (default stdout)");
  elim->add_option("--domain", elim_domain, "int, real or mixed")->check(CLI::IsMember({"int", "real", "mixed"}));
  elim->add_flag("--stats", elim_stats, "print size metrics to stderr");
  elim->add_flag("--force-split", elim_split, "split every real variable on the mixed path");

  // check
  auto* check = app.add_subcommand("check", "eliminate and decide satisfiability");
  std::string check_in;
  bool check_model = false;
  check->add_option("input", check_in, "input script")->required();
  check->add_flag("--model", check_model, "print the model of the free variables");

  // mondec
  auto* mondec = app.add_subcommand("mondec", "decide monadic decomposability of the asserted formula");
  std::string mondec_in, mondec_mode = "per-var";
  std::size_t mondec_jobs = 1;
  mondec->add_option("input", mondec_in, "input script")->required();
  mondec->add_option("--mode", mondec_mode, "per-var or group")->check(CLI::IsMember({"per-var", "group"}));
  mondec->add_option("--jobs", mondec_jobs, "concurrent solver queries")->check(CLI::PositiveNumber);

  // wqo
  auto* wqo = app.add_subcommand("wqo", "decide whether the asserted relation is a WQO");
  std::string wqo_in;
  wqo->add_option("input", wqo_in, "input script; first half of the declarations is x, second half y")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "run benchmark families");
  std::string bench_family, bench_domain, bench_json;
  std::vector<int> bench_dims{1};
  std::vector<long> bench_params{0};
  std::size_t bench_jobs = 1;
  std::string bench_mode = "group";
  bench->add_option("--family", bench_family, "benchmark family")->required();
  bench->add_option("--dim", bench_dims, "dimension(s)");
  bench->add_option("--param", bench_params, "parameter(s) t or k");
  bench->add_option("--domain", bench_domain, "int, real or mixed")->required();
  bench->add_option("--json", bench_json, "write a JSON report");
  bench->add_option("--jobs", bench_jobs, "worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--mode", bench_mode, "mondec mode")->check(CLI::IsMember({"per-var", "group"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  if (!solver_path.empty()) cfg.path = solver_path;
  cfg.timeout_ms = timeout_ms;

  try {
    if (*elim) {
      Script s = load(elim_in);
      EliminationOptions opts;
      if (!elim_domain.empty()) opts.domain = parse_domain(elim_domain);
      opts.force_split = elim_split;
      if (elim_stats) print_stats("input", measure(s.goal));
      s.goal = eliminate(s.goal, opts);
      s.logic = infer_logic(s.goal);
      if (elim_stats) print_stats("output", measure(s.goal));
      write_out(elim_out, print_smtlib2(s));
      return kPositive;
    }
    if (*check) {
      Script s = load(check_in);
      Formula f = eliminate(s.goal);
      Verdict v = check_sat(f, cfg);
      std::cout << verdict_name(v.kind);
      if (v.is_unknown() && !v.reason.empty()) std::cout << " (" << v.reason << ")";
      std::cout << "\n";
      if (check_model && v.model) {
        std::set<Var> free = free_vars(s.goal);
        for (const auto& [var, val] : *v.model)
          if (free.count(var)) std::cout << "  " << var.name << " = " << val.str() << "\n";
      }
      return verdict_code(v);
    }
    if (*mondec) {
      Script s = load(mondec_in);
      MondecOptions opts;
      opts.mode = mondec_mode == "group" ? MondecMode::Group : MondecMode::PerVariable;
      opts.jobs = mondec_jobs;
      opts.vars = s.declarations;
      MondecResult r = mondec_check(s.goal, cfg, opts);
      std::cout << mondec_name(r.kind);
      if (r.index) std::cout << " " << opts.vars[*r.index].name;
      if (r.kind == MondecResult::Kind::Inconclusive) std::cout << " (" << r.reason << ")";
      std::cout << "\n";
      if (r.kind == MondecResult::Kind::Decomposable) return kPositive;
      return r.kind == MondecResult::Kind::NotDecomposable ? kNegative : kUnknown;
    }
    if (*wqo) {
      Script s = load(wqo_in);
      if (s.declarations.size() % 2 != 0) throw std::runtime_error("wqo expects an even number of declarations");
      std::size_t half = s.declarations.size() / 2;
      std::vector<Var> xs(s.declarations.begin(), s.declarations.begin() + half);
      std::vector<Var> ys(s.declarations.begin() + half, s.declarations.end());
      WqoResult r = wqo_check(s.goal, xs, ys, cfg);
      std::cout << wqo_name(r.kind);
      if (r.kind != WqoResult::Kind::Wqo) std::cout << " " << wqo_reason_name(r.reason);
      std::cout << "\n";
      if (r.is_wqo()) return kPositive;
      return r.kind == WqoResult::Kind::NotWqo ? kNegative : kUnknown;
    }
    if (*bench) {
      auto fam = parse_family(bench_family);
      if (!fam) throw std::runtime_error("unknown family " + bench_family);
      auto dom = parse_domain(bench_domain);
      if (!dom) throw std::runtime_error("unknown domain " + bench_domain);
      std::vector<BenchSpec> specs;
      for (int d : bench_dims)
        for (long p : bench_params) {
          BenchSpec spec{*fam, d, p, *dom};
          validate(spec);
          specs.push_back(spec);
        }
      SuiteOptions so;
      so.jobs = bench_jobs;
      so.mode = bench_mode == "group" ? MondecMode::Group : MondecMode::PerVariable;
      auto reports = run_suite(specs, cfg, so);
      std::cout << render_table(reports);
      if (!bench_json.empty()) write_out(bench_json, to_json(reports));
      bool all = true, unknown = false;
      for (const auto& r : reports) {
        if (r.verdict == "error") {
          std::cerr << describe(r.spec) << ": " << r.error << "\n";
          return kError;
        }
        unknown = unknown || r.verdict == "unknown" || r.verdict == "inconclusive";
        all = all && r.matches();
      }
      if (unknown) return kUnknown;
      return all ? kPositive : kNegative;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
