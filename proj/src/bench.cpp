#include "ramsey/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "ramsey/ramsey.hpp"

namespace ramsey {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct FamilyInfo {
  Family family;
  const char* name;
  bool mondec;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::Half, "half", false},        {Family::EqEx, "eq_ex", false},      {Family::EqFree, "eq_free", false},
    {Family::Dickson, "dickson", false},  {Family::Program, "program", false}, {Family::Imp, "imp", true},
    {Family::Diagonal, "diagonal", true}, {Family::Cubes2d, "cubes2d", true},  {Family::Cubes10, "cubes10", true},
    {Family::Mixed, "mixed", true},
};

std::vector<Var> vec(const std::string& base, int d, Sort s) {
  std::vector<Var> out;
  for (int i = 1; i <= d; ++i) out.push_back({base + std::to_string(i), s});
  return out;
}

Sort sort_of(Domain d) { return d == Domain::Real ? Sort::Real : Sort::Int; }

Formula floor_le(const Var& lhs, const Var& base, const Var& floored) {
  Term rhs = Term::sum({Term::variable(base), Term::scale(Rational(-1), Term::floor(Term::variable(floored)))});
  return Formula::term_atom(Relation::Le, Term::variable(lhs), rhs);
}

Formula floor_eq(const Var& lhs, const Var& floored) {
  return Formula::term_atom(Relation::Eq, Term::variable(lhs), Term::floor(Term::variable(floored)));
}

void append(std::vector<Var>& to, const std::vector<Var>& from) { to.insert(to.end(), from.begin(), from.end()); }

Script ramsey_script(std::vector<Var> decls, const std::vector<Var>& xs, const std::vector<Var>& ys, Formula body) {
  Script s;
  s.declarations = std::move(decls);
  s.goal = Formula::exists_ramsey(xs, ys, std::move(body));
  s.logic = infer_logic(s.goal);
  return s;
}

Script mondec_script(std::vector<Var> decls, Formula phi) {
  Script s;
  s.declarations = std::move(decls);
  s.goal = std::move(phi);
  s.logic = infer_logic(s.goal);
  s.info["mode"] = "mondec";
  return s;
}

}  // namespace

const char* family_name(Family f) {
  for (const auto& i : kFamilies)
    if (i.family == f) return i.name;
  return "?";
}

std::optional<Family> parse_family(const std::string& s) {
  for (const auto& i : kFamilies)
    if (s == i.name) return i.family;
  return std::nullopt;
}

std::optional<Domain> parse_domain(const std::string& s) {
  if (s == "int" || s == "Int" || s == "Z") return Domain::Int;
  if (s == "real" || s == "Real" || s == "R") return Domain::Real;
  if (s == "mixed" || s == "Mixed") return Domain::Mixed;
  return std::nullopt;
}

bool is_mondec_family(Family f) {
  for (const auto& i : kFamilies)
    if (i.family == f) return i.mondec;
  return false;
}

void validate(const BenchSpec& s) {
  if (s.dim < 1) throw std::invalid_argument("dimension must be positive");
  bool mixed_family = s.family == Family::Program || s.family == Family::Mixed;
  if (mixed_family != (s.domain == Domain::Mixed))
    throw std::invalid_argument(std::string("family ") + family_name(s.family) + " is not listed over " +
                                domain_name(s.domain));
  if (s.family == Family::Cubes2d && s.dim != 2) throw std::invalid_argument("cubes2d has dimension 2");
  bool needs_k = s.family == Family::Imp || s.family == Family::Diagonal || s.family == Family::Cubes2d ||
                 s.family == Family::Mixed;
  if (needs_k && s.param < 0) throw std::invalid_argument("parameter k must be non-negative");
}

std::string describe(const BenchSpec& s) {
  std::ostringstream os;
  os << family_name(s.family) << " d=" << s.dim << " p=" << s.param << " " << domain_name(s.domain);
  return os.str();
}

Script generate_benchmark(const BenchSpec& s) {
  validate(s);
  const int d = s.dim;
  const Rational p(s.param);
  const Sort so = sort_of(s.domain);
  std::vector<Formula> parts;
  Script out;

  switch (s.family) {
    case Family::Half: {
      auto x = vec("x", d, so), y = vec("y", d, so);
      for (int i = 0; i < d; ++i) {
        parts.push_back(le(LinTerm(y[i]) * Rational(2), x[i]));
        parts.push_back(ge(x[i], p));
      }
      std::vector<Var> decls = x;
      append(decls, y);
      out = ramsey_script(decls, x, y, mk_and(parts));
      break;
    }
    case Family::EqEx:
    case Family::EqFree: {
      auto x = vec("x", d, so), y = vec("y", d, so), z = vec("z", d, so);
      for (int i = 0; i < d; ++i) {
        parts.push_back(lt(x[i], y[i]));
        parts.push_back(eq(x[i], z[i]));
      }
      std::vector<Var> decls = x;
      append(decls, y);
      append(decls, z);
      Formula body = mk_and(parts);
      if (s.family == Family::EqEx) body = mk_exists(z, body);
      out = ramsey_script(decls, x, y, body);
      break;
    }
    case Family::Dickson: {
      auto x = vec("x", d, so), y = vec("y", d, so);
      std::vector<Formula> geq, neq, xnle, ynle;
      for (int i = 0; i < d; ++i) {
        parts.push_back(ge(x[i], 0));
        geq.push_back(ge(x[i], y[i]));
        neq.push_back(mk_not(eq(x[i], y[i])));
        xnle.push_back(gt(x[i], y[i]));
        ynle.push_back(gt(y[i], x[i]));
      }
      geq.push_back(mk_or(neq));
      parts.push_back(mk_or({mk_and(geq), mk_and({mk_or(xnle), mk_or(ynle)})}));
      std::vector<Var> decls = x;
      append(decls, y);
      out = ramsey_script(decls, x, y, mk_and(parts));
      break;
    }
    case Family::Program: {
      auto x1 = vec("x1_", d, Sort::Real), x2 = vec("x2_", d, Sort::Int);
      auto y1 = vec("y1_", d, Sort::Real), y2 = vec("y2_", d, Sort::Int);
      const Rational half(1, 2);
      for (int i = 0; i < d; ++i) {
        parts.push_back(gt(x1[i], 0));
        parts.push_back(gt(x2[i], 0));
        parts.push_back(ge(y1[i], LinTerm(x1[i]) * half + LinTerm(half)));
        parts.push_back(floor_le(y2[i], x2[i], x1[i]));
      }
      std::vector<Var> xs = x1, ys = y1;
      append(xs, x2);
      append(ys, y2);
      std::vector<Var> decls = xs;
      append(decls, ys);
      out = ramsey_script(decls, xs, ys, mk_and(parts));
      break;
    }
    case Family::Imp: {
      auto x = vec("x", d, so), y = vec("y", d, so);
      std::vector<Var> decls;
      for (int i = 0; i < d; ++i) {
        parts.push_back(mk_or({lt(x[i], 0), mk_and({ge(LinTerm(x[i]) + y[i], p), ge(y[i], 0)})}));
        decls.push_back(x[i]);
        decls.push_back(y[i]);
      }
      out = mondec_script(decls, mk_and(parts));
      break;
    }
    case Family::Diagonal: {
      auto x = vec("x", d, so);
      for (int i = 0; i < d; ++i) {
        parts.push_back(ge(x[i], 0));
        parts.push_back(le(x[i], p));
      }
      for (int i = 0; i + 1 < d; ++i) parts.push_back(eq(x[i], x[i + 1]));
      out = mondec_script(x, mk_and(parts));
      break;
    }
    case Family::Cubes2d: {
      auto x = vec("x", 2, so);
      std::vector<Formula> cubes;
      for (long i = 1; i <= s.param; ++i) {
        Rational lo(i), hi(i + 2);
        cubes.push_back(mk_and({ge(x[0], lo), le(x[0], hi), ge(x[1], lo), le(x[1], hi)}));
      }
      out = mondec_script(x, mk_and({le(LinTerm(x[0]) + x[1], p), mk_or(cubes)}));
      break;
    }
    case Family::Cubes10: {
      auto x = vec("x", d, so);
      for (int i = 1; i <= 10; ++i)
        for (int j = 0; j < d; ++j) {
          parts.push_back(ge(x[j], Rational(i)));
          parts.push_back(le(x[j], Rational(i + 2)));
        }
      out = mondec_script(x, mk_and(parts));
      break;
    }
    case Family::Mixed: {
      auto x = vec("x", d, Sort::Int), y = vec("y", d, Sort::Real);
      std::vector<Var> decls;
      for (int i = 0; i < d; ++i) {
        parts.push_back(floor_eq(x[i], y[i]));
        parts.push_back(ge(y[i], 0));
        parts.push_back(le(y[i], p));
        decls.push_back(x[i]);
        decls.push_back(y[i]);
      }
      out = mondec_script(decls, mk_and(parts));
      break;
    }
  }
  out.source = describe(s);
  out.info["family"] = family_name(s.family);
  return out;
}

std::string expected_verdict(const BenchSpec& s) {
  switch (s.family) {
    case Family::Half: return s.domain == Domain::Real && s.param <= 0 ? "sat" : "unsat";
    case Family::EqEx: return "sat";
    case Family::EqFree: return "unsat";
    case Family::Dickson: return s.domain == Domain::Real ? "sat" : "unsat";
    case Family::Program: return "sat";
    case Family::Imp:
    case Family::Diagonal:
    case Family::Cubes2d: return s.domain == Domain::Int ? "decomposable" : "not-decomposable";
    case Family::Cubes10:
    case Family::Mixed: return "decomposable";
  }
  return "?";
}

BenchReport run_benchmark(const BenchSpec& s, const SolverConfig& cfg, const SuiteOptions& opts) {
  BenchReport r;
  r.spec = s;
  try {
    r.expected = expected_verdict(s);
    Script sc = generate_benchmark(s);
    if (is_mondec_family(s.family)) {
      MondecOptions mo;
      mo.mode = opts.mode;
      mo.vars = sc.declarations;
      MondecResult m = mondec_check(sc.goal, cfg, mo);
      if (!m.steps.empty()) {
        r.input = m.steps.front().input;
        r.output = m.steps.front().output;
      }
      for (const auto& st : m.steps) {
        r.eliminate_ms += st.eliminate_ms;
        r.solve_ms += st.solve_ms;
      }
      r.verdict = mondec_name(m.kind);
      if (m.kind == MondecResult::Kind::Inconclusive) r.error = m.reason;
    } else {
      r.input = measure(sc.goal);
      auto t0 = Clock::now();
      FreshNames names(sc.goal);
      Formula out = eliminate(sc.goal, names);
      r.eliminate_ms = ms_since(t0);
      r.output = measure(out);
      if (opts.keep_script) {
        Script q = sc;
        q.goal = out;
        q.logic = infer_logic(out);
        r.script = print_smtlib2(q);
      }
      t0 = Clock::now();
      Verdict v = check_sat(out, cfg);
      r.solve_ms = ms_since(t0);
      r.verdict = verdict_name(v.kind);
      if (v.is_unknown()) r.error = v.reason;
    }
  } catch (const std::exception& e) {
    r.verdict = "error";
    r.error = e.what();
  }
  return r;
}

std::vector<BenchReport> run_suite(const std::vector<BenchSpec>& specs, const SolverConfig& cfg,
                                   const SuiteOptions& opts) {
  std::vector<BenchReport> out(specs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) out[i] = run_benchmark(specs[i], cfg, opts);
  };
  std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, specs.size()));
  if (jobs <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

std::string render_table(const std::vector<BenchReport>& reports) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-9s %-5s %4s %6s | %7s %7s | %8s %8s | %9s %9s | %-16s %-16s\n", "formula", "dom",
                "d", "param", "in.vars", "in.atom", "out.vars", "out.atom", "elim(s)", "solve(s)", "verdict",
                "expected");
  os << line << std::string(126, '-') << "\n";
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-9s %-5s %4d %6ld | %7zu %7zu | %8zu %8zu | %9.3f %9.3f | %-16s %-16s%s\n",
                  family_name(r.spec.family), domain_name(r.spec.domain), r.spec.dim, r.spec.param, r.input.vars,
                  r.input.atoms, r.output.vars, r.output.atoms, r.eliminate_ms / 1000, r.solve_ms / 1000,
                  r.verdict.c_str(), r.expected.c_str(), r.matches() ? "" : "  *");
    os << line;
  }
  return os.str();
}

std::string to_json(const std::vector<BenchReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["family"] = family_name(r.spec.family);
    j["domain"] = domain_name(r.spec.domain);
    j["dim"] = r.spec.dim;
    j["param"] = r.spec.param;
    j["input"] = {{"vars", r.input.vars}, {"atoms", r.input.atoms}, {"length", r.input.length}};
    j["output"] = {{"vars", r.output.vars}, {"atoms", r.output.atoms}, {"length", r.output.length}};
    j["time_ms"] = {{"eliminate", r.eliminate_ms}, {"solve", r.solve_ms}};
    j["verdict"] = r.verdict;
    j["expected"] = r.expected;
    if (!r.error.empty()) j["error"] = r.error;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace ramsey
