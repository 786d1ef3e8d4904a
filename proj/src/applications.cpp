#include "ramsey/applications.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ramsey/frontend.hpp"
#include "ramsey/ramsey.hpp"

namespace ramsey {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<Var> fresh_copy(const std::vector<Var>& vs, std::string_view hint, FreshNames& names) {
  std::vector<Var> out;
  out.reserve(vs.size());
  for (const Var& v : vs) out.push_back(names.fresh(hint, v.sort));
  return out;
}

std::map<Var, Var> zip(const std::vector<Var>& from, const std::vector<Var>& to) {
  std::map<Var, Var> m;
  for (std::size_t i = 0; i < from.size(); ++i) m.emplace(from[i], to[i]);
  return m;
}

void check_tuple(const std::vector<Var>& xs, const std::vector<Var>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("tuple dimensions differ");
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i].sort != ys[i].sort) throw std::invalid_argument("sort mismatch between " + xs[i].name + " and " + ys[i].name);
}

Formula iff_negated(const Formula& a, const Formula& b) {
  return mk_not(mk_and({mk_or({mk_not(a), b}), mk_or({mk_not(b), a})}));
}

}  // namespace

const char* mondec_name(MondecResult::Kind k) {
  switch (k) {
    case MondecResult::Kind::Decomposable: return "decomposable";
    case MondecResult::Kind::NotDecomposable: return "not-decomposable";
    case MondecResult::Kind::Inconclusive: return "inconclusive";
  }
  return "?";
}

MondecQuery mondec_query(const Formula& phi, const std::vector<Var>& vars, std::size_t i, MondecMode mode,
                         FreshNames& names) {
  if (i >= vars.size()) throw std::out_of_range("mondec variable index");
  std::vector<Var> single{vars[i]}, rest;
  for (std::size_t j = 0; j < vars.size(); ++j)
    if (j != i) rest.push_back(vars[j]);

  MondecQuery q;
  q.xs = mode == MondecMode::PerVariable ? single : rest;
  std::vector<Var> bound = mode == MondecMode::PerVariable ? rest : single;
  q.ys = fresh_copy(q.xs, "c", names);
  Formula copy = substitute_vars(phi, zip(q.xs, q.ys), names);
  q.ramsey = Formula::exists_ramsey(q.xs, q.ys, mk_exists(bound, iff_negated(phi, copy)));
  return q;
}

MondecResult mondec_check(const Formula& phi, const SolverConfig& cfg, const MondecOptions& opts) {
  if (!is_quantifier_free(phi)) throw std::invalid_argument("mondec expects a quantifier-free formula");
  std::vector<Var> vars = opts.vars.empty() ? ordered_free_vars(phi) : opts.vars;

  MondecResult res;
  res.steps.resize(vars.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex err_mu;
  std::exception_ptr err;
  std::vector<char> done(vars.size(), 0);

  auto work = [&] {
    for (;;) {
      std::size_t i = next++;
      if (i >= vars.size() || stop) return;
      try {
        FreshNames names(phi);
        MondecStep& st = res.steps[i];
        st.index = i;
        MondecQuery q = mondec_query(phi, vars, i, opts.mode, names);
        st.input = measure(q.ramsey.body());
        auto t0 = Clock::now();
        Formula out = eliminate(q.ramsey, names);
        st.eliminate_ms = ms_since(t0);
        st.output = measure(out);
        t0 = Clock::now();
        st.verdict = check_sat(out, cfg);
        st.solve_ms = ms_since(t0);
        done[i] = 1;
        if (st.verdict.is_sat() && opts.jobs <= 1) stop = true;
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
        stop = true;
      }
    }
  };

  std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, vars.size()));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);

  std::vector<MondecStep> steps;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (done[i]) steps.push_back(std::move(res.steps[i]));
  res.steps = std::move(steps);

  for (const auto& st : res.steps)
    if (st.verdict.is_sat()) {
      res.kind = MondecResult::Kind::NotDecomposable;
      res.index = st.index;
      res.reason = "infinite clique of distinct " + vars[st.index].name + "-classes";
      return res;
    }
  for (const auto& st : res.steps)
    if (st.verdict.is_unknown()) {
      res.kind = MondecResult::Kind::Inconclusive;
      res.index = st.index;
      res.reason = st.verdict.reason;
      return res;
    }
  res.kind = MondecResult::Kind::Decomposable;
  return res;
}

Reduction mondec_reduction(const Formula& psi, const std::vector<Var>& xs, FreshNames& names) {
  if (xs.empty()) throw std::invalid_argument("mondec reduction needs at least one variable");
  Var y = names.fresh("y", xs.front().sort), z = names.fresh("z", xs.front().sort);
  Reduction r;
  r.formula = mk_or({mk_not(psi), eq(y, z)});
  r.xs = xs;
  r.xs.push_back(y);
  r.xs.push_back(z);
  return r;
}

// --------------------------------------------------------------------------- WQO

const char* wqo_name(WqoResult::Kind k) {
  switch (k) {
    case WqoResult::Kind::Wqo: return "wqo";
    case WqoResult::Kind::NotWqo: return "not-wqo";
    case WqoResult::Kind::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* wqo_reason_name(WqoResult::Reason r) {
  switch (r) {
    case WqoResult::Reason::None: return "none";
    case WqoResult::Reason::Reflexivity: return "reflexivity";
    case WqoResult::Reason::Transitivity: return "transitivity";
    case WqoResult::Reason::BadSequence: return "badSequence";
  }
  return "?";
}

WqoQueries wqo_queries(const Formula& phi, const std::vector<Var>& xs, const std::vector<Var>& ys, FreshNames& names) {
  check_tuple(xs, ys);
  names.reserve(phi);
  WqoQueries q;
  q.reflexivity = mk_not(substitute_vars(phi, zip(ys, xs), names));

  std::vector<Var> a = fresh_copy(xs, "a", names), b = fresh_copy(xs, "b", names), c = fresh_copy(xs, "c", names);
  auto inst = [&](const std::vector<Var>& u, const std::vector<Var>& v) {
    std::map<Var, Var> m = zip(xs, u);
    for (std::size_t i = 0; i < ys.size(); ++i) m.emplace(ys[i], v[i]);
    return substitute_vars(phi, m, names);
  };
  std::vector<Var> all = a;
  all.insert(all.end(), b.begin(), b.end());
  all.insert(all.end(), c.begin(), c.end());
  q.transitivity = mk_exists(all, mk_and({inst(a, b), inst(b, c), mk_not(inst(a, c))}));
  q.bad_sequence = eliminate(Formula::exists_ramsey(xs, ys, mk_not(phi)), names);
  return q;
}

WqoResult wqo_check(const Formula& phi, const std::vector<Var>& xs, const std::vector<Var>& ys,
                    const SolverConfig& cfg) {
  FreshNames names(phi);
  WqoQueries q = wqo_queries(phi, xs, ys, names);
  const std::pair<const Formula*, WqoResult::Reason> order[] = {
      {&q.reflexivity, WqoResult::Reason::Reflexivity},
      {&q.transitivity, WqoResult::Reason::Transitivity},
      {&q.bad_sequence, WqoResult::Reason::BadSequence},
  };
  WqoResult res;
  for (const auto& [f, reason] : order) {
    res.verdicts.push_back(check_sat(*f, cfg));
    const Verdict& v = res.verdicts.back();
    if (v.is_sat()) {
      res.kind = WqoResult::Kind::NotWqo;
      res.reason = reason;
      return res;
    }
    if (v.is_unknown()) {
      res.kind = WqoResult::Kind::Inconclusive;
      res.reason = reason;
      res.detail = v.reason;
      return res;
    }
  }
  res.kind = WqoResult::Kind::Wqo;
  return res;
}

Reduction wqo_reduction(const Formula& psi, const std::vector<Var>& ybar, FreshNames& names) {
  names.reserve(psi);
  Var x = names.fresh("x", Sort::Int), y = names.fresh("y", Sort::Int);
  std::vector<Var> xbar = fresh_copy(ybar, "x", names);
  Formula phi = mk_or({
      mk_and({eq(x, 0), eq(y, 0)}),
      mk_and({lt(x, 0), lt(y, 0)}),
      mk_and({gt(x, 0), gt(y, 0)}),
      mk_and({lt(x, 0), eq(y, 0)}),
      mk_and({eq(x, 0), gt(y, 0), psi}),
  });
  Reduction r;
  r.formula = phi;
  r.xs = {x};
  r.xs.insert(r.xs.end(), xbar.begin(), xbar.end());
  r.ys = {y};
  r.ys.insert(r.ys.end(), ybar.begin(), ybar.end());
  return r;
}

// ---------------------------------------------------------------------- liveness

Formula liveness_condition(const Formula& reach, const Formula& constraint, const std::vector<Var>& xs,
                           const std::vector<Var>& ys, FreshNames& names) {
  check_tuple(xs, ys);
  names.reserve(reach);
  names.reserve(constraint);
  std::set<Var> tuple(xs.begin(), xs.end());
  tuple.insert(ys.begin(), ys.end());
  std::vector<Var> z;
  for (const Var& v : free_vars(constraint))
    if (!tuple.count(v)) z.push_back(v);
  for (const Var& v : free_vars(reach))
    for (const Var& w : tuple)
      if (v.name == w.name && v.sort != w.sort) throw std::invalid_argument("sort mismatch on " + v.name);
  Formula ram = Formula::exists_ramsey(xs, ys, mk_and({reach, constraint}));
  return eliminate(mk_exists(z, ram), names);
}

Formula liveness_condition(const Formula& reach, const Formula& constraint, const std::vector<Var>& xs,
                           const std::vector<Var>& ys) {
  FreshNames names;
  return liveness_condition(reach, constraint, xs, ys, names);
}

// ------------------------------------------------------------------- termination

TerminationConditions termination_conditions(const Formula& R, const Formula& T, const std::vector<Var>& xs,
                                             const std::vector<Var>& ys, FreshNames& names) {
  check_tuple(xs, ys);
  names.reserve(R);
  names.reserve(T);
  std::vector<Var> zs = fresh_copy(xs, "n", names);
  auto shift = [&](const Formula& f, const std::vector<Var>& from, const std::vector<Var>& to) {
    std::map<Var, Var> m = zip(xs, from);
    for (std::size_t i = 0; i < ys.size(); ++i) m.emplace(ys[i], to[i]);
    return substitute_vars(f, m, names);
  };
  TerminationConditions c;
  c.inductivity = mk_or({
      mk_and({R, mk_not(T)}),
      mk_exists(zs, mk_and({T, shift(R, ys, zs), mk_not(shift(T, xs, zs))})),
  });
  c.loop = mk_and({T, shift(T, ys, ys)});
  c.clique = eliminate(Formula::exists_ramsey(xs, ys, T), names);
  return c;
}

TerminationExample mccarthy91() {
  Var n{"n", Sort::Int}, m{"m", Sort::Int}, n1{"n'", Sort::Int}, m1{"m'", Sort::Int};
  auto between = [](const Var& v) { return mk_and({ge(v, -1), le(v, 1)}); };
  TerminationExample ex;
  ex.xs = {n, m};
  ex.ys = {n1, m1};
  ex.R = mk_and({gt(n, 0), between(m), between(m1), ge(n1, 0),
                 mk_or({mk_and({ge(m, 0), eq(n1, LinTerm(n) - 1), eq(m1, LinTerm(m) - 1)}),
                        mk_and({lt(m, 0), eq(n1, LinTerm(n) + 1), eq(m1, LinTerm(m) + 2)})})});
  Formula t1 = mk_and({eq(m1, 0), eq(n1, n), eq(m, -1), eq(n, 1)});
  Formula t2 = mk_and({eq(m1, 1), eq(n1, LinTerm(n) + 1), eq(m, -1), ge(n, 1)});
  Formula t3 = mk_and({gt(m1, m), eq(n1, n), ge(n, 2)});
  Formula t4 = mk_and({lt(n1, n), ge(n1, 0), le(m, 0)});
  Formula t5 = mk_and({lt(n1, n), ge(n1, 0), eq(m, 1), ge(m1, 0)});
  Formula t6 = mk_and({lt(n1, LinTerm(n) - 1), ge(n1, 0), eq(m, 1), eq(m1, -1)});
  ex.T = mk_and({gt(n, 0), between(m), between(m1), ge(n1, 0), mk_or({t1, t2, t3, t4, t5, t6})});
  return ex;
}

}  // namespace ramsey
