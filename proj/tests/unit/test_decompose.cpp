#include "doctest.h"
#include "ramsey/bench.hpp"
#include "ramsey/decompose.hpp"
#include "ramsey/ramsey.hpp"
#include "support.hpp"

using namespace ramsey;
using namespace ramsey::testing;

namespace {

Formula floor_eq(const Var& x, const Var& y) {
  return Formula::term_atom(Relation::Eq, Term::variable(x), Term::floor(Term::variable(y)));
}

Rational sample(Rng& rng, const Var& v) {
  return v.sort == Sort::Int ? Rational(uniform(rng, -6, 6)) : random_rational(rng, 4, 4);
}

}  // namespace

TEST_CASE("push negations") {
  Var x{"x", Sort::Int}, y{"y", Sort::Int};
  Formula f = mk_not(mk_or({lt(x, y), mk_not(eq(x, 2))}));
  Formula g = push_negations(f);
  CHECK(contains_floor(g) == false);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    Assignment a{{x, sample(rng, x)}, {y, sample(rng, y)}};
    CHECK(evaluate(f, a) == evaluate(g, a));
  }
  CHECK_THROWS(push_negations(mk_not(mk_exists({x}, lt(x, y)))));
}

TEST_CASE("flattening") {
  Var x{"x", Sort::Int};
  FreshNames names;
  Formula f = lt(LinTerm(x) * Rational(3), 1);
  CHECK_FALSE(is_primitive(f));
  FlattenResult r = flatten_atoms(f, names);
  CHECK(is_primitive(r.body));
  CHECK(is_primitive(r.constraints));
  for (long v = -5; v <= 5; ++v) {
    Assignment a{{x, Rational(v)}};
    Assignment b = r.extend(a);
    CHECK(evaluate(r.constraints, b));
    CHECK(evaluate(r.body, b) == evaluate(f, a));
  }

  Var u{"u", Sort::Int}, y{"y", Sort::Real};
  CHECK(is_primitive(floor_eq(u, y)));
  CHECK(is_primitive(lt(x, 0)));
  CHECK(is_primitive(eq(LinTerm(x) + u, Var{"v", Sort::Int})));
}

TEST_CASE("program atoms flatten and separate") {
  // x2' = x2 + ⌊x1⌋ - 1 with a real x1.
  Var x1{"x1", Sort::Real}, x2{"x2", Sort::Int}, x2p{"x2p", Sort::Int};
  Formula f = Formula::term_atom(
      Relation::Eq, Term::variable(x2p),
      Term::sum({Term::variable(x2), Term::floor(Term::variable(x1)), Term::constant(Rational(-1))}));
  FreshNames names;
  FlattenResult r = flatten_atoms(f, names);
  CHECK(is_primitive(r.body));
  Separation s = separate(mk_and({r.body, r.constraints}), names);
  CHECK(is_separated(s.formula));
  CHECK(s.parts.count(x1) == 1);
  CHECK(s.parts.count(x2) == 0);
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    Assignment a{{x1, sample(rng, x1)}, {x2, sample(rng, x2)}, {x2p, sample(rng, x2p)}};
    if (i % 2) a[x2p] = a[x2] + a[x1].floor() - Rational(1);
    Assignment b = split_assignment(r.extend(a), s.parts);
    CHECK(evaluate(s.formula, b) == evaluate(f, a));
  }
}

TEST_CASE("separation of single primitive atoms") {
  Var x{"x", Sort::Real}, n{"n", Sort::Int};
  FreshNames names;
  Separation one = separate(eq(x, 1), names);
  CHECK(is_separated(one.formula));
  Separation fl = separate(floor_eq(n, x), names);
  CHECK(is_separated(fl.formula));
  for (const Rational& v : {Rational(1), Rational(BigInt(3), BigInt(2)), Rational(-2)}) {
    for (long m = -3; m <= 3; ++m) {
      Assignment a{{x, v}, {n, Rational(m)}};
      CHECK(evaluate(one.formula, split_assignment(a, one.parts)) == (v == Rational(1)));
      CHECK(evaluate(fl.formula, split_assignment(a, fl.parts)) == (Rational(m) == v.floor()));
    }
  }
}

TEST_CASE("property: flatten then separate preserves meaning") {
  Rng rng(17);
  for (int i = 0; i < 150; ++i) {
    RandomRamsey r = random_tuple(rng, Domain::Mixed, 2, true);
    Formula f = push_negations(random_part(rng, r, Domain::Mixed, static_cast<int>(uniform(rng, 1, 3))));
    FreshNames names(f);
    FlattenResult fr = flatten_atoms(f, names);
    REQUIRE(is_primitive(fr.body));
    Separation s = separate(mk_and({fr.body, fr.constraints}), names);
    CHECK(is_separated(s.formula));
    for (int k = 0; k < 500; ++k) {
      Assignment a;
      for (const auto& v : tuple_vars(r)) a[v] = sample(rng, v);
      Assignment b = split_assignment(fr.extend(a), s.parts);
      CHECK(evaluate(s.formula, b) == evaluate(f, a));
    }
  }
}

TEST_CASE("decomposed Ramsey bodies are separated") {
  Rng rng(23);
  for (int i = 0; i < 60; ++i) {
    RandomRamsey r = random_ramsey(rng, Domain::Mixed);
    Formula f = Formula::exists_ramsey(r.xs, r.ys, push_negations(r.body));
    FreshNames names(f);
    RamseySplit split = decompose_ramsey(f, names);
    REQUIRE(split.ramsey.kind() == Formula::Kind::ExistsRamsey);
    CHECK(is_separated(split.ramsey.body()));
    CHECK(split.ramsey.xs().size() == split.ramsey.ys().size());
    for (const auto& [v, parts] : split.tuple) {
      CHECK(v.sort == Sort::Real);
      CHECK(parts.integral.sort == Sort::Int);
      CHECK(parts.fractional.sort == Sort::Real);
    }
  }
}

TEST_CASE("separation stays linear on the mixed families") {
  // Observed ratio of (vars + atoms) is about 26 for program and 32 for mixed at every d.
  constexpr double kBound = 40;
  for (Family fam : {Family::Program, Family::Mixed}) {
    std::vector<double> ratios;
    for (int d : {1, 5, 20}) {
      Script s = generate_benchmark({fam, d, 7, Domain::Mixed});
      Formula body = push_negations(s.goal.kind() == Formula::Kind::ExistsRamsey ? s.goal.body() : s.goal);
      FreshNames names(s.goal);
      FlattenResult fr = flatten_atoms(body, names);
      Separation sep = separate(mk_and({fr.body, fr.constraints}), names);
      SizeMetrics in = measure(body), out = measure(sep.formula);
      ratios.push_back(static_cast<double>(out.vars + out.atoms) / static_cast<double>(in.vars + in.atoms));
      CHECK(ratios.back() <= kBound);
    }
    CHECK(ratios.back() <= ratios.front() * 1.05);
  }
}
