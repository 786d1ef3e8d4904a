#include <stdexcept>

#include "doctest.h"
#include "ramsey/bench.hpp"
#include "ramsey/ramsey.hpp"
#include "ramsey/solver.hpp"
#include "support.hpp"

using namespace ramsey;
using namespace ramsey::testing;

TEST_CASE("basic queries") {
  SolverConfig cfg = SolverConfig::from_env();
  Var x{"x", Sort::Int}, y{"y", Sort::Int};
  CHECK(check_sat(lt(x, x), cfg).is_unsat());
  Verdict v = check_sat(mk_and({lt(x, y), eq(y, 4)}), cfg);
  REQUIRE(v.is_sat());
  REQUIRE(v.model);
  CHECK(v.model->at(y) == Rational(4));
  CHECK(v.model->at(x) < Rational(4));
  CHECK(std::string(verdict_name(Verdict::Kind::Unsat)) == "unsat");
}

TEST_CASE("models of existentials stay consistent") {
  SolverConfig cfg = SolverConfig::from_env();
  Var r{"r", Sort::Real}, w{"w", Sort::Real};
  Verdict v = check_sat(mk_exists({w}, mk_and({lt(r, w), lt(w, 1), lt(0, r)})), cfg);
  REQUIRE(v.is_sat());
  Rational rv = v.model->at(r);
  CHECK(Rational(0) < rv);
  CHECK(rv < Rational(1));
}

TEST_CASE("dickson over the integers") {
  Script s = generate_benchmark({Family::Dickson, 1, 0, Domain::Int});
  CHECK(check_sat(eliminate(s.goal), SolverConfig::from_env()).is_unsat());
}

TEST_CASE("cliques") {
  SolverConfig cfg = SolverConfig::from_env();
  Var x{"x", Sort::Int}, y{"y", Sort::Int};
  Formula body = mk_and({lt(x, y), le(0, x), lt(y, 5)});
  CHECK(find_k_clique(body, {x}, {y}, {}, 5, cfg).is_sat());
  CHECK(find_k_clique(body, {x}, {y}, {}, 6, cfg).is_unsat());
  CHECK_THROWS_AS(find_k_clique(body, {x}, {y}, {}, 9, cfg), std::invalid_argument);
  CliqueQuery q = clique_formula(body, {x}, {y}, {}, 4);
  CHECK(q.copies.size() == 4);
  CHECK_THROWS_AS(clique_formula(body, {x}, {y}, {}, 1), std::invalid_argument);
  CHECK_THROWS(clique_formula(body, {x}, {y}, {}, 0));

  Var z{"z", Sort::Int};
  Formula bounded = mk_and({lt(x, y), lt(y, z)});
  CHECK(find_k_clique(bounded, {x}, {y}, {{z, Rational(3)}}, 5, cfg).is_sat());
}

TEST_CASE("worked example witness sequence") {
  // a_k = (5/2 - 2^-k, 2) satisfies the body for every pair i < j at (z1, z2) = (5/2, 2).
  Script s = worked_example();
  const Formula& body = s.goal.body();
  Var z1{"z1", Sort::Real}, z2{"z2", Sort::Real};
  auto elem = [](int k) { return Rational(BigInt(5), BigInt(2)) - Rational(BigInt(1), BigInt(1) << k); };
  for (int i = 1; i <= 8; ++i)
    for (int j = i + 1; j <= 9; ++j) {
      Assignment a{{z1, Rational(BigInt(5), BigInt(2))}, {z2, Rational(2)}};
      a[s.goal.xs()[0]] = elem(i);
      a[s.goal.xs()[1]] = Rational(2);
      a[s.goal.ys()[0]] = elem(j);
      a[s.goal.ys()[1]] = Rational(2);
      CHECK(evaluate(body, a));
    }
}

TEST_CASE("processes") {
  ProcessResult ok = run_process("/bin/cat", {}, "hello", 5000);
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "hello");
  CHECK_FALSE(ok.timed_out);
  ProcessResult slow = run_process("/bin/sleep", {"5"}, "", 200);
  CHECK(slow.timed_out);

  SolverConfig missing = SolverConfig::from_env();
  missing.path = "/nonexistent/solver";
  Var x{"x", Sort::Int};
  CHECK_THROWS_AS(check_sat(lt(x, 0), missing), SolverError);
}

TEST_CASE("query rendering and model parsing") {
  SolverConfig cfg = SolverConfig::from_env();
  Var x{"x", Sort::Int}, r{"r", Sort::Real};
  Query q = render_query(mk_and({lt(x, 0), lt(r, 1)}), cfg);
  CHECK(q.text.find("(check-sat)") != std::string::npos);
  CHECK(q.text.find("get-value") != std::string::npos);
  CHECK(q.declared.size() == 2);
  CHECK_THROWS(render_query(Formula::exists_ramsey({x}, {Var{"y", Sort::Int}}, lt(x, 0)), cfg));

  Assignment m = parse_model("((x (- 3))\n (r (/ 1.0 2.0)))", {x, r});
  CHECK(m.at(x) == Rational(-3));
  CHECK(m.at(r) == Rational(BigInt(1), BigInt(2)));
  Assignment n = parse_model("((r (- (/ 3.0 4.0))))", {r});
  CHECK(n.at(r) == Rational(BigInt(-3), BigInt(4)));
}

TEST_CASE("verdicts and models are deterministic") {
  SolverConfig cfg = SolverConfig::from_env();
  for (Family f : {Family::Half, Family::EqEx}) {
    Formula e = eliminate(generate_benchmark({f, 2, 0, Domain::Real}).goal);
    Verdict a = check_sat(e, cfg), b = check_sat(e, cfg);
    CHECK(a.kind == b.kind);
    CHECK(a.model == b.model);
  }
}
