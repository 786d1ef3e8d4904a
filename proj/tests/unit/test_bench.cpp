#include "doctest.h"
#include "ramsey/bench.hpp"
#include "ramsey/ramsey.hpp"
#include "support.hpp"

using namespace ramsey;

TEST_CASE("family names") {
  for (Family f : {Family::Half, Family::EqEx, Family::EqFree, Family::Dickson, Family::Program, Family::Imp,
                   Family::Diagonal, Family::Cubes2d, Family::Cubes10, Family::Mixed})
    CHECK(parse_family(family_name(f)) == f);
  CHECK_FALSE(parse_family("nope"));
  CHECK(parse_domain("real") == Domain::Real);
  CHECK_FALSE(parse_domain("complex"));
  CHECK(is_mondec_family(Family::Imp));
  CHECK_FALSE(is_mondec_family(Family::Half));
}

TEST_CASE("generated scripts") {
  Script half = generate_benchmark({Family::Half, 2, 5, Domain::Int});
  REQUIRE(half.goal.kind() == Formula::Kind::ExistsRamsey);
  CHECK(half.goal.xs().size() == 2);
  CHECK(half.info.at("family") == "half");
  CHECK(measure(half.goal).atoms == 4);

  Script cubes = generate_benchmark({Family::Cubes10, 2, 0, Domain::Real});
  CHECK(cubes.info.at("mode") == "mondec");
  CHECK(is_quantifier_free(cubes.goal));

  Script mixed = generate_benchmark({Family::Mixed, 2, 3, Domain::Mixed});
  CHECK(contains_floor(mixed.goal));
  std::size_t ints = 0;
  for (const auto& v : mixed.declarations) ints += v.sort == Sort::Int;
  CHECK(ints == 2);
  CHECK(mixed.declarations.size() == 4);

  CHECK(expected_verdict({Family::EqFree, 1, 0, Domain::Int}) == "unsat");
  CHECK(expected_verdict({Family::Cubes10, 2, 0, Domain::Int}) == "decomposable");
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate({Family::Program, 1, 0, Domain::Int}), std::invalid_argument);
  CHECK_THROWS_AS(validate({Family::Cubes2d, 3, 5, Domain::Int}), std::invalid_argument);
  CHECK_THROWS_AS(validate({Family::Half, 0, 1, Domain::Int}), std::invalid_argument);
  CHECK_NOTHROW(validate({Family::Half, 3, 1, Domain::Real}));
  CHECK(describe({Family::Half, 3, 1, Domain::Real}).find("half") != std::string::npos);
}

TEST_CASE("running benchmarks") {
  SolverConfig cfg = SolverConfig::from_env();
  CHECK(run_suite({}, cfg).empty());
  CHECK(to_json({}).rfind("[]", 0) == 0);

  BenchReport ef = run_benchmark({Family::EqFree, 1, 0, Domain::Int}, cfg);
  CHECK(ef.verdict == "unsat");
  CHECK(ef.matches());
  CHECK(ef.output.atoms > ef.input.atoms);

  auto reports = run_suite({{Family::Cubes10, 2, 0, Domain::Int}, {Family::Half, 1, 2, Domain::Real}}, cfg,
                           SuiteOptions{2, MondecMode::Group, true});
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].verdict == "decomposable");
  CHECK(reports[1].matches());
  CHECK_FALSE(reports[1].script.empty());
  std::string table = render_table(reports);
  CHECK(table.find("cubes10") != std::string::npos);
  CHECK(to_json(reports).find("\"verdict\"") != std::string::npos);
}

TEST_CASE("output size grows linearly in the dimension") {
  // Least-squares fit of (vars + atoms) against d; the coefficient of determination must reach 0.99.
  auto r_squared = [](const std::vector<double>& xs, const std::vector<double>& ys) {
    double n = static_cast<double>(xs.size()), mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / n, my += ys[i] / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
      syy += (ys[i] - my) * (ys[i] - my);
    }
    return syy == 0 ? 1.0 : sxy * sxy / (sxx * syy);
  };
  std::vector<std::pair<Family, Domain>> grid;
  for (Family f : {Family::Half, Family::EqEx, Family::EqFree, Family::Dickson, Family::Imp, Family::Diagonal,
                   Family::Cubes10})
    for (Domain d : {Domain::Int, Domain::Real}) grid.push_back({f, d});
  grid.push_back({Family::Program, Domain::Mixed});
  for (const auto& [fam, dom] : grid) {
    std::vector<double> ds, sizes;
    for (int d : {1, 5, 10, 20, 50}) {
      BenchSpec spec{fam, d, fam == Family::Imp ? 4 : fam == Family::Diagonal ? 3 : 1, dom};
      Script s = generate_benchmark(spec);
      FreshNames names(s.goal);
      Formula out;
      if (is_mondec_family(fam)) {
        MondecQuery q = mondec_query(s.goal, s.declarations, 0, MondecMode::PerVariable, names);
        out = eliminate(q.ramsey, names);
      } else {
        out = eliminate(s.goal, names);
      }
      SizeMetrics m = measure(out);
      ds.push_back(d);
      sizes.push_back(static_cast<double>(m.vars + m.atoms));
    }
    INFO(family_name(fam), " ", domain_name(dom));
    CHECK(r_squared(ds, sizes) >= 0.99);
  }
}
