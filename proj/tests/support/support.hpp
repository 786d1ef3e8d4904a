#pragma once
// Random formula generators and small helpers shared by the unit tests and the acceptance run.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ramsey/ast.hpp"
#include "ramsey/frontend.hpp"
#include "ramsey/normalize.hpp"
#include "ramsey/ops.hpp"

#ifndef RAMSEY_TEST_DATA
#define RAMSEY_TEST_DATA "tests/data"
#endif

namespace ramsey::testing {

inline std::string data_path(const std::string& name) { return std::string(RAMSEY_TEST_DATA) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Script worked_example() { return parse_script(slurp(data_path("worked_example.rsmt2")), "worked_example"); }

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational random_rational(Rng& rng, long range, long max_den) {
  long den = uniform(rng, 1, max_den);
  return Rational(BigInt(uniform(rng, -range * den, range * den)), BigInt(den));
}

// Random relation between a linear combination of vars and a constant, coefficients in [-c, c].
inline Formula random_atom(Rng& rng, const std::vector<Var>& vars, long c = 3) {
  LinTerm t;
  bool any = false;
  while (!any) {
    t = LinTerm(uniform(rng, -c, c));
    for (const auto& v : vars) {
      long k = uniform(rng, -c, c);
      if (k != 0 && uniform(rng, 0, 2) != 0) {
        t.add(v, Rational(k));
        any = true;
      }
    }
  }
  switch (uniform(rng, 0, 5)) {
    case 0: return lt(t, 0);
    case 1: return le(t, 0);
    case 2: return eq(t, 0);
    case 3: return mk_not(eq(t, 0));
    case 4: return ge(t, 0);
    default: return gt(t, 0);
  }
}

// ⌊v⌋ relation for some real v, used to give mixed bodies a floor.
inline Formula random_floor_atom(Rng& rng, const Var& real, const std::vector<Var>& others) {
  std::vector<Term> parts{Term::scale(Rational(uniform(rng, 1, 2) * (uniform(rng, 0, 1) ? 1 : -1)),
                                      Term::floor(Term::variable(real)))};
  for (const auto& v : others)
    if (uniform(rng, 0, 1)) parts.push_back(Term::scale(Rational(uniform(rng, -2, 2)), Term::variable(v)));
  const Relation rels[] = {Relation::Lt, Relation::Le, Relation::Eq, Relation::Ge};
  return Formula::term_atom(rels[uniform(rng, 0, 3)], Term::sum(parts), Term::constant(Rational(uniform(rng, -2, 2))));
}

// Random and/or combination of exactly n atoms.
inline Formula random_boolean(Rng& rng, std::vector<Formula> atoms) {
  while (atoms.size() > 1) {
    std::size_t i = uniform(rng, 0, atoms.size() - 1);
    Formula a = atoms[i];
    atoms.erase(atoms.begin() + i);
    std::size_t j = uniform(rng, 0, atoms.size() - 1);
    atoms[j] = uniform(rng, 0, 1) ? mk_and({a, atoms[j]}) : mk_or({a, atoms[j]});
  }
  return atoms.front();
}

struct RandomRamsey {
  std::vector<Var> xs, ys, params;
  Formula body;
  Formula formula() const { return Formula::exists_ramsey(xs, ys, body); }
};

inline RandomRamsey random_tuple(Rng&, Domain dom, int dims, bool with_param) {
  RandomRamsey r;
  for (int i = 0; i < dims; ++i) {
    Sort s = dom == Domain::Real ? Sort::Real : Sort::Int;
    if (dom == Domain::Mixed) s = i % 2 == 0 ? Sort::Real : Sort::Int;
    r.xs.push_back({"x" + std::to_string(i + 1), s});
    r.ys.push_back({"y" + std::to_string(i + 1), s});
  }
  if (with_param) r.params.push_back({"z", dom == Domain::Int ? Sort::Int : Sort::Real});
  return r;
}

inline std::vector<Var> tuple_vars(const RandomRamsey& r) {
  std::vector<Var> v = r.xs;
  v.insert(v.end(), r.ys.begin(), r.ys.end());
  v.insert(v.end(), r.params.begin(), r.params.end());
  return v;
}

inline Formula random_part(Rng& rng, const RandomRamsey& r, Domain dom, int atoms) {
  std::vector<Var> vars = tuple_vars(r);
  std::vector<Formula> as;
  for (int i = 0; i < atoms; ++i) {
    if (dom == Domain::Mixed && uniform(rng, 0, 3) == 0)
      as.push_back(random_floor_atom(rng, uniform(rng, 0, 1) ? r.xs[0] : r.ys[0], vars));
    else
      as.push_back(random_atom(rng, vars));
  }
  return random_boolean(rng, as);
}

// Body with at most three atoms over tuples of dimension one or two.
inline RandomRamsey random_ramsey(Rng& rng, Domain dom) {
  RandomRamsey r = random_tuple(rng, dom, static_cast<int>(uniform(rng, 1, 2)), uniform(rng, 0, 2) == 0);
  r.body = random_part(rng, r, dom, static_cast<int>(uniform(rng, 1, 3)));
  return r;
}

// Small random formula over the given Int variables.
inline Formula random_psi(Rng& rng, const std::vector<Var>& vars) {
  std::vector<Formula> as;
  int n = static_cast<int>(uniform(rng, 1, 3));
  for (int i = 0; i < n; ++i) as.push_back(random_atom(rng, vars, 3));
  return random_boolean(rng, as);
}

}  // namespace ramsey::testing
