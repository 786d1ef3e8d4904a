#include "ramsey/qe_exists.hpp"

#include <stdexcept>

namespace ramsey {

Formula vectors_differ(const std::vector<LinTerm>& a, const std::vector<LinTerm>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  std::vector<Formula> parts;
  parts.reserve(2 * a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    parts.push_back(lt(a[i], b[i]));
    parts.push_back(gt(a[i], b[i]));
  }
  return mk_or(std::move(parts));
}

Formula lift_inner_existentials(const Formula& f, FreshNames& names) {
  if (f.kind() != Formula::Kind::ExistsRamsey) throw std::invalid_argument("expected a Ramsey binder");
  names.reserve(f);
  Prenex pre = hoist_exists(f.body(), names);
  if (pre.vars.empty()) return f;

  std::vector<Var> xs = f.xs(), ys = f.ys();
  std::vector<Var> v1, v2, w1, w2;
  std::map<Var, Term> subst;
  for (const auto& w : pre.vars) {
    v1.push_back(names.fresh(w.name, w.sort));
    v2.push_back(names.fresh(w.name, w.sort));
    w1.push_back(names.fresh(w.name, w.sort));
    w2.push_back(names.fresh(w.name, w.sort));
    subst.emplace(w, Term::sum({Term::variable(v1.back()), Term::variable(w2.back())}));
  }
  Formula body = substitute(pre.matrix, subst, names);
  std::vector<LinTerm> xl(xs.begin(), xs.end()), yl(ys.begin(), ys.end());
  body = mk_and({body, vectors_differ(xl, yl)});

  xs.insert(xs.end(), v1.begin(), v1.end());
  xs.insert(xs.end(), v2.begin(), v2.end());
  ys.insert(ys.end(), w1.begin(), w1.end());
  ys.insert(ys.end(), w2.begin(), w2.end());
  return Formula::exists_ramsey(std::move(xs), std::move(ys), std::move(body));
}

}  // namespace ramsey
