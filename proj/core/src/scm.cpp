#include "cooc/scm.hpp"

namespace cooc {

namespace {

FiniteSpace product_of(const IndexSet& idx, const std::map<std::size_t, FiniteSpace>& spaces, std::size_t cap) {
  std::vector<FiniteSpace> fs;
  for (std::size_t i : idx) {
    auto it = spaces.find(i);
    if (it == spaces.end()) throw Error(ErrorCode::IndexMismatch, "no space for index " + std::to_string(i));
    fs.push_back(it->second);
  }
  if (spaces.size() != idx.size()) throw Error(ErrorCode::IndexMismatch, "spaces given for unknown indices");
  return product_space(idx, fs, cap);
}

// Unique solution per positive-mass exogenous point, or a witness error.
std::vector<std::size_t> unique_solutions(const Scm& m) {
  SolutionMap s = solve(m);
  std::vector<std::size_t> x(m.exo_space.size(), 0);
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (!s.visited[e]) continue;
    if (s.solutions[e].empty())
      throw Error(ErrorCode::NoSolution, "no solution at exogenous point " + m.exo_space.label(e),
                  m.exo_space.decode(e));
    if (s.solutions[e].size() > 1)
      throw Error(ErrorCode::NonUniqueSolution,
                  std::to_string(s.solutions[e].size()) + " solutions at exogenous point " + m.exo_space.label(e),
                  m.exo_space.decode(e));
    x[e] = s.solutions[e].front();
  }
  return x;
}

}  // namespace

Scm make_scm(const IndexSet& endo, const IndexSet& exo, const std::map<std::size_t, FiniteSpace>& endo_spaces,
             const std::map<std::size_t, FiniteSpace>& exo_spaces, const Measure& exo_law,
             std::vector<std::size_t> mechanism, std::size_t cap) {
  if (!endo.disjoint(exo)) throw Error(ErrorCode::IndexOverlap, "endogenous and exogenous indices overlap");
  FiniteSpace xs = product_of(endo, endo_spaces, cap);
  FiniteSpace es = product_of(exo, exo_spaces, cap);
  if (!(exo_law.space() == es)) throw Error(ErrorCode::SpaceMismatch, "exogenous law not on the exogenous product");
  if (exo_law.total() != 1) throw Error(ErrorCode::BadValue, "exogenous law must have mass 1");
  if (xs.size() > cap / es.size()) throw Error(ErrorCode::ProductTooLarge, "mechanism table exceeds cap");
  if (mechanism.size() != xs.size() * es.size())
    throw Error(ErrorCode::SpaceMismatch, "mechanism table needs " + std::to_string(xs.size() * es.size()) + " rows");
  for (std::size_t v : mechanism)
    if (v >= xs.size()) throw Error(ErrorCode::BadValue, "mechanism output out of range");
  return Scm{endo,
             exo,
             endo_spaces,
             exo_spaces,
             xs,
             es,
             Measure(es, exo_law.weights(), MeasureKind::Probability),
             std::move(mechanism)};
}

Scm tabulate_scm(const IndexSet& endo, const IndexSet& exo, const std::map<std::size_t, FiniteSpace>& endo_spaces,
                 const std::map<std::size_t, FiniteSpace>& exo_spaces, const Measure& exo_law, const MechanismFn& f,
                 std::size_t cap) {
  FiniteSpace xs = product_of(endo, endo_spaces, cap);
  FiniteSpace es = product_of(exo, exo_spaces, cap);
  if (xs.size() > cap / es.size()) throw Error(ErrorCode::ProductTooLarge, "mechanism table exceeds cap");
  std::vector<std::size_t> table;
  table.reserve(xs.size() * es.size());
  for (std::size_t x = 0; x < xs.size(); ++x)
    for (std::size_t e = 0; e < es.size(); ++e) table.push_back(xs.encode(f(xs.decode(x), es.decode(e))));
  return make_scm(endo, exo, endo_spaces, exo_spaces, exo_law, std::move(table), cap);
}

SolutionMap solve(const Scm& m) {
  SolutionMap s{std::vector<std::vector<std::size_t>>(m.exo_space.size()),
                std::vector<bool>(m.exo_space.size(), false)};
  for (std::size_t e = 0; e < m.exo_space.size(); ++e) {
    if (sgn(m.exo_law.weight(e)) == 0) continue;
    s.visited[e] = true;
    for (std::size_t x = 0; x < m.endo_space.size(); ++x)
      if (m.apply(x, e) == x) s.solutions[e].push_back(x);
  }
  return s;
}

Measure observational_distribution(const Scm& m) {
  auto x = unique_solutions(m);
  std::vector<Rational> w(m.endo_space.size(), 0);
  for (std::size_t e = 0; e < x.size(); ++e) w[x[e]] += m.exo_law.weight(e);
  return Measure(m.endo_space, std::move(w), MeasureKind::Probability);
}

Scm intervene(const Scm& m, std::size_t index, std::size_t value) {
  if (!m.endo.contains(index)) throw Error(ErrorCode::UnknownIndex, "no endogenous index " + std::to_string(index));
  if (value >= m.endo_spaces.at(index).size())
    throw Error(ErrorCode::BadValue, "value " + std::to_string(value) + " outside the space of index " +
                                         std::to_string(index));
  std::size_t pos = m.endo.position(index);
  Scm out = m;
  for (auto& v : out.mechanism) {
    auto t = m.endo_space.decode(v);
    t[pos] = value;
    v = m.endo_space.encode(t);
  }
  return out;
}

EngineModel as_engine_model(const Scm& m) {
  auto x = unique_solutions(m);
  EngineModel em{m.exo_space, m.exo_law, {}};
  for (std::size_t i : m.endo) {
    std::size_t pos = m.endo.position(i);
    std::vector<std::size_t> map(m.exo_space.size());
    for (std::size_t e = 0; e < map.size(); ++e) map[e] = m.endo_space.decode(x[e])[pos];
    em.objects.emplace(i, RandomObject(m.exo_space, m.endo_spaces.at(i), std::move(map)));
  }
  for (std::size_t j : m.exo) em.objects.emplace(j, projection(m.exo_space, j));
  return em;
}

}  // namespace cooc
