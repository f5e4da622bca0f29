#include "cooc/e_integral.hpp"

#include <algorithm>

namespace cooc {

RandomVariable::RandomVariable(FiniteSpace s, std::vector<Rational> v) : space(std::move(s)), values(std::move(v)) {
  if (values.size() != space.size()) throw Error(ErrorCode::SpaceMismatch, "random variable length mismatch");
}

EIntegralResult e_integral(const RandomVariable& y, const Measure& m) {
  if (!(y.space == m.space())) throw Error(ErrorCode::SpaceMismatch, "random variable and measure on different spaces");
  Rational s = 0;
  for (std::size_t w = 0; w < y.values.size(); ++w) s += y(w) * m.weight(w);
  return {s, false, m};
}

EIntegralResult cond_expectation_event(const RandomVariable& y, const CoocQuery& q, const RandomObject& z) {
  CondMeasure cm = cond_cooc_measure(q, z);
  EIntegralResult r = e_integral(y, cm.measure);
  r.null_condition = cm.null_condition;
  return r;
}

PointwiseConditional cond_expectation_object(const Measure& p, const RandomVariable& y, const RandomObject& x1,
                                             const RandomObject& x2, const Event& cond,
                                             const Event& target_cond) {
  if (!(y.space == x2.codomain())) throw Error(ErrorCode::SpaceMismatch, "Y is not on the subject's codomain");
  Kernel k = cond_kernel(p, x1, x2, cond, target_cond);
  PointwiseConditional out{k.source, std::vector<Rational>(k.source.size(), 0), k.reference, k.null_condition};
  for (std::size_t x = 0; x < k.source.size(); ++x)
    for (std::size_t w = 0; w < k.target.size(); ++w) out.values[x] += y(w) * k.rows[x][w];
  return out;
}

PointwiseConditional cond_expectation_object(const Measure& p, const RandomVariable& y, const RandomObject& x1,
                                             const RandomObject& x2, const Constraints& conds,
                                             const Constraints& target_conds) {
  return cond_expectation_object(p, y, x1, x2, joint_event(p.space(), conds),
                                 joint_event(p.space(), target_conds));
}

IteratedResult iterated_decompose(const Measure& p, const RandomVariable& y, const std::vector<RandomObject>& chain,
                                  const std::vector<Constraints>& constraints) {
  const std::size_t n = chain.size();
  if (n < 2) throw Error(ErrorCode::ChainMismatch, "chain needs at least two objects");
  if (constraints.size() != n) throw Error(ErrorCode::ChainMismatch, "one constraint list per chain element required");

  ObjectFamily fam;
  for (std::size_t j = 0; j < n; ++j) fam.emplace(j + 1, chain[j]);
  std::vector<std::size_t> all(n);
  for (std::size_t j = 0; j < n; ++j) all[j] = j + 1;
  RandomObject xn = bundle(fam, IndexSet(all));
  if (!(y.space == xn.codomain())) throw Error(ErrorCode::ChainMismatch, "Y is not on the product of the chain codomains");

  std::vector<Event> ev;
  for (const auto& c : constraints) ev.push_back(joint_event(p.space(), c));

  // Direct route.
  Event every = Event::full(p.space());
  for (const auto& e : ev) every = every.intersect(e);
  Rational direct = e_integral(y, law_on(p, xn, every)).value;

  // Nested route: h_j lives on the product of the first j codomains.
  std::vector<Rational> h = y.values;
  std::vector<Event> prefix(n, Event::full(p.space()));
  for (std::size_t j = 1; j < n; ++j) prefix[j] = prefix[j - 1].intersect(ev[j - 1]);

  for (std::size_t j = n; j >= 2; --j) {
    std::vector<std::size_t> head(j - 1);
    for (std::size_t k = 0; k < j - 1; ++k) head[k] = k + 1;
    RandomObject xh = bundle(fam, IndexSet(head));
    Kernel k = cond_kernel(p, xh, chain[j - 1], prefix[j - 1], ev[j - 1]);
    std::vector<Rational> g(k.source.size(), 0);
    for (std::size_t a = 0; a < k.source.size(); ++a)
      for (std::size_t b = 0; b < k.target.size(); ++b) {
        if (sgn(k.rows[a][b]) == 0) continue;
        // Index of the (j)-tuple (head..., b) in the product of the first j codomains.
        g[a] += h[a * k.target.size() + b] * k.rows[a][b];
      }
    h = std::move(g);
  }
  std::vector<Rational> first(chain[0].codomain().size(), 0);
  for (std::size_t o = 0; o < p.space().size(); ++o)
    if (ev[0].contains(o)) first[chain[0](o)] += p.weight(o);
  Rational nested = 0;
  for (std::size_t a = 0; a < first.size(); ++a) nested += h[a] * first[a];
  return {nested, direct};
}

// ---------------------------------------------------------------------------

PiecewiseLinear::PiecewiseLinear(std::vector<Rational> b, std::vector<Rational> s, Rational c)
    : breakpoints(std::move(b)), slopes(std::move(s)), intercept(std::move(c)) {
  if (slopes.size() != breakpoints.size() + 1)
    throw Error(ErrorCode::BadValue, "need exactly one more slope than breakpoints");
  for (std::size_t k = 1; k < breakpoints.size(); ++k)
    if (!(breakpoints[k - 1] < breakpoints[k])) throw Error(ErrorCode::BadValue, "breakpoints must increase");
}

bool PiecewiseLinear::convex() const { return std::is_sorted(slopes.begin(), slopes.end()); }

Rational PiecewiseLinear::operator()(const Rational& x) const {
  // Integrate the slope function from 0 to x.
  auto slope_on = [&](const Rational& lo) {
    std::size_t k = 0;
    while (k < breakpoints.size() && !(lo < breakpoints[k])) ++k;
    return slopes[k];
  };
  std::vector<Rational> cuts{Rational(0), x};
  for (const auto& b : breakpoints)
    if ((b > 0 && b < x) || (b < 0 && b > x)) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  Rational v = 0;
  for (std::size_t k = 1; k < cuts.size(); ++k) v += slope_on(cuts[k - 1]) * (cuts[k] - cuts[k - 1]);
  return x < 0 ? Rational(intercept - v) : Rational(intercept + v);
}

RandomVariable apply(const PiecewiseLinear& phi, const RandomVariable& y) {
  std::vector<Rational> v;
  v.reserve(y.values.size());
  for (const auto& x : y.values) v.push_back(phi(x));
  return RandomVariable(y.space, std::move(v));
}

}  // namespace cooc
