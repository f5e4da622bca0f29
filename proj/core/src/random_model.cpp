#include "cooc/random_model.hpp"

#include <algorithm>
#include <numeric>

namespace cooc {

std::size_t ModelGenerator::uniform(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

bool ModelGenerator::coin(double chance) { return std::bernoulli_distribution(chance)(rng_); }

FiniteSpace ModelGenerator::space(std::size_t lo, std::size_t hi) { return make_space(uniform(lo, hi)); }

Measure ModelGenerator::probability(const FiniteSpace& s, unsigned max_denominator) {
  std::size_t d = uniform(std::min<std::size_t>(2, max_denominator), max_denominator);
  std::vector<std::size_t> units(s.size(), 0);
  for (std::size_t k = 0; k < d; ++k) ++units[uniform(0, s.size() - 1)];
  std::vector<Rational> w;
  for (std::size_t u : units) w.emplace_back(static_cast<long>(u), static_cast<long>(d));
  return Measure(s, std::move(w), MeasureKind::Probability);
}

Measure ModelGenerator::base(const FiniteSpace& s, double zero_chance) {
  std::vector<Rational> w;
  for (std::size_t x = 0; x < s.size(); ++x)
    w.push_back(coin(zero_chance) ? Rational(0) : rational(1, 4, 3));
  return Measure(s, std::move(w), MeasureKind::Base);
}

Partition ModelGenerator::partition(const FiniteSpace& s) {
  std::size_t k = uniform(1, s.size());
  std::vector<std::vector<std::size_t>> blocks(k);
  std::vector<std::size_t> pts(s.size());
  std::iota(pts.begin(), pts.end(), 0);
  std::shuffle(pts.begin(), pts.end(), rng_);
  for (std::size_t j = 0; j < pts.size(); ++j) blocks[j < k ? j : uniform(0, k - 1)].push_back(pts[j]);
  return Partition(s, std::move(blocks));
}

Partition ModelGenerator::coarser(const Partition& p) {
  std::size_t k = uniform(1, p.num_blocks());
  std::vector<std::vector<std::size_t>> merged(k);
  std::vector<std::size_t> order(p.num_blocks());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng_);
  for (std::size_t j = 0; j < order.size(); ++j) {
    auto& dst = merged[j < k ? j : uniform(0, k - 1)];
    const auto& b = p.blocks()[order[j]];
    dst.insert(dst.end(), b.begin(), b.end());
  }
  return Partition(p.space(), std::move(merged));
}

Event ModelGenerator::event(const FiniteSpace& s) {
  std::vector<std::size_t> m;
  for (std::size_t x = 0; x < s.size(); ++x)
    if (coin()) m.push_back(x);
  return Event(s, m);
}

Event ModelGenerator::measurable_event(const Partition& field) {
  std::vector<std::size_t> m;
  for (const auto& b : field.blocks())
    if (coin()) m.insert(m.end(), b.begin(), b.end());
  return Event(field.space(), m);
}

RandomObject ModelGenerator::object(const FiniteSpace& omega, std::size_t lo, std::size_t hi, double coarse_chance) {
  FiniteSpace cod = space(lo, hi);
  std::vector<std::size_t> map(omega.size());
  for (auto& y : map) y = uniform(0, cod.size() - 1);
  Partition field = coin(coarse_chance) ? partition(cod) : Partition::discrete(cod);
  return RandomObject(Partition::discrete(omega), field, std::move(map));
}

Constraints ModelGenerator::constraints(const std::vector<RandomObject>& pool, std::size_t max_count) {
  Constraints cs;
  std::size_t n = uniform(0, max_count);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& x = pool[uniform(0, pool.size() - 1)];
    cs.emplace_back(x, measurable_event(x.codomain_field()));
  }
  return cs;
}

Rational ModelGenerator::rational(int lo, int hi, unsigned max_denominator) {
  long d = static_cast<long>(uniform(1, max_denominator));
  long n = std::uniform_int_distribution<long>(lo * d, hi * d)(rng_);
  Rational r(n, d);
  r.canonicalize();
  return r;
}

RandomVariable ModelGenerator::variable(const FiniteSpace& s, int lo, int hi, unsigned max_denominator) {
  std::vector<Rational> v;
  for (std::size_t x = 0; x < s.size(); ++x) v.push_back(rational(lo, hi, max_denominator));
  return RandomVariable(s, std::move(v));
}

PiecewiseLinear ModelGenerator::convex_function() {
  std::size_t k = uniform(0, 4);
  std::vector<Rational> b, s;
  for (std::size_t j = 0; j < k; ++j) b.push_back(rational(-6, 6, 2));
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  for (std::size_t j = 0; j <= b.size(); ++j) s.push_back(rational(-4, 4, 3));
  std::sort(s.begin(), s.end());
  return PiecewiseLinear(std::move(b), std::move(s), rational(-3, 3, 2));
}

Model ModelGenerator::model(const ModelOptions& o) {
  FiniteSpace omega = space(o.min_space, o.max_space);
  Measure p = probability(omega, o.max_denominator);
  std::vector<RandomObject> xs;
  std::size_t n = uniform(o.min_objects, o.max_objects);
  for (std::size_t k = 0; k < n; ++k) xs.push_back(object(omega, o.min_space, o.max_space, o.coarse_field_chance));
  return Model{omega, p, std::move(xs)};
}

ProductModel product_model(const Model& a, const Model& b) {
  FiniteSpace omega = product_space(IndexSet{1, 2}, {a.omega, b.omega});
  std::vector<Rational> w(omega.size());
  for (std::size_t pt = 0; pt < omega.size(); ++pt) {
    auto t = omega.decode(pt);
    w[pt] = a.p.weight(t[0]) * b.p.weight(t[1]);
  }
  ProductModel pm{omega, Measure(omega, std::move(w), MeasureKind::Probability), {}, {}};
  RandomObject first = projection(omega, 1), second = projection(omega, 2);
  for (const auto& x : a.objects) pm.left.push_back(compose(first, RandomObject(a.omega, x.codomain(), x.map())));
  for (const auto& x : b.objects) pm.right.push_back(compose(second, RandomObject(b.omega, x.codomain(), x.map())));
  return pm;
}

}  // namespace cooc
