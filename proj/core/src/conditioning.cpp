#include "cooc/conditioning.hpp"

namespace cooc {

namespace {

void require_same(const FiniteSpace& a, const FiniteSpace& b, const char* what) {
  if (!(a == b)) throw Error(ErrorCode::SpaceMismatch, what);
}

// Block masses of a codomain measure under X's codomain field.
std::vector<Rational> block_masses(const Measure& m, const Partition& field) {
  std::vector<Rational> b(field.num_blocks(), 0);
  for (std::size_t y = 0; y < m.space().size(); ++y) b[field.block_of(y)] += m.weight(y);
  return b;
}

void check_inputs(const Measure& p, const RandomObject& x, const Event& e1, const Event& e2) {
  require_same(p.space(), x.domain(), "conditioning object lives on another space");
  require_same(p.space(), e1.space(), "event not on the base space");
  require_same(p.space(), e2.space(), "event not on the base space");
}

}  // namespace

bool ae_equal(const std::vector<Rational>& a, const std::vector<Rational>& b, const Measure& reference) {
  if (a.size() != reference.space().size() || b.size() != a.size())
    throw Error(ErrorCode::SpaceMismatch, "value vectors differ in length");
  for (std::size_t x = 0; x < a.size(); ++x)
    if (sgn(reference.weight(x)) > 0 && a[x] != b[x]) return false;
  return true;
}

bool ae_equal(const PointwiseConditional& a, const PointwiseConditional& b) {
  require_same(a.source, b.source, "conditionals on different spaces");
  return ae_equal(a.values, b.values, a.reference);
}

std::vector<std::size_t> Kernel::support() const {
  std::vector<std::size_t> s;
  for (std::size_t x = 0; x < source.size(); ++x)
    if (sgn(reference.weight(x)) > 0) s.push_back(x);
  return s;
}

Rational Kernel::apply(std::size_t x, const Event& e) const {
  require_same(e.space(), target, "event not on the kernel target");
  Rational s = 0;
  for (std::size_t y = 0; y < target.size(); ++y)
    if (e.contains(y)) s += rows[x][y];
  return s;
}

Rational Kernel::row_total(std::size_t x) const { return sum(rows[x]); }

bool ae_equal(const Kernel& a, const Kernel& b) {
  require_same(a.source, b.source, "kernels on different sources");
  if (a.target.size() != b.target.size()) throw Error(ErrorCode::SpaceMismatch, "kernel targets differ");
  for (std::size_t x = 0; x < a.source.size(); ++x)
    if (sgn(a.reference.weight(x)) > 0 && a.rows[x] != b.rows[x]) return false;
  return true;
}

// ---------------------------------------------------------------------------

PointwiseConditional cond_prob_pointwise(const Measure& p, const RandomObject& x, const Event& target,
                                         const Event& cond) {
  check_inputs(p, x, target, cond);
  Measure ref = law_on(p, x, cond);
  Measure num = law_on(p, x, cond.intersect(target));
  const Partition& f = x.codomain_field();
  auto den_b = block_masses(ref, f);
  auto num_b = block_masses(num, f);

  PointwiseConditional out{x.codomain(), std::vector<Rational>(x.codomain().size(), 0), ref,
                           ref.is_zero()};
  for (std::size_t y = 0; y < out.values.size(); ++y)
    if (sgn(ref.weight(y)) > 0) out.values[y] = num_b[f.block_of(y)] / den_b[f.block_of(y)];
  return out;
}

PointwiseConditional cond_prob_pointwise(const Measure& p, const RandomObject& x,
                                         const Constraints& targets, const Constraints& conds) {
  return cond_prob_pointwise(p, x, joint_event(p.space(), targets), joint_event(p.space(), conds));
}

Kernel cond_kernel(const Measure& p, const RandomObject& x1, const RandomObject& x3, const Event& cond,
                   const Event& target_cond) {
  check_inputs(p, x1, cond, target_cond);
  require_same(p.space(), x3.domain(), "target object lives on another space");
  Measure ref = law_on(p, x1, cond);
  const Partition& f = x1.codomain_field();
  auto den_b = block_masses(ref, f);

  // Joint mass per (block of X1, point of X3).
  Event on = cond.intersect(target_cond);
  std::vector<std::vector<Rational>> num(f.num_blocks(), std::vector<Rational>(x3.codomain().size(), 0));
  for (std::size_t o = 0; o < p.space().size(); ++o)
    if (on.contains(o)) num[f.block_of(x1(o))][x3(o)] += p.weight(o);

  Kernel k{x1.codomain(), x3.codomain(),
           std::vector<std::vector<Rational>>(x1.codomain().size(),
                                              std::vector<Rational>(x3.codomain().size(), 0)),
           ref, ref.is_zero()};
  for (std::size_t y = 0; y < k.source.size(); ++y) {
    if (sgn(ref.weight(y)) == 0) continue;
    std::size_t b = f.block_of(y);
    for (std::size_t z = 0; z < k.target.size(); ++z) k.rows[y][z] = num[b][z] / den_b[b];
  }
  return k;
}

Kernel cond_kernel(const Measure& p, const RandomObject& x1, const RandomObject& x3,
                   const Constraints& conds, const Constraints& target_conds) {
  return cond_kernel(p, x1, x3, joint_event(p.space(), conds), joint_event(p.space(), target_conds));
}

// ---------------------------------------------------------------------------

Kernel kernel_fix_target(const Kernel& k, std::size_t index, const Event& a3) {
  if (!k.target.is_product() || !k.target.coordinates().contains(index))
    throw Error(ErrorCode::CoordinateMismatch,
                "kernel target has no coordinate " + std::to_string(index));
  const FiniteSpace& fac = k.target.factor(index);
  if (!(a3.space() == fac)) throw Error(ErrorCode::CoordinateMismatch, "event not on the fixed coordinate");
  std::size_t pos = k.target.coordinates().position(index);

  IndexSet rest = k.target.coordinates().minus(IndexSet{index});
  std::vector<FiniteSpace> rest_f;
  for (std::size_t i : rest) rest_f.push_back(k.target.factor(i));
  FiniteSpace nt = product_space(rest, rest_f);

  Kernel out{k.source, nt, std::vector<std::vector<Rational>>(k.source.size(), std::vector<Rational>(nt.size(), 0)),
             k.reference, k.null_condition};
  for (std::size_t y = 0; y < k.target.size(); ++y) {
    auto t = k.target.decode(y);
    if (!a3.contains(t[pos])) continue;
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(pos));
    std::size_t r = nt.encode(t);
    for (std::size_t x = 0; x < k.source.size(); ++x) out.rows[x][r] += k.rows[x][y];
  }
  return out;
}

Kernel bayes_shift(const Kernel& k_joint, const PointwiseConditional& p3) {
  require_same(k_joint.source, p3.source, "kernel and conditional on different sources");
  std::vector<Rational> ref(k_joint.source.size(), 0);
  Kernel out{k_joint.source, k_joint.target, k_joint.rows, k_joint.reference, false};
  for (std::size_t x = 0; x < out.source.size(); ++x) {
    if (sgn(p3(x)) == 0) {
      std::fill(out.rows[x].begin(), out.rows[x].end(), Rational(0));
      continue;
    }
    ref[x] = p3(x) * p3.reference.weight(x);
    for (auto& w : out.rows[x]) w /= p3(x);
  }
  out.reference = Measure(out.source, std::move(ref), MeasureKind::Finite);
  out.null_condition = out.reference.is_zero();
  return out;
}

Kernel kernel_scale(const Kernel& k, const PointwiseConditional& p) {
  require_same(k.source, p.source, "kernel and conditional on different sources");
  Kernel out{k.source, k.target, k.rows, p.reference, p.null_condition};
  for (std::size_t x = 0; x < out.source.size(); ++x)
    for (auto& w : out.rows[x]) w *= p(x);
  return out;
}

Measure disintegrate_check(const Kernel& k, const Measure& marginal) {
  require_same(k.source, marginal.space(), "marginal not on the kernel source");
  FiniteSpace prod = product_space(IndexSet{1, 2}, {k.source, k.target});
  std::vector<Rational> w(prod.size(), 0);
  for (std::size_t x = 0; x < k.source.size(); ++x)
    for (std::size_t y = 0; y < k.target.size(); ++y) w[prod.encode({x, y})] = k.rows[x][y] * marginal.weight(x);
  return Measure(prod, std::move(w), MeasureKind::Finite);
}

Kernel compose_kernels(const Kernel& outer, const Kernel& inner, std::size_t i2, std::size_t i3) {
  const FiniteSpace& s = inner.source;
  if (!s.is_product() || s.factors().size() != 2 || !(s.factors()[0] == outer.source) ||
      !(s.factors()[1] == outer.target))
    throw Error(ErrorCode::SpaceMismatch, "inner kernel source must be outer source x outer target");
  FiniteSpace tgt = i2 < i3 ? product_space(IndexSet{i2, i3}, {outer.target, inner.target})
                            : product_space(IndexSet{i2, i3}, {inner.target, outer.target});
  Kernel out{outer.source, tgt,
             std::vector<std::vector<Rational>>(outer.source.size(), std::vector<Rational>(tgt.size(), 0)),
             outer.reference, outer.null_condition};
  for (std::size_t x = 0; x < outer.source.size(); ++x)
    for (std::size_t y2 = 0; y2 < outer.target.size(); ++y2) {
      if (sgn(outer.rows[x][y2]) == 0) continue;
      const auto& row = inner.rows[s.encode({x, y2})];
      for (std::size_t y3 = 0; y3 < inner.target.size(); ++y3) {
        std::size_t t = i2 < i3 ? tgt.encode({y2, y3}) : tgt.encode({y3, y2});
        out.rows[x][t] = outer.rows[x][y2] * row[y3];
      }
    }
  return out;
}

Kernel kernel_product(const Kernel& k2, const Kernel& k3, std::size_t i2, std::size_t i3, std::size_t cap) {
  require_same(k2.source, k3.source, "kernels on different sources");
  bool fwd = i2 < i3;
  FiniteSpace tgt = fwd ? product_space(IndexSet{i2, i3}, {k2.target, k3.target}, cap)
                        : product_space(IndexSet{i2, i3}, {k3.target, k2.target}, cap);
  Kernel out{k2.source, tgt,
             std::vector<std::vector<Rational>>(k2.source.size(), std::vector<Rational>(tgt.size(), 0)),
             k2.reference, k2.null_condition};
  for (std::size_t x = 0; x < k2.source.size(); ++x)
    for (std::size_t a = 0; a < k2.target.size(); ++a)
      for (std::size_t b = 0; b < k3.target.size(); ++b)
        out.rows[x][fwd ? tgt.encode({a, b}) : tgt.encode({b, a})] = k2.rows[x][a] * k3.rows[x][b];
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct CIVisitor {
  const Measure& p;

  Event ev(const Constraints& cs) const { return joint_event(p.space(), cs); }

  // Mass of each codomain point of z, restricted to `on`.
  std::vector<Rational> law(const RandomObject& z, const Event& on) const {
    return law_on(p, z, on).weights();
  }

  CIResult operator()(const ci::EventsGivenEvent& s) const {
    Event a1 = ev(s.a1), a2 = ev(s.a2), a3 = ev(s.a3);
    Rational d = p.of(a1);
    if (sgn(d) == 0) return {true, true};
    return {p.of(a1.intersect(a2).intersect(a3)) * d == p.of(a1.intersect(a2)) * p.of(a1.intersect(a3)), false};
  }

  CIResult operator()(const ci::ObjectEventGivenEvent& s) const {
    Event a1 = ev(s.a1), a3 = ev(s.a3), a4 = ev(s.a4);
    Rational d = p.of(a1);
    if (sgn(d) == 0) return {true, true};
    auto lhs = law(s.x2, a1.intersect(a3).intersect(a4));
    auto rhs = law(s.x2, a1.intersect(a4));
    Rational q3 = p.of(a1.intersect(a3));
    for (std::size_t y = 0; y < lhs.size(); ++y)
      if (lhs[y] * d != q3 * rhs[y]) return {false, false};
    return {true, false};
  }

  CIResult operator()(const ci::ObjectsGivenEvent& s) const {
    Event a1 = ev(s.a1), a4 = ev(s.a4), a5 = ev(s.a5);
    Rational d = p.of(a1);
    if (sgn(d) == 0) return {true, true};
    RandomObject j = bundle({{0, s.x2}, {1, s.x3}}, IndexSet{0, 1});
    auto joint = law(j, a1.intersect(a4).intersect(a5));
    auto m2 = law(s.x2, a1.intersect(a4));
    auto m3 = law(s.x3, a1.intersect(a5));
    for (std::size_t y = 0; y < joint.size(); ++y) {
      auto t = j.codomain().decode(y);
      if (joint[y] * d != m2[t[0]] * m3[t[1]]) return {false, false};
    }
    return {true, false};
  }

  CIResult operator()(const ci::EventsGivenObject& s) const {
    Event a3 = ev(s.a3), a4 = ev(s.a4), a5 = ev(s.a5);
    if (sgn(p.of(a3)) == 0) return {true, true};
    auto both = cond_prob_pointwise(p, s.x1, a4.intersect(a5), a3);
    auto c4 = cond_prob_pointwise(p, s.x1, a4, a3);
    auto c5 = cond_prob_pointwise(p, s.x1, a5, a3);
    for (std::size_t x = 0; x < both.values.size(); ++x)
      if (sgn(both.reference.weight(x)) > 0 && both(x) != c4(x) * c5(x)) return {false, false};
    return {true, false};
  }

  CIResult operator()(const ci::ObjectEventGivenObject& s) const {
    Event a3 = ev(s.a3), a4 = ev(s.a4), a5 = ev(s.a5);
    if (sgn(p.of(a3)) == 0) return {true, true};
    Kernel lhs = cond_kernel(p, s.x1, s.x2, a3, a4.intersect(a5));
    Kernel k = cond_kernel(p, s.x1, s.x2, a3, a4);
    auto c5 = cond_prob_pointwise(p, s.x1, a5, a3);
    for (std::size_t x : lhs.support())
      for (std::size_t y = 0; y < lhs.target.size(); ++y)
        if (lhs.rows[x][y] != c5(x) * k.rows[x][y]) return {false, false};
    return {true, false};
  }

  CIResult operator()(const ci::ObjectsGivenObject& s) const {
    Event a4 = ev(s.a4), a5 = ev(s.a5), a6 = ev(s.a6);
    if (sgn(p.of(a4)) == 0) return {true, true};
    RandomObject j = bundle({{0, s.x2}, {1, s.x3}}, IndexSet{0, 1});
    Kernel lhs = cond_kernel(p, s.x1, j, a4, a5.intersect(a6));
    Kernel rhs = kernel_product(cond_kernel(p, s.x1, s.x2, a4, a5), cond_kernel(p, s.x1, s.x3, a4, a6), 0, 1);
    return {ae_equal(lhs, rhs), false};
  }
};

}  // namespace

CIResult check_cond_independence(const Measure& p, const CIPattern& pattern) {
  return std::visit(CIVisitor{p}, pattern);
}

}  // namespace cooc
