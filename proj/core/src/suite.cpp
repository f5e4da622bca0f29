#include "cooc/suite.hpp"

#include <algorithm>
#include <cmath>

namespace cooc {

void CheckResult::expect(bool ok, const std::string& what) {
  ++cases;
  if (!ok) {
    ++failures;
    if (first_failure.empty()) first_failure = what;
  }
}

void CheckResult::merge(const CheckResult& o) {
  cases += o.cases;
  failures += o.failures;
  if (first_failure.empty()) first_failure = o.first_failure;
}

bool SuiteReport::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.result.ok(); });
}

namespace {

using Weights = std::vector<Rational>;

// Same maps, full fields on both sides.
std::vector<RandomObject> discrete(const Model& m) {
  std::vector<RandomObject> xs;
  for (const auto& x : m.objects) xs.emplace_back(m.omega, x.codomain(), x.map());
  return xs;
}

const RandomObject& pick(const std::vector<RandomObject>& xs, ModelGenerator& g) {
  return xs[g.uniform(0, xs.size() - 1)];
}

Event random_cond(const Model& m, const std::vector<RandomObject>& pool, ModelGenerator& g, std::size_t max = 1) {
  return joint_event(m.omega, g.constraints(pool, max));
}

Event pre(const RandomObject& x, const Event& a) { return x.preimage(a); }

// An Omega event as a constraint on the identity object.
Constraint on_omega(const Event& e) { return Constraint(identity(e.space()), e); }

RandomObject pair(const RandomObject& a, const RandomObject& b, std::size_t i = 1, std::size_t j = 2) {
  return bundle({{i, a}, {j, b}}, IndexSet{i, j});
}

Kernel constant_kernel(const FiniteSpace& source, const Measure& row, const Measure& reference) {
  return Kernel{source, row.space(), std::vector<Weights>(source.size(), row.weights()), reference,
                reference.is_zero()};
}

Rational integ(const Weights& y, const Weights& w) {
  Rational s = 0;
  for (std::size_t k = 0; k < y.size(); ++k) s += y[k] * w[k];
  return s;
}

RandomVariable map_rv(const RandomVariable& y, const std::function<Rational(const Rational&)>& f) {
  Weights v;
  for (const auto& x : y.values) v.push_back(f(x));
  return RandomVariable(y.space, std::move(v));
}

RandomVariable zip_rv(const RandomVariable& a, const RandomVariable& b,
                      const std::function<Rational(const Rational&, const Rational&)>& f) {
  Weights v;
  for (std::size_t k = 0; k < a.values.size(); ++k) v.push_back(f(a(k), b(k)));
  return RandomVariable(a.space, std::move(v));
}

// All events on a space of size <= 3 (or more, but callers keep spaces small).
std::vector<Event> all_events(const FiniteSpace& s) {
  std::vector<Event> r;
  for (std::size_t mask = 0; mask < (std::size_t{1} << s.size()); ++mask) {
    std::vector<std::size_t> m;
    for (std::size_t x = 0; x < s.size(); ++x)
      if (mask >> x & 1) m.push_back(x);
    r.emplace_back(s, m);
  }
  return r;
}

// The standard integration setting: conditioning object X1 with event A3, subject X2 with
// target event A4.
struct Setting {
  const Measure& p;
  RandomObject x1, x2;
  Event a3, a4;

  EIntegralResult event_form(const RandomVariable& y) const {
    return cond_expectation_event(y, CoocQuery(p, {on_omega(a4)}, {on_omega(a3)}), x2);
  }
  PointwiseConditional object_form(const RandomVariable& y) const {
    return cond_expectation_object(p, y, x1, x2, a3, a4);
  }
  // The measures integrated against: the event-conditioned one and each supported kernel row.
  std::vector<Weights> measures() const {
    std::vector<Weights> ws{cond_cooc_measure(CoocQuery(p, {on_omega(a4)}, {on_omega(a3)}), x2).measure.weights()};
    Kernel k = cond_kernel(p, x1, x2, a3, a4);
    for (std::size_t x : k.support()) ws.push_back(k.rows[x]);
    return ws;
  }
};

Setting random_setting(const Model& m, ModelGenerator& g, bool full_target = false) {
  auto xs = discrete(m);
  Event a3 = random_cond(m, xs, g);
  Event a4 = full_target ? Event::full(m.omega) : random_cond(m, xs, g);
  return Setting{m.p, pick(xs, g), pick(xs, g), a3, a4};
}

// Support of the reference of an object-conditioned E-integral.
bool ae_same(const PointwiseConditional& a, const Weights& b) { return ae_equal(a.values, b, a.reference); }

// ===========================================================================
// Co-occurrence

void check_cooc_consistency(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const RandomObject& z = pick(xs, g);
  std::size_t k = g.uniform(1, 3);
  Constraints list;
  ObjectFamily fam;
  for (std::size_t j = 0; j < k; ++j) {
    const auto& x = pick(xs, g);
    list.emplace_back(x, g.event(x.codomain()));
    fam.emplace(j + 1, x);
  }
  std::vector<std::size_t> idx(k);
  for (std::size_t j = 0; j < k; ++j) idx[j] = j + 1;
  RandomObject b = bundle(fam, IndexSet(idx));
  std::vector<std::size_t> members;
  for (std::size_t pt = 0; pt < b.codomain().size(); ++pt) {
    auto t = b.codomain().decode(pt);
    bool in = true;
    for (std::size_t j = 0; j < k; ++j) in = in && list[j].event.contains(t[j]);
    if (in) members.push_back(pt);
  }
  Measure direct = cooc_measure(CoocQuery(m.p, list), z);
  Measure via = cooc_measure(CoocQuery(m.p, {Constraint(b, Event(b.codomain(), members))}), z);
  r.expect(direct == via, "constraint list differs from bundled product event");

  Constraints padded = list;
  const auto& w = pick(xs, g);
  padded.insert(padded.begin() + static_cast<std::ptrdiff_t>(g.uniform(0, padded.size())),
                Constraint(w, Event::full(w.codomain())));
  r.expect(cooc_measure(CoocQuery(m.p, padded), z) == direct, "full-space constraint changed the result");

  Constraints fulls;
  for (const auto& x : xs) fulls.emplace_back(x, Event::full(x.codomain()));
  r.expect(cooc_measure(CoocQuery(m.p, fulls), z) == pushforward(m.p, z), "all-full constraints differ from P[Z]");

  CondMeasure cm = cond_cooc_measure(CoocQuery(m.p, {}, list), z);
  if (sgn(m.p.of(joint_event(m.omega, list))) > 0)
    r.expect(cm.measure.total() == 1 && !cm.null_condition, "P[Z | B] is not a probability measure");
  else
    r.expect(cm.null_condition && cm.measure.is_zero(), "null condition not flagged");

  // Monotonicity in one constraint.
  Event b1 = g.event(list[0].event.space());
  Event b2 = b1.unite(g.event(b1.space()));
  Constraints l1 = list, l2 = list;
  l1[0] = Constraint(list[0].object, b1);
  l2[0] = Constraint(list[0].object, b2);
  r.expect(prob_cooc_objects(CoocQuery(m.p, l1)) <= prob_cooc_objects(CoocQuery(m.p, l2)),
           "co-occurrence probability not monotone");
}

bool pointwise_defining_equation(const Measure& p, const RandomObject& x, const Event& target, const Event& cond,
                                 const Weights& values, const Measure& ref) {
  const Partition& f = x.codomain_field();
  std::vector<Event> sets;
  for (const auto& b : f.blocks()) sets.emplace_back(x.codomain(), b);
  sets.push_back(Event::full(x.codomain()));
  for (const auto& a : sets) {
    Rational lhs = 0;
    for (std::size_t y : a.members()) lhs += values[y] * ref.weight(y);
    if (lhs != p.of(target.intersect(cond).intersect(x.preimage(a)))) return false;
  }
  return true;
}

void check_pointwise_defining(const Model& m, ModelGenerator& g, CheckResult& r) {
  const auto& x = pick(m.objects, g);
  Event t = random_cond(m, m.objects, g, 2), c = random_cond(m, m.objects, g, 2);
  auto pc = cond_prob_pointwise(m.p, x, t, c);
  r.expect(pointwise_defining_equation(m.p, x, t, c, pc.values, pc.reference), "pointwise defining equation");
  r.expect(pc.null_condition == pc.reference.is_zero(), "null flag inconsistent");

  // Uniqueness: changes on reference-null points keep the equation; changes elsewhere break it.
  Weights v = pc.values;
  std::size_t pos = x.codomain().size();
  for (std::size_t y = 0; y < v.size(); ++y) {
    if (sgn(pc.reference.weight(y)) == 0) v[y] += 7;
    else pos = y;
  }
  r.expect(pointwise_defining_equation(m.p, x, t, c, v, pc.reference) && ae_equal(pc.values, v, pc.reference),
           "null-set perturbation changed the a.e. class");
  if (pos < v.size()) {
    v[pos] += 1;
    r.expect(!pointwise_defining_equation(m.p, x, t, c, v, pc.reference), "perturbed solution accepted");
  }
}

void check_pointwise_properties(const Model& m, ModelGenerator& g, CheckResult& r) {
  const auto& x = pick(m.objects, g);
  const auto& y = pick(m.objects, g);
  Event c = random_cond(m, m.objects, g);
  auto full = cond_prob_pointwise(m.p, x, pre(y, Event::full(y.codomain())), c);
  for (std::size_t w = 0; w < full.values.size(); ++w)
    if (sgn(full.reference.weight(w)) > 0) r.expect(full(w) == 1, "P[Y in Omega2 | X] != 1 on support");
  Event b1 = g.measurable_event(y.codomain_field());
  Event b2 = b1.unite(g.measurable_event(y.codomain_field()));
  auto p1 = cond_prob_pointwise(m.p, x, pre(y, b1), c), p2 = cond_prob_pointwise(m.p, x, pre(y, b2), c);
  for (std::size_t w = 0; w < p1.values.size(); ++w)
    if (sgn(p1.reference.weight(w)) > 0) r.expect(p1(w) <= p2(w), "pointwise conditional not monotone");
}

bool kernel_defining_equation(const Measure& p, const RandomObject& x1, const RandomObject& x3, const Event& c,
                              const Event& tc, const Kernel& k) {
  std::vector<Event> sets;
  for (const auto& b : x1.codomain_field().blocks()) sets.emplace_back(x1.codomain(), b);
  sets.push_back(Event::full(x1.codomain()));
  std::vector<Event> targets;
  for (std::size_t y = 0; y < x3.codomain().size(); ++y) targets.push_back(Event::singleton(x3.codomain(), y));
  targets.push_back(Event::full(x3.codomain()));
  for (const auto& a1 : sets)
    for (const auto& a3 : targets) {
      Rational lhs = 0;
      for (std::size_t x : a1.members()) lhs += k.apply(x, a3) * k.reference.weight(x);
      if (lhs != p.of(x1.preimage(a1).intersect(x3.preimage(a3)).intersect(c).intersect(tc))) return false;
    }
  return true;
}

void check_kernel_defining(const Model& m, ModelGenerator& g, CheckResult& r) {
  const auto& x1 = pick(m.objects, g);
  const auto& x3 = pick(m.objects, g);
  Event c = random_cond(m, m.objects, g, 2), tc = random_cond(m, m.objects, g, 2);
  Kernel k = cond_kernel(m.p, x1, x3, c, tc);
  r.expect(kernel_defining_equation(m.p, x1, x3, c, tc, k), "kernel defining equation");
  r.expect(k.null_condition == k.reference.is_zero(), "kernel null flag inconsistent");

  Kernel full = cond_kernel(m.p, x1, x3, c, Event::full(m.omega));
  for (std::size_t x : full.support()) r.expect(full.row_total(x) == 1, "P[Y | X] row is not a probability");

  auto xs = discrete(m);
  const auto& x = pick(xs, g);
  Kernel self = cond_kernel(m.p, x, x, Event::full(m.omega), Event::full(m.omega));
  Event b = g.event(x.codomain());
  for (std::size_t w : self.support())
    r.expect(self.apply(w, b) == (b.contains(w) ? 1 : 0), "P[X | X](w, B) != 1_B(w)");

  const auto& y = pick(xs, g);
  if (check_cond_independence(m.p, ci::ObjectsGivenEvent{{}, x, y, {}, {}}).independent) {
    Kernel ky = cond_kernel(m.p, x, y, Event::full(m.omega), Event::full(m.omega));
    Measure py = pushforward(m.p, y);
    for (std::size_t w : ky.support()) r.expect(ky.rows[w] == py.weights(), "independent kernel row != P[Y]");
  }
}

void check_kernel_monotone(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto& x1 = pick(xs, g);
  const auto& x3 = pick(xs, g);
  const auto& x4 = pick(xs, g);
  Event c = random_cond(m, xs, g);
  Event a = g.event(x4.codomain());
  Event a_big = a.unite(g.event(x4.codomain()));
  Kernel k1 = cond_kernel(m.p, x1, x3, c, pre(x4, a)), k2 = cond_kernel(m.p, x1, x3, c, pre(x4, a_big));
  for (std::size_t x : k1.support())
    for (std::size_t y = 0; y < k1.target.size(); ++y)
      r.expect(k1.rows[x][y] <= k2.rows[x][y], "kernel entry decreased when the target event grew");
}

// ===========================================================================
// Conditioning

void check_fix_target(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto &x1 = pick(xs, g), &x2 = pick(xs, g), &x3 = pick(xs, g);
  Event a4 = random_cond(m, xs, g), a5 = random_cond(m, xs, g);
  Event a3 = g.event(x3.codomain());
  Kernel joint = cond_kernel(m.p, x1, pair(x2, x3, 2, 3), a5, a4);

  Kernel fixed = kernel_fix_target(joint, 3, a3);
  Kernel direct = cond_kernel(m.p, x1, x2, a5, a4.intersect(pre(x3, a3)));
  r.expect(ae_equal(direct, fixed), "fixing a target coordinate differs from direct kernel");

  Kernel marg = kernel_fix_target(joint, 3, Event::full(x3.codomain()));
  r.expect(ae_equal(cond_kernel(m.p, x1, x2, a5, a4), marg), "fixing the full space is not the marginal kernel");

  auto p3 = cond_prob_pointwise(m.p, x1, pre(x3, a3), a5);
  Kernel shifted = bayes_shift(fixed, p3);
  Kernel direct2 = cond_kernel(m.p, x1, x2, a5.intersect(pre(x3, a3)), a4);
  r.expect(ae_equal(direct2, shifted), "shifted kernel differs from direct conditional kernel");
}

void check_bayes_shift(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto &x1 = pick(xs, g), &x2 = pick(xs, g);
  Event a3 = random_cond(m, xs, g), a4 = random_cond(m, xs, g), a5 = random_cond(m, xs, g);
  Kernel k_joint = cond_kernel(m.p, x1, x2, a5, a3.intersect(a4));
  auto p3 = cond_prob_pointwise(m.p, x1, a3, a5);
  Kernel shifted = bayes_shift(k_joint, p3);
  Kernel direct = cond_kernel(m.p, x1, x2, a3.intersect(a5), a4);
  r.expect(ae_equal(direct, shifted), "bayes shift differs from direct kernel");
  r.expect(shifted.reference == direct.reference, "shifted reference differs from P[X1; A3, A5]");
  Kernel back = kernel_scale(shifted, p3);
  r.expect(ae_equal(k_joint, back), "multiplying back does not restore the joint kernel");
}

void check_two_step_shift(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto &x1 = pick(xs, g), &x2 = pick(xs, g), &x3 = pick(xs, g), &x4 = pick(xs, g);
  Event a3 = g.event(x3.codomain()), a4 = g.event(x4.codomain());
  Event a5 = random_cond(m, xs, g), a6 = random_cond(m, xs, g);
  Kernel joint = cond_kernel(m.p, x1, bundle({{2, x2}, {3, x3}, {4, x4}}, IndexSet{2, 3, 4}), a6, a5);
  Kernel fixed = kernel_fix_target(kernel_fix_target(joint, 3, a3), 4, a4);
  auto p4 = cond_prob_pointwise(m.p, x1, pre(x4, a4), a6);
  Kernel quotient = bayes_shift(fixed, p4);
  Kernel direct = cond_kernel(m.p, x1, x2, pre(x4, a4).intersect(a6), pre(x3, a3).intersect(a5));
  r.expect(ae_equal(direct, quotient), "two-step quotient differs from direct kernel");
}

void check_disintegration(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto &x1 = pick(xs, g), &x2 = pick(xs, g);
  Event a3 = random_cond(m, xs, g, 2), a4 = random_cond(m, xs, g, 2);
  Kernel k = cond_kernel(m.p, x1, x2, a4, a3);
  Measure rebuilt = disintegrate_check(k, law_on(m.p, x1, a4));
  Measure direct = law_on(m.p, pair(x1, x2), a3.intersect(a4));
  r.expect(rebuilt == direct, "kernel x marginal differs from the joint co-occurrence measure");

  Weights m1(x1.codomain().size(), 0), m2(x2.codomain().size(), 0);
  for (std::size_t pt = 0; pt < rebuilt.space().size(); ++pt) {
    auto t = rebuilt.space().decode(pt);
    m1[t[0]] += rebuilt.weight(pt);
    m2[t[1]] += rebuilt.weight(pt);
  }
  Event both = a3.intersect(a4);
  r.expect(m1 == law_on(m.p, x1, both).weights(), "first marginal of rebuilt joint");
  r.expect(m2 == law_on(m.p, x2, both).weights(), "second marginal of rebuilt joint");
}

void check_scalar_composition(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto &x1 = pick(xs, g), &x2 = pick(xs, g), &x3 = pick(xs, g);
  Event a2 = g.event(x2.codomain()), a3 = g.event(x3.codomain());
  Event a4 = random_cond(m, xs, g);
  auto lhs = cond_prob_pointwise(m.p, x1, pre(x2, a2).intersect(pre(x3, a3)), a4);
  RandomObject x12 = pair(x1, x2);
  auto inner = cond_prob_pointwise(m.p, x12, pre(x3, a3), a4);
  Kernel k = cond_kernel(m.p, x1, x2, a4, Event::full(m.omega));
  Weights rhs(x1.codomain().size(), 0);
  for (std::size_t x = 0; x < rhs.size(); ++x)
    for (std::size_t y : a2.members()) rhs[x] += inner(x12.codomain().encode({x, y})) * k.rows[x][y];
  r.expect(ae_same(lhs, rhs), "integrated conditional differs from the joint conditional");
}

void check_kernel_composition(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto &x1 = pick(xs, g), &x2 = pick(xs, g), &x3 = pick(xs, g);
  Event a4 = random_cond(m, xs, g), a5 = random_cond(m, xs, g), a6 = random_cond(m, xs, g);
  Kernel outer = cond_kernel(m.p, x1, x2, a5, a6);
  Kernel inner = cond_kernel(m.p, pair(x1, x2), x3, a5.intersect(a6), a4);
  Kernel composed = compose_kernels(outer, inner);
  Kernel direct = cond_kernel(m.p, x1, pair(x2, x3), a5, a4.intersect(a6));
  r.expect(ae_equal(direct, composed), "kernel composition differs from the joint kernel");
}

void check_independence_propagation(const Model& m, ModelGenerator& g, CheckResult& r) {
  ProductModel pm = product_model(m, m);
  const Measure& p = pm.p;
  Model left{pm.omega, p, pm.left}, right{pm.omega, p, pm.right};
  auto L = discrete(left), R = discrete(right);
  Event full = Event::full(pm.omega);

  // (X1, X2) independent of X3.
  {
    const auto &x1 = pick(L, g), &x2 = pick(L, g), &x3 = pick(R, g);
    Event a2 = pre(x2, g.event(x2.codomain())), a3 = pre(x3, g.event(x3.codomain()));
    Weights lhs = law_on(p, x1, a2.intersect(a3)).weights();
    Weights rhs = law_on(p, x1, a2).weights();
    for (auto& w : rhs) w *= p.of(a3);
    r.expect(lhs == rhs, "P[X1; A2, A3] != P(A3) P[X1, A2]");
    if (sgn(p.of(a3)) > 0) {
      Measure c = cond_cooc_measure(CoocQuery(p, {on_omega(a2)}, {on_omega(a3)}), x1).measure;
      r.expect(c == law_on(p, x1, a2), "P[X1, A2 | A3] != P[X1, A2]");
    }
    auto pc = cond_prob_pointwise(p, x1, a3, a2);
    for (std::size_t x = 0; x < pc.values.size(); ++x)
      if (sgn(pc.reference.weight(x)) > 0) r.expect(pc(x) == p.of(a3), "P[A3 | X1, A2] != P(A3)");
  }
  // (X1, X3) independent of (X2, X4).
  {
    const auto &x1 = pick(L, g), &x3 = pick(L, g), &x2 = pick(R, g), &x4 = pick(R, g);
    Event a3 = pre(x3, g.event(x3.codomain())), a4 = pre(x4, g.event(x4.codomain()));
    Measure joint = law_on(p, pair(x1, x2), a3.intersect(a4));
    Measure l1 = law_on(p, x1, a3), l2 = law_on(p, x2, a4);
    bool ok = true;
    for (std::size_t pt = 0; pt < joint.space().size(); ++pt) {
      auto t = joint.space().decode(pt);
      ok = ok && joint.weight(pt) == l1.weight(t[0]) * l2.weight(t[1]);
    }
    r.expect(ok, "P[X1, X2; A3, A4] != P[X1, A3] x P[X2, A4]");
    Kernel k = cond_kernel(p, x1, x2, a3, a4);
    for (std::size_t x : k.support()) r.expect(k.rows[x] == l2.weights(), "P[X2, A4 | X1, A3] != P[X2, A4]");
  }
  // (X1, X3, X4, X6) independent of (X2, X5).
  {
    const auto &x1 = pick(L, g), &x3 = pick(L, g), &x2 = pick(R, g);
    Event a4 = random_cond(left, L, g), a6 = random_cond(left, L, g), a5 = random_cond(right, R, g);
    Kernel lhs = cond_kernel(p, x1, pair(x3, x2), a4, a5.intersect(a6));
    Kernel rhs = kernel_product(cond_kernel(p, x1, x3, a4, a6),
                                constant_kernel(x1.codomain(), law_on(p, x2, a5), law_on(p, x1, a4)));
    r.expect(ae_equal(lhs, rhs), "P[X3, X2; A5, A6 | X1, A4] does not split");
  }
  (void)full;
}

void check_kernel_product(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto &x1 = pick(xs, g), &x2 = pick(xs, g), &x3 = pick(xs, g);
  Event c = random_cond(m, xs, g);
  Kernel k2 = cond_kernel(m.p, x1, x2, c, random_cond(m, xs, g));
  Kernel k3 = cond_kernel(m.p, x1, x3, c, random_cond(m, xs, g));
  Kernel kp = kernel_product(k2, k3);
  for (int rep = 0; rep < 3; ++rep) {
    Event b2 = g.event(x2.codomain()), b3 = g.event(x3.codomain());
    std::vector<std::size_t> rect;
    for (std::size_t pt = 0; pt < kp.target.size(); ++pt) {
      auto t = kp.target.decode(pt);
      if (b2.contains(t[0]) && b3.contains(t[1])) rect.push_back(pt);
    }
    Event rr(kp.target, rect);
    for (std::size_t x = 0; x < kp.source.size(); ++x)
      r.expect(kp.apply(x, rr) == k2.apply(x, b2) * k3.apply(x, b3), "product kernel on a rectangle");
  }
  // K x mu.
  Measure mu = pushforward(m.p, x3);
  Kernel km = kernel_product(k2, constant_kernel(k2.source, mu, k2.reference));
  for (std::size_t x = 0; x < km.source.size(); ++x)
    for (std::size_t pt = 0; pt < km.target.size(); ++pt) {
      auto t = km.target.decode(pt);
      r.expect(km.rows[x][pt] == k2.rows[x][t[0]] * mu.weight(t[1]), "K x mu entry");
    }
}

// ---------------------------------------------------------------------------
// Independence equivalences

struct CIEnum {
  const Measure& p;
  CheckResult& r;

  Constraints cs(const RandomObject& x, const Event& e) const { return {Constraint(x, e)}; }
  Event ev(const RandomObject& x, const Event& e) const { return x.preimage(e); }

  void pattern1(const RandomObject& o1, const RandomObject& o2, const RandomObject& o3, const Event& e1,
                const Event& e2, const Event& e3) {
    Event a1 = ev(o1, e1), a2 = ev(o2, e2), a3 = ev(o3, e3);
    if (sgn(p.of(a1.intersect(a3))) == 0) return;
    bool lhs = cond_prob_cooc(p, {a2}, {a1, a3}).value == cond_prob_cooc(p, {a2}, {a1}).value;
    bool ci = check_cond_independence(p, ci::EventsGivenEvent{cs(o1, e1), cs(o2, e2), cs(o3, e3)}).independent;
    r.expect(lhs == ci, "equivalence 1");
  }

  void pattern2(const RandomObject& x2, const RandomObject& o1, const RandomObject& o3, const RandomObject& o4,
                const Event& e1, const Event& e3, const Event& e4) {
    Event a1 = ev(o1, e1), a3 = ev(o3, e3), a4 = ev(o4, e4);
    if (sgn(p.of(a1.intersect(a3).intersect(a4))) == 0) return;
    bool ci = check_cond_independence(p, ci::ObjectEventGivenEvent{cs(o1, e1), x2, cs(o3, e3), cs(o4, e4)}).independent;
    Measure l = cond_cooc_measure(CoocQuery(p, {on_omega(a4)}, {on_omega(a1), on_omega(a3)}), x2).measure;
    Measure rr = cond_cooc_measure(CoocQuery(p, {on_omega(a4)}, {on_omega(a1)}), x2).measure;
    r.expect((l == rr) == ci, "equivalence 2a");
    auto pc = cond_prob_pointwise(p, x2, a3, a1.intersect(a4));
    Rational c = cond_prob_cooc(p, {a3}, {a1}).value;
    bool lhs_b = true;
    for (std::size_t y = 0; y < pc.values.size(); ++y)
      if (sgn(pc.reference.weight(y)) > 0 && pc(y) != c) lhs_b = false;
    r.expect(lhs_b == ci, "equivalence 2b");
  }

  void pattern3(const RandomObject& x2, const RandomObject& x3, const RandomObject& o1, const RandomObject& o4,
                const RandomObject& o5, const Event& e1, const Event& e4, const Event& e5) {
    Event a1 = ev(o1, e1), a4 = ev(o4, e4), a5 = ev(o5, e5);
    if (sgn(p.of(a1.intersect(a5))) == 0) return;
    bool ci =
        check_cond_independence(p, ci::ObjectsGivenEvent{cs(o1, e1), x2, x3, cs(o4, e4), cs(o5, e5)}).independent;
    Kernel k = cond_kernel(p, x3, x2, a1.intersect(a5), a4);
    Measure target = cond_cooc_measure(CoocQuery(p, {on_omega(a4)}, {on_omega(a1)}), x2).measure;
    bool lhs = true;
    for (std::size_t y : k.support()) lhs = lhs && k.rows[y] == target.weights();
    r.expect(lhs == ci, "equivalence 3");
  }

  void pattern4(const RandomObject& x1, const RandomObject& o3, const RandomObject& o4, const RandomObject& o5,
                const Event& e3, const Event& e4, const Event& e5) {
    Event a3 = ev(o3, e3), a4 = ev(o4, e4), a5 = ev(o5, e5);
    if (sgn(p.of(a3.intersect(a4))) == 0) return;
    bool ci = check_cond_independence(p, ci::EventsGivenObject{x1, cs(o3, e3), cs(o4, e4), cs(o5, e5)}).independent;
    auto l = cond_prob_pointwise(p, x1, a5, a3.intersect(a4));
    auto rr = cond_prob_pointwise(p, x1, a5, a3);
    r.expect(ae_equal(l, rr) == ci, "equivalence 4");
  }

  void pattern5(const RandomObject& x1, const RandomObject& x2, const RandomObject& o3, const RandomObject& o4,
                const RandomObject& o5, const Event& e3, const Event& e4, const Event& e5) {
    Event a3 = ev(o3, e3), a4 = ev(o4, e4), a5 = ev(o5, e5);
    if (sgn(p.of(a3.intersect(a4).intersect(a5))) == 0) return;
    bool ci =
        check_cond_independence(p, ci::ObjectEventGivenObject{x1, x2, cs(o3, e3), cs(o4, e4), cs(o5, e5)}).independent;
    Kernel l = cond_kernel(p, x1, x2, a3.intersect(a5), a4);
    Kernel rr = cond_kernel(p, x1, x2, a3, a4);
    r.expect(ae_equal(l, rr) == ci, "equivalence 5a");
    RandomObject x12 = pair(x1, x2);
    auto lb = cond_prob_pointwise(p, x12, a5, a3.intersect(a4));
    auto rb = cond_prob_pointwise(p, x1, a5, a3);
    Weights lifted(x12.codomain().size());
    for (std::size_t pt = 0; pt < lifted.size(); ++pt) lifted[pt] = rb(x12.codomain().decode(pt)[0]);
    r.expect(ae_same(lb, lifted) == ci, "equivalence 5b");
  }

  void pattern6(const RandomObject& x1, const RandomObject& x2, const RandomObject& x3, const RandomObject& o4,
                const RandomObject& o5, const RandomObject& o6, const Event& e4, const Event& e5, const Event& e6) {
    Event a4 = ev(o4, e4), a5 = ev(o5, e5), a6 = ev(o6, e6);
    if (sgn(p.of(a4.intersect(a6))) == 0) return;
    bool ci = check_cond_independence(p, ci::ObjectsGivenObject{x1, x2, x3, cs(o4, e4), cs(o5, e5), cs(o6, e6)})
                  .independent;
    RandomObject x13 = pair(x1, x3);
    Kernel l = cond_kernel(p, x13, x2, a4.intersect(a6), a5);
    Kernel rr = cond_kernel(p, x1, x2, a4, a5);
    bool lhs = true;
    for (std::size_t pt : l.support()) lhs = lhs && l.rows[pt] == rr.rows[x13.codomain().decode(pt)[0]];
    r.expect(lhs == ci, "equivalence 6");
  }
};

}  // namespace

void check_ci_equivalences(const Model& m, ModelGenerator& g, CheckResult& r, bool exhaustive, std::size_t samples) {
  auto xs = discrete(m);
  CIEnum e{m.p, r};
  auto objs = [&](std::size_t n) {
    std::vector<RandomObject> v;
    for (std::size_t k = 0; k < n; ++k) v.push_back(pick(xs, g));
    return v;
  };
  // Event tuples: either every combination or `samples` random draws.
  auto for_events = [&](const std::vector<RandomObject>& os, const std::function<void(const std::vector<Event>&)>& f) {
    if (!exhaustive) {
      for (std::size_t s = 0; s < samples; ++s) {
        std::vector<Event> es;
        for (const auto& o : os) es.push_back(g.event(o.codomain()));
        f(es);
      }
      return;
    }
    std::vector<std::vector<Event>> pools;
    for (const auto& o : os) pools.push_back(all_events(o.codomain()));
    std::vector<std::size_t> idx(os.size(), 0);
    while (true) {
      std::vector<Event> es;
      for (std::size_t k = 0; k < os.size(); ++k) es.push_back(pools[k][idx[k]]);
      f(es);
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == pools[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  };

  {
    auto o = objs(3);
    for_events(o, [&](const std::vector<Event>& es) { e.pattern1(o[0], o[1], o[2], es[0], es[1], es[2]); });
  }
  {
    auto x = objs(1);
    auto o = objs(3);
    for_events(o, [&](const std::vector<Event>& es) { e.pattern2(x[0], o[0], o[1], o[2], es[0], es[1], es[2]); });
  }
  {
    auto x = objs(2);
    auto o = objs(3);
    for_events(o, [&](const std::vector<Event>& es) { e.pattern3(x[0], x[1], o[0], o[1], o[2], es[0], es[1], es[2]); });
  }
  {
    auto x = objs(1);
    auto o = objs(3);
    for_events(o, [&](const std::vector<Event>& es) { e.pattern4(x[0], o[0], o[1], o[2], es[0], es[1], es[2]); });
  }
  {
    auto x = objs(2);
    auto o = objs(3);
    for_events(o, [&](const std::vector<Event>& es) { e.pattern5(x[0], x[1], o[0], o[1], o[2], es[0], es[1], es[2]); });
  }
  {
    auto x = objs(3);
    auto o = objs(3);
    for_events(o, [&](const std::vector<Event>& es) {
      e.pattern6(x[0], x[1], x[2], o[0], o[1], o[2], es[0], es[1], es[2]);
    });
  }
}

namespace {

// ===========================================================================
// Densities

struct DensitySetup {
  ObjectFamily fam;
  IndexSet all;
};

DensitySetup density_setup(const Model& m) {
  auto xs = discrete(m);
  DensitySetup s;
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < std::min<std::size_t>(xs.size(), 3); ++k) {
    s.fam.emplace(k + 1, xs[k]);
    idx.push_back(k + 1);
  }
  s.all = IndexSet(idx);
  return s;
}

IndexSet random_subset(const IndexSet& of, ModelGenerator& g, bool nonempty = true) {
  while (true) {
    std::vector<std::size_t> v;
    for (std::size_t i : of)
      if (g.coin()) v.push_back(i);
    if (!nonempty || !v.empty()) return IndexSet(v);
  }
}

void check_density_roundtrip(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto s = density_setup(m);
  IndexSet I = random_subset(s.all, g);
  Density f = density_wrt_marginals(m.p, s.fam, I);
  Measure law = pushforward(m.p, bundle(s.fam, I));
  r.expect(f.law().weights() == law.weights(), "density does not reproduce P[X_I]");
  auto bw = f.base_weights();
  Weights v = f.values;
  for (std::size_t pt = 0; pt < bw.size(); ++pt)
    if (sgn(bw[pt]) == 0) {
      r.expect(sgn(f.values[pt]) == 0, "density nonzero on a base-null point");
      v[pt] = 5;
    }
  Density h = f;
  h.values = v;
  r.expect(h.law().weights() == law.weights(), "null-set change altered the law");
}

void check_density_marginal(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto s = density_setup(m);
  bool with_bases = g.coin();
  BaseFamily bases;
  for (std::size_t i : s.all) bases.emplace(i, g.base(s.fam.at(i).codomain()));
  Density f = with_bases ? density_wrt_base(m.p, s.fam, s.all, bases) : density_wrt_marginals(m.p, s.fam, s.all);
  IndexSet i1 = random_subset(s.all, g);
  IndexSet i0 = random_subset(i1, g);
  r.expect(marginal_density(marginal_density(f, i1), i0).values == marginal_density(f, i0).values,
           "marginalization does not commute with nesting");
  Density direct = with_bases ? density_wrt_base(m.p, s.fam, i1, bases) : density_wrt_marginals(m.p, s.fam, i1);
  r.expect(marginal_density(f, i1).values == direct.values, "marginal density differs from direct density");
}

void check_density_kernel(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto s = density_setup(m);
  if (s.all.size() < 2) return;
  BaseFamily bases;
  for (std::size_t i : s.all) bases.emplace(i, g.base(s.fam.at(i).codomain()));
  Density f = g.coin() ? density_wrt_base(m.p, s.fam, s.all, bases) : density_wrt_marginals(m.p, s.fam, s.all);
  IndexSet i1 = random_subset(s.all, g);
  IndexSet rest = s.all.minus(i1);
  if (rest.empty()) return;
  IndexSet i2 = random_subset(rest, g);
  Kernel kd = kernel_from_density(f, i1, i2);
  Kernel kc = cond_kernel(m.p, bundle(s.fam, i1), bundle(s.fam, i2), Event::full(m.omega), Event::full(m.omega));
  r.expect(kd.reference == kc.reference, "density kernel reference differs from P[X_I1]");
  r.expect(ae_equal(kc, kd), "density kernel differs from conditional kernel");
}

void check_absolute_continuity(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto s = density_setup(m);
  IndexSet I = random_subset(s.all, g);
  BaseFamily bases;
  for (std::size_t i : I) bases.emplace(i, g.base(s.fam.at(i).codomain(), 0.3));
  Measure law = pushforward(m.p, bundle(s.fam, I));
  bool expect_fail = false;
  for (std::size_t pt = 0; pt < law.space().size(); ++pt) {
    auto t = law.space().decode(pt);
    Rational b = 1;
    std::size_t k = 0;
    for (std::size_t i : I) b *= bases.at(i).weight(t[k++]);
    if (sgn(law.weight(pt)) > 0 && sgn(b) == 0) expect_fail = true;
  }
  try {
    Density f = density_wrt_base(m.p, s.fam, I, bases);
    r.expect(!expect_fail, "density returned although absolute continuity fails");
    r.expect(f.law().weights() == law.weights(), "density does not reproduce P[X_I] against the base");
  } catch (const Error& e) {
    r.expect(expect_fail && e.code() == ErrorCode::NotAbsolutelyContinuous,
             "NotAbsolutelyContinuous raised for an absolutely continuous law");
  }
}

void check_change_of_base(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto s = density_setup(m);
  IndexSet I = random_subset(s.all, g);
  BaseFamily bases;
  std::map<std::size_t, Density> fi;
  for (std::size_t i : I) {
    Measure pi = pushforward(m.p, s.fam.at(i));
    Weights w;
    for (std::size_t y = 0; y < pi.space().size(); ++y)
      w.push_back(sgn(pi.weight(y)) > 0 || g.coin() ? g.rational(1, 3, 3) : Rational(0));
    bases.emplace(i, Measure(pi.space(), w, MeasureKind::Base));
    fi.emplace(i, density_wrt_base(m.p, s.fam, IndexSet{i}, {{i, bases.at(i)}}));
  }
  Density fp = density_wrt_marginals(m.p, s.fam, I);
  Density fm = change_of_base(fp, fi);
  Measure law = pushforward(m.p, bundle(s.fam, I));
  r.expect(fm.law().weights() == law.weights(), "changed-base density violates its defining equation");
  r.expect(fm.values == density_wrt_base(m.p, s.fam, I, bases).values, "changed-base density differs from direct");
}

void check_factorization(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto s = density_setup(m);
  if (s.all.size() < 2) return;
  Density f = density_wrt_marginals(m.p, s.fam, s.all);
  IndexSet b1 = random_subset(s.all, g);
  IndexSet b2 = s.all.minus(b1);
  if (b2.empty()) return;
  Measure joint = pushforward(m.p, bundle(s.fam, s.all));
  Measure l1 = pushforward(m.p, bundle(s.fam, b1)), l2 = pushforward(m.p, bundle(s.fam, b2));
  auto p1 = std::vector<std::size_t>(), p2 = std::vector<std::size_t>();
  for (std::size_t i : b1) p1.push_back(s.all.position(i));
  for (std::size_t i : b2) p2.push_back(s.all.position(i));
  bool indep = true;
  for (std::size_t pt = 0; pt < joint.space().size(); ++pt) {
    auto t = joint.space().decode(pt);
    std::vector<std::size_t> t1, t2;
    for (std::size_t k : p1) t1.push_back(t[k]);
    for (std::size_t k : p2) t2.push_back(t[k]);
    indep = indep && joint.weight(pt) == l1.weight(l1.space().encode(t1)) * l2.weight(l2.space().encode(t2));
  }
  try {
    auto parts = factorize_if_independent(f, {b1, b2});
    r.expect(indep, "factorization certified for a dependent family");
  } catch (const Error& e) {
    r.expect(!indep && e.code() == ErrorCode::NotFactorizable, "factorization refused for an independent family");
  }
}

// ===========================================================================
// Integrals

void check_indicator_integral(const Model& m, ModelGenerator& g, CheckResult& r) {
  RandomObject i0 = identity(m.omega);
  Event a = g.event(m.omega);
  RandomVariable y = g.variable(m.omega);
  Rational lhs = e_integral(y, cooc_measure(CoocQuery(m.p, {Constraint(i0, a)}), i0)).value;
  Rational rhs = 0;
  for (std::size_t w : a.members()) rhs += y(w) * m.p.weight(w);
  r.expect(lhs == rhs, "E_[I0, A](Y) != E(Y 1_A)");
}

void check_event_expectation(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto &x2 = pick(xs, g);
  Constraints a1 = g.constraints(xs, 2);
  RandomVariable y = g.variable(x2.codomain());
  auto c = cond_expectation_event(y, CoocQuery(m.p, {}, a1), x2);
  Rational pa = m.p.of(joint_event(m.omega, a1));
  Rational u = e_integral(y, cooc_measure(CoocQuery(m.p, a1), x2)).value;
  if (sgn(pa) > 0) r.expect(c.value * pa == u && !c.null_condition, "E(Y | A1) P(A1) != E_[X2, A1](Y)");
  else r.expect(c.null_condition && sgn(c.value) == 0, "null condition not flagged with value 0");
  auto plain = cond_expectation_event(y, CoocQuery(m.p, {}, {}), x2);
  r.expect(plain.value == e_integral(y, pushforward(m.p, x2)).value, "conditioning on Omega is not plain E");
}

void check_object_expectation(const Model& m, ModelGenerator& g, CheckResult& r) {
  const auto& x1 = pick(m.objects, g);
  auto xs = discrete(m);
  const auto& x2 = pick(xs, g);
  Event a3 = random_cond(m, xs, g), a4 = random_cond(m, xs, g);
  RandomVariable y = g.variable(x2.codomain());
  auto phi = cond_expectation_object(m.p, y, x1, x2, a3, a4);
  std::vector<Event> sets;
  for (const auto& b : x1.codomain_field().blocks()) sets.emplace_back(x1.codomain(), b);
  sets.push_back(Event::full(x1.codomain()));
  for (const auto& a1 : sets) {
    Rational lhs = 0;
    for (std::size_t x : a1.members()) lhs += phi(x) * phi.reference.weight(x);
    Rational rhs = e_integral(y, law_on(m.p, x2, x1.preimage(a1).intersect(a3).intersect(a4))).value;
    r.expect(lhs == rhs, "conditional E-integral defining equation");
  }
  // Trivial field: the constant E(Y).
  RandomObject triv = identity(Partition::trivial(m.omega));
  auto c = cond_expectation_object(m.p, y, triv, x2, Event::full(m.omega), Event::full(m.omega));
  Rational ey = e_integral(y, pushforward(m.p, x2)).value;
  for (std::size_t w = 0; w < c.values.size(); ++w)
    if (sgn(c.reference.weight(w)) > 0) r.expect(c(w) == ey, "conditioning on the trivial field is not E(Y)");
}

void check_rectangle_identity(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto &x1 = pick(xs, g), &x2 = pick(xs, g);
  Event a1 = g.event(x1.codomain());
  Event a3 = random_cond(m, xs, g), a4 = random_cond(m, xs, g);
  RandomVariable y = g.variable(x2.codomain());
  Measure joint = law_on(m.p, pair(x1, x2), a3.intersect(a4));
  Rational lhs = 0;
  for (std::size_t pt = 0; pt < joint.space().size(); ++pt) {
    auto t = joint.space().decode(pt);
    if (a1.contains(t[0])) lhs += y(t[1]) * joint.weight(pt);
  }
  Rational rhs = e_integral(y, law_on(m.p, x2, pre(x1, a1).intersect(a3).intersect(a4))).value;
  r.expect(lhs == rhs, "rectangle identity");
}

// ===========================================================================
// Integral identities

void check_iterated(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  std::size_t n = g.uniform(2, 4);
  std::vector<RandomObject> chain;
  std::vector<Constraints> cons;
  for (std::size_t j = 0; j < n; ++j) {
    chain.push_back(pick(xs, g));
    cons.push_back(g.constraints(xs, 1));
  }
  ObjectFamily fam;
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < n; ++j) {
    fam.emplace(j + 1, chain[j]);
    idx.push_back(j + 1);
  }
  RandomVariable y = g.variable(bundle(fam, IndexSet(idx)).codomain());
  auto res = iterated_decompose(m.p, y, chain, cons);
  r.expect(res.agrees(), "nested E-integral differs from direct (chain of " + std::to_string(n) + ")");
}

void check_additivity(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto &x1 = pick(xs, g), &x2 = pick(xs, g), &x4 = pick(xs, g);
  Event a = g.event(x4.codomain()), b = g.event(x4.codomain());
  Event a41 = a.intersect(b.complement()), a42 = b;
  Event a3 = random_cond(m, xs, g), a5 = random_cond(m, xs, g);
  RandomVariable y = g.variable(x2.codomain());
  auto with = [&](const Event& e) { return pre(x4, e).intersect(a5); };
  Rational u = e_integral(y, law_on(m.p, x2, with(a41.unite(a42)))).value;
  r.expect(u == e_integral(y, law_on(m.p, x2, with(a41))).value + e_integral(y, law_on(m.p, x2, with(a42))).value,
           "E-integral not additive in a disjoint constraint");
  auto c = cond_expectation_object(m.p, y, x1, x2, a3, with(a41.unite(a42)));
  auto c1 = cond_expectation_object(m.p, y, x1, x2, a3, with(a41));
  auto c2 = cond_expectation_object(m.p, y, x1, x2, a3, with(a42));
  for (std::size_t x = 0; x < c.values.size(); ++x) r.expect(c(x) == c1(x) + c2(x), "conditional additivity");

  // Indicators move between integrand and constraint.
  Event e1 = g.event(x1.codomain()), e2 = g.event(x2.codomain());
  Measure joint = law_on(m.p, pair(x1, x2), a3);
  Rational lhs = 0;
  for (std::size_t pt = 0; pt < joint.space().size(); ++pt) {
    auto t = joint.space().decode(pt);
    if (e1.contains(t[0]) && e2.contains(t[1])) lhs += y(t[1]) * joint.weight(pt);
  }
  RandomVariable y2 = y;
  for (std::size_t w = 0; w < y2.values.size(); ++w)
    if (!e2.contains(w)) y2.values[w] = 0;
  r.expect(lhs == e_integral(y2, law_on(m.p, x2, pre(x1, e1).intersect(a3))).value, "indicator transfer");
}

void check_shift_identity(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto &x1 = pick(xs, g), &x2 = pick(xs, g);
  Event a3 = random_cond(m, xs, g), a4 = random_cond(m, xs, g), a5 = random_cond(m, xs, g);
  RandomVariable y = g.variable(x2.codomain());
  auto lhs = cond_expectation_object(m.p, y, x1, x2, a5, a3.intersect(a4));
  auto shifted = cond_expectation_object(m.p, y, x1, x2, a3.intersect(a5), a4);
  auto p3 = cond_prob_pointwise(m.p, x1, a3, a5);
  Weights prod(lhs.values.size());
  for (std::size_t x = 0; x < prod.size(); ++x) prod[x] = shifted(x) * p3(x);
  r.expect(ae_same(lhs, prod), "E[Y; A3 | X1, A5] != E[Y | X1; A3, A5] P[A3 | X1, A5]");
  Weights quot(lhs.values.size(), 0);
  for (std::size_t x = 0; x < quot.size(); ++x)
    if (sgn(p3(x)) != 0) quot[x] = lhs(x) / p3(x);
  r.expect(ae_same(shifted, quot), "quotient form of the shift identity");
}

void check_independence_transfer(const Model& m, ModelGenerator& g, CheckResult& r) {
  ProductModel pm = product_model(m, m);
  const Measure& p = pm.p;
  Model left{pm.omega, p, pm.left}, right{pm.omega, p, pm.right};
  auto L = discrete(left), R = discrete(right);
  Event full = Event::full(pm.omega);

  // Part 1: X3 and A6 independent of the rest given X1, A4.
  {
    const auto &x1 = pick(L, g), &x2 = pick(L, g), &x3 = pick(R, g);
    Event a4 = random_cond(left, L, g), a5 = random_cond(left, L, g), a6 = random_cond(right, R, g);
    if (sgn(p.of(a4.intersect(a6))) > 0) {
      bool hyp = check_cond_independence(p, ci::ObjectsGivenObject{x1, x2, x3, {on_omega(a4)}, {on_omega(a5)},
                                                                   {on_omega(a6)}})
                     .independent;
      r.expect(hyp, "constructed model violates the hypothesis of part 1");
      RandomVariable y = g.variable(x2.codomain());
      RandomObject x13 = pair(x1, x3);
      auto lhs = cond_expectation_object(p, y, x13, x2, a4.intersect(a6), a5);
      auto rhs = cond_expectation_object(p, y, x1, x2, a4, a5);
      Weights lifted(lhs.values.size());
      for (std::size_t pt = 0; pt < lifted.size(); ++pt) lifted[pt] = rhs(x13.codomain().decode(pt)[0]);
      r.expect(ae_same(lhs, lifted), "independence transfer, part 1");
    }
  }
  // Part 2: A6 independent of X2, A5 given X1, A4.
  {
    const auto &x1 = pick(L, g), &x2 = pick(L, g);
    Event a4 = random_cond(left, L, g), a5 = random_cond(left, L, g), a6 = random_cond(right, R, g);
    if (sgn(p.of(a4.intersect(a6))) > 0) {
      RandomVariable y = g.variable(x2.codomain());
      auto lhs = cond_expectation_object(p, y, x1, x2, a4.intersect(a6), a5);
      auto rhs = cond_expectation_object(p, y, x1, x2, a4, a5);
      r.expect(ae_equal(lhs, rhs), "independence transfer, part 2");
    }
  }
  // Part 3: (X1, A4) independent of (X2, A5) given A6.
  {
    const auto &x1 = pick(R, g), &x2 = pick(L, g);
    Event a4 = random_cond(right, R, g), a5 = random_cond(left, L, g), a6 = random_cond(left, L, g);
    if (sgn(p.of(a4.intersect(a6))) > 0) {
      RandomVariable y = g.variable(x2.codomain());
      auto lhs = cond_expectation_object(p, y, x1, x2, a4.intersect(a6), a5);
      Rational rhs = cond_expectation_event(y, CoocQuery(p, {on_omega(a5)}, {on_omega(a6)}), x2).value;
      for (std::size_t x = 0; x < lhs.values.size(); ++x)
        if (sgn(lhs.reference.weight(x)) > 0) r.expect(lhs(x) == rhs, "independence transfer, part 3");
    }
  }
  (void)full;
}

void check_linearity(const Model& m, ModelGenerator& g, CheckResult& r) {
  Setting s = random_setting(m, g);
  RandomVariable y1 = g.variable(s.x2.codomain()), y2 = g.variable(s.x2.codomain());
  Rational alpha = g.rational(-3, 3, 3);
  auto scaled = map_rv(y1, [&](const Rational& v) { return alpha * v; });
  auto added = zip_rv(y1, y2, [](const Rational& a, const Rational& b) { return a + b; });
  auto bigger = zip_rv(y1, g.variable(s.x2.codomain(), 0, 3), [](const Rational& a, const Rational& b) { return a + b; });
  auto absy = map_rv(y1, [](const Rational& v) { return Rational(abs(v)); });

  r.expect(s.event_form(scaled).value == alpha * s.event_form(y1).value, "homogeneity (event form)");
  r.expect(s.event_form(added).value == s.event_form(y1).value + s.event_form(y2).value, "additivity (event form)");
  r.expect(s.event_form(y1).value <= s.event_form(bigger).value, "monotonicity (event form)");
  r.expect(abs(s.event_form(y1).value) <= s.event_form(absy).value, "|E Y| <= E|Y| (event form)");

  auto c1 = s.object_form(y1), c2 = s.object_form(y2), cs = s.object_form(scaled), ca = s.object_form(added);
  auto cb = s.object_form(bigger), cabs = s.object_form(absy);
  for (std::size_t x = 0; x < c1.values.size(); ++x) {
    if (sgn(c1.reference.weight(x)) == 0) continue;
    r.expect(cs(x) == alpha * c1(x), "homogeneity (object form)");
    r.expect(ca(x) == c1(x) + c2(x), "additivity (object form)");
    r.expect(c1(x) <= cb(x), "monotonicity (object form)");
    r.expect(abs(c1(x)) <= cabs(x), "|E Y| <= E|Y| (object form)");
  }
}

void check_tower(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  RandomObject x2 = g.coin(0.3) ? identity(m.omega) : pick(xs, g);
  const FiniteSpace& s2 = x2.codomain();
  Partition g2 = g.partition(s2);
  Partition g1 = g.coarser(g2);
  r.expect(refines(g2, g1), "generated chain is not nested");
  RandomObject x21 = coarsen(x2, g1), x22 = coarsen(x2, g2);
  RandomVariable y = g.variable(s2);
  Event full = Event::full(m.omega);

  auto inner = cond_expectation_object(m.p, y, x22, x2, full, full);
  RandomVariable inner_rv(s2, inner.values);
  auto lhs_a = cond_expectation_object(m.p, inner_rv, x21, x2, full, full);
  auto lhs_b = cond_expectation_object(m.p, inner_rv, x21, x22, full, full);
  auto rhs = cond_expectation_object(m.p, y, x21, x2, full, full);
  r.expect(ae_equal(rhs, lhs_a), "E(E(Y | G2) | G1) != E(Y | G1)");
  r.expect(ae_equal(rhs, lhs_b), "E_[X22](E(Y | G2) | G1) != E(Y | G1)");
}

// Sequences described by a finite prefix; stabilization from index `stable` on, or periodic.
struct Sequence {
  std::vector<RandomVariable> terms;
  std::size_t stable;  // terms[stable..] are all equal to the limit
};

void check_monotone(const Model& m, ModelGenerator& g, CheckResult& r, bool object_form) {
  Setting s = random_setting(m, g);
  RandomVariable y = g.variable(s.x2.codomain(), 0, 12, 2);
  RandomVariable yneg = map_rv(y, [](const Rational& v) { return Rational(-v); });
  for (int dir = 0; dir < 2; ++dir) {
    // Increasing: min(Y, n); decreasing: max(-Y, -n).  Both stabilize once n >= 12.
    std::vector<RandomVariable> seq;
    for (int n = 1; n <= 16; ++n) {
      Rational cap(n);
      seq.push_back(dir == 0 ? map_rv(y, [&](const Rational& v) { return v < cap ? v : cap; })
                             : map_rv(yneg, [&](const Rational& v) { return v > -cap ? v : Rational(-cap); }));
    }
    const RandomVariable& lim = dir == 0 ? y : yneg;
    if (!object_form) {
      Rational prev = s.event_form(seq[0]).value, target = s.event_form(lim).value;
      for (std::size_t n = 1; n < seq.size(); ++n) {
        Rational cur = s.event_form(seq[n]).value;
        r.expect(dir == 0 ? prev <= cur : prev >= cur, "E-integrals of a monotone sequence are not monotone");
        prev = cur;
      }
      r.expect(prev == target, "monotone limit not attained after stabilization");
    } else {
      auto target = s.object_form(lim);
      auto prev = s.object_form(seq[0]);
      for (std::size_t n = 1; n < seq.size(); ++n) {
        auto cur = s.object_form(seq[n]);
        for (std::size_t x = 0; x < cur.values.size(); ++x)
          if (sgn(cur.reference.weight(x)) > 0)
            r.expect(dir == 0 ? prev(x) <= cur(x) : prev(x) >= cur(x), "conditional sequence not monotone");
        prev = cur;
      }
      r.expect(ae_equal(target, prev), "conditional monotone limit not attained");
    }
  }
}

Rational pointwise_extreme(const std::vector<Rational>& xs, bool lower) {
  return lower ? *std::min_element(xs.begin(), xs.end()) : *std::max_element(xs.begin(), xs.end());
}

void check_fatou(const Model& m, ModelGenerator& g, CheckResult& r) {
  Setting s = random_setting(m, g);
  const FiniteSpace& sp = s.x2.codomain();
  RandomVariable gb = g.variable(sp, -4, 0, 2);   // lower bound
  RandomVariable gu = g.variable(sp, 4, 8, 2);    // upper bound
  // A periodic sequence Y_0, Y_1, ..., Y_{k-1}, Y_0, ...: liminf and limsup are pointwise min and max over
  // one period, and the same holds for the E-integral sequence.
  std::size_t k = g.uniform(2, 3);
  std::vector<RandomVariable> period;
  for (std::size_t j = 0; j < k; ++j) period.push_back(g.variable(sp, -4, 8, 2));
  for (auto& y : period)
    for (std::size_t w = 0; w < y.values.size(); ++w) {
      if (y.values[w] < gb(w)) y.values[w] = gb(w);
      if (y.values[w] > gu(w)) y.values[w] = gu(w);
    }
  Weights lo(sp.size()), hi(sp.size());
  for (std::size_t w = 0; w < sp.size(); ++w) {
    std::vector<Rational> col;
    for (const auto& y : period) col.push_back(y(w));
    lo[w] = pointwise_extreme(col, true);
    hi[w] = pointwise_extreme(col, false);
  }
  RandomVariable liminf(sp, lo), limsup(sp, hi);
  std::vector<Rational> es;
  for (const auto& y : period) es.push_back(s.event_form(y).value);
  r.expect(s.event_form(liminf).value <= pointwise_extreme(es, true), "Fatou (liminf, event form)");
  r.expect(s.event_form(limsup).value >= pointwise_extreme(es, false), "Fatou (limsup, event form)");

  auto cl = s.object_form(liminf), cu = s.object_form(limsup);
  std::vector<PointwiseConditional> cs;
  for (const auto& y : period) cs.push_back(s.object_form(y));
  for (std::size_t x = 0; x < cl.values.size(); ++x) {
    if (sgn(cl.reference.weight(x)) == 0) continue;
    std::vector<Rational> col;
    for (const auto& c : cs) col.push_back(c(x));
    r.expect(cl(x) <= pointwise_extreme(col, true), "Fatou (liminf, object form)");
    r.expect(cu(x) >= pointwise_extreme(col, false), "Fatou (limsup, object form)");
  }

  // Eventually constant sequence above gb: equality at the limit.
  std::size_t stable = g.uniform(1, 15);
  RandomVariable limit = period[0];
  Rational last = 0;
  for (std::size_t n = 0; n < 16; ++n) {
    const RandomVariable& y = n >= stable ? limit : period[n % k];
    last = s.event_form(y).value;
  }
  r.expect(last == s.event_form(limit).value, "stabilized sequence does not reach its limit");
}

void check_dominated(const Model& m, ModelGenerator& g, CheckResult& r) {
  Setting s = random_setting(m, g);
  const FiniteSpace& sp = s.x2.codomain();
  RandomVariable dom = g.variable(sp, 2, 6, 2);
  RandomVariable limit = map_rv(g.variable(sp, -6, 6, 2), [](const Rational& v) { return v; });
  for (std::size_t w = 0; w < sp.size(); ++w) {
    if (abs(limit.values[w]) > dom(w)) limit.values[w] = sgn(limit.values[w]) * dom(w);
  }
  std::size_t stable = g.uniform(1, 15);
  auto target = s.object_form(limit);
  Rational target_e = s.event_form(limit).value;
  for (std::size_t n = 0; n < 16; ++n) {
    RandomVariable yn = n >= stable ? limit : g.variable(sp, -6, 6, 2);
    for (std::size_t w = 0; w < sp.size(); ++w)
      if (abs(yn.values[w]) > dom(w)) yn.values[w] = sgn(yn.values[w]) * dom(w);
    bool dominated = true;
    for (std::size_t w = 0; w < sp.size(); ++w) dominated = dominated && abs(yn(w)) <= dom(w);
    r.expect(dominated, "sequence escapes its dominating function");
    if (n >= stable) {
      r.expect(s.event_form(yn).value == target_e, "dominated limit (event form)");
      r.expect(ae_equal(target, s.object_form(yn)), "dominated limit (object form)");
    }
  }
}

void check_pull_out(const Model& m, ModelGenerator& g, CheckResult& r) {
  auto xs = discrete(m);
  const auto& x2 = pick(xs, g);
  Partition gpart = g.partition(x2.codomain());
  RandomObject x21 = coarsen(x2, gpart);
  Event a1 = random_cond(m, xs, g), a3 = random_cond(m, xs, g);
  RandomVariable y = g.variable(x2.codomain());
  Weights zb;
  for (std::size_t b = 0; b < gpart.num_blocks(); ++b) zb.push_back(g.rational(-3, 3, 3));
  Weights zv;
  for (std::size_t w = 0; w < x2.codomain().size(); ++w) zv.push_back(zb[gpart.block_of(w)]);
  RandomVariable z(x2.codomain(), zv);
  auto zy = zip_rv(z, y, [](const Rational& a, const Rational& b) { return a * b; });
  auto lhs = cond_expectation_object(m.p, zy, x21, x2, a1, a3);
  auto ey = cond_expectation_object(m.p, y, x21, x2, a1, a3);
  Weights rhs(ey.values.size());
  for (std::size_t w = 0; w < rhs.size(); ++w) rhs[w] = z(w) * ey(w);
  r.expect(ae_same(lhs, rhs), "pull-out property");
}

double to_d(const Rational& q) { return q.get_d(); }

double lp(const Weights& y, const Weights& w, double p) {
  double s = 0;
  for (std::size_t k = 0; k < y.size(); ++k) s += std::pow(std::fabs(to_d(y[k])), p) * to_d(w[k]);
  return std::pow(s, 1.0 / p);
}

bool float_le(double a, double b) { return a <= b * (1 + 1e-12) + 1e-300; }

// a <= sqrt(B) + sqrt(C) with a = sqrt(A), exactly.
bool sqrt_sum_ok(const Rational& A, const Rational& B, const Rational& C) {
  Rational d = A - B - C;
  return sgn(d) <= 0 || d * d <= 4 * B * C;
}

Rational ess_sup_abs(const RandomVariable& y, const Measure& law) {
  Rational s = 0;
  for (std::size_t w = 0; w < y.values.size(); ++w)
    if (sgn(law.weight(w)) > 0 && abs(y(w)) > s) s = abs(y(w));
  return s;
}

void check_holder(const Model& m, ModelGenerator& g, CheckResult& r) {
  Setting s = random_setting(m, g);
  RandomVariable y = g.variable(s.x2.codomain()), z = g.variable(s.x2.codomain());
  Measure law = pushforward(m.p, s.x2);
  Rational ysup = ess_sup_abs(y, law);
  double p = 1.0 + 4.0 * std::uniform_real_distribution<double>(0.01, 1.0)(g.engine());
  double q = p / (p - 1.0);
  for (const auto& w : s.measures()) {
    Weights ay, az, ayz, y2, z2;
    for (std::size_t k = 0; k < w.size(); ++k) {
      ay.push_back(abs(y(k)));
      az.push_back(abs(z(k)));
      ayz.push_back(abs(y(k) * z(k)));
    }
    Rational e_yz = integ(ayz, w), e_y2 = integ(std::vector<Rational>(), w);
    Rational sy2 = 0, sz2 = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      sy2 += y(k) * y(k) * w[k];
      sz2 += z(k) * z(k) * w[k];
    }
    r.expect(e_yz * e_yz <= sy2 * sz2, "Hoelder (2, 2)");
    r.expect(e_yz <= ysup * integ(az, w), "Hoelder (inf, 1)");
    r.expect(float_le(to_d(e_yz), lp(y.values, w, p) * lp(z.values, w, q)), "Hoelder (p, q) in floating point");
    (void)e_y2;
  }
  // Library route on the event form.
  auto ayz = zip_rv(y, z, [](const Rational& a, const Rational& b) { return Rational(abs(a * b)); });
  auto az = map_rv(z, [](const Rational& v) { return Rational(abs(v)); });
  r.expect(s.event_form(ayz).value <= ysup * s.event_form(az).value, "Hoelder (inf, 1) via E-integral");
}

void check_minkowski(const Model& m, ModelGenerator& g, CheckResult& r) {
  Setting s = random_setting(m, g);
  RandomVariable y = g.variable(s.x2.codomain()), z = g.variable(s.x2.codomain());
  double p = 1.0 + 4.0 * std::uniform_real_distribution<double>(0.01, 1.0)(g.engine());
  Weights sum_v;
  for (std::size_t k = 0; k < y.values.size(); ++k) sum_v.push_back(y(k) + z(k));
  for (const auto& w : s.measures()) {
    Rational a1 = 0, b1 = 0, c1 = 0, a2 = 0, b2 = 0, c2 = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      a1 += abs(sum_v[k]) * w[k];
      b1 += abs(y(k)) * w[k];
      c1 += abs(z(k)) * w[k];
      a2 += sum_v[k] * sum_v[k] * w[k];
      b2 += y(k) * y(k) * w[k];
      c2 += z(k) * z(k) * w[k];
    }
    r.expect(a1 <= b1 + c1, "Minkowski p = 1");
    r.expect(sqrt_sum_ok(a2, b2, c2), "Minkowski p = 2");
    r.expect(float_le(lp(sum_v, w, p), lp(y.values, w, p) + lp(z.values, w, p)), "Minkowski p in floating point");
  }
}

void check_jensen(const Model& m, ModelGenerator& g, CheckResult& r) {
  Setting s = random_setting(m, g, true);
  RandomVariable y = g.variable(s.x2.codomain());
  for (int rep = 0; rep < 2; ++rep) {
    PiecewiseLinear phi = g.convex_function();
    r.expect(phi.convex(), "generated function is not convex");
    RandomVariable py = apply(phi, y);
    auto e = s.event_form(y), ep = s.event_form(py);
    if (!e.null_condition) r.expect(phi(e.value) <= ep.value, "Jensen (event form)");
    auto c = s.object_form(y), cp = s.object_form(py);
    for (std::size_t x = 0; x < c.values.size(); ++x)
      if (sgn(c.reference.weight(x)) > 0) r.expect(phi(c(x)) <= cp(x), "Jensen (object form)");
  }
}

std::vector<TheoremCheck> build_checks() {
  auto ci = [](const Model& m, ModelGenerator& g, CheckResult& r) { check_ci_equivalences(m, g, r, false); };
  return {
      {"2.6.1", "co-occurrence measure via constraint lists", check_cooc_consistency},
      {"2.7.2", "pointwise conditional: full event and monotonicity", check_pointwise_properties},
      {"2.9.1", "pointwise conditional: defining equation and a.e. uniqueness", check_pointwise_defining},
      {"2.11.1", "conditional kernel: defining equation", check_kernel_defining},
      {"2.12.2", "conditional kernel: monotone in the target event", check_kernel_monotone},
      {"3.3", "fixing a target coordinate and shifting", check_fix_target},
      {"3.2", "conditioning shift round trip", check_bayes_shift},
      {"3.4", "two-step shift quotient", check_two_step_shift},
      {"3.5", "kernel times marginal rebuilds the joint", check_disintegration},
      {"3.6", "integrated conditional probability", check_scalar_composition},
      {"3.7", "kernel composition", check_kernel_composition},
      {"3.8", "independence propagation", check_independence_propagation},
      {"L3.9", "product kernel", check_kernel_product},
      {"3.9", "conditional independence equivalences", ci},
      {"4.1", "density round trip and canonicity", check_density_roundtrip},
      {"4.2", "marginal densities", check_density_marginal},
      {"4.2.1", "factorization iff independence", check_factorization},
      {"4.3", "kernel from density", check_density_kernel},
      {"4.4", "absolute continuity", check_absolute_continuity},
      {"4.7", "change of base", check_change_of_base},
      {"5.1", "indicator integral", check_indicator_integral},
      {"5.2", "conditional expectation given an event", check_event_expectation},
      {"5.4", "conditional expectation given an object", check_object_expectation},
      {"L5.4.1", "rectangle identity", check_rectangle_identity},
      {"6.1", "iterated decomposition", check_iterated},
      {"6.2", "additivity in a constraint", check_additivity},
      {"6.3", "shift identity for E-integrals", check_shift_identity},
      {"6.4", "independence transfer", check_independence_transfer},
      {"6.5", "linearity and monotonicity", check_linearity},
      {"6.6", "tower property", check_tower},
      {"6.7", "monotone convergence (event form)",
       [](const Model& m, ModelGenerator& g, CheckResult& r) { check_monotone(m, g, r, false); }},
      {"6.8", "monotone convergence (object form)",
       [](const Model& m, ModelGenerator& g, CheckResult& r) { check_monotone(m, g, r, true); }},
      {"6.9", "Fatou", check_fatou},
      {"6.10", "dominated convergence", check_dominated},
      {"6.11", "pull-out", check_pull_out},
      {"6.12", "Hoelder", check_holder},
      {"6.13", "Minkowski", check_minkowski},
      {"6.14", "Jensen", check_jensen},
  };
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

const std::vector<TheoremCheck>& theorem_checks() {
  static const std::vector<TheoremCheck> checks = build_checks();
  return checks;
}

SuiteReport run_suite(const std::vector<Model>& models, const SuiteOptions& opts) {
  const auto& all = theorem_checks();
  std::vector<const TheoremCheck*> chosen;
  if (opts.theorems.empty()) {
    for (const auto& c : all) chosen.push_back(&c);
  } else {
    for (const auto& id : opts.theorems) {
      auto it = std::find_if(all.begin(), all.end(), [&](const TheoremCheck& c) { return c.id == id; });
      if (it == all.end()) throw Error(ErrorCode::UnknownIndex, "unknown theorem id '" + id + "'");
      chosen.push_back(&*it);
    }
  }

  std::vector<Model> pool = models;
  ModelGenerator mg(opts.seed);
  ModelOptions mo;
  mo.coarse_field_chance = 0.3;
  for (std::size_t c = 0; c < opts.cases; ++c) pool.push_back(mg.model(mo));

  SuiteReport rep;
  for (const auto* c : chosen) {
    SuiteRow row{c->id, c->title, {}};
    for (std::size_t k = 0; k < pool.size(); ++k) {
      ModelGenerator g(opts.seed ^ fnv1a(c->id) ^ (k * 0x9e3779b97f4a7c15ull));
      c->run(pool[k], g, row.result);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace cooc
