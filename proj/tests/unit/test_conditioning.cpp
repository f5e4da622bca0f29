#include "fixtures.hpp"

#include <doctest.h>

using namespace fx;

TEST_CASE("pointwise conditional on M0") {
  M0 m;
  auto pc = cond_prob_pointwise(m.p, m.x3, m.x2.preimage(m.hi), m.all);
  CHECK(pc.values == qs({"0", "0", "1", "1"}));
  CHECK_FALSE(pc.null_condition);

  auto full = cond_prob_pointwise(m.p, m.x1, m.x2.preimage(Event::full(m.high)), m.all);
  CHECK(full.values == qs({"1", "1"}));
}

TEST_CASE("pointwise conditional is constant on blocks of a coarse field") {
  M0 m;
  RandomObject ig = coarsen(m.x3, Partition(m.omega, {{0, 1}, {2, 3}}));
  auto pc = cond_prob_pointwise(m.p, ig, ev(m.omega, {0, 2}), m.all);
  CHECK(pc.values == qs({"1/2", "1/2", "1/2", "1/2"}));
}

TEST_CASE("null conditions give zero with the flag") {
  M0 m;
  auto pc = cond_prob_pointwise(m.p, m.x1, m.all, Event::empty(m.omega));
  CHECK(pc.null_condition);
  CHECK(pc.values == qs({"0", "0"}));
  Kernel k = cond_kernel(m.p, m.x1, m.x2, Event::empty(m.omega), m.all);
  CHECK(k.null_condition);
  CHECK(k.support().empty());
}

TEST_CASE("kernels on M0") {
  M0 m;
  Kernel k = cond_kernel(m.p, m.x1, m.x2, m.all, m.all);
  CHECK(k.rows[0] == qs({"1/2", "1/2"}));
  CHECK(k.rows[1] == qs({"1/2", "1/2"}));

  Kernel self = cond_kernel(m.p, m.x2, m.x2, m.all, m.all);
  for (std::size_t y = 0; y < 2; ++y)
    for (std::size_t b = 0; b < 2; ++b) CHECK(self.apply(y, Event::singleton(m.high, b)) == (y == b ? 1 : 0));
}

TEST_CASE("kernel_fix_target") {
  M0 m;
  RandomObject x12 = bundle(m.family(), IndexSet{1, 2});
  Kernel joint = cond_kernel(m.p, m.x3, x12, m.all, m.all);

  Kernel fixed = kernel_fix_target(joint, 2, m.hi);
  CHECK(fixed.target.size() == 2);
  for (std::size_t w = 0; w < 4; ++w) {
    std::vector<Rational> expect(2, 0);
    if (w >= 2) expect[m.x1(w)] = 1;
    CHECK(fixed.rows[w] == expect);
  }
  Kernel marg = kernel_fix_target(joint, 2, Event::full(m.high));
  CHECK(ae_equal(marg, cond_kernel(m.p, m.x3, bundle(m.family(), IndexSet{1}), m.all, m.all)));
  Kernel none = kernel_fix_target(joint, 2, Event::empty(m.high));
  for (const auto& row : none.rows) CHECK(row == qs({"0", "0"}));
  CHECK_THROWS_AS(kernel_fix_target(joint, 5, m.hi), Error);
  CHECK_THROWS_AS(kernel_fix_target(cond_kernel(m.p, m.x1, m.x2, m.all, m.all), 1, m.hi), Error);
}

TEST_CASE("bayes_shift") {
  M0 m;
  Kernel k = cond_kernel(m.p, m.x1, m.x1, m.all, m.x2.preimage(m.hi));
  auto p3 = cond_prob_pointwise(m.p, m.x1, m.x2.preimage(m.hi), m.all);
  Kernel shifted = bayes_shift(k, p3);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) CHECK(shifted.rows[x][y] == 2 * k.rows[x][y]);

  auto one = cond_prob_pointwise(m.p, m.x1, m.all, m.all);
  CHECK(ae_equal(bayes_shift(k, one), k));
  CHECK(ae_equal(kernel_scale(shifted, p3), k));
}

TEST_CASE("disintegrate_check") {
  M0 m;
  Kernel k = cond_kernel(m.p, m.x1, m.x2, m.all, m.all);
  Measure joint = disintegrate_check(k, pushforward(m.p, m.x1));
  CHECK(joint.weights() == pushforward(m.p, bundle(m.family(), IndexSet{1, 2})).weights());
  CHECK(disintegrate_check(k, Measure::zero(m.parity)).is_zero());
}

TEST_CASE("kernel_product") {
  M0 m;
  Kernel k1 = cond_kernel(m.p, m.x3, m.x1, m.all, m.all);
  Kernel k2 = cond_kernel(m.p, m.x3, m.x2, m.all, m.all);
  Kernel prod = kernel_product(k1, k2);
  Kernel joint = cond_kernel(m.p, m.x3, bundle(m.family(), IndexSet{1, 2}), m.all, m.all);
  CHECK(prod.rows == joint.rows);

  // point-mass first factor transports the second
  Kernel k3 = cond_kernel(m.p, m.x1, m.x2, m.all, m.all);
  Kernel pm = cond_kernel(m.p, m.x1, m.x1, m.all, m.all);
  Kernel t = kernel_product(pm, k3);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t pt = 0; pt < t.target.size(); ++pt) {
      auto tup = t.target.decode(pt);
      CHECK(t.rows[x][pt] == (tup[0] == x ? k3.rows[x][tup[1]] : Rational(0)));
    }
}

TEST_CASE("conditional independence on M0") {
  M0 m;
  CHECK(check_cond_independence(m.p, ci::ObjectsGivenEvent{{}, m.x1, m.x2, {}, {}}).independent);
  CHECK_FALSE(check_cond_independence(m.p, ci::ObjectsGivenEvent{{}, m.x2, m.x3, {}, {}}).independent);
  RandomObject constant(m.omega, make_space(1), {0, 0, 0, 0});
  CHECK(check_cond_independence(m.p, ci::ObjectsGivenEvent{{}, m.x3, constant, {}, {}}).independent);
  // independent given a point
  CHECK(check_cond_independence(m.p, ci::ObjectsGivenObject{m.x3, m.x1, m.x2, {}, {}, {}}).independent);
  auto nul = check_cond_independence(m.p, ci::ObjectsGivenEvent{{{m.x2, Event::empty(m.high)}}, m.x2, m.x3, {}, {}});
  CHECK(nul.independent);
  CHECK(nul.null_condition);
}

TEST_CASE("ae_equal ignores null points only") {
  FiniteSpace s = make_space(3);
  Measure ref(s, qs({"1/2", "0", "1/2"}), MeasureKind::Finite);
  CHECK(ae_equal(qs({"1", "5", "2"}), qs({"1", "7", "2"}), ref));
  CHECK_FALSE(ae_equal(qs({"1", "5", "2"}), qs({"1", "5", "3"}), ref));
}
