#include "fixtures.hpp"

#include <doctest.h>

using namespace fx;

TEST_CASE("e_integral") {
  M0 m;
  CHECK(e_integral(m.y, pushforward(m.p, m.x2)).value == q("1/2"));
  CHECK(e_integral(m.y, cooc_measure(CoocQuery(m.p, {{m.x1, m.even}}), m.x2)).value == q("1/4"));
  CHECK(e_integral(m.y, Measure::zero(m.high)).value == 0);
  CHECK_THROWS_AS(e_integral(m.y, pushforward(m.p, m.x1)), Error);
}

TEST_CASE("E-integral given events") {
  M0 m;
  auto r = cond_expectation_event(m.y, CoocQuery(m.p, {}, {{m.x1, m.even}}), m.x2);
  CHECK(r.value == q("1/2"));
  CHECK_FALSE(r.null_condition);
  CHECK(cond_expectation_event(m.y, CoocQuery(m.p, {}, {{m.x1, Event::full(m.parity)}}), m.x2).value ==
        e_integral(m.y, pushforward(m.p, m.x2)).value);
  auto n = cond_expectation_event(m.y, CoocQuery(m.p, {}, {{m.x1, Event::empty(m.parity)}}), m.x2);
  CHECK(n.value == 0);
  CHECK(n.null_condition);
}

TEST_CASE("E-integral given an object") {
  M0 m;
  auto r = cond_expectation_object(m.p, m.y, m.x1, m.x2, m.all, m.all);
  CHECK(r.values == qs({"1/2", "1/2"}));
  // Y itself when conditioning on X2
  auto self = cond_expectation_object(m.p, m.y, m.x2, m.x2, m.all, m.all);
  CHECK(self.values == m.y.values);
  // trivial field: the constant E(Y)
  auto triv = cond_expectation_object(m.p, m.y, identity(Partition::trivial(m.omega)), m.x2, m.all, m.all);
  CHECK(triv.values == qs({"1/2", "1/2", "1/2", "1/2"}));
}

TEST_CASE("iterated decomposition") {
  M0 m;
  FiniteSpace prod = bundle(m.family(), IndexSet{1, 2}).codomain();
  std::vector<Rational> ind(prod.size(), 0);
  ind[prod.encode({0, 1})] = 1;  // (e, hi)
  RandomVariable y(prod, ind);
  auto r = iterated_decompose(m.p, y, {m.x1, m.x2}, {{}, {}});
  CHECK(r.nested == q("1/4"));
  CHECK(r.direct == q("1/4"));

  RandomVariable c(prod, std::vector<Rational>(prod.size(), Rational(3)));
  auto rc = iterated_decompose(m.p, c, {m.x1, m.x2}, {{{m.x1, m.even}}, {{m.x2, m.hi}}});
  CHECK(rc.nested == q("3/4"));
  CHECK(rc.agrees());

  CHECK_THROWS_AS(iterated_decompose(m.p, y, {m.x1}, {{}}), Error);
  CHECK_THROWS_AS(iterated_decompose(m.p, y, {m.x1, m.x2}, {{}}), Error);
  CHECK_THROWS_AS(iterated_decompose(m.p, m.y, {m.x1, m.x2}, {{}, {}}), Error);
}

TEST_CASE("nesting collapses for independent chains") {
  // Y = Y1(w1) Y2(w2) with independent X1, X2
  M0 m;
  FiniteSpace prod = bundle(m.family(), IndexSet{1, 2}).codomain();
  std::vector<Rational> y1 = qs({"3", "-1"}), y2 = qs({"1/2", "5"});
  std::vector<Rational> v(prod.size());
  for (std::size_t pt = 0; pt < prod.size(); ++pt) {
    auto t = prod.decode(pt);
    v[pt] = y1[t[0]] * y2[t[1]];
  }
  auto r = iterated_decompose(m.p, RandomVariable(prod, v), {m.x1, m.x2}, {{}, {}});
  Rational e1 = e_integral(RandomVariable(m.parity, y1), pushforward(m.p, m.x1)).value;
  Rational e2 = e_integral(RandomVariable(m.high, y2), pushforward(m.p, m.x2)).value;
  CHECK(r.nested == e1 * e2);
  CHECK(r.direct == e1 * e2);
}

TEST_CASE("piecewise-linear functions") {
  PiecewiseLinear phi({q("0"), q("2")}, qs({"-1", "0", "3"}), q("1"));
  CHECK(phi.convex());
  CHECK(phi(q("-2")) == 3);
  CHECK(phi(q("1")) == 1);
  CHECK(phi(q("3")) == 4);
  CHECK_FALSE(PiecewiseLinear({q("0")}, qs({"1", "0"}), q("0")).convex());
  CHECK_THROWS_AS(PiecewiseLinear({q("1"), q("0")}, qs({"0", "1", "2"}), q("0")), Error);
  CHECK_THROWS_AS(PiecewiseLinear({q("0")}, qs({"1"}), q("0")), Error);
}
