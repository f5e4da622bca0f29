#include "fixtures.hpp"

#include <doctest.h>

using namespace fx;

TEST_CASE("prob_cooc") {
  M0 m;
  CHECK(prob_cooc(m.p, {ev(m.omega, {0, 2}), ev(m.omega, {2, 3})}) == q("1/4"));
  CHECK(prob_cooc(m.p, {m.all, m.all}) == 1);
  CHECK(prob_cooc(m.p, {ev(m.omega, {0}), ev(m.omega, {1})}) == 0);
  CHECK(prob_cooc(m.p, {}) == 1);
}

TEST_CASE("cond_prob_cooc") {
  M0 m;
  auto v = cond_prob_cooc(m.p, {ev(m.omega, {0, 2})}, {ev(m.omega, {2, 3})});
  CHECK(v.value == q("1/2"));
  CHECK_FALSE(v.null_condition);
  Event a = ev(m.omega, {1, 2, 3});
  CHECK(cond_prob_cooc(m.p, {a}, {m.all}).value == m.p.of(a));
  auto n = cond_prob_cooc(m.p, {a}, {ev(m.omega, {0}), ev(m.omega, {1})});
  CHECK(n.value == 0);
  CHECK(n.null_condition);
}

TEST_CASE("object constraints") {
  M0 m;
  CHECK(prob_cooc_objects(CoocQuery(m.p, {{m.x1, m.even}, {m.x2, m.hi}})) == q("1/4"));
  CHECK(prob_cooc_objects(CoocQuery(m.p, {{m.x1, Event::full(m.parity)}})) == 1);
  CHECK(prob_cooc_objects(CoocQuery(m.p, {{m.x1, m.even}, {m.x1, m.even.complement()}})) == 0);

  auto c = cond_prob_objects(CoocQuery(m.p, {{m.x1, m.even}}, {{m.x2, m.hi}}));
  CHECK(c.value == q("1/2"));
  // X1 and X2 independent in M0
  CHECK(c.value == prob_cooc_objects(CoocQuery(m.p, {{m.x1, m.even}})));
  auto n = cond_prob_objects(CoocQuery(m.p, {{m.x1, m.even}}, {{m.x2, Event::empty(m.high)}}));
  CHECK(n.value == 0);
  CHECK(n.null_condition);
}

TEST_CASE("co-occurrence measures") {
  M0 m;
  CHECK(cooc_measure(CoocQuery(m.p, {{m.x1, m.even}}), m.x2).weights() == qs({"1/4", "1/4"}));
  CHECK(cooc_measure(CoocQuery(m.p, {{m.x1, Event::full(m.parity)}, {m.x2, Event::full(m.high)}}), m.x3) ==
        pushforward(m.p, m.x3));
  CHECK(cooc_measure(CoocQuery(m.p, {{m.x2, Event::empty(m.high)}}), m.x1).is_zero());

  auto c = cond_cooc_measure(CoocQuery(m.p, {}, {{m.x1, m.even}}), m.x2);
  CHECK(c.measure.weights() == qs({"1/2", "1/2"}));
  CHECK(c.measure.total() == 1);
  CHECK(cond_cooc_measure(CoocQuery(m.p, {}, {{m.x2, m.hi}}), m.x1).measure.weights() ==
        pushforward(m.p, m.x1).weights());
  auto n = cond_cooc_measure(CoocQuery(m.p, {}, {{m.x2, Event::empty(m.high)}}), m.x1);
  CHECK(n.null_condition);
  CHECK(n.measure.is_zero());
}

TEST_CASE("query validation") {
  M0 m;
  RandomObject elsewhere(make_space(2), m.parity, {0, 1});
  CHECK_THROWS_AS(CoocQuery(m.p, {{elsewhere, m.even}}), Error);
  CHECK_THROWS_AS(Constraint(m.x1, m.hi), Error);
  RandomObject coarse = coarsen(m.x3, Partition(m.omega, {{0, 1}, {2, 3}}));
  try {
    Constraint(coarse, ev(m.omega, {0}));
    FAIL("non-measurable constraint accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadValue);
  }
  CHECK_THROWS_AS(cooc_measure(CoocQuery(m.p, {}, {{m.x1, m.even}}), m.x2), Error);
}
