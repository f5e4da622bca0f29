#include "fixtures.hpp"

#include <doctest.h>

using namespace fx;

namespace {

Model m0_model() {
  M0 m;
  return Model{m.omega, m.p, {m.x1, m.x2}};
}

}  // namespace

TEST_CASE("every theorem check passes on M0 and random models") {
  SuiteOptions opts;
  opts.cases = 60;
  opts.seed = 2024;
  SuiteReport rep = run_suite({m0_model()}, opts);
  CHECK(rep.rows.size() == theorem_checks().size());
  for (const auto& row : rep.rows) {
    INFO(row.id << " " << row.title << ": " << row.result.first_failure);
    CHECK(row.result.cases > 0);
    CHECK(row.result.failures == 0);
  }
}

TEST_CASE("theorem filter and determinism") {
  SuiteOptions opts;
  opts.theorems = {"6.6"};
  opts.cases = 100;
  opts.seed = 7;
  SuiteReport a = run_suite({m0_model()}, opts);
  SuiteReport b = run_suite({m0_model()}, opts);
  REQUIRE(a.rows.size() == 1);
  CHECK(a.rows[0].id == "6.6");
  CHECK(a.rows[0].result.cases == b.rows[0].result.cases);
  CHECK(a.ok());
  opts.theorems = {"9.9"};
  CHECK_THROWS_AS(run_suite({m0_model()}, opts), Error);
}

TEST_CASE("checks detect a wrong conditional") {
  // A negative control: the defining equation rejects a perturbed solution on a positive point.
  M0 m;
  auto pc = cond_prob_pointwise(m.p, m.x1, m.x2.preimage(m.hi), m.all);
  std::vector<Rational> bad = pc.values;
  bad[0] += q("1/8");
  CHECK_FALSE(ae_equal(pc.values, bad, pc.reference));
}
