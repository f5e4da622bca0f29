#include "fixtures.hpp"

#include <doctest.h>

using namespace fx;

TEST_CASE("density against marginals") {
  M0 m;
  Density f = density_wrt_marginals(m.p, m.family(), IndexSet{1, 2});
  CHECK(f.values == qs({"1", "1", "1", "1"}));
  CHECK(f.kind == BaseKind::Marginals);

  Diagonal d;
  Density g = density_wrt_marginals(d.p, d.family(), IndexSet{1, 2});
  CHECK(g.values == qs({"2", "0", "0", "2"}));

  Density pm = density_wrt_marginals(Measure::point_mass(m.omega, 1), m.family(), IndexSet{1, 2});
  CHECK(pm.values == qs({"0", "0", "1", "0"}));
}

TEST_CASE("density against given bases") {
  M0 m;
  BaseFamily counting{{1, Measure::counting(m.parity)}, {2, Measure::counting(m.high)}};
  Density c = density_wrt_base(m.p, m.family(), IndexSet{1, 2}, counting);
  CHECK(c.values == qs({"1/4", "1/4", "1/4", "1/4"}));
  CHECK(c.kind == BaseKind::Bases);

  BaseFamily marg{{1, pushforward(m.p, m.x1)}, {2, pushforward(m.p, m.x2)}};
  CHECK(density_wrt_base(m.p, m.family(), IndexSet{1, 2}, marg).values ==
        density_wrt_marginals(m.p, m.family(), IndexSet{1, 2}).values);

  BaseFamily bad{{1, Measure(m.parity, qs({"1", "0"}), MeasureKind::Base)}};
  try {
    density_wrt_base(m.p, m.family(), IndexSet{1}, bad);
    FAIL("expected NotAbsolutelyContinuous");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAbsolutelyContinuous);
    CHECK(e.witness() == std::vector<std::size_t>{1});
  }
  CHECK_THROWS_AS(density_wrt_base(m.p, m.family(), IndexSet{1, 2}, bad), Error);
}

TEST_CASE("marginal densities") {
  M0 m;
  Density f = density_wrt_marginals(m.p, m.family(), IndexSet{1, 2});
  CHECK(marginal_density(f, IndexSet{1, 2}).values == f.values);
  CHECK(marginal_density(f, IndexSet{1}).values == qs({"1", "1"}));
  Diagonal d;
  Density g = density_wrt_marginals(d.p, d.family(), IndexSet{1, 2});
  CHECK(marginal_density(g, IndexSet{1}).values == qs({"1", "1"}));
  CHECK_THROWS_AS(marginal_density(g, IndexSet{3}), Error);
  CHECK_THROWS_AS(marginal_density(g, IndexSet{}), Error);
}

TEST_CASE("kernel from density") {
  M0 m;
  Kernel k = kernel_from_density(density_wrt_marginals(m.p, m.family(), IndexSet{1, 2}), IndexSet{1}, IndexSet{2});
  for (const auto& row : k.rows) CHECK(row == qs({"1/2", "1/2"}));
  Diagonal d;
  Kernel kd = kernel_from_density(density_wrt_marginals(d.p, d.family(), IndexSet{1, 2}), IndexSet{1}, IndexSet{2});
  CHECK(kd.rows[0] == qs({"1", "0"}));
  CHECK(kd.rows[1] == qs({"0", "1"}));
  // a reference-null source point yields a zero row
  FiniteSpace s = make_space(2);
  Measure pt = Measure::point_mass(s, 0);
  Kernel kz = kernel_from_density(density_wrt_marginals(pt, d.family(), IndexSet{1, 2}), IndexSet{1}, IndexSet{2});
  CHECK(kz.rows[1] == qs({"0", "0"}));
  CHECK_THROWS_AS(kernel_from_density(density_wrt_marginals(d.p, d.family(), IndexSet{1, 2}), IndexSet{1},
                                      IndexSet{1}),
                  Error);
}

TEST_CASE("factorization") {
  M0 m;
  auto parts = factorize_if_independent(density_wrt_marginals(m.p, m.family(), IndexSet{1, 2}),
                                        {IndexSet{1}, IndexSet{2}});
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].values == qs({"1", "1"}));
  CHECK(parts[1].values == qs({"1", "1"}));

  Diagonal d;
  Density g = density_wrt_marginals(d.p, d.family(), IndexSet{1, 2});
  try {
    factorize_if_independent(g, {IndexSet{1}, IndexSet{2}});
    FAIL("expected NotFactorizable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFactorizable);
    CHECK(e.witness() == std::vector<std::size_t>{0, 1});
  }
  CHECK(factorize_if_independent(g, {IndexSet{1, 2}}).size() == 1);
  CHECK_THROWS_AS(factorize_if_independent(g, {IndexSet{1}}), Error);
}

TEST_CASE("change of base") {
  M0 m;
  Density fp = density_wrt_marginals(m.p, m.family(), IndexSet{1, 2});
  std::map<std::size_t, Density> same{{1, density_wrt_base(m.p, m.family(), IndexSet{1}, {{1, pushforward(m.p, m.x1)}})},
                                      {2, density_wrt_base(m.p, m.family(), IndexSet{2}, {{2, pushforward(m.p, m.x2)}})}};
  CHECK(change_of_base(fp, same).values == fp.values);

  std::map<std::size_t, Density> counting{
      {1, density_wrt_base(m.p, m.family(), IndexSet{1}, {{1, Measure::counting(m.parity)}})},
      {2, density_wrt_base(m.p, m.family(), IndexSet{2}, {{2, Measure::counting(m.high)}})}};
  Density out = change_of_base(fp, counting);
  CHECK(out.values == qs({"1/4", "1/4", "1/4", "1/4"}));
  CHECK(out.law().weights() == pushforward(m.p, bundle(m.family(), IndexSet{1, 2})).weights());
  CHECK_THROWS_AS(change_of_base(fp, {{1, counting.at(1)}}), Error);
}
