#include "fixtures.hpp"
#include "scm_gen.hpp"

#include <doctest.h>

using namespace fx;

namespace {

struct Binary {
  FiniteSpace bit = make_space(2);
  std::map<std::size_t, FiniteSpace> one{{1, bit}};
  std::map<std::size_t, FiniteSpace> two{{1, bit}, {2, bit}};
  std::map<std::size_t, FiniteSpace> exo{{101, bit}};
  Measure law(const char* a, const char* b) const {
    return Measure(product_space(IndexSet{101}, {bit}), qs({a, b}), MeasureKind::Probability);
  }
  Scm one_var(const MechanismFn& f, const char* a = "1/2", const char* b = "1/2") const {
    return tabulate_scm(IndexSet{1}, IndexSet{101}, one, exo, law(a, b), f);
  }
  Scm two_var(const MechanismFn& f, const char* a = "1/2", const char* b = "1/2") const {
    return tabulate_scm(IndexSet{1, 2}, IndexSet{101}, two, exo, law(a, b), f);
  }
};

MechanismFn copy = [](const auto&, const auto& e) { return std::vector<std::size_t>{e[0]}; };
MechanismFn ident = [](const auto& x, const auto&) { return x; };
MechanismFn flip = [](const auto& x, const auto&) { return std::vector<std::size_t>{1 - x[0]}; };
MechanismFn chain = [](const auto& x, const auto& e) { return std::vector<std::size_t>{e[0], x[0]}; };

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::BadValue;
}

}  // namespace

TEST_CASE("solve") {
  Binary b;
  SolutionMap c = solve(b.one_var(copy));
  CHECK(c.solutions[0] == std::vector<std::size_t>{0});
  CHECK(c.solutions[1] == std::vector<std::size_t>{1});
  CHECK(solve(b.one_var(ident)).solutions[0].size() == 2);
  CHECK(solve(b.one_var(flip)).solutions[1].empty());
  SolutionMap z = solve(b.one_var(copy, "1", "0"));
  CHECK_FALSE(z.visited[1]);
}

TEST_CASE("observational distribution") {
  Binary b;
  CHECK(observational_distribution(b.one_var(copy)).weights() == qs({"1/2", "1/2"}));
  try {
    observational_distribution(b.one_var(ident));
    FAIL("expected NonUniqueSolution");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonUniqueSolution);
    CHECK(e.witness() == std::vector<std::size_t>{0});
  }
  CHECK(code_of([&] { observational_distribution(b.one_var(flip)); }) == ErrorCode::NoSolution);
  // zero-mass exogenous points are exempt
  MechanismFn half = [](const auto& x, const auto& e) { return e[0] == 0 ? std::vector<std::size_t>{0} : x; };
  CHECK(observational_distribution(b.one_var(half, "1", "0")).weights() == qs({"1", "0"}));

  // x1 = e, x2 = x1 xor e
  MechanismFn xr = [](const auto& x, const auto& e) { return std::vector<std::size_t>{e[0], x[0] ^ e[0]}; };
  Measure law = observational_distribution(b.two_var(xr, "1/3", "2/3"));
  const FiniteSpace& s = law.space();
  CHECK(law.weight(s.encode({0, 0})) == q("1/3"));
  CHECK(law.weight(s.encode({1, 0})) == q("2/3"));
  CHECK(law.total() == 1);
}

TEST_CASE("intervene") {
  Binary b;
  Scm m = intervene(b.one_var(copy), 1, 1);
  CHECK(observational_distribution(m).weights() == qs({"0", "1"}));
  Scm again = intervene(m, 1, 1);
  CHECK(again == m);
  CHECK(solve(again).solutions == solve(m).solutions);

  Scm c = intervene(b.two_var(chain, "1/4", "3/4"), 1, 1);
  Measure law = observational_distribution(c);
  CHECK(law.weight(law.space().encode({1, 1})) == 1);
  CHECK(code_of([&] { intervene(m, 7, 0); }) == ErrorCode::UnknownIndex);
  CHECK(code_of([&] { intervene(m, 1, 2); }) == ErrorCode::BadValue);
}

TEST_CASE("engine model bridge") {
  Binary b;
  EngineModel em = as_engine_model(b.one_var(copy, "1/3", "2/3"));
  const RandomObject& x1 = em.objects.at(1);
  CHECK(prob_cooc_objects(CoocQuery(em.p, {{x1, Event::singleton(x1.codomain(), 1)}})) == q("2/3"));
  CHECK(em.objects.count(101) == 1);

  EngineModel ch = as_engine_model(b.two_var(chain));
  CHECK_FALSE(check_cond_independence(ch.p, ci::ObjectsGivenEvent{{}, ch.objects.at(1), ch.objects.at(2), {}, {}})
                  .independent);

  Scm none = make_scm(IndexSet{}, IndexSet{101}, {}, b.exo, b.law("1/2", "1/2"), {0, 0});
  EngineModel ex = as_engine_model(none);
  CHECK(ex.objects.size() == 1);
  CHECK(pushforward(ex.p, ex.objects.at(101)).weights() == qs({"1/2", "1/2"}));
}

TEST_CASE("make_scm validation") {
  Binary b;
  CHECK(code_of([&] { make_scm(IndexSet{1}, IndexSet{1}, b.one, b.one, b.law("1/2", "1/2"), {}); }) ==
        ErrorCode::IndexOverlap);
  CHECK(code_of([&] { make_scm(IndexSet{1, 2}, IndexSet{101}, b.one, b.exo, b.law("1/2", "1/2"), {}); }) ==
        ErrorCode::IndexMismatch);
  CHECK(code_of([&] { make_scm(IndexSet{1}, IndexSet{101}, b.one, b.exo, b.law("1/2", "1/2"), {0}); }) ==
        ErrorCode::SpaceMismatch);
  CHECK(code_of([&] { make_scm(IndexSet{1}, IndexSet{101}, b.one, b.exo, b.law("1/2", "1/2"), {0, 0, 0, 5}); }) ==
        ErrorCode::BadValue);
}

TEST_CASE("random acyclic models: solutions are fixed points and unique") {
  ModelGenerator g(5);
  for (int k = 0; k < 100; ++k) {
    AcyclicScm a = random_acyclic(g);
    Scm m = a.build();
    SolutionMap s = solve(m);
    for (std::size_t e = 0; e < s.solutions.size(); ++e) {
      if (!s.visited[e]) continue;
      CHECK(s.solutions[e].size() == 1);
      for (std::size_t x : s.solutions[e])
        CHECK(a.f(m.endo_space.decode(x), m.exo_space.decode(e)) == m.endo_space.decode(x));
    }
    CHECK(observational_distribution(m).total() == 1);
    std::size_t i = m.endo.indices()[g.uniform(0, m.endo.size() - 1)];
    std::size_t v = g.uniform(0, m.endo_spaces.at(i).size() - 1);
    Scm once = intervene(m, i, v);
    Scm twice = intervene(once, i, v);
    for (std::size_t x = 0; x < m.endo_space.size(); ++x)
      for (std::size_t e = 0; e < m.exo_space.size(); ++e) CHECK(once.apply(x, e) == twice.apply(x, e));
  }
}
