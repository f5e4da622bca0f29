#include "fixtures.hpp"

#include <doctest.h>

using namespace fx;

namespace {

std::vector<Partition> all_partitions(const FiniteSpace& s) {
  std::vector<Partition> out;
  std::vector<std::size_t> rg(s.size(), 0);
  while (true) {
    std::size_t nb = *std::max_element(rg.begin(), rg.end()) + 1;
    std::vector<std::vector<std::size_t>> blocks(nb);
    for (std::size_t x = 0; x < rg.size(); ++x) blocks[rg[x]].push_back(x);
    out.emplace_back(s, blocks);
    // next restricted growth string
    std::size_t i = rg.size();
    while (i-- > 1) {
      std::size_t mx = *std::max_element(rg.begin(), rg.begin() + static_cast<std::ptrdiff_t>(i));
      if (rg[i] <= mx) {
        ++rg[i];
        std::fill(rg.begin() + static_cast<std::ptrdiff_t>(i) + 1, rg.end(), 0);
        break;
      }
    }
    if (i == 0 || i > rg.size()) break;
  }
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::BadValue;
}

}  // namespace

TEST_CASE("rationals parse exactly and reject decimals") {
  CHECK(to_string(parse_rational("2/4")) == "1/2");
  CHECK(to_string(parse_rational("-3")) == "-3");
  CHECK(code_of([] { parse_rational("0.5"); }) == ErrorCode::BadValue);
  CHECK(code_of([] { parse_rational("1/0"); }) == ErrorCode::BadValue);
  CHECK(to_decimal(q("1/3"), 3) == "0.333");
  CHECK(to_decimal(q("-1/2"), 0) == "-1");
  CHECK(to_decimal(q("2/3"), 2) == "0.67");
}

TEST_CASE("make_space") {
  CHECK(make_space(4, {"a", "b", "c", "d"}).size() == 4);
  CHECK(make_space(1).size() == 1);
  CHECK(code_of([] { make_space(4, {"a", "a", "c", "d"}); }) == ErrorCode::DuplicateLabel);
  CHECK(code_of([] { make_space(0); }) == ErrorCode::ZeroSize);
}

TEST_CASE("index sets") {
  IndexSet a{1, 2}, b{3};
  CHECK(a.plus(b) == IndexSet{1, 2, 3});
  CHECK(code_of([&] { a.plus(IndexSet{2}); }) == ErrorCode::IndexOverlap);
  CHECK(code_of([] { IndexSet{1, 1}; }) == ErrorCode::BadValue);
  CHECK(a.minus(IndexSet{1}) == IndexSet{2});
}

TEST_CASE("refines") {
  FiniteSpace s = make_space(4);
  Partition pairs(s, {{0, 1}, {2, 3}}), cross(s, {{0, 2}, {1, 3}});
  CHECK(refines(Partition::discrete(s), pairs));
  CHECK(refines(pairs, pairs));
  CHECK_FALSE(refines(pairs, cross));
  CHECK(code_of([&] { refines(pairs, Partition::discrete(make_space(3))); }) == ErrorCode::SpaceMismatch);
}

TEST_CASE("refines is a partial order on small spaces") {
  for (std::size_t n = 1; n <= 6; ++n) {
    FiniteSpace s = make_space(n);
    auto ps = all_partitions(s);
    for (const auto& p : ps) {
      CHECK(refines(p, p));
      for (const auto& q : ps)
        if (refines(p, q) && refines(q, p)) CHECK(p == q);
    }
    if (n <= 4)
      for (const auto& a : ps)
        for (const auto& b : ps)
          for (const auto& c : ps)
            if (refines(a, b) && refines(b, c)) CHECK(refines(a, c));
  }
  CHECK(all_partitions(make_space(4)).size() == 15);
}

TEST_CASE("pushforward on M0") {
  M0 m;
  CHECK(pushforward(m.p, m.x1).weights() == qs({"1/2", "1/2"}));
  CHECK(pushforward(m.p, identity(m.omega)) == m.p);
  CHECK(pushforward(Measure::point_mass(m.omega, 3), m.x2).weights() == qs({"0", "1"}));
  CHECK(code_of([&] { pushforward(Measure::uniform(make_space(3)), m.x1); }) == ErrorCode::SpaceMismatch);
}

TEST_CASE("measure validation") {
  FiniteSpace s = make_space(2);
  CHECK(code_of([&] { Measure(s, qs({"1/2", "1/4"}), MeasureKind::Probability); }) == ErrorCode::BadValue);
  CHECK(code_of([&] { Measure(s, qs({"-1", "2"}), MeasureKind::Finite); }) == ErrorCode::BadValue);
  CHECK(code_of([&] { Measure(s, qs({"1"}), MeasureKind::Finite); }) == ErrorCode::SpaceMismatch);
}

TEST_CASE("bundle on M0") {
  M0 m;
  RandomObject b = bundle(m.family(), IndexSet{1, 2});
  std::vector<std::string> got;
  for (std::size_t w = 0; w < 4; ++w) got.push_back(b.codomain().label(b(w)));
  CHECK(got == std::vector<std::string>{"(e,lo)", "(o,lo)", "(e,hi)", "(o,hi)"});

  RandomObject one = bundle(m.family(), IndexSet{1});
  CHECK(one.codomain().size() == 2);
  CHECK(one.map() == m.x1.map());

  RandomObject other(make_space(2), m.parity, {0, 1});
  CHECK(code_of([&] { bundle({{1, m.x1}, {2, other}}, IndexSet{1, 2}); }) == ErrorCode::DomainMismatch);
  CHECK(code_of([&] { bundle(m.family(), IndexSet{}); }) == ErrorCode::EmptyIndexSet);
  CHECK(code_of([&] { bundle(m.family(), IndexSet{1, 2}, 3); }) == ErrorCode::ProductTooLarge);
}

TEST_CASE("coarsen") {
  M0 m;
  CHECK(coarsen(m.x1, Partition::discrete(m.parity)) == m.x1);
  Partition g(m.omega, {{0, 1}, {2, 3}});
  RandomObject ig = coarsen(identity(m.omega), g);
  CHECK(ig == identity(g));
  CHECK(ig.codomain_field() == g);
  CHECK(code_of([&] { coarsen(m.x1, Partition::discrete(m.omega)); }) == ErrorCode::SpaceMismatch);
}

TEST_CASE("events") {
  M0 m;
  CHECK(code_of([&] { Event(m.omega, std::vector<std::size_t>{4}); }) == ErrorCode::BadValue);
  Event a = ev(m.omega, {0, 2});
  CHECK(a.complement() == ev(m.omega, {1, 3}));
  CHECK(a.measurable(Partition(m.omega, {{0, 2}, {1, 3}})));
  CHECK_FALSE(a.measurable(Partition(m.omega, {{0, 1}, {2, 3}})));
}

TEST_CASE("random objects must be measurable") {
  FiniteSpace s = make_space(4), t = make_space(2);
  Partition coarse(s, {{0, 1}, {2, 3}});
  CHECK(code_of([&] { RandomObject(coarse, Partition::discrete(t), {0, 1, 0, 1}); }) == ErrorCode::BadPartition);
  RandomObject ok(coarse, Partition::discrete(t), {0, 0, 1, 1});
  CHECK(ok(2) == 1);
}

TEST_CASE("space invariants on random models") {
  ModelGenerator g(11);
  for (int k = 0; k < 200; ++k) {
    Model m = g.model();
    const RandomObject& f = m.objects[g.uniform(0, m.objects.size() - 1)];
    // mass preservation, both kinds
    CHECK(pushforward(m.p, f).total() == 1);
    Measure fin = g.base(m.omega, 0.3);
    CHECK(pushforward(fin, f).total() == fin.total());
    // functoriality
    FiniteSpace t = g.space(2, 4);
    std::vector<std::size_t> map;
    for (std::size_t y = 0; y < f.codomain().size(); ++y) map.push_back(g.uniform(0, t.size() - 1));
    RandomObject h(f.codomain(), t, map);
    CHECK(pushforward(m.p, compose(f, h)) == pushforward(pushforward(m.p, f), h));
    // bundle then project
    ObjectFamily fam;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m.objects.size(); ++i) {
      fam.emplace(i + 1, m.objects[i]);
      idx.push_back(i + 1);
    }
    RandomObject b = bundle(fam, IndexSet(idx));
    for (std::size_t i : idx) {
      RandomObject back = compose(b, projection(b.codomain(), i));
      CHECK(back.map() == fam.at(i).map());
    }
  }
}
