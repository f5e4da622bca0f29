#pragma once

#include "cooc/suite.hpp"

namespace fx {

using namespace cooc;

inline Rational q(const char* s) { return parse_rational(s); }

inline std::vector<Rational> qs(std::initializer_list<const char*> xs) {
  std::vector<Rational> r;
  for (const char* x : xs) r.push_back(parse_rational(x));
  return r;
}

// Omega = {0,1,2,3} uniform; X1 = parity -> {e,o}; X2 = high bit -> {lo,hi}.
struct M0 {
  FiniteSpace omega = make_space(4);
  FiniteSpace parity = make_space(2, {"e", "o"});
  FiniteSpace high = make_space(2, {"lo", "hi"});
  Measure p = Measure::uniform(omega);
  RandomObject x1{omega, parity, {0, 1, 0, 1}};
  RandomObject x2{omega, high, {0, 0, 1, 1}};
  RandomObject x3 = identity(omega);
  RandomVariable y{high, {Rational(0), Rational(1)}};
  Event even = Event(parity, std::vector<std::size_t>{0});
  Event hi = Event(high, std::vector<std::size_t>{1});
  Event all = Event::full(omega);

  ObjectFamily family() const { return {{1, x1}, {2, x2}}; }
};

// Two-point uniform space with X1 = X2 = identity.
struct Diagonal {
  FiniteSpace omega = make_space(2);
  Measure p = Measure::uniform(omega);
  RandomObject x1 = identity(omega);
  RandomObject x2 = identity(omega);

  ObjectFamily family() const { return {{1, x1}, {2, x2}}; }
};

inline Event ev(const FiniteSpace& s, std::vector<std::size_t> m) { return Event(s, m); }

}  // namespace fx
