#pragma once

#include "cooc/conditioning.hpp"

#include <vector>

namespace cooc {

struct RandomVariable {
  FiniteSpace space;
  std::vector<Rational> values;

  // Errors: SpaceMismatch on length mismatch.
  RandomVariable(FiniteSpace s, std::vector<Rational> v);

  const Rational& operator()(std::size_t w) const { return values[w]; }
};

struct EIntegralResult {
  Rational value;
  bool null_condition = false;
  Measure reference;
};

// sum_w Y(w) m(w).  Errors: SpaceMismatch.
EIntegralResult e_integral(const RandomVariable& y, const Measure& m);

// E_[Z, targets](Y | conditions).  Y lives on Z's codomain.  Errors: SpaceMismatch.
EIntegralResult cond_expectation_event(const RandomVariable& y, const CoocQuery& q, const RandomObject& z);

// E_[X2, target_conds](Y | X1, conds)(x) = sum_w Y(w) k(x, {w}),
// k = P[X2, target_conds | X1, conds].  Errors: SpaceMismatch.
PointwiseConditional cond_expectation_object(const Measure& p, const RandomVariable& y, const RandomObject& x1,
                                             const RandomObject& x2, const Event& cond,
                                             const Event& target_cond);
PointwiseConditional cond_expectation_object(const Measure& p, const RandomVariable& y, const RandomObject& x1,
                                             const RandomObject& x2, const Constraints& conds,
                                             const Constraints& target_conds);

struct IteratedResult {
  Rational nested;
  Rational direct;
  bool agrees() const { return nested == direct; }
};

// E_[X_1..X_n; A_{n+1}..A_{2n}](Y) computed two ways: by nesting conditional E-integrals from
// the innermost chain element outward, and directly against the joint co-occurrence measure.
// chain[j] is X_{j+1}; constraints[j] is the event list attached to it.  Y lives on the product
// of the chain codomains with coordinates 1..n.
// Errors: ChainMismatch.
IteratedResult iterated_decompose(const Measure& p, const RandomVariable& y, const std::vector<RandomObject>& chain,
                                  const std::vector<Constraints>& constraints);

// ---------------------------------------------------------------------------
// Piecewise-linear function: slopes[0] applies left of breakpoints[0], slopes[k] between
// breakpoints[k-1] and breakpoints[k], and so on; value at 0 fixed by `intercept`.

struct PiecewiseLinear {
  std::vector<Rational> breakpoints;
  std::vector<Rational> slopes;
  Rational intercept = 0;

  // Errors: BadValue unless slopes.size() == breakpoints.size() + 1 and breakpoints strictly increase.
  PiecewiseLinear(std::vector<Rational> breakpoints, std::vector<Rational> slopes, Rational intercept = 0);

  bool convex() const;
  Rational operator()(const Rational& x) const;
};

RandomVariable apply(const PiecewiseLinear& phi, const RandomVariable& y);

}  // namespace cooc
