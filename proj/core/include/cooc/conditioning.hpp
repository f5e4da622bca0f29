#pragma once

#include "cooc/cooccurrence.hpp"

#include <variant>
#include <vector>

namespace cooc {

// A function on `source`, defined a.e. with respect to `reference`.
// Values at reference-null points are 0.
struct PointwiseConditional {
  FiniteSpace source;
  std::vector<Rational> values;
  Measure reference;
  bool null_condition = false;

  const Rational& operator()(std::size_t x) const { return values[x]; }
};

// Equality on reference-positive points of a.reference.  Errors: SpaceMismatch.
bool ae_equal(const PointwiseConditional& a, const PointwiseConditional& b);
bool ae_equal(const std::vector<Rational>& a, const std::vector<Rational>& b, const Measure& reference);

// K(x, .) for every source point x.  Rows at reference-null points are the zero measure.
struct Kernel {
  FiniteSpace source;
  FiniteSpace target;
  std::vector<std::vector<Rational>> rows;
  Measure reference;
  bool null_condition = false;

  std::vector<std::size_t> support() const;
  Rational apply(std::size_t x, const Event& target_event) const;
  Rational row_total(std::size_t x) const;
};

// Rows compared on reference-positive points of a.reference.
bool ae_equal(const Kernel& a, const Kernel& b);

// ---------------------------------------------------------------------------
// Conditionals given a random object.  Values are constant on blocks of the conditioning
// object's codomain field:
//   value(x) = P(targets, conds, X in block(x)) / P(conds, X in block(x)).
// The reference is P[X; conds].

PointwiseConditional cond_prob_pointwise(const Measure& p, const RandomObject& x, const Event& target,
                                         const Event& cond);
PointwiseConditional cond_prob_pointwise(const Measure& p, const RandomObject& x,
                                         const Constraints& targets, const Constraints& conds);

// P[X3, target_cond | X1, cond](x, .).
Kernel cond_kernel(const Measure& p, const RandomObject& x1, const RandomObject& x3, const Event& cond,
                   const Event& target_cond);
Kernel cond_kernel(const Measure& p, const RandomObject& x1, const RandomObject& x3,
                   const Constraints& conds, const Constraints& target_conds);

// ---------------------------------------------------------------------------
// Transformations

// row'(A2) = row(A2 x A3), A3 on the factor with the given index.  The remaining coordinates
// form the new target.  Errors: CoordinateMismatch.
Kernel kernel_fix_target(const Kernel& k, std::size_t index, const Event& a3);

// Divides rows by p3 where p3 > 0; zero rows elsewhere.  Errors: SpaceMismatch.
Kernel bayes_shift(const Kernel& k_joint, const PointwiseConditional& p3);

// Multiplies rows by p pointwise; the inverse of bayes_shift on {p > 0}.  Errors: SpaceMismatch.
Kernel kernel_scale(const Kernel& k, const PointwiseConditional& p);

// value(x, y) = k(x, {y}) * marginal(x), on the product {1: source, 2: target}.
// Errors: SpaceMismatch.
Measure disintegrate_check(const Kernel& k, const Measure& marginal);

// Composition: outer from S to T2, inner from the product S x T2 (two factors) to T3.
// result(x; y2, y3) = outer(x, y2) * inner((x, y2), y3), target the product {i2: T2, i3: T3}.
// Errors: SpaceMismatch.
Kernel compose_kernels(const Kernel& outer, const Kernel& inner, std::size_t i2 = 1, std::size_t i3 = 2);

// K(x, A2 x A3) = K2(x, A2) * K3(x, A3), target the product {i2: T2, i3: T3}.
// Errors: SpaceMismatch, ProductTooLarge.
Kernel kernel_product(const Kernel& k2, const Kernel& k3, std::size_t i2 = 1, std::size_t i3 = 2,
                      std::size_t cap = kDefaultProductCap);

// ---------------------------------------------------------------------------
// Conditional independence: the six product identities.  Empty constraint lists mean the
// sure event.

namespace ci {
// P[A2, A3 | A1] = P[A2 | A1] P[A3 | A1]
struct EventsGivenEvent {
  Constraints a1, a2, a3;
};
// P[X2; A3, A4 | A1] = P[A3 | A1] P[X2, A4 | A1]
struct ObjectEventGivenEvent {
  Constraints a1;
  RandomObject x2;
  Constraints a3, a4;
};
// P[X2, X3; A4, A5 | A1] = P[X2, A4 | A1] x P[X3, A5 | A1]
struct ObjectsGivenEvent {
  Constraints a1;
  RandomObject x2, x3;
  Constraints a4, a5;
};
// P[A4, A5 | X1, A3] = P[A4 | X1, A3] P[A5 | X1, A3]
struct EventsGivenObject {
  RandomObject x1;
  Constraints a3, a4, a5;
};
// P[X2; A4, A5 | X1, A3] = P[A5 | X1, A3] P[X2, A4 | X1, A3]
struct ObjectEventGivenObject {
  RandomObject x1, x2;
  Constraints a3, a4, a5;
};
// P[X2, X3; A5, A6 | X1, A4] = P[X2, A5 | X1, A4] x P[X3, A6 | X1, A4]
struct ObjectsGivenObject {
  RandomObject x1, x2, x3;
  Constraints a4, a5, a6;
};
}  // namespace ci

using CIPattern = std::variant<ci::EventsGivenEvent, ci::ObjectEventGivenEvent, ci::ObjectsGivenEvent,
                               ci::EventsGivenObject, ci::ObjectEventGivenObject, ci::ObjectsGivenObject>;

struct CIResult {
  bool independent = false;
  // Conditioning mass was zero; `independent` is then vacuously true.
  bool null_condition = false;
};

CIResult check_cond_independence(const Measure& p, const CIPattern& pattern);

}  // namespace cooc
