#pragma once

#include "cooc/space.hpp"

#include <vector>

namespace cooc {

// X in A, with A measurable against X's codomain field.
struct Constraint {
  // Errors: SpaceMismatch (event off the codomain), BadValue (event not measurable).
  Constraint(RandomObject object, Event event);

  RandomObject object;
  Event event;

  Event pullback() const { return object.preimage(event); }
};

using Constraints = std::vector<Constraint>;

// Intersection of all pulled-back constraint events, on `omega`.  Errors: SpaceMismatch.
Event joint_event(const FiniteSpace& omega, const Constraints& cs);

// P[Z; on]: the law of Z restricted to the event `on` of the base space.  Errors: SpaceMismatch.
Measure law_on(const Measure& p, const RandomObject& z, const Event& on);

struct CondValue {
  Rational value;
  bool null_condition = false;
};

struct CoocQuery {
  // Errors: SpaceMismatch if any constraint object lives on another domain.
  CoocQuery(Measure base, Constraints targets, Constraints conditions = {});

  Measure base;
  Constraints targets;
  Constraints conditions;
};

struct CondMeasure {
  Measure measure;
  bool null_condition = false;
};

// P(intersection of events); the empty sequence gives 1.
Rational prob_cooc(const Measure& p, const std::vector<Event>& events);

CondValue cond_prob_cooc(const Measure& p, const std::vector<Event>& targets,
                         const std::vector<Event>& conditions);

// Conditions must be empty (BadValue otherwise).
Rational prob_cooc_objects(const CoocQuery& q);

CondValue cond_prob_objects(const CoocQuery& q);

// P[Z; targets] on Z's codomain.  Conditions must be empty (BadValue otherwise).
Measure cooc_measure(const CoocQuery& q, const RandomObject& z);

// P[Z; targets | conditions].
CondMeasure cond_cooc_measure(const CoocQuery& q, const RandomObject& z);

}  // namespace cooc
