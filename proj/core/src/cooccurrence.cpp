#include "cooc/cooccurrence.hpp"

namespace cooc {

Constraint::Constraint(RandomObject obj, Event ev) : object(std::move(obj)), event(std::move(ev)) {
  if (!(event.space() == object.codomain()))
    throw Error(ErrorCode::SpaceMismatch, "constraint event is not on the object's codomain");
  if (!event.measurable(object.codomain_field()))
    throw Error(ErrorCode::BadValue, "constraint event is not measurable against the codomain field");
}

Event joint_event(const FiniteSpace& omega, const Constraints& cs) {
  Event e = Event::full(omega);
  for (const auto& c : cs) {
    if (!(c.object.domain() == omega))
      throw Error(ErrorCode::SpaceMismatch, "constraint object lives on another sample space");
    e = e.intersect(c.pullback());
  }
  return e;
}

CoocQuery::CoocQuery(Measure b, Constraints t, Constraints c)
    : base(std::move(b)), targets(std::move(t)), conditions(std::move(c)) {
  for (const auto* list : {&targets, &conditions})
    for (const auto& k : *list)
      if (!(k.object.domain() == base.space()))
        throw Error(ErrorCode::SpaceMismatch, "query mixes constraints from different base spaces");
}

static Event intersect_all(const Measure& p, const std::vector<Event>& events) {
  Event e = Event::full(p.space());
  for (const auto& a : events) {
    if (!(a.space() == p.space())) throw Error(ErrorCode::SpaceMismatch, "event not on the base space");
    e = e.intersect(a);
  }
  return e;
}

Rational prob_cooc(const Measure& p, const std::vector<Event>& events) {
  return p.of(intersect_all(p, events));
}

CondValue cond_prob_cooc(const Measure& p, const std::vector<Event>& targets,
                         const std::vector<Event>& conditions) {
  Event c = intersect_all(p, conditions);
  Rational den = p.of(c);
  if (sgn(den) == 0) return {0, true};
  Rational num = p.of(intersect_all(p, targets).intersect(c));
  return {num / den, false};
}

Rational prob_cooc_objects(const CoocQuery& q) {
  if (!q.conditions.empty()) throw Error(ErrorCode::BadValue, "unconditional query has conditions");
  return q.base.of(joint_event(q.base.space(), q.targets));
}

CondValue cond_prob_objects(const CoocQuery& q) {
  const auto& omega = q.base.space();
  return cond_prob_cooc(q.base, {joint_event(omega, q.targets)}, {joint_event(omega, q.conditions)});
}

Measure law_on(const Measure& p, const RandomObject& z, const Event& on) {
  if (!(z.domain() == p.space())) throw Error(ErrorCode::SpaceMismatch, "subject object lives on another space");
  if (!(on.space() == p.space())) throw Error(ErrorCode::SpaceMismatch, "event not on the base space");
  std::vector<Rational> w(z.codomain().size(), 0);
  for (std::size_t o = 0; o < p.space().size(); ++o)
    if (on.contains(o)) w[z(o)] += p.weight(o);
  return Measure(z.codomain(), std::move(w), MeasureKind::Finite);
}

Measure cooc_measure(const CoocQuery& q, const RandomObject& z) {
  if (!q.conditions.empty()) throw Error(ErrorCode::BadValue, "unconditional query has conditions");
  return law_on(q.base, z, joint_event(q.base.space(), q.targets));
}

CondMeasure cond_cooc_measure(const CoocQuery& q, const RandomObject& z) {
  const auto& omega = q.base.space();
  Event c = joint_event(omega, q.conditions);
  Rational den = q.base.of(c);
  if (sgn(den) == 0) {
    if (!(z.domain() == omega)) throw Error(ErrorCode::SpaceMismatch, "subject object lives on another space");
    return {Measure::zero(z.codomain()), true};
  }
  Measure m = law_on(q.base, z, c.intersect(joint_event(omega, q.targets)));
  std::vector<Rational> w = m.weights();
  for (auto& x : w) x /= den;
  return {Measure(z.codomain(), std::move(w), MeasureKind::Finite), false};
}

}  // namespace cooc
