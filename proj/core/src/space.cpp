#include "cooc/space.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cooc {

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(std::initializer_list<std::size_t> xs) : IndexSet(std::vector<std::size_t>(xs)) {}

IndexSet::IndexSet(std::vector<std::size_t> xs) : xs_(std::move(xs)) {
  std::sort(xs_.begin(), xs_.end());
  if (std::adjacent_find(xs_.begin(), xs_.end()) != xs_.end())
    throw Error(ErrorCode::BadValue, "duplicate index in index set");
}

bool IndexSet::contains(std::size_t i) const { return std::binary_search(xs_.begin(), xs_.end(), i); }

std::size_t IndexSet::position(std::size_t i) const {
  auto it = std::lower_bound(xs_.begin(), xs_.end(), i);
  if (it == xs_.end() || *it != i)
    throw Error(ErrorCode::UnknownIndex, "index " + std::to_string(i) + " not in " + to_string(*this));
  return static_cast<std::size_t>(it - xs_.begin());
}

bool IndexSet::is_subset_of(const IndexSet& o) const {
  return std::includes(o.xs_.begin(), o.xs_.end(), xs_.begin(), xs_.end());
}

bool IndexSet::disjoint(const IndexSet& o) const { return intersect(o).empty(); }

IndexSet IndexSet::unite(const IndexSet& o) const {
  std::vector<std::size_t> r;
  std::set_union(xs_.begin(), xs_.end(), o.xs_.begin(), o.xs_.end(), std::back_inserter(r));
  return IndexSet(std::move(r));
}

IndexSet IndexSet::intersect(const IndexSet& o) const {
  std::vector<std::size_t> r;
  std::set_intersection(xs_.begin(), xs_.end(), o.xs_.begin(), o.xs_.end(), std::back_inserter(r));
  return IndexSet(std::move(r));
}

IndexSet IndexSet::minus(const IndexSet& o) const {
  std::vector<std::size_t> r;
  std::set_difference(xs_.begin(), xs_.end(), o.xs_.begin(), o.xs_.end(), std::back_inserter(r));
  return IndexSet(std::move(r));
}

IndexSet IndexSet::plus(const IndexSet& o) const {
  if (!disjoint(o))
    throw Error(ErrorCode::IndexOverlap, to_string(*this) + " and " + to_string(o) + " overlap");
  return unite(o);
}

std::string to_string(const IndexSet& s) {
  std::string r = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) r += ",";
    r += std::to_string(s.indices()[k]);
  }
  return r + "}";
}

// ---------------------------------------------------------------------------
// FiniteSpace

FiniteSpace::FiniteSpace() : impl_(std::make_shared<const Impl>()) {}

std::string FiniteSpace::label(std::size_t point) const {
  return has_labels() ? impl_->labels[point] : std::to_string(point);
}

const FiniteSpace& FiniteSpace::factor(std::size_t index) const {
  if (!is_product()) throw Error(ErrorCode::CoordinateMismatch, "space is not a product");
  std::size_t pos;
  try {
    pos = impl_->coords.position(index);
  } catch (const Error&) {
    throw Error(ErrorCode::CoordinateMismatch,
                "coordinate " + std::to_string(index) + " not in " + to_string(impl_->coords));
  }
  return impl_->factors[pos];
}

std::vector<std::size_t> FiniteSpace::decode(std::size_t point) const {
  const auto& fs = impl_->factors;
  std::vector<std::size_t> t(fs.size());
  for (std::size_t k = fs.size(); k-- > 0;) {
    t[k] = point % fs[k].size();
    point /= fs[k].size();
  }
  return t;
}

std::size_t FiniteSpace::encode(const std::vector<std::size_t>& tuple) const {
  const auto& fs = impl_->factors;
  if (tuple.size() != fs.size()) throw Error(ErrorCode::CoordinateMismatch, "tuple arity mismatch");
  std::size_t p = 0;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    if (tuple[k] >= fs[k].size()) throw Error(ErrorCode::BadValue, "tuple coordinate out of range");
    p = p * fs[k].size() + tuple[k];
  }
  return p;
}

bool FiniteSpace::operator==(const FiniteSpace& o) const {
  if (impl_ == o.impl_) return true;
  return impl_->size == o.impl_->size && impl_->labels == o.impl_->labels &&
         impl_->product == o.impl_->product && impl_->coords == o.impl_->coords &&
         impl_->factors == o.impl_->factors;
}

FiniteSpace make_space(std::size_t size, std::vector<std::string> labels) {
  if (size == 0) throw Error(ErrorCode::ZeroSize, "space must have at least one outcome");
  if (!labels.empty()) {
    if (labels.size() != size)
      throw Error(ErrorCode::BadValue, "expected " + std::to_string(size) + " labels");
    std::set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second) throw Error(ErrorCode::DuplicateLabel, "label '" + l + "' repeated");
  }
  auto impl = std::make_shared<FiniteSpace::Impl>();
  impl->size = size;
  impl->labels = std::move(labels);
  return FiniteSpace(std::move(impl));
}

FiniteSpace product_space(const IndexSet& indices, const std::vector<FiniteSpace>& factors,
                          std::size_t cap) {
  if (indices.size() != factors.size())
    throw Error(ErrorCode::IndexMismatch, "one factor per index required");
  std::size_t n = 1;
  for (const auto& f : factors) {
    if (n > cap / f.size())
      throw Error(ErrorCode::ProductTooLarge, "product exceeds cap of " + std::to_string(cap) + " points");
    n *= f.size();
  }
  if (n > cap) throw Error(ErrorCode::ProductTooLarge, "product exceeds cap of " + std::to_string(cap) + " points");

  auto impl = std::make_shared<FiniteSpace::Impl>();
  impl->size = n;
  impl->product = true;
  impl->coords = indices;
  impl->factors = factors;
  impl->labels.reserve(n);
  FiniteSpace tmp(impl);
  for (std::size_t p = 0; p < n; ++p) {
    auto t = tmp.decode(p);
    std::string l = "(";
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) l += ",";
      l += factors[k].label(t[k]);
    }
    impl->labels.push_back(l + ")");
  }
  return FiniteSpace(std::move(impl));
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(const FiniteSpace& space, std::vector<std::vector<std::size_t>> blocks)
    : space_(space), block_of_(space.size(), space.size()) {
  for (auto& b : blocks) {
    if (b.empty()) throw Error(ErrorCode::BadPartition, "empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks.begin(), blocks.end());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    for (std::size_t x : blocks[k]) {
      if (x >= space.size()) throw Error(ErrorCode::BadPartition, "block member out of range");
      if (block_of_[x] != space.size())
        throw Error(ErrorCode::BadPartition, "blocks overlap at outcome " + std::to_string(x));
      block_of_[x] = k;
    }
  }
  for (std::size_t x = 0; x < space.size(); ++x)
    if (block_of_[x] == space.size())
      throw Error(ErrorCode::BadPartition, "outcome " + std::to_string(x) + " not covered");
  blocks_ = std::move(blocks);
}

Partition Partition::discrete(const FiniteSpace& space) {
  std::vector<std::vector<std::size_t>> b(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) b[x] = {x};
  return Partition(space, std::move(b));
}

Partition Partition::trivial(const FiniteSpace& space) {
  std::vector<std::size_t> all(space.size());
  std::iota(all.begin(), all.end(), 0);
  return Partition(space, {all});
}

bool refines(const Partition& p, const Partition& q) {
  if (!(p.space() == q.space())) throw Error(ErrorCode::SpaceMismatch, "partitions on different spaces");
  for (const auto& b : p.blocks())
    for (std::size_t x : b)
      if (q.block_of(x) != q.block_of(b.front())) return false;
  return true;
}

Partition meet(const Partition& p, const Partition& q) {
  if (!(p.space() == q.space())) throw Error(ErrorCode::SpaceMismatch, "partitions on different spaces");
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> cells;
  for (std::size_t x = 0; x < p.space().size(); ++x) cells[{p.block_of(x), q.block_of(x)}].push_back(x);
  std::vector<std::vector<std::size_t>> blocks;
  for (auto& [k, v] : cells) blocks.push_back(std::move(v));
  return Partition(p.space(), std::move(blocks));
}

// ---------------------------------------------------------------------------
// Event

Event::Event(const FiniteSpace& space, const std::vector<std::size_t>& members)
    : space_(space), mask_(space.size(), false) {
  for (std::size_t x : members) {
    if (x >= space.size())
      throw Error(ErrorCode::BadValue, "event member " + std::to_string(x) + " out of range");
    mask_[x] = true;
  }
}

Event Event::full(const FiniteSpace& space) { return Event(space, std::vector<bool>(space.size(), true)); }
Event Event::empty(const FiniteSpace& space) { return Event(space, std::vector<bool>(space.size(), false)); }
Event Event::singleton(const FiniteSpace& space, std::size_t point) { return Event(space, std::vector<std::size_t>{point}); }

std::vector<std::size_t> Event::members() const {
  std::vector<std::size_t> r;
  for (std::size_t x = 0; x < mask_.size(); ++x)
    if (mask_[x]) r.push_back(x);
  return r;
}

std::size_t Event::count() const { return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true)); }

static void same_space(const FiniteSpace& a, const FiniteSpace& b) {
  if (!(a == b)) throw Error(ErrorCode::SpaceMismatch, "events on different spaces");
}

Event Event::intersect(const Event& o) const {
  same_space(space_, o.space_);
  std::vector<bool> m(mask_.size());
  for (std::size_t x = 0; x < m.size(); ++x) m[x] = mask_[x] && o.mask_[x];
  return Event(space_, std::move(m));
}

Event Event::unite(const Event& o) const {
  same_space(space_, o.space_);
  std::vector<bool> m(mask_.size());
  for (std::size_t x = 0; x < m.size(); ++x) m[x] = mask_[x] || o.mask_[x];
  return Event(space_, std::move(m));
}

Event Event::complement() const {
  std::vector<bool> m(mask_.size());
  for (std::size_t x = 0; x < m.size(); ++x) m[x] = !mask_[x];
  return Event(space_, std::move(m));
}

bool Event::is_subset_of(const Event& o) const {
  same_space(space_, o.space_);
  for (std::size_t x = 0; x < mask_.size(); ++x)
    if (mask_[x] && !o.mask_[x]) return false;
  return true;
}

bool Event::measurable(const Partition& field) const {
  same_space(space_, field.space());
  for (const auto& b : field.blocks())
    for (std::size_t x : b)
      if (mask_[x] != mask_[b.front()]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Measure

const char* kind_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Probability: return "probability";
    case MeasureKind::Finite: return "finite";
    case MeasureKind::Base: return "base";
  }
  return "finite";
}

Measure::Measure(const FiniteSpace& space, std::vector<Rational> weights, MeasureKind kind)
    : space_(space), weights_(std::move(weights)), kind_(kind) {
  if (weights_.size() != space.size())
    throw Error(ErrorCode::SpaceMismatch, "expected " + std::to_string(space.size()) + " weights, got " +
                                              std::to_string(weights_.size()));
  for (auto& w : weights_) {
    w.canonicalize();
    if (sgn(w) < 0) throw Error(ErrorCode::BadValue, "negative weight " + to_string(w));
  }
  if (kind == MeasureKind::Probability && total() != 1)
    throw Error(ErrorCode::BadValue, "probability measure has mass " + to_string(total()));
}

Measure Measure::zero(const FiniteSpace& space) {
  return Measure(space, std::vector<Rational>(space.size(), 0), MeasureKind::Finite);
}

Measure Measure::uniform(const FiniteSpace& space) {
  return Measure(space, std::vector<Rational>(space.size(), Rational(1, space.size())),
                 MeasureKind::Probability);
}

Measure Measure::counting(const FiniteSpace& space) {
  return Measure(space, std::vector<Rational>(space.size(), 1), MeasureKind::Base);
}

Measure Measure::point_mass(const FiniteSpace& space, std::size_t point) {
  std::vector<Rational> w(space.size(), 0);
  w.at(point) = 1;
  return Measure(space, std::move(w), MeasureKind::Probability);
}

Rational Measure::total() const { return sum(weights_); }

Rational Measure::of(const Event& e) const {
  if (!(e.space() == space_)) throw Error(ErrorCode::SpaceMismatch, "event not on the measure's space");
  Rational s = 0;
  for (std::size_t x = 0; x < weights_.size(); ++x)
    if (e.contains(x)) s += weights_[x];
  return s;
}

bool Measure::is_zero() const {
  return std::all_of(weights_.begin(), weights_.end(), [](const Rational& w) { return sgn(w) == 0; });
}

Event Measure::support() const {
  std::vector<std::size_t> m;
  for (std::size_t x = 0; x < weights_.size(); ++x)
    if (sgn(weights_[x]) > 0) m.push_back(x);
  return Event(space_, m);
}

// ---------------------------------------------------------------------------
// RandomObject

RandomObject::RandomObject(const Partition& domain_field, const Partition& codomain_field,
                           std::vector<std::size_t> map)
    : domain_field_(domain_field), codomain_field_(codomain_field), map_(std::move(map)) {
  if (map_.size() != domain().size())
    throw Error(ErrorCode::SpaceMismatch, "map length differs from domain size");
  for (std::size_t y : map_)
    if (y >= codomain().size()) throw Error(ErrorCode::BadValue, "image index out of range");
  // Preimage of each codomain block must be a union of domain blocks, i.e. every domain block
  // maps into a single codomain block.
  for (const auto& b : domain_field_.blocks()) {
    std::size_t cb = codomain_field_.block_of(map_[b.front()]);
    for (std::size_t x : b)
      if (codomain_field_.block_of(map_[x]) != cb)
        throw Error(ErrorCode::BadPartition, "random object is not measurable", {x});
  }
}

RandomObject::RandomObject(const FiniteSpace& domain, const FiniteSpace& codomain,
                           std::vector<std::size_t> map)
    : RandomObject(Partition::discrete(domain), Partition::discrete(codomain), std::move(map)) {}

Event RandomObject::preimage(const Event& target) const {
  if (!(target.space() == codomain()))
    throw Error(ErrorCode::SpaceMismatch, "event not on the object's codomain");
  std::vector<std::size_t> m;
  for (std::size_t w = 0; w < map_.size(); ++w)
    if (target.contains(map_[w])) m.push_back(w);
  return Event(domain(), m);
}

RandomObject identity(const FiniteSpace& space) {
  std::vector<std::size_t> m(space.size());
  std::iota(m.begin(), m.end(), 0);
  return RandomObject(space, space, std::move(m));
}

RandomObject identity(const Partition& g) { return coarsen(identity(g.space()), g); }

RandomObject coarsen(const RandomObject& x, const Partition& g) {
  if (!(g.space() == x.codomain())) throw Error(ErrorCode::SpaceMismatch, "partition not on the codomain");
  return RandomObject(x.domain_field(), g, x.map());
}

RandomObject compose(const RandomObject& f, const RandomObject& g) {
  if (!(f.codomain() == g.domain())) throw Error(ErrorCode::SpaceMismatch, "objects are not composable");
  std::vector<std::size_t> m(f.map().size());
  for (std::size_t w = 0; w < m.size(); ++w) m[w] = g(f(w));
  return RandomObject(f.domain_field(), g.codomain_field(), std::move(m));
}

RandomObject bundle(const std::map<std::size_t, RandomObject>& objects, const IndexSet& indices,
                    std::size_t cap) {
  if (indices.empty()) throw Error(ErrorCode::EmptyIndexSet, "bundle over the empty index set");
  std::vector<const RandomObject*> xs;
  for (std::size_t i : indices) {
    auto it = objects.find(i);
    if (it == objects.end()) throw Error(ErrorCode::UnknownIndex, "no object with index " + std::to_string(i));
    xs.push_back(&it->second);
  }
  const FiniteSpace& dom = xs.front()->domain();
  Partition dfield = xs.front()->domain_field();
  for (const auto* x : xs) {
    if (!(x->domain() == dom)) throw Error(ErrorCode::DomainMismatch, "objects have different domains");
    dfield = meet(dfield, x->domain_field());
  }
  std::vector<FiniteSpace> factors;
  for (const auto* x : xs) factors.push_back(x->codomain());
  FiniteSpace prod = product_space(indices, factors, cap);

  // Product field: cells are products of factor blocks.
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> cells;
  for (std::size_t p = 0; p < prod.size(); ++p) {
    auto t = prod.decode(p);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = xs[k]->codomain_field().block_of(t[k]);
    cells[t].push_back(p);
  }
  std::vector<std::vector<std::size_t>> blocks;
  for (auto& [k, v] : cells) blocks.push_back(std::move(v));
  Partition cfield(prod, std::move(blocks));

  std::vector<std::size_t> m(dom.size());
  std::vector<std::size_t> t(xs.size());
  for (std::size_t w = 0; w < dom.size(); ++w) {
    for (std::size_t k = 0; k < xs.size(); ++k) t[k] = (*xs[k])(w);
    m[w] = prod.encode(t);
  }
  return RandomObject(dfield, cfield, std::move(m));
}

RandomObject projection(const FiniteSpace& product, std::size_t index) {
  const FiniteSpace& f = product.factor(index);
  std::size_t pos = product.coordinates().position(index);
  std::vector<std::size_t> m(product.size());
  for (std::size_t p = 0; p < product.size(); ++p) m[p] = product.decode(p)[pos];
  return RandomObject(product, f, std::move(m));
}

Measure pushforward(const Measure& p, const RandomObject& x) {
  if (!(p.space() == x.domain())) throw Error(ErrorCode::SpaceMismatch, "measure not on the object's domain");
  std::vector<Rational> w(x.codomain().size(), 0);
  for (std::size_t o = 0; o < x.domain().size(); ++o) w[x(o)] += p.weight(o);
  return Measure(x.codomain(), std::move(w), p.kind());
}

}  // namespace cooc
