#pragma once

#include "cooc/error.hpp"
#include "cooc/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace cooc {

inline constexpr std::size_t kDefaultProductCap = 1'000'000;

// ===========================================================================
// IndexSet
// ===========================================================================

class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> xs);
  // Sorts; duplicates are rejected with BadValue.
  explicit IndexSet(std::vector<std::size_t> xs);

  const std::vector<std::size_t>& indices() const { return xs_; }
  std::size_t size() const { return xs_.size(); }
  bool empty() const { return xs_.empty(); }
  bool contains(std::size_t i) const;
  // Position of i inside the ascending sequence; UnknownIndex if absent.
  std::size_t position(std::size_t i) const;

  bool is_subset_of(const IndexSet& other) const;
  bool disjoint(const IndexSet& other) const;
  IndexSet unite(const IndexSet& other) const;
  IndexSet intersect(const IndexSet& other) const;
  IndexSet minus(const IndexSet& other) const;
  // I1 + I2, defined only for disjoint sets (IndexOverlap otherwise).
  IndexSet plus(const IndexSet& other) const;

  auto begin() const { return xs_.begin(); }
  auto end() const { return xs_.end(); }
  bool operator==(const IndexSet&) const = default;

 private:
  std::vector<std::size_t> xs_;
};

std::string to_string(const IndexSet& s);

// ===========================================================================
// FiniteSpace
// ===========================================================================

// Immutable, cheap to copy.  A product space remembers its index set and factors;
// its points are tuples in lexicographic order with coordinates in ascending index order.
class FiniteSpace {
 public:
  FiniteSpace();

  std::size_t size() const { return impl_->size; }
  bool has_labels() const { return !impl_->labels.empty(); }
  const std::vector<std::string>& labels() const { return impl_->labels; }
  // Label if present, else the decimal index.
  std::string label(std::size_t point) const;

  bool is_product() const { return impl_->product; }
  const IndexSet& coordinates() const { return impl_->coords; }
  const std::vector<FiniteSpace>& factors() const { return impl_->factors; }
  const FiniteSpace& factor(std::size_t index) const;

  std::vector<std::size_t> decode(std::size_t point) const;
  std::size_t encode(const std::vector<std::size_t>& tuple) const;

  bool operator==(const FiniteSpace& other) const;

  friend FiniteSpace make_space(std::size_t, std::vector<std::string>);
  friend FiniteSpace product_space(const IndexSet&, const std::vector<FiniteSpace>&, std::size_t);

 private:
  struct Impl {
    std::size_t size = 1;
    std::vector<std::string> labels;
    bool product = false;
    IndexSet coords;
    std::vector<FiniteSpace> factors;
  };
  explicit FiniteSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Errors: ZeroSize, DuplicateLabel.
FiniteSpace make_space(std::size_t size, std::vector<std::string> labels = {});

// Errors: ProductTooLarge, IndexMismatch (factor count differs from index count).
// The empty index set yields the one-point space of the empty tuple.
FiniteSpace product_space(const IndexSet& indices, const std::vector<FiniteSpace>& factors,
                          std::size_t cap = kDefaultProductCap);

// ===========================================================================
// Partition (sub-sigma-field)
// ===========================================================================

class Partition {
 public:
  // Blocks are normalized: sorted members, blocks ordered by least member.
  // Errors: BadPartition.
  Partition(const FiniteSpace& space, std::vector<std::vector<std::size_t>> blocks);

  static Partition discrete(const FiniteSpace& space);
  static Partition trivial(const FiniteSpace& space);

  const FiniteSpace& space() const { return space_; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  std::size_t block_of(std::size_t point) const { return block_of_[point]; }
  bool is_discrete() const { return blocks_.size() == space_.size(); }

  bool operator==(const Partition& other) const {
    return space_ == other.space_ && blocks_ == other.blocks_;
  }

 private:
  FiniteSpace space_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

// True iff every block of p lies inside a block of q (p is finer).  Errors: SpaceMismatch.
bool refines(const Partition& p, const Partition& q);

// Coarsest common refinement.  Errors: SpaceMismatch.
Partition meet(const Partition& p, const Partition& q);

// ===========================================================================
// Event
// ===========================================================================

class Event {
 public:
  // Errors: BadValue for out-of-range members.
  Event(const FiniteSpace& space, const std::vector<std::size_t>& members);

  static Event full(const FiniteSpace& space);
  static Event empty(const FiniteSpace& space);
  static Event singleton(const FiniteSpace& space, std::size_t point);

  const FiniteSpace& space() const { return space_; }
  bool contains(std::size_t point) const { return mask_[point]; }
  std::vector<std::size_t> members() const;
  std::size_t count() const;
  bool is_full() const { return count() == space_.size(); }

  Event intersect(const Event& other) const;
  Event unite(const Event& other) const;
  Event complement() const;
  bool is_subset_of(const Event& other) const;
  // Union of blocks of the given partition.
  bool measurable(const Partition& field) const;

  bool operator==(const Event& other) const {
    return space_ == other.space_ && mask_ == other.mask_;
  }

 private:
  Event(FiniteSpace space, std::vector<bool> mask) : space_(std::move(space)), mask_(std::move(mask)) {}
  FiniteSpace space_;
  std::vector<bool> mask_;
};

// ===========================================================================
// RationalMeasure
// ===========================================================================

enum class MeasureKind { Probability, Finite, Base };

const char* kind_name(MeasureKind kind);

class Measure {
 public:
  // Errors: SpaceMismatch (weight count), BadValue (negative weight, or probability mass != 1).
  Measure(const FiniteSpace& space, std::vector<Rational> weights, MeasureKind kind);

  static Measure zero(const FiniteSpace& space);
  static Measure uniform(const FiniteSpace& space);
  static Measure counting(const FiniteSpace& space);
  static Measure point_mass(const FiniteSpace& space, std::size_t point);

  const FiniteSpace& space() const { return space_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(std::size_t point) const { return weights_[point]; }
  MeasureKind kind() const { return kind_; }
  Rational total() const;
  Rational of(const Event& event) const;
  bool is_zero() const;
  Event support() const;

  // Same space and same weights; the kind tag is not compared.
  bool operator==(const Measure& other) const {
    return space_ == other.space_ && weights_ == other.weights_;
  }

 private:
  FiniteSpace space_;
  std::vector<Rational> weights_;
  MeasureKind kind_;
};

// ===========================================================================
// RandomObject
// ===========================================================================

class RandomObject {
 public:
  // Errors: SpaceMismatch (fields on wrong spaces, map length), BadValue (image out of range),
  // BadPartition (not measurable).
  RandomObject(const Partition& domain_field, const Partition& codomain_field,
               std::vector<std::size_t> map);
  // Discrete fields on both sides.
  RandomObject(const FiniteSpace& domain, const FiniteSpace& codomain, std::vector<std::size_t> map);

  const FiniteSpace& domain() const { return domain_field_.space(); }
  const FiniteSpace& codomain() const { return codomain_field_.space(); }
  const Partition& domain_field() const { return domain_field_; }
  const Partition& codomain_field() const { return codomain_field_; }
  const std::vector<std::size_t>& map() const { return map_; }
  std::size_t operator()(std::size_t omega) const { return map_[omega]; }

  // Errors: SpaceMismatch.
  Event preimage(const Event& target) const;

  bool operator==(const RandomObject& other) const {
    return domain_field_ == other.domain_field_ && codomain_field_ == other.codomain_field_ &&
           map_ == other.map_;
  }

 private:
  Partition domain_field_;
  Partition codomain_field_;
  std::vector<std::size_t> map_;
};

RandomObject identity(const FiniteSpace& space);
// The identity object I_G onto (space, g).
RandomObject identity(const Partition& g);

// Same map, codomain_field replaced by g.  Errors: SpaceMismatch; BadPartition if g is finer
// than the original field in a way that breaks measurability.
RandomObject coarsen(const RandomObject& x, const Partition& g);

// g after f.  Errors: SpaceMismatch.
RandomObject compose(const RandomObject& f, const RandomObject& g);

using ObjectFamily = std::map<std::size_t, RandomObject>;

// X_I(omega) = (X_i(omega) : i in I), tuple coordinates in ascending index order.
// Errors: EmptyIndexSet, UnknownIndex, DomainMismatch, ProductTooLarge.
RandomObject bundle(const std::map<std::size_t, RandomObject>& objects, const IndexSet& indices,
                    std::size_t cap = kDefaultProductCap);

// Coordinate projection out of a product space.  Errors: CoordinateMismatch.
RandomObject projection(const FiniteSpace& product, std::size_t index);

// P[X].  Preserves the kind of the input (probability stays probability).  Errors: SpaceMismatch.
Measure pushforward(const Measure& p, const RandomObject& x);

}  // namespace cooc
