#pragma once

#include "cooc/e_integral.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace cooc {

// A probability space with a family of random objects on it.
struct Model {
  FiniteSpace omega;
  Measure p;
  std::vector<RandomObject> objects;
};

struct ModelOptions {
  std::size_t min_space = 2, max_space = 4;
  std::size_t min_objects = 2, max_objects = 4;
  unsigned max_denominator = 8;
  // Chance that an object's codomain field is a coarser random partition.
  double coarse_field_chance = 0.0;
};

// Seeded source of random models and their ingredients.  Deterministic per seed.
class ModelGenerator {
 public:
  explicit ModelGenerator(std::uint64_t seed) : rng_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi);  // inclusive
  bool coin(double chance = 0.5);

  FiniteSpace space(std::size_t lo, std::size_t hi);
  // Weights k/d with d <= max_denominator.
  Measure probability(const FiniteSpace& s, unsigned max_denominator = 8);
  // Nonnegative weights, zeros likely when zero_chance > 0.
  Measure base(const FiniteSpace& s, double zero_chance = 0.0);
  Partition partition(const FiniteSpace& s);
  // Coarsens p by merging random blocks.
  Partition coarser(const Partition& p);
  Event event(const FiniteSpace& s);
  Event measurable_event(const Partition& field);
  RandomObject object(const FiniteSpace& omega, std::size_t lo, std::size_t hi, double coarse_chance = 0.0);
  Constraints constraints(const std::vector<RandomObject>& pool, std::size_t max_count = 1);
  RandomVariable variable(const FiniteSpace& s, int lo = -6, int hi = 6, unsigned max_denominator = 4);
  Rational rational(int lo, int hi, unsigned max_denominator = 4);
  PiecewiseLinear convex_function();

  Model model(const ModelOptions& opts = {});

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Independent copy: omega x omega with the product law; objects of `a` act on the first
// coordinate, objects of `b` on the second.  `a` and `b` must share omega and law.
struct ProductModel {
  FiniteSpace omega;
  Measure p;
  std::vector<RandomObject> left, right;
};
ProductModel product_model(const Model& a, const Model& b);

}  // namespace cooc
