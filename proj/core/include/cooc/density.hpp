#pragma once

#include "cooc/conditioning.hpp"

#include <map>
#include <vector>

namespace cooc {

using BaseFamily = std::map<std::size_t, Measure>;

enum class BaseKind { Marginals, Bases };

const char* base_kind_name(BaseKind kind);

// Density of a law on the product over `indices`, relative to the product of `bases`.
// Values at base-null points are 0.
struct Density {
  FiniteSpace space;
  IndexSet indices;
  std::vector<Rational> values;
  BaseFamily bases;
  BaseKind kind = BaseKind::Marginals;

  // Product base weight of every point.
  std::vector<Rational> base_weights() const;
  // values * base, the represented law.
  Measure law() const;
};

// f = P[X_I]({w}) / prod_i P[X_i]({w_i}).  Errors: ProductTooLarge, UnknownIndex, DomainMismatch.
Density density_wrt_marginals(const Measure& p, const ObjectFamily& objects, const IndexSet& indices,
                              std::size_t cap = kDefaultProductCap);

// f = P[X_I]({w}) / prod_i mu_i({w_i}).
// Errors: NotAbsolutelyContinuous (witness tuple), IndexMismatch, SpaceMismatch, ProductTooLarge.
Density density_wrt_base(const Measure& p, const ObjectFamily& objects, const IndexSet& indices,
                         const BaseFamily& bases, std::size_t cap = kDefaultProductCap);

// Integrates out the coordinates outside `sub`.  Errors: IndexNotSubset, EmptyIndexSet.
Density marginal_density(const Density& f, const IndexSet& sub);

// P[X_I2 | X_I1] from the density.  Coordinates outside I1 + I2 are integrated out first.
// Errors: IndexOverlap, IndexNotSubset, EmptyIndexSet.
Kernel kernel_from_density(const Density& f, const IndexSet& i1, const IndexSet& i2);

// Marginal densities per block, certified to multiply back to f a.e.
// Errors: BadPartition, NotFactorizable (witness tuple of f's space).
std::vector<Density> factorize_if_independent(const Density& f, const std::vector<IndexSet>& blocks);

// f_mu = f_P * prod_i f_i, where f_i is the density of P[X_i] w.r.t. mu_i.
// Errors: IndexMismatch.
Density change_of_base(const Density& f_p, const std::map<std::size_t, Density>& marginal_densities);

}  // namespace cooc
