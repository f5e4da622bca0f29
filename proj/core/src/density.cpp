#include "cooc/density.hpp"

namespace cooc {

const char* base_kind_name(BaseKind kind) { return kind == BaseKind::Marginals ? "marginals" : "bases"; }

std::vector<Rational> Density::base_weights() const {
  std::vector<Rational> w(space.size(), 1);
  for (std::size_t pt = 0; pt < space.size(); ++pt) {
    auto t = space.decode(pt);
    std::size_t k = 0;
    for (std::size_t i : indices) w[pt] *= bases.at(i).weight(t[k++]);
  }
  return w;
}

Measure Density::law() const {
  auto w = base_weights();
  for (std::size_t pt = 0; pt < w.size(); ++pt) w[pt] *= values[pt];
  return Measure(space, std::move(w), MeasureKind::Finite);
}

namespace {

Density make_density(const Measure& joint, const IndexSet& indices, BaseFamily bases, BaseKind kind) {
  Density f{joint.space(), indices, std::vector<Rational>(joint.space().size(), 0), std::move(bases), kind};
  auto bw = f.base_weights();
  for (std::size_t pt = 0; pt < bw.size(); ++pt) {
    if (sgn(bw[pt]) > 0) {
      f.values[pt] = joint.weight(pt) / bw[pt];
    } else if (sgn(joint.weight(pt)) > 0) {
      throw Error(ErrorCode::NotAbsolutelyContinuous,
                  "point " + joint.space().label(pt) + " has positive probability and zero base weight",
                  joint.space().decode(pt));
    }
  }
  return f;
}

// Sub-tuple positions of `sub` inside `all`.
std::vector<std::size_t> positions(const IndexSet& all, const IndexSet& sub) {
  std::vector<std::size_t> r;
  for (std::size_t i : sub) r.push_back(all.position(i));
  return r;
}

FiniteSpace sub_space(const Density& f, const IndexSet& sub) {
  std::vector<FiniteSpace> fs;
  for (std::size_t i : sub) fs.push_back(f.space.factor(i));
  return product_space(sub, fs);
}

}  // namespace

Density density_wrt_marginals(const Measure& p, const ObjectFamily& objects, const IndexSet& indices,
                              std::size_t cap) {
  RandomObject xi = bundle(objects, indices, cap);
  BaseFamily bases;
  for (std::size_t i : indices) bases.emplace(i, pushforward(p, objects.at(i)));
  return make_density(pushforward(p, xi), indices, std::move(bases), BaseKind::Marginals);
}

Density density_wrt_base(const Measure& p, const ObjectFamily& objects, const IndexSet& indices,
                         const BaseFamily& bases, std::size_t cap) {
  RandomObject xi = bundle(objects, indices, cap);
  BaseFamily used;
  for (std::size_t i : indices) {
    auto it = bases.find(i);
    if (it == bases.end()) throw Error(ErrorCode::IndexMismatch, "no base measure for index " + std::to_string(i));
    if (!(it->second.space() == objects.at(i).codomain()))
      throw Error(ErrorCode::SpaceMismatch, "base measure for index " + std::to_string(i) + " on wrong space");
    used.emplace(i, it->second);
  }
  return make_density(pushforward(p, xi), indices, std::move(used), BaseKind::Bases);
}

Density marginal_density(const Density& f, const IndexSet& sub) {
  if (sub.empty()) throw Error(ErrorCode::EmptyIndexSet, "marginal over the empty index set");
  if (!sub.is_subset_of(f.indices))
    throw Error(ErrorCode::IndexNotSubset, to_string(sub) + " is not a subset of " + to_string(f.indices));
  if (sub == f.indices) return f;

  FiniteSpace ns = sub_space(f, sub);
  auto keep = positions(f.indices, sub);
  IndexSet rest = f.indices.minus(sub);
  auto drop = positions(f.indices, rest);

  Density g{ns, sub, std::vector<Rational>(ns.size(), 0), {}, f.kind};
  for (std::size_t i : sub) g.bases.emplace(i, f.bases.at(i));

  for (std::size_t pt = 0; pt < f.space.size(); ++pt) {
    auto t = f.space.decode(pt);
    Rational w = f.values[pt];
    for (std::size_t k = 0; k < rest.size(); ++k) w *= f.bases.at(rest.indices()[k]).weight(t[drop[k]]);
    std::vector<std::size_t> s;
    for (std::size_t k : keep) s.push_back(t[k]);
    g.values[ns.encode(s)] += w;
  }
  // Canonical representative: zero on base-null points.  The divergence set is empty here,
  // every sum being finite.
  auto bw = g.base_weights();
  for (std::size_t pt = 0; pt < bw.size(); ++pt)
    if (sgn(bw[pt]) == 0) g.values[pt] = 0;
  return g;
}

Kernel kernel_from_density(const Density& f, const IndexSet& i1, const IndexSet& i2) {
  IndexSet both = i1.plus(i2);
  if (i1.empty() || i2.empty()) throw Error(ErrorCode::EmptyIndexSet, "kernel needs nonempty index sets");
  Density g = marginal_density(f, both);

  FiniteSpace src = sub_space(g, i1), tgt = sub_space(g, i2);
  auto p1 = positions(both, i1), p2 = positions(both, i2);
  std::vector<std::vector<Rational>> num(src.size(), std::vector<Rational>(tgt.size(), 0));
  for (std::size_t pt = 0; pt < g.space.size(); ++pt) {
    auto t = g.space.decode(pt);
    std::vector<std::size_t> a, b;
    for (std::size_t k : p1) a.push_back(t[k]);
    for (std::size_t k : p2) b.push_back(t[k]);
    Rational w = g.values[pt];
    for (std::size_t k = 0; k < i2.size(); ++k) w *= g.bases.at(i2.indices()[k]).weight(b[k]);
    num[src.encode(a)][tgt.encode(b)] = w;
  }

  Density g1 = marginal_density(g, i1);
  auto b1 = g1.base_weights();
  std::vector<Rational> ref(src.size(), 0);
  Kernel k{src, tgt, std::vector<std::vector<Rational>>(src.size(), std::vector<Rational>(tgt.size(), 0)),
           Measure::zero(src), false};
  for (std::size_t x = 0; x < src.size(); ++x) {
    Rational den = sum(num[x]);
    // E1: base-null source points.  E2: zero denominator.
    if (sgn(b1[x]) == 0 || sgn(den) == 0) continue;
    ref[x] = den * b1[x];
    for (std::size_t y = 0; y < tgt.size(); ++y) k.rows[x][y] = num[x][y] / den;
  }
  k.reference = Measure(src, std::move(ref), MeasureKind::Finite);
  k.null_condition = k.reference.is_zero();
  return k;
}

std::vector<Density> factorize_if_independent(const Density& f, const std::vector<IndexSet>& blocks) {
  IndexSet seen;
  for (const auto& b : blocks) {
    if (b.empty()) throw Error(ErrorCode::BadPartition, "empty block in index partition");
    if (!seen.disjoint(b)) throw Error(ErrorCode::BadPartition, "index blocks overlap");
    seen = seen.unite(b);
  }
  if (!(seen == f.indices)) throw Error(ErrorCode::BadPartition, "blocks do not cover " + to_string(f.indices));

  std::vector<Density> parts;
  std::vector<std::vector<std::size_t>> pos;
  for (const auto& b : blocks) {
    parts.push_back(marginal_density(f, b));
    pos.push_back(positions(f.indices, b));
  }
  // Both sides integrate to the same mass, so any mismatch shows up as a point where the
  // joint density falls below the product; that point is reported.
  auto bw = f.base_weights();
  std::vector<std::size_t> witness;
  for (std::size_t pt = 0; pt < f.space.size() && witness.empty(); ++pt) {
    if (sgn(bw[pt]) == 0) continue;
    auto t = f.space.decode(pt);
    Rational prod = 1;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      std::vector<std::size_t> s;
      for (std::size_t k : pos[j]) s.push_back(t[k]);
      prod *= parts[j].values[parts[j].space.encode(s)];
    }
    if (f.values[pt] < prod) witness = t;
  }
  if (!witness.empty()) throw Error(ErrorCode::NotFactorizable, "density does not factor over the blocks", witness);
  return parts;
}

Density change_of_base(const Density& f_p, const std::map<std::size_t, Density>& marginal_densities) {
  std::vector<std::size_t> keys;
  for (const auto& [i, d] : marginal_densities) {
    keys.push_back(i);
    if (!(d.indices == IndexSet{i}))
      throw Error(ErrorCode::IndexMismatch, "marginal density for " + std::to_string(i) + " has indices " +
                                                to_string(d.indices));
    if (!(d.space.factor(i) == f_p.space.factor(i)))
      throw Error(ErrorCode::IndexMismatch, "marginal density for " + std::to_string(i) + " on wrong factor");
  }
  if (!(IndexSet(keys) == f_p.indices))
    throw Error(ErrorCode::IndexMismatch, "marginal densities do not match " + to_string(f_p.indices));

  Density out{f_p.space, f_p.indices, f_p.values, {}, BaseKind::Bases};
  for (const auto& [i, d] : marginal_densities) out.bases.emplace(i, d.bases.at(i));
  auto bw = out.base_weights();
  for (std::size_t pt = 0; pt < out.space.size(); ++pt) {
    if (sgn(bw[pt]) == 0) {
      out.values[pt] = 0;
      continue;
    }
    auto t = out.space.decode(pt);
    std::size_t k = 0;
    for (std::size_t i : out.indices) out.values[pt] *= marginal_densities.at(i).values[t[k++]];
  }
  return out;
}

}  // namespace cooc
