#pragma once

#include "cooc/random_model.hpp"
#include "cooc/scm.hpp"

#include <map>

namespace fx {

using namespace cooc;

// Random acyclic mechanism: coordinate k reads only endo coordinates below k and the exo tuple,
// through a random lookup table.
struct AcyclicScm {
  IndexSet endo, exo;
  std::map<std::size_t, FiniteSpace> endo_spaces, exo_spaces;
  Measure law = Measure::zero(make_space(1));
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> tables;
  std::vector<FiniteSpace> ef;

  std::vector<std::size_t> f(const std::vector<std::size_t>& x, const std::vector<std::size_t>& e) const {
    std::vector<std::size_t> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      std::vector<std::size_t> key(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k));
      key.insert(key.end(), e.begin(), e.end());
      out[k] = tables[k].at(key);
    }
    return out;
  }

  Scm build() const {
    return tabulate_scm(endo, exo, endo_spaces, exo_spaces, law,
                        [this](const auto& x, const auto& e) { return f(x, e); });
  }
};

inline void all_tuples(const std::vector<std::size_t>& sizes, std::vector<std::size_t>& cur,
                       std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == sizes.size()) {
    out.push_back(cur);
    return;
  }
  for (std::size_t v = 0; v < sizes[cur.size()]; ++v) {
    cur.push_back(v);
    all_tuples(sizes, cur, out);
    cur.pop_back();
  }
}

inline AcyclicScm random_acyclic(ModelGenerator& g) {
  AcyclicScm s;
  std::size_t ne = g.uniform(1, 3), nx = g.uniform(1, 2);
  std::vector<std::size_t> ei, xi, esz, xsz;
  for (std::size_t k = 0; k < ne; ++k) {
    ei.push_back(k + 1);
    esz.push_back(g.uniform(2, 3));
    s.endo_spaces.emplace(k + 1, make_space(esz.back()));
  }
  for (std::size_t k = 0; k < nx; ++k) {
    xi.push_back(101 + k);
    xsz.push_back(g.uniform(2, 3));
    s.exo_spaces.emplace(101 + k, make_space(xsz.back()));
    s.ef.push_back(s.exo_spaces.at(101 + k));
  }
  s.endo = IndexSet(ei);
  s.exo = IndexSet(xi);
  s.law = g.probability(product_space(s.exo, s.ef));
  for (std::size_t k = 0; k < ne; ++k) {
    std::vector<std::size_t> sizes(esz.begin(), esz.begin() + static_cast<std::ptrdiff_t>(k));
    sizes.insert(sizes.end(), xsz.begin(), xsz.end());
    std::vector<std::vector<std::size_t>> keys;
    std::vector<std::size_t> cur;
    all_tuples(sizes, cur, keys);
    std::map<std::vector<std::size_t>, std::size_t> t;
    for (const auto& key : keys) t[key] = g.uniform(0, esz[k] - 1);
    s.tables.push_back(t);
  }
  return s;
}

}  // namespace fx
