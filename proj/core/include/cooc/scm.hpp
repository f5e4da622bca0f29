#pragma once

#include "cooc/density.hpp"

#include <functional>
#include <map>
#include <vector>

namespace cooc {

// Finite structural causal model.  The mechanism is a table over the input product
// (endogenous point major, exogenous point minor) whose entries are endogenous points.
struct Scm {
  IndexSet endo;
  IndexSet exo;
  std::map<std::size_t, FiniteSpace> endo_spaces;
  std::map<std::size_t, FiniteSpace> exo_spaces;
  FiniteSpace endo_space;  // product over endo
  FiniteSpace exo_space;   // product over exo
  Measure exo_law;
  std::vector<std::size_t> mechanism;

  std::size_t apply(std::size_t x, std::size_t e) const { return mechanism[x * exo_space.size() + e]; }
  bool operator==(const Scm& o) const {
    return endo == o.endo && exo == o.exo && endo_space == o.endo_space && exo_space == o.exo_space &&
           exo_law == o.exo_law && mechanism == o.mechanism;
  }
};

using MechanismFn =
    std::function<std::vector<std::size_t>(const std::vector<std::size_t>& x, const std::vector<std::size_t>& e)>;

// Errors: IndexOverlap, IndexMismatch (missing spaces), SpaceMismatch (law or table size),
// BadValue (table entry out of range), ProductTooLarge.
Scm make_scm(const IndexSet& endo, const IndexSet& exo, const std::map<std::size_t, FiniteSpace>& endo_spaces,
             const std::map<std::size_t, FiniteSpace>& exo_spaces, const Measure& exo_law,
             std::vector<std::size_t> mechanism, std::size_t cap = kDefaultProductCap);

// Builds the table by evaluating f on every (x, e) tuple pair.
Scm tabulate_scm(const IndexSet& endo, const IndexSet& exo, const std::map<std::size_t, FiniteSpace>& endo_spaces,
                 const std::map<std::size_t, FiniteSpace>& exo_spaces, const Measure& exo_law, const MechanismFn& f,
                 std::size_t cap = kDefaultProductCap);

struct SolutionMap {
  // solutions[e]: every endogenous x with x = f(x, e).  Empty and unvisited for zero-mass e.
  std::vector<std::vector<std::size_t>> solutions;
  std::vector<bool> visited;
};

SolutionMap solve(const Scm& m);

// Law of the unique solution.  Errors: NoSolution, NonUniqueSolution (witness: exogenous tuple).
Measure observational_distribution(const Scm& m);

// do(X_i := value).  Errors: UnknownIndex, BadValue.
Scm intervene(const Scm& m, std::size_t index, std::size_t value);

struct EngineModel {
  FiniteSpace omega;  // exogenous product
  Measure p;          // exogenous law
  ObjectFamily objects;
};

// One object per endogenous index (e -> x_i(e)) and per exogenous index (projection).
// Errors: as observational_distribution.
EngineModel as_engine_model(const Scm& m);

}  // namespace cooc
