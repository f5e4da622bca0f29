#pragma once

#include "cooc/e_integral.hpp"
#include "cooc/random_model.hpp"
#include "cooc/scm.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace cooc::cli {

// Load and reference failures (exit code 2).
struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Query {
  std::string measure;  // empty: the model's base probability measure
  Constraints targets;
  Constraints conditions;
};

struct ModelFile {
  std::map<std::string, FiniteSpace> spaces;
  std::map<std::string, Partition> partitions;
  std::map<std::string, Measure> measures;
  std::map<std::string, RandomObject> objects;
  std::map<std::string, RandomVariable> variables;
  std::map<std::string, Scm> scms;
  std::map<std::string, nlohmann::json> queries;  // resolved lazily against a measure

  const FiniteSpace& space(const std::string& id) const;
  const Measure& measure(const std::string& id) const;
  const RandomObject& object(const std::string& id) const;
  const RandomVariable& variable(const std::string& id) const;
  const Scm& scm(const std::string& id) const;

  // The unique probability measure, or the named one.
  const Measure& base(const std::string& id = "") const;
  // Name of a space, or "" when it was not declared.
  std::string space_name(const FiniteSpace& s) const;

  // A named query or inline JSON text.
  Query query(const std::string& name_or_json) const;
  Query parse_query(const nlohmann::json& j) const;

  // Base measure and every object on its space, in name order.
  Model engine_model(const std::string& measure_id = "") const;
};

ModelFile load_model(const std::string& path);
ModelFile parse_model(const nlohmann::json& j);

}  // namespace cooc::cli
