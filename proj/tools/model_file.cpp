#include "model_file.hpp"

#include <fstream>
#include <sstream>

namespace cooc::cli {

using nlohmann::json;

namespace {

template <class T>
const T& lookup(const std::map<std::string, T>& m, const std::string& id, const char* what) {
  auto it = m.find(id);
  if (it == m.end()) throw LoadError(std::string("unknown ") + what + " '" + id + "'");
  return it->second;
}

Rational rational_of(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) throw LoadError("rational must be a \"p/q\" or integer string, got " + v.dump());
  return parse_rational(v.get<std::string>());
}

std::vector<Rational> rationals(const json& arr) {
  std::vector<Rational> r;
  for (const auto& v : arr) r.push_back(rational_of(v));
  return r;
}

std::size_t point_of(const FiniteSpace& s, const json& v) {
  if (v.is_number_unsigned() || v.is_number_integer()) {
    long k = v.get<long>();
    if (k < 0 || static_cast<std::size_t>(k) >= s.size()) throw LoadError("outcome index out of range: " + v.dump());
    return static_cast<std::size_t>(k);
  }
  if (v.is_string()) {
    const auto& ls = s.labels();
    auto it = std::find(ls.begin(), ls.end(), v.get<std::string>());
    if (it == ls.end()) throw LoadError("unknown outcome label " + v.dump());
    return static_cast<std::size_t>(it - ls.begin());
  }
  throw LoadError("outcome must be an index or a label, got " + v.dump());
}

Event event_of(const FiniteSpace& s, const json& arr) {
  std::vector<std::size_t> m;
  for (const auto& v : arr) m.push_back(point_of(s, v));
  return Event(s, m);
}

MeasureKind kind_of(const std::string& k) {
  if (k == "probability") return MeasureKind::Probability;
  if (k == "finite") return MeasureKind::Finite;
  if (k == "base") return MeasureKind::Base;
  throw LoadError("unknown measure kind '" + k + "'");
}

std::size_t index_of(const std::string& key) {
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(key, &pos);
    if (pos != key.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw LoadError("index keys must be non-negative integers, got '" + key + "'");
  }
}

FiniteSpace space_decl(const json& j) {
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return make_space(j.at("size").get<std::size_t>(), labels);
}

Scm scm_decl(const json& j) {
  std::map<std::size_t, FiniteSpace> endo, exo;
  std::vector<std::size_t> ei, xi;
  for (const auto& [k, v] : j.at("endo").items()) {
    endo.emplace(index_of(k), space_decl(v));
    ei.push_back(index_of(k));
  }
  for (const auto& [k, v] : j.at("exo").items()) {
    exo.emplace(index_of(k), space_decl(v));
    xi.push_back(index_of(k));
  }
  IndexSet endo_i(ei), exo_i(xi);
  std::vector<FiniteSpace> ef;
  for (std::size_t i : exo_i) ef.push_back(exo.at(i));
  FiniteSpace exo_space = product_space(exo_i, ef);
  Measure law(exo_space, rationals(j.at("exo_law").at("weights")), MeasureKind::Probability);

  std::vector<FiniteSpace> nf;
  for (std::size_t i : endo_i) nf.push_back(endo.at(i));
  FiniteSpace endo_space = product_space(endo_i, nf);
  std::vector<std::size_t> table;
  for (const auto& row : j.at("mechanism").at("table")) {
    auto t = row.get<std::vector<std::size_t>>();
    if (t.size() != endo_i.size()) throw LoadError("mechanism row " + row.dump() + " has the wrong arity");
    for (std::size_t k = 0; k < t.size(); ++k)
      if (t[k] >= nf[k].size()) throw LoadError("mechanism row " + row.dump() + " is out of range");
    table.push_back(endo_space.encode(t));
  }
  return make_scm(endo_i, exo_i, endo, exo, law, table);
}

}  // namespace

const FiniteSpace& ModelFile::space(const std::string& id) const { return lookup(spaces, id, "space"); }
const Measure& ModelFile::measure(const std::string& id) const { return lookup(measures, id, "measure"); }
const RandomObject& ModelFile::object(const std::string& id) const { return lookup(objects, id, "object"); }
const RandomVariable& ModelFile::variable(const std::string& id) const { return lookup(variables, id, "variable"); }
const Scm& ModelFile::scm(const std::string& id) const { return lookup(scms, id, "scm"); }

const Measure& ModelFile::base(const std::string& id) const {
  if (!id.empty()) return measure(id);
  const Measure* found = nullptr;
  for (const auto& [name, m] : measures) {
    if (m.kind() != MeasureKind::Probability) continue;
    if (found) throw LoadError("several probability measures; name one with \"measure\" or --measure");
    found = &m;
  }
  if (!found) throw LoadError("no probability measure in the model");
  return *found;
}

std::string ModelFile::space_name(const FiniteSpace& s) const {
  for (const auto& [name, sp] : spaces)
    if (sp == s) return name;
  return "";
}

Query ModelFile::parse_query(const json& j) const {
  Query q;
  if (j.contains("measure")) q.measure = j.at("measure").get<std::string>();
  auto constraints = [&](const char* key) {
    Constraints cs;
    if (!j.contains(key)) return cs;
    for (const auto& c : j.at(key)) {
      const RandomObject& x = object(c.at("object").get<std::string>());
      cs.emplace_back(x, event_of(x.codomain(), c.at("event")));
    }
    return cs;
  };
  q.targets = constraints("targets");
  q.conditions = constraints("conditions");
  return q;
}

Query ModelFile::query(const std::string& name_or_json) const {
  if (!name_or_json.empty() && name_or_json.front() == '{') {
    json j;
    try {
      j = json::parse(name_or_json);
    } catch (const json::exception& e) {
      throw LoadError(std::string("inline query: ") + e.what());
    }
    return parse_query(j);
  }
  return parse_query(lookup(queries, name_or_json, "query"));
}

Model ModelFile::engine_model(const std::string& measure_id) const {
  const Measure& p = base(measure_id);
  Model m{p.space(), p, {}};
  for (const auto& [name, x] : objects)
    if (x.domain() == p.space()) m.objects.push_back(x);
  if (m.objects.empty()) throw LoadError("no objects on the base space");
  return m;
}

ModelFile parse_model(const json& j) {
  ModelFile mf;
  try {
    if (j.contains("spaces"))
      for (const auto& [id, v] : j.at("spaces").items()) mf.spaces.emplace(id, space_decl(v));
    if (j.contains("partitions"))
      for (const auto& [id, v] : j.at("partitions").items()) {
        const FiniteSpace& s = mf.space(v.at("space").get<std::string>());
        std::vector<std::vector<std::size_t>> blocks;
        for (const auto& b : v.at("blocks")) {
          std::vector<std::size_t> blk;
          for (const auto& pt : b) blk.push_back(point_of(s, pt));
          blocks.push_back(blk);
        }
        mf.partitions.emplace(id, Partition(s, blocks));
      }
    if (j.contains("measures"))
      for (const auto& [id, v] : j.at("measures").items()) {
        const FiniteSpace& s = mf.space(v.at("space").get<std::string>());
        MeasureKind k = kind_of(v.value("kind", std::string("probability")));
        mf.measures.emplace(id, Measure(s, rationals(v.at("weights")), k));
      }
    if (j.contains("objects"))
      for (const auto& [id, v] : j.at("objects").items()) {
        const FiniteSpace& dom = mf.space(v.at("domain").get<std::string>());
        const FiniteSpace& cod = mf.space(v.at("codomain").get<std::string>());
        std::vector<std::size_t> map;
        for (const auto& pt : v.at("map")) map.push_back(point_of(cod, pt));
        Partition df = v.contains("domain_field") ? lookup(mf.partitions, v.at("domain_field").get<std::string>(), "partition")
                                                  : Partition::discrete(dom);
        Partition cf = v.contains("codomain_field")
                           ? lookup(mf.partitions, v.at("codomain_field").get<std::string>(), "partition")
                           : Partition::discrete(cod);
        if (!(df.space() == dom) || !(cf.space() == cod))
          throw LoadError("object '" + id + "': field lives on another space");
        mf.objects.emplace(id, RandomObject(df, cf, map));
      }
    if (j.contains("variables"))
      for (const auto& [id, v] : j.at("variables").items())
        mf.variables.emplace(id, RandomVariable(mf.space(v.at("space").get<std::string>()), rationals(v.at("values"))));
    if (j.contains("scms"))
      for (const auto& [id, v] : j.at("scms").items()) mf.scms.emplace(id, scm_decl(v));
    if (j.contains("queries"))
      for (const auto& [id, v] : j.at("queries").items()) {
        mf.parse_query(v);  // resolve references now
        mf.queries.emplace(id, v);
      }
  } catch (const json::exception& e) {
    throw LoadError(std::string("malformed model: ") + e.what());
  } catch (const Error& e) {
    throw LoadError(e.what());
  }
  return mf;
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open model file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw LoadError(std::string("cannot parse '") + path + "': " + e.what());
  }
  return parse_model(j);
}

}  // namespace cooc::cli
