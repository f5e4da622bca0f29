#include "model_file.hpp"

#include "cooc/suite.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace cooc;
using cooc::cli::LoadError;
using cooc::cli::ModelFile;
using nlohmann::json;

namespace {

struct Common {
  std::string model;
  std::string measure;
  int decimal = -1;
  bool as_json = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--model", c.model, "Model file (JSON)")->required();
  sub->add_option("--measure", c.measure, "Base probability measure id");
  sub->add_option("--decimal", c.decimal, "Add a decimal rendering with this many digits")->check(CLI::Range(0, 60));
  sub->add_flag("--json", c.as_json, "Machine-readable output");
}

std::string show(const Rational& r, const Common& c) {
  std::string s = to_string(r);
  if (c.decimal >= 0) s += " (" + to_decimal(r, static_cast<unsigned>(c.decimal)) + ")";
  return s;
}

json rat_array(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

std::string joined(const std::vector<Rational>& v, const Common& c) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + show(v[k], c);
  return s;
}

std::string tuple_text(const FiniteSpace& s, const std::vector<std::size_t>& w) {
  if (s.is_product() && w.size() == s.coordinates().size()) return s.label(s.encode(w));
  std::string r = "(";
  for (std::size_t k = 0; k < w.size(); ++k) r += (k ? "," : "") + std::to_string(w[k]);
  return r + ")";
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> r;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) r.push_back(item);
  return r;
}

const Measure& query_base(const ModelFile& mf, const cli::Query& q, const Common& c) {
  return mf.base(!q.measure.empty() ? q.measure : c.measure);
}

int cmd_prob(const Common& c, const std::string& query, const std::string& object) {
  ModelFile mf = cli::load_model(c.model);
  cli::Query q = mf.query(query);
  const Measure& p = query_base(mf, q, c);
  CoocQuery cq(p, q.targets, q.conditions);
  if (!object.empty()) {
    const RandomObject& z = mf.object(object);
    CondMeasure m = cond_cooc_measure(cq, z);
    if (c.as_json) {
      emit({{"null_condition", m.null_condition}, {"object", object}, {"weights", rat_array(m.measure.weights())}});
    } else {
      for (std::size_t y = 0; y < z.codomain().size(); ++y)
        std::cout << z.codomain().label(y) << ": " << show(m.measure.weight(y), c) << "\n";
      if (m.null_condition) std::cout << "null_condition: true\n";
    }
    return 0;
  }
  CondValue v = q.conditions.empty() ? CondValue{prob_cooc_objects(cq), false} : cond_prob_objects(cq);
  if (c.as_json) {
    emit({{"null_condition", v.null_condition}, {"value", to_string(v.value)}});
  } else {
    std::cout << show(v.value, c) << "\n";
    if (v.null_condition) std::cout << "null_condition: true\n";
  }
  return 0;
}

int cmd_kernel(const Common& c, const std::string& source, const std::string& target, const std::string& query) {
  ModelFile mf = cli::load_model(c.model);
  cli::Query q = query.empty() ? cli::Query{} : mf.query(query);
  const Measure& p = query_base(mf, q, c);
  const RandomObject &x1 = mf.object(source), &x3 = mf.object(target);
  Kernel k = cond_kernel(p, x1, x3, q.conditions, q.targets);
  auto support = k.support();
  if (c.as_json) {
    json rows = json::array();
    for (const auto& r : k.rows) rows.push_back(rat_array(r));
    emit({{"null_condition", k.null_condition}, {"rows", rows}, {"source", source}, {"support", support},
          {"target", target}});
  } else {
    for (std::size_t x = 0; x < k.rows.size(); ++x)
      std::cout << x1.codomain().label(x) << ": " << joined(k.rows[x], c) << "\n";
    std::cout << "support:";
    for (std::size_t x : support) std::cout << " " << x1.codomain().label(x);
    std::cout << "\n";
    if (k.null_condition) std::cout << "null_condition: true\n";
  }
  return 0;
}

int cmd_density(const Common& c, const std::string& objects, const std::string& bases) {
  ModelFile mf = cli::load_model(c.model);
  const Measure& p = mf.base(c.measure);
  ObjectFamily fam;
  std::map<std::string, std::size_t> index;
  std::vector<std::size_t> idx;
  for (const auto& name : split_csv(objects)) {
    std::size_t i = idx.size() + 1;
    fam.emplace(i, mf.object(name));
    index.emplace(name, i);
    idx.push_back(i);
  }
  if (idx.empty()) throw Error(ErrorCode::EmptyIndexSet, "no objects given");
  IndexSet I(idx);
  Density f = [&] {
    if (bases.empty()) return density_wrt_marginals(p, fam, I);
    BaseFamily bf;
    for (const auto& item : split_csv(bases)) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw LoadError("--bases entries look like OBJECT=MEASURE, got '" + item + "'");
      std::string obj = item.substr(0, eq);
      auto it = index.find(obj);
      if (it == index.end()) throw LoadError("base given for unlisted object '" + obj + "'");
      bf.emplace(it->second, mf.measure(item.substr(eq + 1)));
    }
    return density_wrt_base(p, fam, I, bf);
  }();
  if (c.as_json) {
    emit({{"base", base_kind_name(f.kind)}, {"indices", idx}, {"values", rat_array(f.values)}});
  } else {
    std::cout << "indices: " << to_string(I) << "\n";
    std::cout << "base: " << base_kind_name(f.kind) << "\n";
    std::cout << "values: " << joined(f.values, c) << "\n";
  }
  return 0;
}

int cmd_eint(const Common& c, const std::string& variable, const std::string& object, const std::string& given,
             const std::string& query) {
  ModelFile mf = cli::load_model(c.model);
  cli::Query q = query.empty() ? cli::Query{} : mf.query(query);
  const Measure& p = query_base(mf, q, c);
  const RandomVariable& y = mf.variable(variable);
  const RandomObject& x2 = mf.object(object);
  if (given.empty()) {
    EIntegralResult r = cond_expectation_event(y, CoocQuery(p, q.targets, q.conditions), x2);
    if (c.as_json) {
      emit({{"null_condition", r.null_condition}, {"value", to_string(r.value)}});
    } else {
      std::cout << show(r.value, c) << "\n";
      if (r.null_condition) std::cout << "null_condition: true\n";
    }
    return 0;
  }
  const RandomObject& x1 = mf.object(given);
  PointwiseConditional r = cond_expectation_object(p, y, x1, x2, q.conditions, q.targets);
  std::vector<std::size_t> support = r.reference.support().members();
  if (c.as_json) {
    emit({{"null_condition", r.null_condition}, {"support", support}, {"values", rat_array(r.values)}});
  } else {
    for (std::size_t x = 0; x < r.values.size(); ++x)
      std::cout << x1.codomain().label(x) << ": " << show(r.values[x], c) << "\n";
    if (r.null_condition) std::cout << "null_condition: true\n";
  }
  return 0;
}

int cmd_ci(const Common& c, const std::string& xs, const std::string& ys, const std::string& given,
           const std::string& query) {
  ModelFile mf = cli::load_model(c.model);
  cli::Query q = query.empty() ? cli::Query{} : mf.query(query);
  const Measure& p = query_base(mf, q, c);
  const RandomObject &x = mf.object(xs), &y = mf.object(ys);
  CIResult r = given.empty() ? check_cond_independence(p, ci::ObjectsGivenEvent{q.conditions, x, y, {}, {}})
                             : check_cond_independence(p, ci::ObjectsGivenObject{mf.object(given), x, y,
                                                                                   q.conditions, {}, {}});
  if (c.as_json) {
    emit({{"independent", r.independent}, {"null_condition", r.null_condition}});
  } else {
    std::cout << "independent: " << (r.independent ? "true" : "false") << "\n";
    if (r.null_condition) std::cout << "null_condition: true\n";
  }
  return 0;
}

void print_law(const Measure& law, const Common& c) {
  if (c.as_json) {
    json labels = json::array();
    for (std::size_t x = 0; x < law.space().size(); ++x) labels.push_back(law.space().label(x));
    emit({{"points", labels}, {"weights", rat_array(law.weights())}});
    return;
  }
  for (std::size_t x = 0; x < law.space().size(); ++x)
    std::cout << law.space().label(x) << ": " << show(law.weight(x), c) << "\n";
}

int cmd_scm(const Common& c, const std::string& id, const std::string& action, std::size_t index, std::size_t value) {
  ModelFile mf = cli::load_model(c.model);
  const Scm& m = mf.scm(id);
  if (action == "solve") {
    SolutionMap s = solve(m);
    json out = json::object();
    for (std::size_t e = 0; e < s.solutions.size(); ++e) {
      if (!s.visited[e]) continue;
      json sols = json::array();
      for (std::size_t x : s.solutions[e]) sols.push_back(m.endo_space.label(x));
      out[m.exo_space.label(e)] = sols;
    }
    if (c.as_json) {
      emit({{"solutions", out}});
    } else {
      for (const auto& [e, sols] : out.items()) {
        std::cout << e << ":";
        for (const auto& x : sols) std::cout << " " << x.get<std::string>();
        std::cout << "\n";
      }
    }
    // Fails with the witnessing exogenous point unless every solution is unique.
    observational_distribution(m);
    return 0;
  }
  if (action == "observe") {
    print_law(observational_distribution(m), c);
    return 0;
  }
  if (action == "intervene") {
    print_law(observational_distribution(intervene(m, index, value)), c);
    return 0;
  }
  throw LoadError("unknown scm action '" + action + "' (solve, observe, intervene)");
}

int cmd_check(const Common& c, const std::string& theorems, std::size_t cases, std::uint64_t seed) {
  ModelFile mf = cli::load_model(c.model);
  std::vector<Model> models{mf.engine_model(c.measure)};
  SuiteOptions opts;
  opts.theorems = split_csv(theorems);
  opts.cases = cases;
  opts.seed = seed;
  SuiteReport rep = run_suite(models, opts);
  if (c.as_json) {
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"cases", r.result.cases},
                      {"failures", r.result.failures},
                      {"first_failure", r.result.first_failure},
                      {"id", r.id},
                      {"title", r.title}});
    emit({{"ok", rep.ok()}, {"rows", rows}, {"seed", seed}});
  } else {
    for (const auto& r : rep.rows) {
      std::cout << (r.result.ok() ? "PASS " : "FAIL ") << r.id << " " << r.title << ": " << r.result.cases
                << " cases, " << r.result.failures << " failures";
      if (!r.result.ok()) std::cout << " (first: " << r.result.first_failure << ")";
      std::cout << "\n";
    }
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact co-occurrence probability engine"};
  app.require_subcommand(1);
  Common c;
  std::string query, object, source, target, objects, bases, variable, given, xs, ys, scm_id, action, theorems;
  std::size_t index = 0, value = 0, cases = 0;
  std::uint64_t seed = 0;

  auto* prob = app.add_subcommand("prob", "Co-occurrence probability or measure of a query");
  add_common(prob, c);
  prob->add_option("--query", query, "Query name or inline JSON")->required();
  prob->add_option("--object", object, "Print the measure P[Z; targets | conditions] for this object");

  auto* kernel = app.add_subcommand("kernel", "Conditional kernel P[target, targets | source, conditions]");
  add_common(kernel, c);
  kernel->add_option("--source", source)->required();
  kernel->add_option("--target", target)->required();
  kernel->add_option("--query", query, "Query supplying target and condition constraints");

  auto* density = app.add_subcommand("density", "Density of the joint law of several objects");
  add_common(density, c);
  density->add_option("--objects", objects, "Comma-separated objects, indexed 1..n")->required();
  density->add_option("--bases", bases, "OBJECT=MEASURE pairs; default: the marginals");

  auto* eint = app.add_subcommand("eint", "E-integral, given events or given an object");
  add_common(eint, c);
  eint->add_option("--variable", variable)->required();
  eint->add_option("--object", object, "Object whose codomain carries the variable")->required();
  eint->add_option("--given", given, "Conditioning object");
  eint->add_option("--query", query, "Query supplying target and condition constraints");

  auto* cis = app.add_subcommand("ci", "Conditional independence of two objects");
  add_common(cis, c);
  cis->add_option("--x", xs)->required();
  cis->add_option("--y", ys)->required();
  cis->add_option("--given", given, "Conditioning object");
  cis->add_option("--query", query, "Query whose conditions are conditioned on");

  auto* scm = app.add_subcommand("scm", "Structural causal models");
  add_common(scm, c);
  scm->add_option("--scm", scm_id)->required();
  scm->add_option("action", action, "solve | observe | intervene")->required();
  scm->add_option("--index", index, "Endogenous index for intervene");
  scm->add_option("--value", value, "Outcome index for intervene");

  auto* check = app.add_subcommand("check", "Run the theorem suite on the model and random models");
  add_common(check, c);
  check->add_option("--theorems", theorems, "Comma-separated theorem ids");
  check->add_option("--cases", cases, "Random models in addition to the file's model");
  check->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*prob) return cmd_prob(c, query, object);
    if (*kernel) return cmd_kernel(c, source, target, query);
    if (*density) return cmd_density(c, objects, bases);
    if (*eint) return cmd_eint(c, variable, object, given, query);
    if (*cis) return cmd_ci(c, xs, ys, given, query);
    if (*scm) return cmd_scm(c, scm_id, action, index, value);
    if (*check) return cmd_check(c, theorems, cases, seed);
  } catch (const LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (is_witness_error(e.code())) {
      std::cerr << "witness:";
      for (std::size_t w : e.witness()) std::cerr << " " << w;
      std::cerr << "\n";
      return 4;
    }
    return 3;
  }
  return 0;
}
