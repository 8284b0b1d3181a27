#include "job.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "charplab/discriminant.hpp"
#include "charplab/errors.hpp"
#include "charplab/limits.hpp"
#include "charplab/parse.hpp"
#include "charplab/perturb.hpp"

namespace charplab::cli {

namespace {

const std::set<std::string> kTopKeys = {
    "name", "description", "field", "variables", "ideal",
    "task", "params",      "limits", "expect"};
const std::set<std::string> kFieldKeys = {"p", "m", "modulus"};
const std::set<std::string> kLimitKeys = {"max_basis", "max_degree",
                                          "max_seconds"};
const std::set<std::string> kParamKeys = {
    "e_max",     "e_range",   "order",     "N",         "samples",
    "seed",      "degree_cap", "mode",     "targets",   "n_target",
    "f",         "subalgebra", "extension_variable",   "epsilon",
    "epsilons",  "tolerance", "probe",     "multiply",  "bracket_e",
    "colon",     "intersect", "eliminate"};
const std::set<std::string> kTasks = {"gb",   "length", "dim",  "hk",
                                      "fsig", "fpt",    "mult", "disc",
                                      "present", "perturb"};

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!obj.is_object()) throw InputError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw InputError("unknown key '" + key + "' in " + where);
    }
  }
}

std::uint64_t get_u64(const json& obj, const std::string& key,
                      std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj[key];
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw InputError("'" + key + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) throw InputError("'" + key + "' must be a string");
  return obj[key].get<std::string>();
}

std::vector<std::string> get_strings(const json& obj, const std::string& key) {
  std::vector<std::string> out;
  if (!obj.contains(key)) return out;
  const auto& v = obj[key];
  if (!v.is_array()) throw InputError("'" + key + "' must be a list of strings");
  for (const auto& s : v) {
    if (!s.is_string()) {
      throw InputError("'" + key + "' must be a list of strings");
    }
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::vector<Polynomial> parse_all(const std::vector<std::string>& texts,
                                  const RingPtr& ring) {
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(parse_polynomial(t, ring));
  return out;
}

json strings_json(std::span<const Polynomial> polys) {
  json out = json::array();
  for (const auto& f : polys) out.push_back(f.to_string());
  return out;
}

Table element_table(std::span<const Polynomial> polys) {
  Table t{{"index", "element"}, {}};
  for (std::size_t i = 0; i < polys.size(); ++i) {
    t.rows.push_back({std::to_string(i + 1), polys[i].to_string()});
  }
  return t;
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  if (v.is_object() && v.contains("num") && v.contains("den")) {
    return cell(v["num"]) + "/" + cell(v["den"]);
  }
  return v.dump();
}

// One row of the scalar entries of the payload, keys sorted.
Table scalar_table(const json& payload) {
  Table t;
  std::vector<std::string> row;
  for (const auto& [key, value] : payload.items()) {
    const bool rational = value.is_object() && value.contains("num");
    if (value.is_structured() && !rational) continue;
    t.header.push_back(key);
    row.push_back(cell(value));
  }
  t.rows.push_back(std::move(row));
  return t;
}

json estimate_json(const Estimate& e) {
  return json{{"value", rational_json(e.value)},
              {"spread", rational_json(e.spread)},
              {"single_step", e.single_step}};
}

std::string num_text(const mpq_class& r) { return r.get_num().get_str(); }
std::string den_text(const mpq_class& r) { return r.get_den().get_str(); }

struct Context {
  json job;
  json params;
  RingPtr ring;
  std::vector<Polynomial> ideal;
  std::vector<Polynomial> targets;
  std::string task;
};

RingPtr build_ring(const json& job) {
  if (!job.contains("field")) throw InputError("job needs a field");
  const json& field = job["field"];
  check_keys(field, kFieldKeys, "field");
  if (!field.contains("p")) throw InputError("field needs p");
  const std::uint64_t p = get_u64(field, "p", 0);
  const std::uint64_t m = get_u64(field, "m", 1);
  if (p > 0xffffffffull || m > 64 || m == 0) {
    throw InputError("field parameters out of range");
  }
  std::vector<std::uint32_t> modulus;
  if (field.contains("modulus")) {
    if (!field["modulus"].is_array()) {
      throw InputError("modulus must be a list of integers");
    }
    for (const auto& c : field["modulus"]) {
      if (!c.is_number_integer() || c.get<long long>() < 0) {
        throw InputError("modulus must be a list of nonnegative integers");
      }
      modulus.push_back(static_cast<std::uint32_t>(c.get<long long>() % p));
    }
  }
  auto F = GaloisField::create(static_cast<std::uint32_t>(p),
                               static_cast<std::uint32_t>(m), modulus);
  const auto vars = get_strings(job, "variables");
  if (vars.empty()) throw InputError("job needs at least one variable");
  return PolynomialRing::create(F, vars);
}

// The quotient used by the invariant tasks: ideal plus targets.
QuotientPresentation quotient(const Context& c) {
  std::vector<Polynomial> gens = c.ideal;
  gens.insert(gens.end(), c.targets.begin(), c.targets.end());
  return QuotientPresentation(c.ring, Ideal(c.ring, std::move(gens)));
}

std::uint64_t e_max(const Context& c) {
  const std::uint64_t e = get_u64(c.params, "e_max", 1);
  if (e == 0) throw InputError("e_max must be at least 1");
  return e;
}

void add_diagnostics(const InvariantSeries& s, bool hk, json& payload) {
  if (s.rows.size() < 2) return;
  const auto est = hk ? ehk_estimate(s) : fsig_estimate(s);
  payload["estimate"] = estimate_json(est);
  const auto diag = convergence_diagnostic(s);
  json devs = json::array();
  for (const auto& d : diag.deviations) devs.push_back(rational_json(d));
  payload["diagnostic"] = json{{"deviations", devs},
                               {"constant", rational_json(diag.constant)}};
}

std::pair<json, Table> series_task(const Context& c, bool hk) {
  const auto Q = quotient(c);
  const auto s = hk ? hk_series(Q, e_max(c)) : splitting_series(Q, e_max(c));
  const char* column = hk ? "length" : "a_e";
  json payload;
  Table table{{"e", "q", column, "normalized_num", "normalized_den"}, {}};
  json rows = json::array();
  json values = json::array();
  for (const auto& r : s.rows) {
    rows.push_back(json{{"e", r.e},
                        {"q", r.q},
                        {column, r.value},
                        {"normalized", rational_json(r.normalized)}});
    values.push_back(r.value);
    table.rows.push_back({std::to_string(r.e), std::to_string(r.q),
                          std::to_string(r.value), num_text(r.normalized),
                          den_text(r.normalized)});
  }
  payload["rows"] = rows;
  payload["values"] = values;
  payload["dim"] = Q.dim();
  add_diagnostics(s, hk, payload);
  return {payload, table};
}

std::pair<json, Table> gb_task(const Context& c) {
  Ideal I(c.ring, c.ideal);
  const auto colon_gens = parse_all(get_strings(c.params, "colon"), c.ring);
  if (!colon_gens.empty()) I = colon(I, Ideal(c.ring, colon_gens));
  const auto meet = parse_all(get_strings(c.params, "intersect"), c.ring);
  if (!meet.empty()) I = intersect(I, Ideal(c.ring, meet));
  if (c.params.contains("bracket_e")) {
    I = frobenius_power(I, get_u64(c.params, "bracket_e", 0));
  }
  if (c.params.contains("eliminate")) {
    const std::uint64_t k = get_u64(c.params, "eliminate", 0);
    if (k >= c.ring->num_variables()) {
      throw InputError("eliminate must leave at least one variable");
    }
    I = eliminate(I, static_cast<std::size_t>(k));
  }
  const auto order = MonomialOrder::parse(get_string(c.params, "order",
                                                     "grevlex"));
  const auto basis = I.basis(order);
  json payload{{"order", order.name()},
               {"basis", strings_json(basis->elements())},
               {"variables", I.ring()->variables()}};
  return {payload, element_table(basis->elements())};
}

std::pair<json, Table> length_task(const Context& c) {
  const Ideal I(c.ring, c.ideal);
  json payload{{"length", colength(I)}, {"m_power_in", m_power_in(I)}};
  return {payload, scalar_table(payload)};
}

std::pair<json, Table> dim_task(const Context& c) {
  const Ideal I(c.ring, c.ideal);
  json payload{{"dim", krull_dim(I)}};
  if (!c.targets.empty()) {
    payload["parameter_sequence"] =
        parameter_check(QuotientPresentation(c.ring, I), c.targets);
  }
  if (c.ideal.size() == 1) {
    payload["squarefree"] = is_squarefree_hypersurface(c.ideal[0]);
  }
  return {payload, scalar_table(payload)};
}

std::pair<json, Table> fpt_task(const Context& c) {
  Polynomial f(c.ring);
  if (c.params.contains("f")) {
    f = parse_polynomial(get_string(c.params, "f", ""), c.ring);
  } else if (c.ideal.size() == 1) {
    f = c.ideal[0];
  } else {
    throw InputError("fpt needs params.f or a single ideal generator");
  }
  const auto s = nu_series(f, e_max(c));
  Table table{{"e", "q", "nu", "lower_num", "lower_den", "upper_num",
               "upper_den"},
              {}};
  json rows = json::array();
  json values = json::array();
  for (const auto& r : s.rows) {
    rows.push_back(json{{"e", r.e},
                        {"q", r.q},
                        {"nu", r.nu},
                        {"lower", rational_json(r.lower)},
                        {"upper", rational_json(r.upper)}});
    values.push_back(r.nu);
    table.rows.push_back({std::to_string(r.e), std::to_string(r.q),
                          std::to_string(r.nu), num_text(r.lower),
                          den_text(r.lower), num_text(r.upper),
                          den_text(r.upper)});
  }
  const auto [lo, hi] = fpt_estimate(s);
  json payload{{"rows", rows},
               {"values", values},
               {"interval", json{{"lower", rational_json(lo)},
                                 {"upper", rational_json(hi)}}}};
  return {payload, table};
}

std::pair<json, Table> mult_task(const Context& c) {
  const auto Q = quotient(c);
  json payload{{"multiplicity", hs_multiplicity(Q)}, {"dim", Q.dim()}};
  return {payload, scalar_table(payload)};
}

json matrix_json(const PolyMatrix& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(strings_json(row));
  return out;
}

std::pair<json, Table> disc_task(const Context& c) {
  if (c.ideal.size() != 1) {
    throw InputError("disc needs exactly one relation in the ideal");
  }
  const std::string z = get_string(c.params, "extension_variable", "z");
  const FiniteExtension ext(c.ideal[0], z);
  json payload{{"discriminant", discriminant(ext).to_string()},
               {"degree", ext.degree()},
               {"trace_matrix", matrix_json(ext.trace_matrix())}};
  if (c.params.contains("multiply")) {
    const auto g = parse_polynomial(get_string(c.params, "multiply", ""),
                                    c.ring);
    payload["mult_matrix"] = matrix_json(ext.mult_matrix(g));
  }
  if (c.params.contains("epsilon")) {
    const auto eps = parse_polynomial(get_string(c.params, "epsilon", ""),
                                      c.ring);
    const auto r = disc_congruence_check(ext, eps,
                                         get_u64(c.params, "n_target", 1));
    payload["base"] = r.base.to_string();
    payload["perturbed"] = r.perturbed.to_string();
    payload["perturbation_order"] =
        r.perturbation_order ? json(*r.perturbation_order) : json("inf");
    payload["congruence_order"] =
        r.congruence_order ? json(*r.congruence_order) : json("inf");
    payload["n_target"] = r.target;
    payload["pass"] = r.pass;
  }
  return {payload, scalar_table(payload)};
}

std::pair<json, Table> present_task(const Context& c, const json& kernel) {
  json payload = kernel;
  Table table{{"index", "element"}, {}};
  std::size_t i = 0;
  for (const auto& g : kernel["kernel"]) {
    table.rows.push_back({std::to_string(++i), g.get<std::string>()});
  }
  payload["dim"] = krull_dim(Ideal(c.ring, c.ideal));
  if (!c.targets.empty()) payload["dim_with_targets"] = quotient(c).dim();
  return {payload, table};
}

std::pair<json, Table> perturb_task(const Context& c) {
  if (c.targets.empty()) throw InputError("perturb needs targets");
  PerturbationPlan plan(QuotientPresentation(c.ring, Ideal(c.ring, c.ideal)));
  plan.targets = c.targets;
  plan.mode = parse_mode(get_string(c.params, "mode", ""));
  plan.neighborhood = get_u64(c.params, "N", 1);
  plan.degree_cap = get_u64(c.params, "degree_cap", plan.neighborhood);
  plan.samples = get_u64(c.params, "samples", 1);
  plan.seed = get_u64(c.params, "seed", 0);
  plan.n_target = get_u64(c.params, "n_target", 1);
  plan.probe = get_string(c.params, "probe", "hk");
  plan.extension_variable = get_string(c.params, "extension_variable", "z");
  if (c.params.contains("e_range")) {
    const auto& r = c.params["e_range"];
    if (!r.is_array()) throw InputError("'e_range' must be a list");
    plan.e_range.clear();
    for (const auto& e : r) {
      if (!e.is_number_unsigned()) {
        throw InputError("'e_range' entries must be positive integers");
      }
      plan.e_range.push_back(e.get<std::uint64_t>());
    }
  } else {
    plan.e_range.clear();
    for (std::uint64_t e = 1; e <= e_max(c); ++e) plan.e_range.push_back(e);
  }
  if (c.params.contains("tolerance")) {
    plan.tolerance = rational_from_json(c.params["tolerance"], "tolerance");
  }
  if (c.params.contains("epsilons")) {
    const auto& lists = c.params["epsilons"];
    if (!lists.is_array()) throw InputError("'epsilons' must be a list");
    for (const auto& list : lists) {
      json wrapper{{"e", list}};
      plan.epsilons.push_back(parse_all(get_strings(wrapper, "e"), c.ring));
    }
    plan.samples = plan.epsilons.size();
  }

  const auto report = run_experiment(plan);
  Table table{{"sample", "epsilon", "e", "base", "perturbed", "delta_num",
               "delta_den", "verdict"},
              {}};
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row{{"sample", r.sample},
             {"epsilon", r.epsilon},
             {"e", r.e},
             {"base", r.base},
             {"perturbed", r.perturbed},
             {"delta", r.delta ? rational_json(*r.delta) : json("inf")},
             {"verdict", r.verdict}};
    rows.push_back(row);
    table.rows.push_back({std::to_string(r.sample), r.epsilon,
                          std::to_string(r.e), r.base, r.perturbed,
                          r.delta ? num_text(*r.delta) : "inf",
                          r.delta ? den_text(*r.delta) : "",
                          r.verdict});
  }
  json samples = json::array();
  for (const auto& s : report.samples) {
    json entry{{"sample", s.sample},
               {"epsilon", s.epsilon},
               {"verdict", s.verdict}};
    if (!s.note.empty()) entry["note"] = s.note;
    if (s.base_estimate) entry["base_estimate"] = estimate_json(*s.base_estimate);
    if (s.perturbed_estimate) {
      entry["perturbed_estimate"] = estimate_json(*s.perturbed_estimate);
    }
    if (s.tolerance) entry["tolerance"] = rational_json(*s.tolerance);
    samples.push_back(entry);
  }
  json properties = json::object();
  for (const auto& v : report.properties) {
    properties[v.property] = json{{"verdict", v.verdict}, {"detail", v.detail}};
  }
  json payload{{"mode", mode_name(report.mode)},
               {"seed", report.seed},
               {"prng", report.prng},
               {"e_range", report.e_range},
               {"thresholds", report.thresholds},
               {"rows", rows},
               {"samples", samples},
               {"properties", properties},
               {"notes", report.notes},
               {"passed", report.passed()}};
  return {payload, table};
}

// Compares the payload against the job's expectations.
std::vector<std::string> check_expectations(const json& expect,
                                            const json& payload) {
  std::vector<std::string> failures;
  for (const auto& [key, want] : expect.items()) {
    if (key == "error") continue;
    if (key == "estimate_within") {
      if (!payload.contains("estimate")) {
        failures.push_back("estimate_within: no estimate");
        continue;
      }
      const auto value = rational_from_json(want.at("value"), "expect value");
      const auto tol = rational_from_json(want.at("tolerance"),
                                          "expect tolerance");
      const auto got = rational_from_json(payload["estimate"]["value"],
                                          "estimate");
      if (abs(got - value) > tol) {
        failures.push_back("estimate_within: got " + rational_text(got));
      }
      continue;
    }
    if (!payload.contains(key)) {
      failures.push_back(key + ": missing from result");
    } else if (payload[key] != want) {
      failures.push_back(key + ": expected " + want.dump() + ", got " +
                         payload[key].dump());
    }
  }
  return failures;
}

json validate(const json& job) {
  check_keys(job, kTopKeys, "job");
  if (!job.contains("task") || !job["task"].is_string() ||
      !kTasks.count(job["task"].get<std::string>())) {
    throw InputError("job needs a task, one of gb, length, dim, hk, fsig, "
                     "fpt, mult, disc, present, perturb");
  }
  json params = job.value("params", json::object());
  check_keys(params, kParamKeys, "params");
  if (job.contains("limits")) check_keys(job["limits"], kLimitKeys, "limits");
  if (job.contains("expect") && !job["expect"].is_object()) {
    throw InputError("expect must be an object");
  }
  if (job.contains("ideal")) get_strings(job, "ideal");
  return params;
}

Limits job_limits(const json& job) {
  Limits l;
  if (!job.contains("limits")) return l;
  const json& j = job["limits"];
  l.max_basis = get_u64(j, "max_basis", l.max_basis);
  l.max_degree = get_u64(j, "max_degree", l.max_degree);
  if (j.contains("max_seconds")) {
    if (!j["max_seconds"].is_number() || j["max_seconds"].get<double>() <= 0) {
      throw InputError("max_seconds must be a positive number");
    }
    l.max_seconds = j["max_seconds"].get<double>();
  }
  return l;
}

void apply_overrides(json& job, const Overrides& o) {
  if (o.task) {
    if (job.contains("task") && job["task"] != *o.task) {
      throw InputError("job task '" + job["task"].get<std::string>() +
                       "' does not match subcommand '" + *o.task + "'");
    }
    job["task"] = *o.task;
  }
  auto set_param = [&](const char* key, const json& value) {
    if (!job.contains("params")) job["params"] = json::object();
    job["params"][key] = value;
  };
  auto set_limit = [&](const char* key, const json& value) {
    if (!job.contains("limits")) job["limits"] = json::object();
    job["limits"][key] = value;
  };
  if (o.order) set_param("order", *o.order);
  if (o.e_max) set_param("e_max", *o.e_max);
  if (o.neighborhood) set_param("N", *o.neighborhood);
  if (o.samples) set_param("samples", *o.samples);
  if (o.seed) set_param("seed", *o.seed);
  if (o.limit_basis) set_limit("max_basis", *o.limit_basis);
  if (o.limit_degree) set_limit("max_degree", *o.limit_degree);
}

std::pair<json, Table> dispatch(Context& c) {
  json kernel;
  if (c.params.contains("subalgebra")) {
    const auto gens = parse_all(get_strings(c.params, "subalgebra"), c.ring);
    if (gens.empty()) throw InputError("subalgebra needs generators");
    auto pres = subalgebra_presentation(gens);
    const auto kgens = pres.kernel.generators();
    kernel = json{{"variables", pres.ring->variables()},
                  {"kernel", strings_json(kgens)}};
    std::vector<Polynomial> ideal(kgens.begin(), kgens.end());
    // Ideal and target strings live in the presentation ring.
    c.ring = pres.ring;
    auto extra = parse_all(get_strings(c.job, "ideal"), c.ring);
    ideal.insert(ideal.end(), extra.begin(), extra.end());
    c.ideal = std::move(ideal);
  } else {
    c.ideal = parse_all(get_strings(c.job, "ideal"), c.ring);
  }
  c.targets = parse_all(get_strings(c.params, "targets"), c.ring);

  if (c.task == "gb") return gb_task(c);
  if (c.task == "length") return length_task(c);
  if (c.task == "dim") return dim_task(c);
  if (c.task == "hk") return series_task(c, true);
  if (c.task == "fsig") return series_task(c, false);
  if (c.task == "fpt") return fpt_task(c);
  if (c.task == "mult") return mult_task(c);
  if (c.task == "disc") return disc_task(c);
  if (c.task == "present") {
    if (kernel.is_null()) throw InputError("present needs params.subalgebra");
    return present_task(c, kernel);
  }
  return perturb_task(c);
}

}  // namespace

json load_job(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read job file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw InputError("job file " + path.filename().string() +
                     " is not valid JSON (byte " + std::to_string(e.byte) + ")");
  }
}

Outcome run_job(json job, const Overrides& overrides) {
  Outcome out;
  json payload;
  try {
    apply_overrides(job, overrides);
    Context c;
    c.params = validate(job);
    c.job = job;
    c.task = job["task"].get<std::string>();
    c.ring = build_ring(job);
    ScopedLimits scoped(job_limits(job));
    auto [p, table] = dispatch(c);
    payload = std::move(p);
    out.table = std::move(table);
  } catch (const LimitError& e) {
    out.exit_code = kExitLimit;
    out.error_kind = "limit";
    out.error_message = e.what();
  } catch (const InputError& e) {
    out.exit_code = kExitInput;
    out.error_kind = "input";
    out.error_message = e.what();
  } catch (const json::exception& e) {
    out.exit_code = kExitInput;
    out.error_kind = "input";
    out.error_message = e.what();
  } catch (const std::exception& e) {
    out.exit_code = kExitInternal;
    out.error_kind = "internal";
    out.error_message = e.what();
  }

  json provenance{{"version", kVersion}};
  if (job.is_object() && job.value("task", json()) == "perturb") {
    provenance["prng"] = "SplitMix64";
    if (job.contains("params") && job["params"].is_object()) {
      provenance["seed"] = job["params"].value("seed", json(0));
    }
  }
  out.document = json{{"job", job}, {"provenance", provenance}};
  if (out.exit_code == kExitOk) {
    out.document["result"] = payload;
  } else {
    out.document["error"] =
        json{{"kind", out.error_kind}, {"message", out.error_message}};
  }

  if (job.is_object() && job.contains("expect") && job["expect"].is_object()) {
    const json& expect = job["expect"];
    if (expect.contains("error")) {
      if (out.error_kind != expect["error"]) {
        out.expectation_failures.push_back(
            "error: expected " + expect["error"].dump() + ", got " +
            (out.error_kind.empty() ? "success" : out.error_kind));
      }
    } else if (out.exit_code == kExitOk) {
      try {
        out.expectation_failures = check_expectations(expect, payload);
      } catch (const std::exception& e) {
        out.expectation_failures.push_back(std::string("expect: ") + e.what());
      }
    }
    const bool ok = out.expectation_failures.empty();
    out.document["expect"] =
        json{{"passed", ok}, {"failures", out.expectation_failures}};
    if (ok && expect.contains("error")) out.exit_code = kExitOk;
    if (!ok) out.exit_code = kExitExpectation;
  }
  if (!out.error_kind.empty()) {
    out.table = Table{{"error", "message"},
                      {{out.error_kind, out.error_message}}};
  }
  out.document["status"] = out.exit_code;
  return out;
}

SuiteOutcome run_suite(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw InputError("suite directory " + dir.string() + " not found");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  SuiteOutcome suite;
  suite.summary.header = {"job", "task", "status", "expectations"};
  for (const auto& path : files) {
    const std::string name = path.stem().string();
    Outcome o;
    try {
      o = run_job(load_job(path));
    } catch (const InputError& e) {
      o.exit_code = kExitInput;
      o.error_kind = "input";
      o.error_message = e.what();
      o.document = json{{"error", json{{"kind", "input"},
                                       {"message", e.what()}}},
                        {"status", kExitInput}};
      o.table = Table{{"error", "message"}, {{"input", e.what()}}};
    }
    std::string task = "?";
    if (o.document.contains("job") && o.document["job"].is_object()) {
      task = o.document["job"].value("task", "?");
    }
    const bool has_expect = o.document.contains("expect");
    std::string verdict = "none";
    if (has_expect) verdict = o.expectation_failures.empty() ? "pass" : "fail";
    if (o.exit_code != kExitOk || (has_expect && verdict == "fail")) {
      suite.passed = false;
    }
    suite.summary.rows.push_back(
        {name, task, std::to_string(o.exit_code), verdict});
    suite.jobs.emplace_back(name, std::move(o));
  }
  return suite;
}

}  // namespace charplab::cli
