#include "padicfeas/report.hpp"

#include <stdexcept>

namespace padicfeas {

namespace {

[[noreturn]] void fail(const std::string& why) { throw std::invalid_argument("report: " + why); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

bool bool_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_boolean()) fail(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

std::uint64_t u64_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) fail(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

unsigned unsigned_field(const Json& j, const char* key) {
  const std::uint64_t v = u64_field(j, key);
  if (v > 0xffffffffu) fail(std::string("field '") + key + "' out of range");
  return static_cast<unsigned>(v);
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Json ints_to_json(const std::vector<Int>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(int_to_json(x));
  return out;
}

std::vector<Int> ints_from_json(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be a list");
  std::vector<Int> out;
  for (const auto& x : j) out.push_back(int_from_json(x, what));
  return out;
}

std::optional<Int> optional_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_null()) return std::nullopt;
  return int_from_json(v, key);
}

}  // namespace

Json int_to_json(const Int& v) { return to_string(v); }

Int int_from_json(const Json& j, const char* what) {
  if (!j.is_string()) fail(std::string(what) + " must be a decimal string");
  try {
    return parse_int(j.get<std::string>());
  } catch (const std::exception&) {
    fail(std::string(what) + ": '" + j.get<std::string>() + "' is not a decimal integer");
  }
}

Json poly_to_json(const SparsePoly& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) terms.push_back(Json::array({int_to_json(t.coeff), int_to_json(t.exp)}));
  Json out = Json::object();
  out["terms"] = std::move(terms);
  return out;
}

SparsePoly poly_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1 || !j.contains("terms")) fail("polynomial must be an object with the single key 'terms'");
  const Json& terms = j["terms"];
  if (!terms.is_array()) fail("'terms' must be a list");
  std::vector<Term> out;
  for (const auto& pair : terms) {
    if (!pair.is_array() || pair.size() != 2) fail("each term must be a [coefficient, exponent] pair");
    out.push_back({int_from_json(pair[0], "coefficient"), int_from_json(pair[1], "exponent")});
  }
  try {
    return SparsePoly::from_canonical_terms(std::move(out));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

SparsePoly parse_poly_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string("malformed polynomial file: ") + e.what());
  }
  return poly_from_json(j);
}

Json cnf_to_json(const Cnf3& formula) {
  Json clauses = Json::array();
  for (const auto& c : formula.clauses) {
    Json lits = Json::array();
    for (const auto& lit : c) lits.push_back(lit.negated ? -static_cast<long>(lit.var) : static_cast<long>(lit.var));
    clauses.push_back(std::move(lits));
  }
  Json out = Json::object();
  out["num_vars"] = formula.num_vars;
  out["clauses"] = std::move(clauses);
  return out;
}

Cnf3 cnf_from_json(const Json& j) {
  Cnf3 out;
  out.num_vars = unsigned_field(j, "num_vars");
  const Json& clauses = field(j, "clauses");
  if (!clauses.is_array()) fail("'clauses' must be a list");
  for (const auto& c : clauses) {
    if (!c.is_array()) fail("each clause must be a list of literals");
    Clause clause;
    for (const auto& lit : c) {
      if (!lit.is_number_integer()) fail("literals must be integers");
      const long v = lit.get<long>();
      if (v == 0) fail("literal 0 is not allowed");
      clause.push_back({static_cast<unsigned>(v < 0 ? -v : v), v < 0});
    }
    out.clauses.push_back(std::move(clause));
  }
  try {
    out.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return out;
}

Json decision_to_json(const PadicDecision& d) {
  Json out = Json::object();
  out["feasible"] = d.feasible;
  out["rule"] = std::string(to_string(d.rule));
  if (d.witness) {
    Json w = Json::object();
    w["residue"] = int_to_json(d.witness->residue);
    w["prime"] = int_to_json(d.witness->modulus.prime());
    w["exponent"] = d.witness->modulus.exponent();
    w["valuation_shift"] = int_to_json(d.witness->valuation_shift);
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json prime_to_json(const ProgressionPrime& p) {
  Json out = Json::object();
  out["n"] = p.n;
  out["q_n"] = int_to_json(p.q_n);
  out["k"] = int_to_json(p.k);
  out["prime"] = int_to_json(p.p);
  out["trials_used"] = p.trials_used;
  return out;
}

Json density_to_json(const DensityReport& r) {
  Json out = Json::object();
  out["M"] = int_to_json(r.M);
  out["x"] = int_to_json(from_u64(r.x));
  out["count"] = int_to_json(from_u64(r.count));
  out["phi"] = int_to_json(r.phi);
  out["predicted"] = r.predicted;
  out["ratio"] = r.ratio;
  return out;
}

Json transcript_to_json(const ReductionTranscript& t) {
  Json out = Json::object();
  out["kind"] = "transcript";
  out["formula"] = cnf_to_json(t.formula);
  out["n"] = t.n;
  out["q_n"] = int_to_json(t.q_n);
  out["seed"] = int_to_json(from_u64(t.seed));
  out["mode"] = std::string(to_string(t.mode));
  Json prime = Json::object();
  prime["strategy"] = std::string(to_string(t.prime_strategy));
  prime["fph_c"] = t.fph_c;
  prime["fph_c_prime"] = t.fph_c_prime;
  prime["k"] = int_to_json(t.prime_k);
  prime["trials_used"] = t.prime_trials;
  prime["p"] = int_to_json(t.prime);
  out["prime"] = std::move(prime);
  out["num_polys"] = t.num_polys;
  out["degree"] = int_to_json(t.degree);
  Json comb = Json::object();
  comb["passthrough"] = t.combination.passthrough;
  comb["bound"] = int_to_json(t.combination.bound);
  comb["a"] = ints_to_json(t.combination.a);
  comb["b"] = ints_to_json(t.combination.b);
  comb["g1"] = poly_to_json(t.combination.g1);
  comb["g2"] = poly_to_json(t.combination.g2);
  out["combination"] = std::move(comb);
  out["qnr"] = t.qnr ? int_to_json(*t.qnr) : Json(nullptr);
  out["h"] = poly_to_json(t.h);
  out["feasible"] = t.feasible;
  if (t.witness) {
    Json w = Json::object();
    w["t"] = int_to_json(from_u64(t.witness->t));
    w["root"] = int_to_json(t.witness->root);
    Json bits = Json::array();
    for (auto b : t.witness->assignment) bits.push_back(b != 0);
    w["assignment"] = std::move(bits);
    w["satisfies"] = t.witness->satisfies;
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

ReductionTranscript transcript_from_json(const Json& j) {
  if (string_field(j, "kind") != "transcript") fail("not a transcript");
  ReductionTranscript t;
  t.formula = cnf_from_json(field(j, "formula"));
  t.n = unsigned_field(j, "n");
  t.q_n = int_from_json(field(j, "q_n"), "q_n");
  const Int seed = int_from_json(field(j, "seed"), "seed");
  if (!fits_u64(seed)) fail("seed must fit in 64 bits");
  t.seed = to_u64(seed);
  try {
    t.mode = pipeline_mode_from_string(string_field(j, "mode"));
    const Json& prime = field(j, "prime");
    t.prime_strategy = prime_strategy_from_string(string_field(prime, "strategy"));
    t.fph_c = unsigned_field(prime, "fph_c");
    t.fph_c_prime = unsigned_field(prime, "fph_c_prime");
    t.prime_k = int_from_json(field(prime, "k"), "k");
    t.prime_trials = u64_field(prime, "trials_used");
    t.prime = int_from_json(field(prime, "p"), "p");
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  t.num_polys = u64_field(j, "num_polys");
  t.degree = int_from_json(field(j, "degree"), "degree");
  const Json& comb = field(j, "combination");
  t.combination.passthrough = bool_field(comb, "passthrough");
  t.combination.bound = int_from_json(field(comb, "bound"), "bound");
  t.combination.a = ints_from_json(field(comb, "a"), "a");
  t.combination.b = ints_from_json(field(comb, "b"), "b");
  t.combination.g1 = poly_from_json(field(comb, "g1"));
  t.combination.g2 = poly_from_json(field(comb, "g2"));
  t.qnr = optional_int(j, "qnr");
  t.h = poly_from_json(field(j, "h"));
  t.feasible = bool_field(j, "feasible");
  const Json& w = field(j, "witness");
  if (!w.is_null()) {
    PipelineWitness pw;
    const Int idx = int_from_json(field(w, "t"), "t");
    if (!fits_u64(idx)) fail("witness index must fit in 64 bits");
    pw.t = to_u64(idx);
    pw.root = int_from_json(field(w, "root"), "root");
    const Json& bits = field(w, "assignment");
    if (!bits.is_array()) fail("assignment must be a list");
    for (const auto& b : bits) {
      if (!b.is_boolean()) fail("assignment entries must be booleans");
      pw.assignment.push_back(b.get<bool>() ? 1 : 0);
    }
    pw.satisfies = bool_field(w, "satisfies");
    t.witness = std::move(pw);
  }
  return t;
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

Json parse_report(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string("malformed report: ") + e.what());
  }
}

}  // namespace padicfeas
