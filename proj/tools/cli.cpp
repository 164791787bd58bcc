#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "padicfeas/errors.hpp"
#include "padicfeas/padic.hpp"
#include "padicfeas/plaisted.hpp"
#include "padicfeas/primes.hpp"
#include "padicfeas/reduce.hpp"
#include "padicfeas/report.hpp"

namespace padicfeas::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct Options {
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string out_path;
  bool quiet = false;

  std::string prime;
  std::string poly_file;
  std::string expr;
  bool square_first = false;
  std::uint64_t degree_cap = OracleCaps{}.degree;
  std::uint64_t candidate_cap = OracleCaps{}.candidates;

  std::vector<std::string> binomial;  // c1 a1 c2 a2

  unsigned n = 0;
  std::string strategy = "fph-sample";
  unsigned fph_c = 2;
  unsigned fph_c_prime = 2;
  std::uint64_t k_max = PrimeSearchConfig{}.k_max;

  std::vector<std::string> density_pairs;
  std::uint64_t sieve_max = SieveCaps{}.max_x;

  std::string cnf_file;
  std::string mode = "randomized";
  unsigned repeats = 5;
  unsigned max_vars = PipelineConfig{}.max_vars;

  std::string transcript_file;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t effective_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("PADICFEAS_SEED")) {
    const Int v = parse_int(env);
    if (!fits_u64(v)) throw std::invalid_argument("PADICFEAS_SEED must be a 64-bit unsigned integer");
    return to_u64(v);
  }
  return kDefaultSeed;
}

Int prime_arg(const Options& o) {
  if (o.prime.empty()) throw std::invalid_argument("--prime is required");
  const Int p = parse_int(o.prime);
  if (!is_prime(p)) throw std::invalid_argument("--prime " + o.prime + " is not prime");
  return p;
}

SparsePoly poly_arg(const Options& o) {
  if (!o.poly_file.empty() && !o.expr.empty()) throw std::invalid_argument("give a polynomial file or --expr, not both");
  if (!o.expr.empty()) return parse_expression(o.expr);
  if (o.poly_file.empty()) throw std::invalid_argument("a polynomial file or --expr is required");
  return parse_poly_text(read_file(o.poly_file));
}

OracleCaps oracle_caps(const Options& o) {
  OracleCaps caps;
  caps.degree = o.degree_cap;
  caps.candidates = o.candidate_cap;
  return caps;
}

PrimeSearchConfig prime_config(const Options& o) {
  PrimeSearchConfig c;
  c.strategy = prime_strategy_from_string(o.strategy);
  c.fph_c = o.fph_c;
  c.fph_c_prime = o.fph_c_prime;
  c.k_max = o.k_max;
  return c;
}

Json prime_config_json(const PrimeSearchConfig& c) {
  Json j = Json::object();
  j["strategy"] = std::string(to_string(c.strategy));
  j["fph_c"] = c.fph_c;
  j["fph_c_prime"] = c.fph_c_prime;
  j["k_max"] = c.k_max;
  return j;
}

Json caps_json(const OracleCaps& c) {
  Json j = Json::object();
  j["degree"] = c.degree;
  j["candidates"] = c.candidates;
  return j;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  int decide_binomial_cmd() {
    if (o_.binomial.size() != 4) throw std::invalid_argument("decide-binomial takes c1 a1 c2 a2");
    const Int c1 = parse_int(o_.binomial[0]), a1 = parse_int(o_.binomial[1]);
    const Int c2 = parse_int(o_.binomial[2]), a2 = parse_int(o_.binomial[3]);
    const Int p = prime_arg(o_);
    Json config = base_config();
    config["prime"] = to_string(p);
    log_config(config);
    const PadicDecision d = decide_binomial(c1, a1, c2, a2, p);
    Json input = Json::object();
    input["c1"] = int_to_json(c1);
    input["a1"] = int_to_json(a1);
    input["c2"] = int_to_json(c2);
    input["a2"] = int_to_json(a2);
    Json r = report("decision", config);
    r["input"] = std::move(input);
    r["result"] = decision_to_json(d);
    emit(r);
    say(std::string(d.feasible ? "feasible" : "infeasible") + " (" + std::string(to_string(d.rule)) + ")");
    return d.feasible ? kExitTrue : kExitFalse;
  }

  int decide_cmd() {
    const SparsePoly f = poly_arg(o_);
    const Int p = prime_arg(o_);
    const OracleCaps caps = oracle_caps(o_);
    Json config = base_config();
    config["prime"] = to_string(p);
    config["caps"] = caps_json(caps);
    log_config(config);
    PadicDecision d;
    std::string method;
    if (f.term_count() == 2) {
      // Terms are stored by increasing exponent.
      const auto& lo = f.terms()[0];
      const auto& hi = f.terms()[1];
      d = decide_binomial(hi.coeff, hi.exp, lo.coeff, lo.exp, p);
      method = "binomial";
    } else {
      d = decide_bruteforce_qp_detailed(f, p, caps);
      method = "residue-search";
    }
    Json r = report("decision", config);
    r["input"] = poly_to_json(f);
    r["method"] = method;
    r["result"] = decision_to_json(d);
    emit(r);
    say(std::string(d.feasible ? "feasible" : "infeasible") + " over Q_" + to_string(p) + " (" +
        std::string(to_string(d.rule)) + ")");
    return d.feasible ? kExitTrue : kExitFalse;
  }

  int degenerate_cmd() {
    const SparsePoly input = poly_arg(o_);
    const Int p = prime_arg(o_);
    const OracleCaps caps = oracle_caps(o_);
    Json config = base_config();
    config["prime"] = to_string(p);
    config["caps"] = caps_json(caps);
    config["square_first"] = o_.square_first;
    log_config(config);
    const SparsePoly f = o_.square_first ? degenerate_reduction(input) : input;
    const bool degenerate = has_degenerate_root_qp(f, p, caps);
    Json r = report("degenerate", config);
    r["input"] = poly_to_json(input);
    r["tested"] = poly_to_json(f);
    r["degenerate_root"] = degenerate;
    emit(r);
    say(degenerate ? "has a degenerate root" : "no degenerate root");
    return degenerate ? kExitTrue : kExitFalse;
  }

  int find_prime_cmd() {
    const PrimeSearchConfig pc = prime_config(o_);
    Json config = base_config();
    config["n"] = o_.n;
    config["prime_search"] = prime_config_json(pc);
    log_config(config);
    Rng rng(effective_seed(o_));
    const ProgressionPrime found = find_prime_in_progression(o_.n, pc, rng);
    Json r = report("prime", config);
    r["result"] = prime_to_json(found);
    emit(r);
    say("p = " + to_string(found.p) + " = 1 + " + to_string(found.k) + " * " + to_string(found.q_n));
    return kExitTrue;
  }

  int density_cmd() {
    if (o_.density_pairs.empty() || o_.density_pairs.size() % 2 != 0) {
      throw std::invalid_argument("density takes one or more M x pairs");
    }
    SieveCaps caps;
    caps.max_x = o_.sieve_max;
    Json config = base_config();
    config["sieve_max"] = caps.max_x;
    log_config(config);
    Json rows = Json::array();
    for (std::size_t i = 0; i < o_.density_pairs.size(); i += 2) {
      const Int m = parse_int(o_.density_pairs[i]);
      const Int x = parse_int(o_.density_pairs[i + 1]);
      if (!fits_u64(x)) throw std::invalid_argument("x must fit in 64 bits");
      const DensityReport d = prime_density_experiment(m, to_u64(x), caps);
      rows.push_back(density_to_json(d));
      std::ostringstream line;
      line << "M=" << to_string(d.M) << " x=" << d.x << " count=" << d.count << " predicted=" << d.predicted
           << " ratio=" << d.ratio;
      say(line.str());
    }
    Json r = report("density", config);
    r["rows"] = std::move(rows);
    r["note"] = "empirical consistency check of the predicted density; not a verification of GRH";
    emit(r);
    return kExitTrue;
  }

  int reduce_cmd() {
    const Cnf3 formula = parse_dimacs_string(read_file(o_.cnf_file));
    PipelineConfig pc;
    pc.mode = pipeline_mode_from_string(o_.mode);
    pc.prime = prime_config(o_);
    pc.max_vars = o_.max_vars;
    pc.threads = o_.threads;
    if (o_.repeats == 0) throw std::invalid_argument("--repeats must be >= 1");
    const std::uint64_t seed = effective_seed(o_);
    Json config = base_config();
    config["mode"] = std::string(to_string(pc.mode));
    config["repeats"] = o_.repeats;
    config["max_vars"] = pc.max_vars;
    config["prime_search"] = prime_config_json(pc.prime);
    log_config(config);

    const RepeatedReduction rr = pipeline_repeated(formula, pc, seed, o_.repeats);
    Json runs = Json::array();
    for (const auto& t : rr.runs) {
      if (t.witness && !satisfies(formula, t.witness->assignment)) {
        say("run with seed " + std::to_string(t.seed) + ": decoded assignment does not satisfy the CNF");
      }
      runs.push_back(transcript_to_json(t));
    }
    Json r = report("reduction", config);
    r["feasible"] = rr.feasible;
    r["runs"] = std::move(runs);
    emit(r);

    std::string summary = rr.feasible ? "feasible" : "infeasible";
    for (const auto& t : rr.runs) {
      if (!t.witness || !satisfies(formula, t.witness->assignment)) continue;
      summary += "; satisfying assignment";
      for (std::size_t i = 0; i < t.witness->assignment.size(); ++i) {
        summary += " x" + std::to_string(i + 1) + "=" + (t.witness->assignment[i] ? "1" : "0");
      }
      break;
    }
    say(summary);
    return rr.feasible ? kExitTrue : kExitFalse;
  }

  int verify_cmd() {
    const Json j = parse_report(read_file(o_.transcript_file));
    std::vector<ReductionTranscript> transcripts;
    std::optional<bool> majority;
    if (j.is_object() && j.value("kind", "") == "reduction") {
      if (!j.contains("runs") || !j["runs"].is_array()) throw std::invalid_argument("report: reduction without runs");
      for (const auto& run : j["runs"]) transcripts.push_back(transcript_from_json(run));
      if (!j.contains("feasible") || !j["feasible"].is_boolean()) throw std::invalid_argument("report: missing verdict");
      majority = j["feasible"].get<bool>();
    } else {
      transcripts.push_back(transcript_from_json(j));
    }
    Json config = base_config();
    log_config(config);
    Json results = Json::array();
    bool ok = !transcripts.empty();
    std::size_t yes = 0;
    for (const auto& t : transcripts) {
      const auto problems = verify_transcript(t);
      Json entry = Json::object();
      entry["seed"] = int_to_json(from_u64(t.seed));
      entry["valid"] = problems.empty();
      entry["problems"] = problems;
      results.push_back(std::move(entry));
      ok = ok && problems.empty();
      if (t.feasible) ++yes;
      for (const auto& p : problems) say("seed " + std::to_string(t.seed) + ": " + p);
    }
    if (majority && *majority != (2 * yes > transcripts.size())) {
      ok = false;
      say("recorded majority verdict does not match the runs");
    }
    Json r = report("verification", config);
    r["valid"] = ok;
    r["transcripts"] = std::move(results);
    emit(r);
    say(ok ? "transcript verified" : "transcript verification FAILED");
    return ok ? kExitTrue : kExitFalse;
  }

 private:
  Json base_config() const {
    Json c = Json::object();
    c["seed"] = int_to_json(from_u64(effective_seed(o_)));
    c["threads"] = o_.threads;
    return c;
  }

  Json report(const char* kind, const Json& config) const {
    Json r = Json::object();
    r["kind"] = kind;
    r["config"] = config;
    return r;
  }

  void log_config(const Json& config) {
    if (!o_.quiet) err_ << "config: " << config.dump() << '\n';
  }

  void say(const std::string& line) {
    if (!o_.quiet) err_ << line << '\n';
  }

  void emit(const Json& r) {
    const std::string text = dump_report(r);
    if (o_.out_path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(o_.out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write '" + o_.out_path + "'");
    f << text;
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "RNG seed (default: $PADICFEAS_SEED, else 1)");
  cmd->add_option("--threads", o.threads, "worker threads; results do not depend on it")->check(CLI::PositiveNumber);
  cmd->add_option("-o,--out", o.out_path, "write the report here instead of stdout");
  cmd->add_flag("-q,--quiet", o.quiet, "no summary on stderr");
}

void add_poly_input(CLI::App* cmd, Options& o) {
  cmd->add_option("poly-file", o.poly_file, "polynomial term-list file");
  cmd->add_option("--expr", o.expr, "polynomial expression, e.g. \"3*x^50 - 2*x^3 + 1\"");
  cmd->add_option("--prime,-p", o.prime, "the prime p")->required();
  cmd->add_option("--degree-cap", o.degree_cap, "dense degree cap for the residue search");
  cmd->add_option("--candidate-cap", o.candidate_cap, "live residue cap per precision level");
}

void add_prime_search(CLI::App* cmd, Options& o) {
  cmd->add_option("--strategy", o.strategy, "fph-sample or scan")->check(CLI::IsMember({"fph-sample", "scan"}));
  cmd->add_option("--fph-c", o.fph_c, "k is drawn from {1..2^(n^C)}");
  cmd->add_option("--fph-c-prime", o.fph_c_prime, "at most 9 n^C' draws");
  cmd->add_option("--k-max", o.k_max, "scan limit for k");
}

}  // namespace

SparsePoly parse_expression(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty expression");
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("expression at position " + std::to_string(i) + ": " + why);
  };
  auto digits = [&]() {
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail("expected digits");
    return Int(s.substr(start, i - start));
  };
  std::vector<Term> terms;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Int coeff = 1, exp = 0;
    bool have_coeff = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coeff = digits();
      have_coeff = true;
      if (i < s.size() && s[i] == '*') {
        ++i;
        if (i >= s.size() || s[i] != 'x') fail("expected x after *");
      }
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        exp = digits();
      }
    } else if (!have_coeff) {
      fail("expected a coefficient or x");
    }
    terms.push_back({sign * coeff, exp});
  }
  return SparsePoly::from_terms(std::move(terms));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"p-adic feasibility of sparse polynomials and the 3SAT reduction pipeline", "padicfeas"};
  app.require_subcommand(1);

  auto* binomial = app.add_subcommand("decide-binomial", "root of c1*x^a1 + c2*x^a2 in Q_p");
  binomial->add_option("terms", o.binomial, "c1 a1 c2 a2")->expected(4)->required();
  binomial->add_option("--prime,-p", o.prime, "the prime p")->required();
  add_common(binomial, o);

  auto* decide = app.add_subcommand("decide", "root of a sparse polynomial in Q_p");
  add_poly_input(decide, o);
  add_common(decide, o);

  auto* degenerate = app.add_subcommand("degenerate", "root of multiplicity >= 2 in Q_p");
  add_poly_input(degenerate, o);
  degenerate->add_flag("--square", o.square_first, "test f^2 instead of f");
  add_common(degenerate, o);

  auto* find_prime = app.add_subcommand("find-prime", "a prime p = 1 + k Q_n");
  find_prime->add_option("n", o.n, "number of primes in Q_n")->required()->check(CLI::PositiveNumber);
  add_prime_search(find_prime, o);
  add_common(find_prime, o);

  auto* density = app.add_subcommand("density", "primes = 1 mod M up to x against Li(x)/phi(M)");
  density->add_option("pairs", o.density_pairs, "M x [M x ...]")->required();
  density->add_option("--sieve-max", o.sieve_max, "largest x the sieve accepts");
  add_common(density, o);

  auto* reduce = app.add_subcommand("reduce", "3CNF to one sparse polynomial and decide it");
  reduce->add_option("cnf-file", o.cnf_file, "DIMACS CNF")->required();
  reduce->add_option("--mode", o.mode, "randomized or deterministic")
      ->check(CLI::IsMember({"randomized", "deterministic"}));
  reduce->add_option("--repeats", o.repeats, "independent randomized runs, majority verdict");
  reduce->add_option("--max-vars", o.max_vars, "largest n accepted");
  add_prime_search(reduce, o);
  add_common(reduce, o);

  auto* verify = app.add_subcommand("verify-transcript", "re-check a reduction report without the RNG");
  verify->add_option("file", o.transcript_file, "report written by reduce")->required();
  add_common(verify, o);

  try {
    std::vector<std::string> reversed = args;
    std::reverse(reversed.begin(), reversed.end());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitTrue;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitTrue;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  Runner runner(o, out, err);
  try {
    if (binomial->parsed()) return runner.decide_binomial_cmd();
    if (decide->parsed()) return runner.decide_cmd();
    if (degenerate->parsed()) return runner.degenerate_cmd();
    if (find_prime->parsed()) return runner.find_prime_cmd();
    if (density->parsed()) return runner.density_cmd();
    if (reduce->parsed()) return runner.reduce_cmd();
    if (verify->parsed()) return runner.verify_cmd();
  } catch (const CapExceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::range_error& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace padicfeas::cli
