#include "padicfeas/reduce.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "padicfeas/bigmod.hpp"
#include "padicfeas/errors.hpp"
#include "padicfeas/padic.hpp"

namespace padicfeas {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

// Evaluates polynomials at r = w^t for all Q-th roots of unity w^t mod p,
// using r^e = w^((t*e) mod Q) from a table of powers of w. Word-sized
// arithmetic when p < 2^63, GMP otherwise.
class RootScanner {
 public:
  RootScanner(const Int& p, const Int& q) : p_(p), q_(to_u64(q)) {
    roots_ = roots_of_unity_mod_p(p, q);
    small_ = p < (Int(1) << 63);
    if (small_) {
      p64_ = to_u64(p);
      roots64_.reserve(roots_.size());
      for (const auto& r : roots_) roots64_.push_back(to_u64(r));
    }
  }

  const Int& root(std::uint64_t t) const { return roots_.at(t); }
  std::uint64_t count() const { return q_; }

  // Least t >= from at which every polynomial vanishes mod p.
  std::optional<std::uint64_t> first_common_root(std::span<const SparsePoly> polys, unsigned threads,
                                                 std::uint64_t from = 0) const {
    std::vector<Prepared> prepared;
    prepared.reserve(polys.size());
    for (const auto& f : polys) prepared.push_back(prepare(f));
    if (from >= q_) return std::nullopt;
    const std::uint64_t span = q_ - from;
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(span, 64))));
    if (workers == 1) return scan_range(prepared, from, q_);
    std::vector<std::optional<std::uint64_t>> hits(workers);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (span + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min(q_, from + w * chunk);
      const std::uint64_t hi = std::min(q_, lo + chunk);
      pool.emplace_back([&, w, lo, hi] { hits[w] = scan_range(prepared, lo, hi); });
    }
    for (auto& th : pool) th.join();
    for (const auto& h : hits) {
      if (h) return h;  // chunks are ordered, so the first hit is the least t
    }
    return std::nullopt;
  }

  bool vanishes(const SparsePoly& f, std::uint64_t t) const { return value_at(prepare(f), t) == 0; }

  // Whether f is exactly zero at the Teichmueller lift of w^t. If f(zeta) is
  // nonzero, its p-adic valuation is at most that of its norm from
  // Q(zeta_m), which is below phi(m) log_p |f|_1, so that precision decides.
  bool vanishes_exactly(const SparsePoly& f, std::uint64_t t) const {
    if (f.is_zero()) return true;
    const Int q = from_u64(q_);
    Int g;
    mpz_gcd(g.get_mpz_t(), from_u64(t).get_mpz_t(), q.get_mpz_t());
    const Int m = q / g;
    Int l1 = 0;
    for (const auto& term : f.terms()) l1 += abs(term.coeff);
    const unsigned long digits = mpz_sizeinbase(p_.get_mpz_t(), 2) - 1;
    const Int bits = from_u64(mpz_sizeinbase(l1.get_mpz_t(), 2));
    const Int phi_m = m == 1 ? Int(1) : euler_phi(factor(m));
    const Int precision = phi_m * ((bits + std::max(digits, 1ul) - 1) / std::max(digits, 1ul)) + 1;
    const unsigned long ell = to_u64(precision);
    const SparsePoly cyclotomic_cover = SparsePoly::x_pow_minus_one(q);
    const Int zeta = hensel_lift(cyclotomic_cover, HenselSeed{roots_.at(t), 1, 0}, p_, ell);
    Int modulus;
    mpz_pow_ui(modulus.get_mpz_t(), p_.get_mpz_t(), ell);
    return eval_mod(f, zeta, modulus) == 0;
  }

 private:
  struct Prepared {
    std::vector<std::uint64_t> exps;  // exponent mod Q
    std::vector<std::uint64_t> coeffs64;
    std::vector<Int> coeffs;
  };

  Prepared prepare(const SparsePoly& f) const {
    Prepared out;
    const Int q(from_u64(q_));
    for (const auto& term : f.terms()) {
      out.exps.push_back(to_u64(mod_floor(term.exp, q)));
      Int c = mod_floor(term.coeff, p_);
      if (small_) {
        out.coeffs64.push_back(to_u64(c));
      } else {
        out.coeffs.push_back(std::move(c));
      }
    }
    return out;
  }

  // f(w^t) mod p, as a residue (word or GMP).
  Int value_at(const Prepared& f, std::uint64_t t) const {
    if (small_) return from_u64(value_at_small(f, t));
    Int acc = 0;
    for (std::size_t i = 0; i < f.exps.size(); ++i) {
      acc += f.coeffs[i] * roots_[static_cast<std::uint64_t>(static_cast<u128>(t) * f.exps[i] % q_)];
    }
    return mod_floor(acc, p_);
  }

  std::uint64_t value_at_small(const Prepared& f, std::uint64_t t) const {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < f.exps.size(); ++i) {
      const std::uint64_t idx = static_cast<std::uint64_t>(static_cast<u128>(t) * f.exps[i] % q_);
      acc += mulmod(f.coeffs64[i], roots64_[idx], p64_);
      if (acc >= p64_) acc -= p64_;
    }
    return acc;
  }

  std::optional<std::uint64_t> scan_range(const std::vector<Prepared>& polys, std::uint64_t lo, std::uint64_t hi) const {
    for (std::uint64_t t = lo; t < hi; ++t) {
      bool all = true;
      for (const auto& f : polys) {
        if (value_at(f, t) != 0) {
          all = false;
          break;
        }
      }
      if (all) return t;
    }
    return std::nullopt;
  }

  Int p_;
  std::uint64_t q_;
  std::vector<Int> roots_;
  bool small_ = false;
  std::uint64_t p64_ = 0;
  std::vector<std::uint64_t> roots64_;
};

Int max_degree(std::span<const SparsePoly> polys) {
  Int d = 0;
  for (const auto& f : polys) {
    if (!f.is_zero() && f.degree() > d) d = f.degree();
  }
  return d;
}

SparsePoly combine(std::span<const SparsePoly> polys, const std::vector<Int>& weights) {
  SparsePoly out;
  for (std::size_t i = 0; i < polys.size(); ++i) out = out + scale(polys[i], weights[i]);
  return out;
}

Combination passthrough(std::span<const SparsePoly> polys) {
  Combination out;
  out.passthrough = true;
  out.bound = 0;
  if (polys.size() >= 1) out.g1 = polys[0];
  out.g2 = polys.size() >= 2 ? polys[1] : out.g1;
  return out;
}

}  // namespace

Combination random_combine(std::span<const SparsePoly> polys, Rng& rng) {
  for (const auto& f : polys) {
    if (f.is_zero()) throw std::invalid_argument("random_combine: zero polynomial among inputs");
  }
  if (polys.size() <= 2) return passthrough(polys);
  const Int k = from_u64(polys.size());
  // d = 0 only for an all-constant system, which has no zeros at all; the
  // draw range is kept nonempty.
  const Int d = std::max(max_degree(polys), Int(1));
  Combination out;
  out.bound = 18 * d * k * k;
  for (std::size_t i = 0; i < polys.size(); ++i) out.a.push_back(uniform_int(rng, Int(1), out.bound));
  for (std::size_t i = 0; i < polys.size(); ++i) out.b.push_back(uniform_int(rng, Int(1), out.bound));
  out.g1 = combine(polys, out.a);
  out.g2 = combine(polys, out.b);
  return out;
}

SparsePoly quadratic_form(const SparsePoly& f, const SparsePoly& g, const std::optional<Int>& qnr) {
  if (qnr) return square(f) - scale(square(g), *qnr);
  return square(f) + f * g + square(g);
}

QuadraticCollapse pair_to_single(const SparsePoly& f, const SparsePoly& g, const Int& p, Rng& rng) {
  if (!is_prime(p)) throw std::invalid_argument("pair_to_single: p is not prime");
  QuadraticCollapse out;
  if (p != 2) out.qnr = find_qnr(p, rng);
  out.h = quadratic_form(f, g, out.qnr);
  return out;
}

std::string_view to_string(PipelineMode m) { return m == PipelineMode::kDeterministic ? "deterministic" : "randomized"; }

PipelineMode pipeline_mode_from_string(std::string_view name) {
  if (name == "deterministic") return PipelineMode::kDeterministic;
  if (name == "randomized") return PipelineMode::kRandomized;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "' (expected randomized or deterministic)");
}

namespace {

std::optional<std::uint64_t> scan(const ReductionTranscript& t, const std::vector<SparsePoly>& polys,
                                  const RootScanner& scanner, unsigned threads) {
  if (t.mode == PipelineMode::kDeterministic) return scanner.first_common_root(polys, threads);
  // h vanishes in Q_p exactly where g1 and g2 both do, since the form is
  // anisotropic. A zero of h mod p is only a candidate: g1 and g2 may vanish
  // mod p at a root of unity by coincidence, so each candidate is certified
  // at its Teichmueller lift.
  const SparsePoly single[] = {t.h};
  std::uint64_t from = 0;
  while (auto hit = scanner.first_common_root(single, threads, from)) {
    if (!(scanner.vanishes(t.combination.g1, *hit) && scanner.vanishes(t.combination.g2, *hit))) {
      throw std::logic_error("pipeline: h vanishes at a root where the pair does not; quadratic form is isotropic");
    }
    if (scanner.vanishes_exactly(t.combination.g1, *hit) && scanner.vanishes_exactly(t.combination.g2, *hit)) return hit;
    from = *hit + 1;
  }
  return std::nullopt;
}

PipelineWitness make_witness(const ReductionTranscript& t, const RootScanner& scanner, std::uint64_t hit) {
  PipelineWitness w;
  w.t = hit;
  w.root = scanner.root(hit);
  w.assignment = root_to_assignment(w.root, t.prime, t.n);
  w.satisfies = satisfies(t.formula, w.assignment);
  return w;
}

}  // namespace

ReductionTranscript pipeline(const Cnf3& formula, const PipelineConfig& config, std::uint64_t seed) {
  formula.validate();
  if (formula.num_vars == 0) throw std::invalid_argument("pipeline: formula has no variables");
  if (formula.num_vars > config.max_vars) {
    throw CapExceeded("pipeline: " + std::to_string(formula.num_vars) + " variables exceed max_vars " +
                      std::to_string(config.max_vars));
  }
  ReductionTranscript t;
  t.formula = formula;
  t.n = formula.num_vars;
  t.seed = seed;
  t.mode = config.mode;
  t.prime_strategy = config.prime.strategy;
  t.fph_c = config.prime.fph_c;
  t.fph_c_prime = config.prime.fph_c_prime;

  Rng rng(seed);
  const std::vector<SparsePoly> polys = encode_system(formula);
  t.num_polys = polys.size();
  t.degree = max_degree(polys);

  const ProgressionPrime pp = find_prime_in_progression(t.n, config.prime, rng);
  t.q_n = pp.q_n;
  t.prime = pp.p;
  t.prime_k = pp.k;
  t.prime_trials = pp.trials_used;

  if (config.mode == PipelineMode::kRandomized) {
    t.combination = random_combine(polys, rng);
    QuadraticCollapse qc = pair_to_single(t.combination.g1, t.combination.g2, t.prime, rng);
    t.h = std::move(qc.h);
    t.qnr = std::move(qc.qnr);
  }

  const RootScanner scanner(t.prime, t.q_n);
  const auto hit = scan(t, polys, scanner, config.threads);
  t.feasible = hit.has_value();
  if (hit) t.witness = make_witness(t, scanner, *hit);
  return t;
}

RepeatedReduction pipeline_repeated(const Cnf3& formula, const PipelineConfig& config, std::uint64_t seed,
                                    unsigned repeats) {
  if (repeats == 0) throw std::invalid_argument("pipeline_repeated: repeats must be >= 1");
  RepeatedReduction out;
  const unsigned runs = config.mode == PipelineMode::kDeterministic ? 1 : repeats;
  unsigned yes = 0;
  for (unsigned i = 0; i < runs; ++i) {
    out.runs.push_back(pipeline(formula, config, seed + i));
    if (out.runs.back().feasible) ++yes;
  }
  out.feasible = 2 * yes > runs;
  return out;
}

std::vector<std::string> verify_transcript(const ReductionTranscript& t) {
  std::vector<std::string> problems;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };
  try {
    t.formula.validate();
  } catch (const std::exception& e) {
    problems.push_back(std::string("formula: ") + e.what());
    return problems;
  }
  check(t.n == t.formula.num_vars && t.n >= 1, "n does not match the formula");
  if (!problems.empty()) return problems;
  check(t.q_n == primorial(t.n), "Q_n is not the primorial of n");
  check(t.prime == 1 + t.prime_k * t.q_n, "prime != 1 + k Q_n");
  check(is_prime(t.prime), "recorded prime is composite");
  if (!problems.empty()) return problems;

  const std::vector<SparsePoly> polys = encode_system(t.formula);
  check(t.num_polys == polys.size(), "clause polynomial count mismatch");
  check(t.degree == max_degree(polys), "max degree mismatch");

  if (t.mode == PipelineMode::kRandomized) {
    const Combination& c = t.combination;
    if (polys.size() <= 2) {
      const Combination expect = passthrough(polys);
      check(c.passthrough, "k <= 2 must pass through");
      check(c.a.empty() && c.b.empty() && c.bound == 0, "passthrough must not record combination vectors");
      check(c.g1 == expect.g1 && c.g2 == expect.g2, "passthrough pair differs from the clause polynomials");
    } else {
      const Int k = from_u64(polys.size());
      const Int n_bound = 18 * std::max(t.degree, Int(1)) * k * k;
      check(!c.passthrough, "k >= 3 must be combined");
      check(c.bound == n_bound, "N != 18 d k^2");
      check(c.a.size() == polys.size() && c.b.size() == polys.size(), "combination vectors have the wrong length");
      const auto in_range = [&](const std::vector<Int>& v) {
        return std::all_of(v.begin(), v.end(), [&](const Int& x) { return x >= 1 && x <= n_bound; });
      };
      check(in_range(c.a) && in_range(c.b), "combination entries outside {1..N}");
      if (problems.empty()) {
        check(c.g1 == combine(polys, c.a), "g1 != sum a_i f_i");
        check(c.g2 == combine(polys, c.b), "g2 != sum b_i f_i");
      }
    }
    if (t.prime == 2) {
      check(!t.qnr, "p = 2 uses x^2 + xy + y^2, no non-residue");
    } else {
      check(t.qnr && mod_pow(*t.qnr, (t.prime - 1) / 2, t.prime) == t.prime - 1, "a is not a quadratic non-residue");
    }
    if (problems.empty()) check(t.h == quadratic_form(c.g1, c.g2, t.qnr), "h != q(g1, g2)");
  } else {
    check(t.h.is_zero() && t.combination.g1.is_zero() && t.combination.g2.is_zero(),
          "deterministic mode must not record combination polynomials");
  }
  if (!problems.empty()) return problems;

  const RootScanner scanner(t.prime, t.q_n);
  const auto hit = scan(t, polys, scanner, 1);
  check(hit.has_value() == t.feasible, "verdict does not match the root-of-unity scan");
  if (hit && t.witness) {
    const PipelineWitness w = make_witness(t, scanner, *hit);
    check(w.t == t.witness->t && w.root == t.witness->root, "witness root differs from the first common root");
    check(w.assignment == t.witness->assignment, "witness assignment does not decode from the root");
    check(w.satisfies == t.witness->satisfies, "witness satisfaction flag is wrong");
  } else {
    check(hit.has_value() == t.witness.has_value(), "witness presence does not match the verdict");
  }
  return problems;
}

}  // namespace padicfeas
