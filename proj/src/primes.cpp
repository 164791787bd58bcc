#include "padicfeas/primes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "padicfeas/bigmod.hpp"
#include "padicfeas/errors.hpp"

namespace padicfeas {

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

// Calls visit(p) for every prime p <= x in increasing order.
void segmented_sieve(std::uint64_t x, const SieveCaps& caps, const std::function<void(std::uint64_t)>& visit) {
  if (x > caps.max_x) {
    throw CapExceeded("sieve: x = " + std::to_string(x) + " exceeds cap " + std::to_string(caps.max_x));
  }
  if (x < 2) return;
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x))) + 1;
  std::vector<std::uint64_t> base;
  {
    std::vector<bool> composite(root + 1, false);
    for (std::uint64_t i = 2; i <= root; ++i) {
      if (composite[i]) continue;
      base.push_back(i);
      for (std::uint64_t j = i * i; j <= root; j += i) composite[j] = true;
    }
  }
  const std::uint64_t seg = std::max<std::uint64_t>(caps.segment, 1024);
  std::vector<bool> composite(seg);
  for (std::uint64_t lo = 2; lo <= x; lo += seg) {
    const std::uint64_t hi = std::min(x + 1, lo + seg);  // [lo, hi)
    std::fill(composite.begin(), composite.end(), false);
    for (std::uint64_t q : base) {
      if (q * q >= hi) break;
      std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
      for (std::uint64_t j = start; j < hi; j += q) composite[j - lo] = true;
    }
    for (std::uint64_t v = lo; v < hi; ++v) {
      if (!composite[v - lo]) visit(v);
    }
  }
}

}  // namespace

std::string_view to_string(PrimeStrategy s) {
  return s == PrimeStrategy::kScan ? "scan" : "fph-sample";
}

PrimeStrategy prime_strategy_from_string(std::string_view name) {
  if (name == "scan") return PrimeStrategy::kScan;
  if (name == "fph-sample") return PrimeStrategy::kFphSample;
  throw std::invalid_argument("unknown prime strategy '" + std::string(name) + "' (expected scan or fph-sample)");
}

ProgressionPrime find_prime_in_progression(unsigned n, const PrimeSearchConfig& config, Rng& rng) {
  if (n < 1) throw std::invalid_argument("find_prime_in_progression: n must be >= 1");
  ProgressionPrime out;
  out.n = n;
  out.q_n = primorial(n);
  if (config.strategy == PrimeStrategy::kScan) {
    for (std::uint64_t k = 1; k <= config.k_max; ++k) {
      ++out.trials_used;
      Int p = 1 + from_u64(k) * out.q_n;
      if (is_prime(p)) {
        out.k = from_u64(k);
        out.p = std::move(p);
        return out;
      }
    }
    throw SearchExhausted("find_prime_in_progression: no prime 1 + k Q_" + std::to_string(n) + " with k <= " +
                              std::to_string(config.k_max),
                          out.trials_used);
  }
  Int exponent, k_bound, trials;
  mpz_ui_pow_ui(exponent.get_mpz_t(), n, config.fph_c);
  if (!exponent.fits_ulong_p()) throw CapExceeded("find_prime_in_progression: n^C too large");
  mpz_ui_pow_ui(k_bound.get_mpz_t(), 2, exponent.get_ui());
  mpz_ui_pow_ui(trials.get_mpz_t(), n, config.fph_c_prime);
  trials *= 9;
  const std::uint64_t max_trials = to_u64(trials);
  for (std::uint64_t t = 0; t < max_trials; ++t) {
    ++out.trials_used;
    Int k = uniform_int(rng, Int(1), k_bound);
    Int p = 1 + k * out.q_n;
    if (is_prime(p)) {
      out.k = std::move(k);
      out.p = std::move(p);
      return out;
    }
  }
  throw SearchExhausted("find_prime_in_progression: fph-sample found no prime in " + std::to_string(max_trials) +
                            " trials",
                        out.trials_used);
}

double logarithmic_integral(double x) {
  if (!(x >= 2.0)) throw std::invalid_argument("logarithmic_integral: x must be >= 2");
  if (x == 2.0) return 0.0;
  const auto integrand = [](double u) { return std::exp(u) / u; };
  const double a = std::log(2.0), b = std::log(x);
  const double fa = integrand(a), fb = integrand(b), fm = integrand(0.5 * (a + b));
  const double whole = simpson(a, b, fa, fm, fb);
  // Tolerance relative to the crude estimate; the integrand is positive so
  // this is a relative bound on the result.
  return adaptive_simpson(integrand, a, b, fa, fm, fb, whole, 1e-11 * std::fabs(whole), 50);
}

std::vector<std::uint64_t> count_primes_by_residue(std::uint64_t M, std::uint64_t x, const SieveCaps& caps) {
  if (M < 1) throw std::invalid_argument("count_primes_by_residue: M must be >= 1");
  if (M > 100'000'000) throw CapExceeded("count_primes_by_residue: modulus too large for a residue table");
  std::vector<std::uint64_t> counts(M, 0);
  segmented_sieve(x, caps, [&](std::uint64_t p) { ++counts[p % M]; });
  return counts;
}

DensityReport prime_density_experiment(const Int& M, std::uint64_t x, const SieveCaps& caps) {
  if (M < 1) throw std::invalid_argument("prime_density_experiment: M must be >= 1");
  if (x < 2) throw std::invalid_argument("prime_density_experiment: x must be >= 2");
  DensityReport out;
  out.M = M;
  out.x = x;
  out.phi = M == 1 ? Int(1) : euler_phi(factor(M));
  if (fits_u64(M)) {
    const std::uint64_t m = to_u64(M);
    const std::uint64_t target = 1 % m;
    segmented_sieve(x, caps, [&](std::uint64_t p) {
      if (p % m == target) ++out.count;
    });
  } else {
    // Every prime <= x is below M, so none is 1 mod M.
    segmented_sieve(x, caps, [](std::uint64_t) {});
  }
  out.predicted = logarithmic_integral(static_cast<double>(x)) / out.phi.get_d();
  out.ratio = out.predicted > 0 ? static_cast<double>(out.count) / out.predicted : 0.0;
  return out;
}

}  // namespace padicfeas
