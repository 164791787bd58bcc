#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "padicfeas/int.hpp"

namespace padicfeas {

enum class PrimeStrategy {
  kFphSample,  // uniform k in {1, ..., 2^(n^C)}, at most 9 n^C' trials
  kScan,       // k = 1, 2, 3, ... up to k_max
};

std::string_view to_string(PrimeStrategy s);
PrimeStrategy prime_strategy_from_string(std::string_view name);

struct PrimeSearchConfig {
  PrimeStrategy strategy = PrimeStrategy::kFphSample;
  unsigned fph_c = 2;
  unsigned fph_c_prime = 2;
  std::uint64_t k_max = 1'000'000;
};

/// A prime p = 1 + k Q_n.
struct ProgressionPrime {
  unsigned n = 0;
  Int q_n;
  Int k;
  Int p;
  std::uint64_t trials_used = 0;
};

/// Throws SearchExhausted (with the trial count) when no prime turns up
/// within the configured budget. Requires n >= 1.
ProgressionPrime find_prime_in_progression(unsigned n, const PrimeSearchConfig& config, Rng& rng);

/// Li(x) = integral from 2 to x of dt / ln t, by adaptive Simpson
/// quadrature in u = ln t. Relative error below 1e-6. Requires x >= 2.
double logarithmic_integral(double x);

struct SieveCaps {
  std::uint64_t max_x = 100'000'000;
  std::uint64_t segment = 1u << 18;
};

/// counts[a] = number of primes p <= x with p = a mod M, by a segmented
/// sieve of Eratosthenes. Throws CapExceeded when x > caps.max_x.
std::vector<std::uint64_t> count_primes_by_residue(std::uint64_t M, std::uint64_t x, const SieveCaps& caps = {});

/// Empirical consistency check of the prime density in the progression
/// 1 mod M against Li(x)/phi(M). Says nothing about GRH itself.
struct DensityReport {
  Int M;
  std::uint64_t x = 0;
  std::uint64_t count = 0;  // pi(x, M): primes p <= x with p = 1 mod M
  Int phi;
  double predicted = 0;  // Li(x) / phi(M)
  double ratio = 0;      // count / predicted
};

DensityReport prime_density_experiment(const Int& M, std::uint64_t x, const SieveCaps& caps = {});

}  // namespace padicfeas
