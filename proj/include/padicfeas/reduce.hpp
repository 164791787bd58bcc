#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "padicfeas/plaisted.hpp"
#include "padicfeas/primes.hpp"
#include "padicfeas/sparse_poly.hpp"

namespace padicfeas {

/// Two random integer combinations of k >= 3 polynomials. With N = 18 d k^2
/// and a, b uniform in {1..N}^k, the common zero set is preserved with
/// probability at least 8/9. For k <= 2 the inputs pass through unchanged
/// (k = 1 duplicates f_1; k = 0 gives two zero polynomials).
struct Combination {
  SparsePoly g1;
  SparsePoly g2;
  std::vector<Int> a;
  std::vector<Int> b;
  Int bound;  // N; zero when passed through
  bool passthrough = false;
};

Combination random_combine(std::span<const SparsePoly> polys, Rng& rng);

/// h = f^2 - a g^2 with a a quadratic non-residue mod odd p, or
/// h = f^2 + f g + g^2 when p = 2. Either form is anisotropic over Q_p, so
/// the Q_p-roots of h are exactly the common roots of f and g.
struct QuadraticCollapse {
  SparsePoly h;
  std::optional<Int> qnr;  // empty for the p = 2 form
};

QuadraticCollapse pair_to_single(const SparsePoly& f, const SparsePoly& g, const Int& p, Rng& rng);

/// Builds h from (f, g) with a given non-residue (or the p = 2 form when qnr
/// is empty). Used to re-check transcripts without an rng.
SparsePoly quadratic_form(const SparsePoly& f, const SparsePoly& g, const std::optional<Int>& qnr);

enum class PipelineMode { kRandomized, kDeterministic };

std::string_view to_string(PipelineMode m);
PipelineMode pipeline_mode_from_string(std::string_view name);

struct PipelineConfig {
  PipelineMode mode = PipelineMode::kRandomized;
  PrimeSearchConfig prime;
  unsigned max_vars = 6;
  unsigned threads = 1;  // root-of-unity scan workers; results do not depend on it
};

struct PipelineWitness {
  std::uint64_t t = 0;  // root index: r = w^t
  Int root;             // r mod p
  Assignment assignment;
  bool satisfies = false;  // re-checked against the formula
};

/// Everything needed to reproduce or audit one run.
struct ReductionTranscript {
  Cnf3 formula;
  unsigned n = 0;
  Int q_n;
  Int prime;
  Int prime_k;
  std::uint64_t prime_trials = 0;
  PrimeStrategy prime_strategy = PrimeStrategy::kFphSample;
  unsigned fph_c = 2;
  unsigned fph_c_prime = 2;
  std::uint64_t seed = 0;
  PipelineMode mode = PipelineMode::kRandomized;
  std::size_t num_polys = 0;
  Int degree;  // d, max clause polynomial degree
  Combination combination;
  std::optional<Int> qnr;
  SparsePoly h;
  bool feasible = false;
  std::optional<PipelineWitness> witness;
};

/// 3CNF -> clause polynomials -> prime p = 1 + k Q_n -> (randomized mode)
/// pair -> single polynomial h -> decide by scanning the Q_n-th roots of
/// unity mod p. Deterministic mode checks every clause polynomial at each
/// root directly. Throws CapExceeded past config.max_vars and
/// SearchExhausted when no prime is found.
ReductionTranscript pipeline(const Cnf3& formula, const PipelineConfig& config, std::uint64_t seed);

/// Independent repetitions (seed + i for run i) with a majority verdict.
/// Deterministic mode runs once.
struct RepeatedReduction {
  std::vector<ReductionTranscript> runs;
  bool feasible = false;
};

RepeatedReduction pipeline_repeated(const Cnf3& formula, const PipelineConfig& config, std::uint64_t seed,
                                    unsigned repeats);

/// Recomputes every recorded quantity from the formula and the recorded
/// random choices. Returns the list of discrepancies; empty means valid.
std::vector<std::string> verify_transcript(const ReductionTranscript& t);

}  // namespace padicfeas
