#pragma once

// Independent oracles for the tests: dense coefficient arithmetic, naive
// modular arithmetic on machine words, and a truth-table SAT solver. None of
// these call into the library code they check.

#include <cstdint>
#include <numeric>
#include <vector>

#include "padicfeas/int.hpp"
#include "padicfeas/plaisted.hpp"
#include "padicfeas/sparse_poly.hpp"

namespace testing_support {

using padicfeas::Int;
using padicfeas::Rng;
using padicfeas::SparsePoly;
using Dense = std::vector<Int>;  // index = exponent

inline Dense to_dense(const SparsePoly& f) {
  Dense out;
  for (const auto& t : f.terms()) {
    const auto e = t.exp.get_ui();
    if (out.size() <= e) out.resize(e + 1);
    out[e] = t.coeff;
  }
  return out;
}

inline SparsePoly from_dense(const Dense& d) {
  std::vector<padicfeas::Term> terms;
  for (std::size_t e = 0; e < d.size(); ++e) {
    if (d[e] != 0) terms.push_back({d[e], Int(static_cast<unsigned long>(e))});
  }
  return SparsePoly::from_terms(std::move(terms));
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_naive(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Order by walking powers.
inline std::uint64_t order_naive(std::uint64_t a, std::uint64_t m) {
  std::uint64_t x = a % m, t = 1;
  while (x != 1 % m) {
    x = x * a % m;
    ++t;
  }
  return t;
}

inline bool is_prime_naive(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Horner evaluation of a dense polynomial mod m.
inline Int dense_eval_mod(const Dense& d, const Int& x, const Int& m) {
  Int acc = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) acc = (acc * x + *it) % m;
  if (acc < 0) acc += m;
  return acc;
}

inline Int rand_int(Rng& rng, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  return Int(dist(rng));
}

// Random sparse polynomial with up to max_terms terms.
inline SparsePoly random_poly(Rng& rng, int max_terms, long max_exp, long max_coeff) {
  std::uniform_int_distribution<int> count(0, max_terms);
  std::vector<padicfeas::Term> terms;
  const int m = count(rng);
  for (int i = 0; i < m; ++i) terms.push_back({rand_int(rng, -max_coeff, max_coeff), rand_int(rng, 0, max_exp)});
  return SparsePoly::from_terms(std::move(terms));
}

inline SparsePoly random_dense_poly(Rng& rng, long degree, long max_coeff) {
  Dense d(static_cast<std::size_t>(degree) + 1);
  for (auto& c : d) c = rand_int(rng, -max_coeff, max_coeff);
  while (d.back() == 0) d.back() = rand_int(rng, -max_coeff, max_coeff);
  return from_dense(d);
}

inline bool brute_force_sat(const padicfeas::Cnf3& f) {
  const unsigned n = f.num_vars;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool all = true;
    for (const auto& clause : f.clauses) {
      bool sat = false;
      for (const auto& lit : clause) {
        const bool v = (mask >> (lit.var - 1)) & 1u;
        if (v != lit.negated) sat = true;
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

inline padicfeas::Cnf3 random_cnf(Rng& rng, unsigned n, unsigned clauses) {
  padicfeas::Cnf3 f;
  f.num_vars = n;
  std::uniform_int_distribution<unsigned> var(1, n), width(1, 3), coin(0, 1);
  for (unsigned c = 0; c < clauses; ++c) {
    padicfeas::Clause clause;
    const unsigned w = width(rng);
    for (unsigned i = 0; i < w; ++i) clause.push_back({var(rng), coin(rng) == 1});
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace testing_support
