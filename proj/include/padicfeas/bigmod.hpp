#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "padicfeas/int.hpp"

namespace padicfeas {

// p^ell with p verified prime.
class Modulus {
 public:
  Modulus(Int p, unsigned long ell);

  const Int& prime() const noexcept { return p_; }
  unsigned long exponent() const noexcept { return ell_; }
  const Int& value() const noexcept { return value_; }

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  Int p_;
  unsigned long ell_;
  Int value_;
};

struct PrimePower {
  Int prime;
  unsigned long exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Sorted by prime, exponents positive.
using Factorization = std::vector<PrimePower>;

struct FactorBudget {
  std::uint64_t trial_limit = 1'000'000;
  std::uint64_t rho_iterations = std::uint64_t{1} << 24;
};

// p-adic valuation; std::nullopt stands for +infinity (n == 0).
// Rejects non-prime p.
std::optional<std::uint64_t> ord_p(const Int& n, const Int& p);

// Valuation without the primality check, for inner loops that already
// validated p. n must be nonzero.
std::uint64_t valuation_unchecked(const Int& n, const Int& p);

// b^e mod m in [0, m). Requires e >= 0 and m >= 2.
Int mod_pow(const Int& b, const Int& e, const Int& m);
Int mod_pow(const Int& b, const Int& e, const Modulus& m);

// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
Int mod_inverse(const Int& a, const Int& m);

bool is_prime(const Int& n);

// Throws CapExceeded when Pollard rho runs past the budget.
Factorization factor(const Int& n, const FactorBudget& budget = {});

Int recompose(const Factorization& f);

// Euler phi from a factorization of m, and the factorization of phi(m).
Int euler_phi(const Factorization& m);
Factorization factor_euler_phi(const Factorization& m, const FactorBudget& budget = {});

// Interface for order finding in (Z/mZ)^*. Only the classical backend
// ships; the interface leaves room for a simulated quantum one.
class OrderBackend {
 public:
  virtual ~OrderBackend() = default;
  // Order of a modulo m, where group_order is a multiple of it (usually
  // phi(m)) given in factored form.
  virtual Int order(const Int& a, const Int& m, const Factorization& group_order) const = 0;
};

// Strips prime factors off the group order while a^(t/q) stays 1.
class ClassicalOrderBackend final : public OrderBackend {
 public:
  Int order(const Int& a, const Int& m, const Factorization& group_order) const override;
};

const OrderBackend& default_order_backend();

// Least t >= 1 with a^t = 1 mod m. Requires m >= 2 and gcd(a, m) = 1.
Int multiplicative_order(const Int& a, const Int& m, const FactorBudget& budget = {});

// The first n primes, and their product Q_n (Q_0 = 1).
std::vector<std::uint64_t> first_primes(std::size_t n);
Int primorial(std::size_t n);

// A quadratic non-residue mod an odd prime p. Draws candidates in pairs
// from [1, p-1] until one passes Euler's criterion.
Int find_qnr(const Int& p, Rng& rng);

// x^d = a is solvable in a cyclic group of order group_order iff
// ord(a) | group_order / gcd(d, group_order).
bool solvable_in_cyclic(const Int& order_a, const Int& d, const Int& group_order);

// alpha = (-1)^sign * 5^exponent mod 2^ell, 0 <= exponent < 2^(ell-2).
struct TwoAdicUnit {
  unsigned sign = 0;
  Int exponent;
  friend bool operator==(const TwoAdicUnit&, const TwoAdicUnit&) = default;
};

// Requires alpha odd and ell >= 3. Bitwise Pohlig-Hellman in the cyclic
// 2-group generated by 5.
TwoAdicUnit decompose_2adic_unit(const Int& alpha, unsigned long ell);

// Generator of F_p^*. With an rng, random candidates are tried first and
// validated against the factorization of p - 1; the deterministic fallback
// (and the rng-free path) scans 2, 3, ...
Int primitive_root(const Int& p, Rng* rng = nullptr, const FactorBudget& budget = {});

}  // namespace padicfeas
