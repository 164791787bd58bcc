#include "padicfeas/bigmod.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "padicfeas/errors.hpp"

namespace padicfeas {

namespace {

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1'000'000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_round(const Int& n, const Int& n_minus_1, const Int& d, unsigned long s,
                        const Int& base) {
  Int x = mod_pow(base, d, n);
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

void require_prime(const Int& p, const char* who) {
  if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": " + p.get_str() + " is not prime");
}

using FactorMap = std::map<Int, unsigned long>;

Factorization to_factorization(const FactorMap& m) {
  Factorization out;
  out.reserve(m.size());
  for (const auto& [q, e] : m) out.push_back({q, e});
  return out;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of the
// composite n, consuming from the shared iteration budget.
Int pollard_brent(const Int& n, std::uint64_t& budget_left) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Int y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    auto step = [&](Int& v) {
      v = (v * v + c) % n;
    };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        const std::uint64_t lim = std::min(m, r - k);
        if (budget_left < lim) throw CapExceeded("factor: Pollard rho iteration budget exhausted on " + n.get_str());
        budget_left -= lim;
        for (std::uint64_t i = 0; i < lim; ++i) {
          step(y);
          Int diff = x - y;
          q = q * abs(diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        if (budget_left == 0) throw CapExceeded("factor: Pollard rho iteration budget exhausted on " + n.get_str());
        --budget_left;
        step(ys);
        Int diff = x - ys;
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        g = abs(g);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rest(const Int& n, FactorMap& out, std::uint64_t& budget_left) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_brent(n, budget_left);
  factor_rest(d, out, budget_left);
  factor_rest(n / d, out, budget_left);
}

}  // namespace

Modulus::Modulus(Int p, unsigned long ell) : p_(std::move(p)), ell_(ell) {
  if (ell_ == 0) throw std::invalid_argument("Modulus: exponent must be positive");
  require_prime(p_, "Modulus");
  mpz_pow_ui(value_.get_mpz_t(), p_.get_mpz_t(), ell_);
}

std::optional<std::uint64_t> ord_p(const Int& n, const Int& p) {
  require_prime(p, "ord_p");
  if (n == 0) return std::nullopt;
  return valuation_unchecked(n, p);
}

std::uint64_t valuation_unchecked(const Int& n, const Int& p) {
  Int rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

Int mod_pow(const Int& b, const Int& e, const Int& m) {
  if (m < 2) throw std::invalid_argument("mod_pow: modulus must be >= 2");
  if (e < 0) throw std::invalid_argument("mod_pow: negative exponent");
  Int out;
  mpz_powm(out.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return out;
}

Int mod_pow(const Int& b, const Int& e, const Modulus& m) { return mod_pow(b, e, m.value()); }

Int mod_inverse(const Int& a, const Int& m) {
  Int out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::domain_error("mod_inverse: " + a.get_str() + " not invertible mod " + m.get_str());
  }
  return out;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  static constexpr std::uint32_t kDeterministicBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (auto q : kDeterministicBases) {
    if (n == q) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) return false;
  }
  const Int n_minus_1 = n - 1;
  Int d;
  const unsigned long s = mpz_scan1(n_minus_1.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), n_minus_1.get_mpz_t(), s);
  for (auto q : kDeterministicBases) {
    if (!miller_rabin_round(n, n_minus_1, d, s, Int(q))) return false;
  }
  // The first 13 prime bases are a proof below 3.317e24.
  static const Int kDeterministicBound("3317044064679887385961981", 10);
  if (n < kDeterministicBound) return true;
  // 40 more fixed pseudo-random bases: error below 4^-40.
  Rng rng(0x9e3779b97f4a7c15ULL);
  const Int hi = n - 2;
  for (int round = 0; round < 40; ++round) {
    if (!miller_rabin_round(n, n_minus_1, d, s, uniform_int(rng, Int(2), hi))) return false;
  }
  return true;
}

Factorization factor(const Int& n, const FactorBudget& budget) {
  if (n < 2) throw std::invalid_argument("factor: n must be >= 2");
  FactorMap out;
  Int rest = n;
  for (std::uint32_t q : small_primes()) {
    if (q > budget.trial_limit) break;
    if (Int(q) * q > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), q)) {
      Int qq(q);
      out[qq] += mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), qq.get_mpz_t());
    }
  }
  std::uint64_t budget_left = budget.rho_iterations;
  factor_rest(rest, out, budget_left);
  return to_factorization(out);
}

Int recompose(const Factorization& f) {
  Int out = 1, pw;
  for (const auto& [q, e] : f) {
    mpz_pow_ui(pw.get_mpz_t(), q.get_mpz_t(), e);
    out *= pw;
  }
  return out;
}

Int euler_phi(const Factorization& m) {
  Int out = 1, pw;
  for (const auto& [q, e] : m) {
    mpz_pow_ui(pw.get_mpz_t(), q.get_mpz_t(), e - 1);
    out *= pw * (q - 1);
  }
  return out;
}

Factorization factor_euler_phi(const Factorization& m, const FactorBudget& budget) {
  FactorMap out;
  for (const auto& [q, e] : m) {
    if (e > 1) out[q] += e - 1;
    if (q > 2) {
      for (const auto& [r, f] : factor(q - 1, budget)) out[r] += f;
    }
  }
  return to_factorization(out);
}

Int ClassicalOrderBackend::order(const Int& a, const Int& m, const Factorization& group_order) const {
  Int t = recompose(group_order);
  const Int base = mod_floor(a, m);
  if (mod_pow(base, t, m) != 1) throw std::invalid_argument("order: group order is not a multiple of the element order");
  for (const auto& [q, e] : group_order) {
    for (unsigned long i = 0; i < e; ++i) {
      Int cand = t / q;
      if (mod_pow(base, cand, m) != 1) break;
      t = cand;
    }
  }
  return t;
}

const OrderBackend& default_order_backend() {
  static const ClassicalOrderBackend backend;
  return backend;
}

Int multiplicative_order(const Int& a, const Int& m, const FactorBudget& budget) {
  if (m < 2) throw std::invalid_argument("multiplicative_order: modulus must be >= 2");
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (g != 1) throw std::invalid_argument("multiplicative_order: gcd(a, m) != 1");
  const Factorization fm = factor(m, budget);
  return default_order_backend().order(a, m, factor_euler_phi(fm, budget));
}

std::vector<std::uint64_t> first_primes(std::size_t n) {
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (std::uint32_t q : small_primes()) {
    if (out.size() == n) return out;
    out.push_back(q);
  }
  for (std::uint64_t c = small_primes().back() + 2; out.size() < n; c += 2) {
    if (is_prime(from_u64(c))) out.push_back(c);
  }
  return out;
}

Int primorial(std::size_t n) {
  Int out = 1;
  for (std::uint64_t q : first_primes(n)) out *= from_u64(q);
  return out;
}

Int find_qnr(const Int& p, Rng& rng) {
  if (p == 2) throw std::invalid_argument("find_qnr: p = 2 has no quadratic non-residue");
  require_prime(p, "find_qnr");
  const Int half = (p - 1) / 2;
  const Int minus_one = p - 1;
  for (;;) {
    Int first = uniform_int(rng, Int(1), p - 1);
    Int second = uniform_int(rng, Int(1), p - 1);
    if (mod_pow(first, half, p) == minus_one) return first;
    if (mod_pow(second, half, p) == minus_one) return second;
  }
}

bool solvable_in_cyclic(const Int& order_a, const Int& d, const Int& group_order) {
  Int g;
  mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), group_order.get_mpz_t());
  if (g == 0) return order_a == 1;
  const Int quotient = group_order / g;
  return mpz_divisible_p(quotient.get_mpz_t(), order_a.get_mpz_t()) != 0;
}

TwoAdicUnit decompose_2adic_unit(const Int& alpha, unsigned long ell) {
  if (ell < 3) throw std::invalid_argument("decompose_2adic_unit: ell must be >= 3");
  if (mpz_even_p(alpha.get_mpz_t())) throw std::invalid_argument("decompose_2adic_unit: alpha must be odd");
  Int modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), 2, ell);
  Int beta = mod_floor(alpha, modulus);
  TwoAdicUnit out;
  // Powers of 5 are 1 mod 4, so the sign is read off mod 4.
  if (mpz_fdiv_ui(beta.get_mpz_t(), 4) == 3) {
    out.sign = 1;
    beta = modulus - beta;
  }
  const Int inv5 = mod_inverse(Int(5), modulus);
  out.exponent = 0;
  Int bit = 1;
  for (unsigned long i = 0; i + 2 < ell; ++i) {
    Int gamma = beta * mod_pow(inv5, out.exponent, modulus) % modulus;
    Int probe;
    mpz_ui_pow_ui(probe.get_mpz_t(), 2, ell - 3 - i);
    if (mod_pow(gamma, probe, modulus) != 1) out.exponent += bit;
    bit <<= 1;
  }
  return out;
}

Int primitive_root(const Int& p, Rng* rng, const FactorBudget& budget) {
  require_prime(p, "primitive_root");
  if (p == 2) return 1;
  const Int group = p - 1;
  const Factorization fac = factor(group, budget);
  auto is_generator = [&](const Int& g) {
    return std::all_of(fac.begin(), fac.end(),
                       [&](const PrimePower& pp) { return mod_pow(g, group / pp.prime, p) != 1; });
  };
  if (rng != nullptr) {
    for (int draw = 0; draw < 64; ++draw) {
      Int g = uniform_int(*rng, Int(2), p - 1);
      if (is_generator(g)) return g;
    }
  }
  for (Int g = 2; g < p; ++g) {
    if (is_generator(g)) return g;
  }
  throw std::logic_error("primitive_root: no generator found for prime " + p.get_str());
}

}  // namespace padicfeas
