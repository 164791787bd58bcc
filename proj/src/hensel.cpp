#include <stdexcept>
#include <string>

#include "padicfeas/padic.hpp"

namespace padicfeas {

namespace {

Int prime_power(const Int& p, unsigned long e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), e);
  return out;
}

}  // namespace

HenselTrace hensel_lift_traced(const SparsePoly& f, const HenselSeed& seed, const Int& p,
                               unsigned long target_ell) {
  if (!is_prime(p)) throw std::invalid_argument("hensel_lift: p is not prime");
  if (seed.ell == 0) throw std::invalid_argument("hensel_lift: seed precision must be positive");
  const SparsePoly df = derivative(f);
  const Int seed_mod = prime_power(p, seed.ell);
  if (eval_mod(f, seed.x0, seed_mod) != 0) throw std::invalid_argument("hensel_lift: f(x0) != 0 mod p^ell");
  const Int d0 = eval_mod(df, seed.x0, seed_mod);
  if (d0 == 0) throw std::invalid_argument("hensel_lift: ord_p f'(x0) >= ell");
  const unsigned long v = valuation_unchecked(d0, p);
  if (v != seed.vprime) {
    throw std::invalid_argument("hensel_lift: seed vprime " + std::to_string(seed.vprime) +
                                " but ord_p f'(x0) = " + std::to_string(v));
  }
  if (2 * v >= seed.ell) throw std::invalid_argument("hensel_lift: Hensel condition ord_p f'(x0) < ell/2 fails");

  HenselTrace trace;
  Int x = mod_floor(seed.x0, seed_mod);
  unsigned long k = seed.ell;
  const Int pv = prime_power(p, v);
  while (k < target_ell) {
    const unsigned long next = 2 * k - 2 * v;
    const Int work = prime_power(p, next + v);
    const Int next_mod = prime_power(p, next);
    const Int fx = eval_mod(f, x, work);
    const Int dx = eval_mod(df, x, work);
    // fx has valuation >= k > v and dx has valuation exactly v.
    Int fx_red, dx_unit;
    mpz_divexact(fx_red.get_mpz_t(), fx.get_mpz_t(), pv.get_mpz_t());
    mpz_divexact(dx_unit.get_mpz_t(), dx.get_mpz_t(), pv.get_mpz_t());
    const Int step = fx_red * mod_inverse(dx_unit, next_mod) % next_mod;
    x = mod_floor(x - step, next_mod);
    k = next;
    trace.precisions.push_back(k);
  }
  trace.root = mod_floor(x, prime_power(p, target_ell));
  return trace;
}

Int hensel_lift(const SparsePoly& f, const HenselSeed& seed, const Int& p, unsigned long target_ell) {
  return hensel_lift_traced(f, seed, p, target_ell).root;
}

}  // namespace padicfeas
