#include <algorithm>
#include <map>
#include <optional>
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

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Baby-step giant-step for base^x = target in a cyclic subgroup of prime
// order q. Gives up (nullopt) when q is too large for the table.
std::optional<Int> bsgs_prime_order(const Int& base, const Int& target, const Int& q, const Int& modulus) {
  constexpr unsigned long kMaxSteps = 1ul << 16;
  Int steps_big = sqrt(q) + 1;
  if (steps_big > kMaxSteps) return std::nullopt;
  const unsigned long steps = steps_big.get_ui();
  std::map<Int, unsigned long> baby;
  Int cur = 1;
  for (unsigned long j = 0; j < steps; ++j) {
    baby.emplace(cur, j);
    cur = cur * base % modulus;
  }
  const Int giant = mod_inverse(mod_pow(base, Int(steps), modulus), modulus);
  Int gamma = mod_floor(target, modulus);
  for (unsigned long i = 0; i < steps; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) return Int(i) * steps + it->second;
    gamma = gamma * giant % modulus;
  }
  return std::nullopt;
}

// Pohlig-Hellman discrete log of target to a generator of a cyclic group
// of order recompose(group).
std::optional<Int> discrete_log(const Int& generator, const Int& target, const Int& modulus,
                                const Factorization& group) {
  const Int order = recompose(group);
  Int residue = 0, combined_mod = 1;
  for (const auto& [q, e] : group) {
    const Int qe = prime_power(q, e);
    const Int cofactor = order / qe;
    const Int gamma = mod_pow(generator, cofactor, modulus);
    const Int h = mod_pow(target, cofactor, modulus);
    const Int gamma_q = mod_pow(gamma, prime_power(q, e - 1), modulus);
    Int x = 0, qi = 1;
    const Int gamma_inv = mod_inverse(gamma, modulus);
    for (unsigned long i = 0; i < e; ++i) {
      const Int reduced = h * mod_pow(gamma_inv, x, modulus) % modulus;
      const Int probe = mod_pow(reduced, prime_power(q, e - 1 - i), modulus);
      auto digit = bsgs_prime_order(gamma_q, probe, q, modulus);
      if (!digit) return std::nullopt;
      x += *digit * qi;
      qi *= q;
    }
    // CRT merge of x mod qe into residue mod combined_mod.
    const Int t = mod_floor((x - residue) * mod_inverse(combined_mod, qe), qe);
    residue += combined_mod * t;
    combined_mod *= qe;
  }
  return mod_floor(residue, combined_mod);
}

// Generator of (Z/p^ell Z)^*, cyclic since p is odd or ell <= 2.
Int cyclic_generator(const Int& p, unsigned long ell) {
  if (p == 2) return ell == 1 ? Int(1) : Int(3);
  Int g = primitive_root(p);
  if (ell >= 2 && mod_pow(g, p - 1, p * p) == 1) g += p;
  return g;
}

PadicDecision monomial_decision(const Int& c, const Int& a, const Int& p) {
  PadicDecision out;
  if (c == 0 || a > 0) {
    out.feasible = true;
    out.rule = DecisionRule::kZeroRoot;
    out.witness = Witness{Int(0), Modulus(p, 1), Int(0)};
  } else {
    out.feasible = false;
    out.rule = DecisionRule::kExhausted;
  }
  return out;
}

}  // namespace

std::string_view to_string(DecisionRule rule) {
  switch (rule) {
    case DecisionRule::kZeroRoot: return "zero-root";
    case DecisionRule::kValuationMismatch: return "valuation-mismatch";
    case DecisionRule::kCyclicOrder: return "cyclic-order";
    case DecisionRule::kTwoAdic: return "two-adic";
    case DecisionRule::kHenselCertified: return "hensel-certified";
    case DecisionRule::kExhausted: return "exhausted";
  }
  return "unknown";
}

DecisionRule decision_rule_from_string(std::string_view name) {
  for (auto r : {DecisionRule::kZeroRoot, DecisionRule::kValuationMismatch, DecisionRule::kCyclicOrder,
                 DecisionRule::kTwoAdic, DecisionRule::kHenselCertified, DecisionRule::kExhausted}) {
    if (to_string(r) == name) return r;
  }
  throw std::invalid_argument("unknown decision rule '" + std::string(name) + "'");
}

PadicDecision decide_binomial(const Int& c1_in, const Int& a1_in, const Int& c2_in, const Int& a2_in, const Int& p,
                              const OrderBackend& backend) {
  if (!is_prime(p)) throw std::invalid_argument("decide_binomial: p is not prime");
  if (a1_in < 0 || a2_in < 0) throw std::invalid_argument("decide_binomial: negative exponent");
  if (a1_in == a2_in) return monomial_decision(c1_in + c2_in, a1_in, p);
  if (c1_in == 0) return monomial_decision(c2_in, a2_in, p);
  if (c2_in == 0) return monomial_decision(c1_in, a1_in, p);

  const bool swap = a1_in < a2_in;
  const Int& c1 = swap ? c2_in : c1_in;
  const Int& c2 = swap ? c1_in : c2_in;
  const Int& a1 = swap ? a2_in : a1_in;
  const Int& a2 = swap ? a1_in : a2_in;

  PadicDecision out;
  if (a2 > 0) {
    out.feasible = true;
    out.rule = DecisionRule::kZeroRoot;
    out.witness = Witness{Int(0), Modulus(p, 1), Int(0)};
    return out;
  }

  // x^d = alpha with alpha = -c2/c1 carried as a reduced fraction num/den.
  const Int d = a1;
  Int num = -c2, den = c1;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Int val_num = from_u64(valuation_unchecked(num, p));
  const Int val_den = from_u64(valuation_unchecked(den, p));
  const Int val_alpha = val_num - val_den;
  if (!mpz_divisible_p(val_alpha.get_mpz_t(), d.get_mpz_t())) {
    out.feasible = false;
    out.rule = DecisionRule::kValuationMismatch;
    return out;
  }
  const Int shift = val_alpha / d;
  Int unit_num = num, unit_den = den;
  mpz_divexact(unit_num.get_mpz_t(), num.get_mpz_t(), prime_power(p, val_num.get_ui()).get_mpz_t());
  mpz_divexact(unit_den.get_mpz_t(), den.get_mpz_t(), prime_power(p, val_den.get_ui()).get_mpz_t());

  const unsigned long ell = 1 + 2 * valuation_unchecked(d, p);
  const Modulus modulus(p, ell);
  const Int& m = modulus.value();
  const Int alpha = unit_num * mod_inverse(unit_den, m) % m;

  if (p != 2 || ell <= 2) {
    // (Z/p^ell Z)^* is cyclic of order p^(ell-1) (p-1).
    Factorization group;
    if (p == 2) {
      if (ell > 1) group.push_back({Int(2), ell - 1});
    } else {
      group = factor(p - 1);
      if (ell > 1) {
        bool merged = false;
        for (auto& pp : group) {
          if (pp.prime == p) {
            pp.exponent += ell - 1;
            merged = true;
          }
        }
        if (!merged) {
          group.push_back({p, ell - 1});
          std::sort(group.begin(), group.end(), [](const PrimePower& x, const PrimePower& y) { return x.prime < y.prime; });
        }
      }
    }
    const Int group_order = recompose(group);
    const Int order_alpha = group.empty() ? Int(1) : backend.order(alpha, m, group);
    out.rule = DecisionRule::kCyclicOrder;
    out.feasible = solvable_in_cyclic(order_alpha, d, group_order);
    if (!out.feasible) return out;
    if (group.empty()) {
      out.witness = Witness{Int(1), modulus, shift};
      return out;
    }
    const Int g = cyclic_generator(p, ell);
    if (auto k = discrete_log(g, alpha, m, group)) {
      // Solve d*j = k mod group_order; gcd(d, group_order) divides k here.
      const Int gd = gcd(d, group_order);
      const Int reduced_order = group_order / gd;
      Int j = 0;
      if (reduced_order > 1) j = (*k / gd) * mod_inverse(mod_floor(d / gd, reduced_order), reduced_order) % reduced_order;
      out.witness = Witness{mod_pow(g, j, m), modulus, shift};
    }
    return out;
  }

  // p = 2, ell >= 3: alpha = (-1)^a 5^b, unique.
  const TwoAdicUnit unit = decompose_2adic_unit(alpha, ell);
  out.rule = DecisionRule::kTwoAdic;
  const Int two_group = prime_power(Int(2), ell - 2);
  const Int five_b = mod_pow(Int(5), unit.exponent, m);
  const Int order_five_b = backend.order(five_b, m, Factorization{{Int(2), ell - 1}});
  const Int gd = gcd(d, two_group);
  const bool d_odd = mpz_odd_p(d.get_mpz_t()) != 0;
  const bool order_ok = mpz_divisible_p(Int(two_group / gd).get_mpz_t(), order_five_b.get_mpz_t()) != 0;
  out.feasible = d_odd || (unit.sign == 0 && order_ok);
  if (!out.feasible) return out;
  // (-5^j)^d = -5^(jd) for odd d, so the sign carries over.
  const Int reduced_order = two_group / gd;
  Int j = 0;
  if (reduced_order > 1) {
    j = (unit.exponent / gd) * mod_inverse(mod_floor(d / gd, reduced_order), reduced_order) % reduced_order;
  }
  const Int five_j = mod_pow(Int(5), j, m);
  out.witness = Witness{unit.sign == 0 ? five_j : m - five_j, modulus, shift};
  return out;
}

std::vector<Int> roots_of_unity_mod_p(const Int& p, const Int& M) {
  if (!is_prime(p)) throw std::invalid_argument("roots_of_unity_mod_p: p is not prime");
  if (M < 1 || !mpz_divisible_p(Int(p - 1).get_mpz_t(), M.get_mpz_t())) {
    throw std::invalid_argument("roots_of_unity_mod_p: M = " + M.get_str() + " does not divide p - 1");
  }
  const Int w = mod_pow(primitive_root(p), (p - 1) / M, p);
  const std::uint64_t count = to_u64(M);
  std::vector<Int> out;
  out.reserve(count);
  Int cur = 1;
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(cur);
    cur = cur * w % p;
  }
  return out;
}

}  // namespace padicfeas
