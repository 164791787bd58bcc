#include <optional>
#include <stdexcept>
#include <string>

#include "padicfeas/errors.hpp"
#include "padicfeas/padic.hpp"

namespace padicfeas {

namespace {

struct Certified {
  Int residue;
  unsigned long ell;
};

// Every residue class mod p^l that still contains a root is refined level by
// level. Res(g, g') = A g + B g' bounds min(ord g(x), ord g'(x)) by R for
// every x in Z_p, so at l = 2R + 1 each survivor meets the Hensel condition.
std::optional<Certified> refine(const SparsePoly& g, const Int& p, bool zero_class_only, const OracleCaps& caps) {
  const Int res = resultant_dense(g, derivative(g), caps.degree);
  if (res == 0) throw std::logic_error("decide_bruteforce_qp: squarefree part has zero discriminant");
  const std::uint64_t bound = 1 + 2 * valuation_unchecked(res, p);
  if (bound > caps.precision) {
    throw CapExceeded("decide_bruteforce_qp: precision bound " + std::to_string(bound) + " exceeds cap");
  }
  if (p > caps.candidates) throw CapExceeded("decide_bruteforce_qp: p exceeds candidate cap");
  const SparsePoly dg = derivative(g);

  std::vector<Int> live;
  Int mod = p;
  if (zero_class_only) {
    if (eval_mod(g, Int(0), p) == 0) live.push_back(0);
  } else {
    for (Int r = 0; r < p; ++r) {
      if (eval_mod(g, r, p) == 0) live.push_back(r);
    }
  }
  for (unsigned long ell = 1; !live.empty(); ++ell) {
    for (const Int& x : live) {
      const Int dx = eval_mod(dg, x, mod);
      if (dx != 0 && 2 * valuation_unchecked(dx, p) < ell) return Certified{x, ell};
    }
    if (ell >= bound) {
      throw std::logic_error("decide_bruteforce_qp: uncertified candidates past the resultant bound");
    }
    const Int next_mod = mod * p;
    std::vector<Int> next;
    for (const Int& x : live) {
      for (Int j = 0; j < p; ++j) {
        Int child = x + j * mod;
        if (eval_mod(g, child, next_mod) == 0) next.push_back(std::move(child));
      }
      if (next.size() > caps.candidates) throw CapExceeded("decide_bruteforce_qp: candidate cap exceeded");
    }
    live = std::move(next);
    mod = next_mod;
  }
  return std::nullopt;
}

}  // namespace

PadicDecision decide_bruteforce_qp_detailed(const SparsePoly& f, const Int& p, const OracleCaps& caps) {
  if (!is_prime(p)) throw std::invalid_argument("decide_bruteforce_qp: p is not prime");
  PadicDecision out;
  if (f.is_zero() || f.low_exponent() > 0) {
    out.feasible = true;
    out.rule = DecisionRule::kZeroRoot;
    out.witness = Witness{Int(0), Modulus(p, 1), Int(0)};
    return out;
  }
  if (f.degree() == 0) {
    out.rule = DecisionRule::kExhausted;
    return out;
  }
  if (!fits_u64(f.degree()) || to_u64(f.degree()) > caps.degree) {
    throw CapExceeded("decide_bruteforce_qp: degree " + f.degree().get_str() + " exceeds cap");
  }
  const SparsePoly g = squarefree_part(f, caps.degree);

  if (auto hit = refine(g, p, false, caps)) {
    out.feasible = true;
    out.rule = DecisionRule::kHenselCertified;
    out.witness = Witness{hit->residue, Modulus(p, hit->ell), Int(0)};
    return out;
  }
  // Roots of negative valuation are reciprocals of roots of reverse(g) that
  // lie in pZ_p. g(0) != 0, so reverse(g) has the same degree.
  if (refine(reverse(g), p, true, caps)) {
    out.feasible = true;
    out.rule = DecisionRule::kHenselCertified;
    return out;
  }
  out.rule = DecisionRule::kExhausted;
  return out;
}

bool decide_bruteforce_qp(const SparsePoly& f, const Int& p, const OracleCaps& caps) {
  return decide_bruteforce_qp_detailed(f, p, caps).feasible;
}

SparsePoly degenerate_reduction(const SparsePoly& f) { return square(f); }

bool has_degenerate_root_qp(const SparsePoly& f, const Int& p, const OracleCaps& caps) {
  if (!is_prime(p)) throw std::invalid_argument("has_degenerate_root_qp: p is not prime");
  if (f.is_zero()) return true;
  if (!fits_u64(f.degree()) || to_u64(f.degree()) > caps.degree) {
    throw CapExceeded("has_degenerate_root_qp: degree " + f.degree().get_str() + " exceeds cap");
  }
  const SparsePoly g = gcd_dense(f, derivative(f), caps.degree);
  if (g.is_zero() || g.degree() == 0) return false;
  return decide_bruteforce_qp(g, p, caps);
}

}  // namespace padicfeas
