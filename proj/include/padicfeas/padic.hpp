#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "padicfeas/bigmod.hpp"
#include "padicfeas/sparse_poly.hpp"

namespace padicfeas {

// Which branch of a decision procedure produced the verdict.
enum class DecisionRule {
  kZeroRoot,           // x = 0 is a root
  kValuationMismatch,  // d does not divide ord_p(alpha)
  kCyclicOrder,        // order test in the cyclic group (Z/p^l Z)^*
  kTwoAdic,            // (-1)^a 5^b decomposition in (Z/2^l Z)^*, l >= 3
  kHenselCertified,    // residue search found a Hensel-certified root
  kExhausted,          // no candidate survived; no root
};

std::string_view to_string(DecisionRule rule);
DecisionRule decision_rule_from_string(std::string_view name);

/// A root approximation: the true root is p^valuation_shift * zeta with
/// zeta = residue (mod modulus) a Hensel-certified root of the polynomial
/// the rule worked on (for binomials, the unit-normalized x^d - alpha').
struct Witness {
  Int residue;
  Modulus modulus;
  Int valuation_shift;
};

struct PadicDecision {
  bool feasible = false;
  std::optional<Witness> witness;
  DecisionRule rule = DecisionRule::kExhausted;
};

struct HenselSeed {
  Int x0;
  unsigned long ell = 0;
  unsigned long vprime = 0;  // ord_p f'(x0)
};

struct HenselTrace {
  Int root;                               // residue mod p^target_ell
  std::vector<unsigned long> precisions;  // known precision after each Newton step
};

/// Newton iteration from a seed with f(x0) = 0 mod p^ell and
/// 2 * ord_p f'(x0) < ell. Each step takes precision k to 2k - 2*vprime.
/// The result r satisfies f(r) = 0 mod p^target_ell and r = x0 mod
/// p^(ell - vprime). Throws std::invalid_argument if the seed is invalid.
Int hensel_lift(const SparsePoly& f, const HenselSeed& seed, const Int& p, unsigned long target_ell);
HenselTrace hensel_lift_traced(const SparsePoly& f, const HenselSeed& seed, const Int& p,
                               unsigned long target_ell);

/// Does c1*x^a1 + c2*x^a2 have a root in Q_p? Exact classical decision:
/// valuation check, rescale to a unit, then an order computation in
/// (Z/p^l Z)^* with l = 1 + 2*ord_p(d), where d = a1 - a2. For p = 2 and
/// l >= 3 the (-1)^a 5^b decomposition replaces the cyclic test.
PadicDecision decide_binomial(const Int& c1, const Int& a1, const Int& c2, const Int& a2, const Int& p,
                              const OrderBackend& backend = default_order_backend());

/// All M-th roots of unity in F_p, as w^0, w^1, ..., w^(M-1) with
/// w = g^((p-1)/M) for the least primitive root g. Requires M | p - 1.
std::vector<Int> roots_of_unity_mod_p(const Int& p, const Int& M);

struct OracleCaps {
  std::uint64_t degree = 512;         // dense degree cap for gcd and resultant
  std::size_t candidates = 1'000'000;  // live residues per precision level
  std::uint64_t precision = 1'000'000;
};

/// Independent brute-force oracle: does f have a root in Q_p? Residue
/// refinement on the squarefree part, certifying candidates by the Hensel
/// condition, with the depth bounded by 1 + 2*ord_p(Res(f~, f~')). Roots of
/// negative valuation are found on reverse(f~). Throws CapExceeded.
PadicDecision decide_bruteforce_qp_detailed(const SparsePoly& f, const Int& p, const OracleCaps& caps = {});
bool decide_bruteforce_qp(const SparsePoly& f, const Int& p, const OracleCaps& caps = {});

/// f -> f^2: f has a Q_p root iff f^2 has a degenerate (double) Q_p root.
SparsePoly degenerate_reduction(const SparsePoly& f);

/// Does f have a root of multiplicity >= 2 in Q_p? Decided as
/// feasibility of gcd(f, f') with the brute-force oracle.
bool has_degenerate_root_qp(const SparsePoly& f, const Int& p, const OracleCaps& caps = {});

}  // namespace padicfeas
