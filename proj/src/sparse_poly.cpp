#include "padicfeas/sparse_poly.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "padicfeas/errors.hpp"

namespace padicfeas {

namespace {

using i128 = __int128;

bool all_exps_fit_u64(const std::vector<Term>& ts) {
  return ts.empty() || fits_u64(ts.back().exp);
}

// Largest |coefficient| as a bit count.
std::size_t max_coeff_bits(const std::vector<Term>& ts) {
  std::size_t bits = 0;
  for (const auto& t : ts) bits = std::max(bits, mpz_sizeinbase(t.coeff.get_mpz_t(), 2));
  return bits;
}

Int from_i128(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::uint64_t words[2] = {static_cast<std::uint64_t>(mag), static_cast<std::uint64_t>(mag >> 64)};
  Int out;
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  return neg ? Int(-out) : out;
}

// Product kernel for word-sized data: coefficients below 2^62 and a bound
// guaranteeing no __int128 overflow in any accumulated coefficient.
bool small_product_ok(const std::vector<Term>& f, const std::vector<Term>& g) {
  if (!all_exps_fit_u64(f) || !all_exps_fit_u64(g)) return false;
  if (!fits_u64(f.back().exp + g.back().exp)) return false;
  const std::size_t bf = max_coeff_bits(f), bg = max_coeff_bits(g);
  if (bf > 62 || bg > 62) return false;
  const std::size_t count_bits = std::bit_width(std::min(f.size(), g.size()));
  return bf + bg + count_bits <= 125;
}

SparsePoly mul_small(const std::vector<Term>& f, const std::vector<Term>& g) {
  std::vector<std::pair<std::uint64_t, std::int64_t>> a, b;
  a.reserve(f.size());
  b.reserve(g.size());
  for (const auto& t : f) a.emplace_back(to_u64(t.exp), to_i64(t.coeff));
  for (const auto& t : g) b.emplace_back(to_u64(t.exp), to_i64(t.coeff));
  const std::uint64_t deg = a.back().first + b.back().first;
  const std::uint64_t low = a.front().first + b.front().first;
  const std::uint64_t width = deg - low + 1;
  const std::uint64_t products = static_cast<std::uint64_t>(a.size()) * b.size();
  std::vector<Term> out;
  if (width <= (std::uint64_t{1} << 22) && width <= 4 * products + 64) {
    std::vector<i128> acc(width, 0);
    for (const auto& [ea, ca] : a) {
      for (const auto& [eb, cb] : b) acc[ea + eb - low] += static_cast<i128>(ca) * cb;
    }
    for (std::uint64_t i = 0; i < width; ++i) {
      if (acc[i] != 0) out.push_back({from_i128(acc[i]), from_u64(i + low)});
    }
    return SparsePoly::from_canonical_terms(std::move(out));
  }
  std::unordered_map<std::uint64_t, i128> acc;
  acc.reserve(std::min<std::uint64_t>(products, 1u << 24));
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) acc[ea + eb] += static_cast<i128>(ca) * cb;
  }
  std::vector<std::pair<std::uint64_t, i128>> sorted(acc.begin(), acc.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [e, c] : sorted) {
    if (c != 0) out.push_back({from_i128(c), from_u64(e)});
  }
  return SparsePoly::from_canonical_terms(std::move(out));
}

SparsePoly mul_general(const std::vector<Term>& f, const std::vector<Term>& g) {
  std::map<Int, Int> acc;
  for (const auto& s : f) {
    for (const auto& t : g) acc[s.exp + t.exp] += s.coeff * t.coeff;
  }
  std::vector<Term> out;
  for (auto& [e, c] : acc) {
    if (c != 0) out.push_back({c, e});
  }
  return SparsePoly::from_canonical_terms(std::move(out));
}

// Top-down long division with the running remainder keyed by exponent.
template <typename Exp, typename ToExp, typename FromExp>
SparsePoly long_divide(const SparsePoly& f, const SparsePoly& g, const DivisionCaps& caps, ToExp to_exp,
                       FromExp from_exp) {
  std::map<Exp, Int, std::greater<Exp>> rem;
  for (const auto& t : f.terms()) rem.emplace(to_exp(t.exp), t.coeff);
  std::vector<std::pair<Exp, Int>> divisor;
  for (const auto& t : g.terms()) divisor.emplace_back(to_exp(t.exp), t.coeff);
  const Exp gdeg = divisor.back().first;
  const Int& glc = divisor.back().second;
  std::vector<Term> quotient;
  Int qc;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (top->first < gdeg) throw InexactDivision("exact_div: nonzero remainder of lower degree than divisor");
    if (!mpz_divisible_p(top->second.get_mpz_t(), glc.get_mpz_t())) {
      throw InexactDivision("exact_div: leading coefficient not divisible");
    }
    mpz_divexact(qc.get_mpz_t(), top->second.get_mpz_t(), glc.get_mpz_t());
    const Exp qe = top->first - gdeg;
    quotient.push_back({qc, from_exp(qe)});
    if (quotient.size() > caps.max_terms) throw CapExceeded("exact_div: quotient exceeds term cap");
    rem.erase(top);
    for (std::size_t i = 0; i + 1 < divisor.size(); ++i) {
      const Exp e = divisor[i].first + qe;
      auto [it, inserted] = rem.try_emplace(e, 0);
      it->second -= qc * divisor[i].second;
      if (it->second == 0) rem.erase(it);
    }
    if (rem.size() > caps.max_terms) throw CapExceeded("exact_div: remainder exceeds term cap");
  }
  std::reverse(quotient.begin(), quotient.end());
  return SparsePoly::from_canonical_terms(std::move(quotient));
}

std::uint64_t ceil_log2_2_plus(const Int& v) {
  // ceil(log2(w)) for w >= 2 equals the bit length of w - 1.
  const Int w = abs(v) + 1;
  return mpz_sizeinbase(w.get_mpz_t(), 2);
}

}  // namespace

SparsePoly SparsePoly::from_terms(std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.exp < 0) throw std::invalid_argument("SparsePoly: negative exponent " + t.exp.get_str());
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  SparsePoly out;
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().exp == t.exp) {
      out.terms_.back().coeff += t.coeff;
      if (out.terms_.back().coeff == 0) out.terms_.pop_back();
    } else if (t.coeff != 0) {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

SparsePoly SparsePoly::from_canonical_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coeff == 0) throw std::invalid_argument("SparsePoly: zero coefficient");
    if (terms[i].exp < 0) throw std::invalid_argument("SparsePoly: negative exponent");
    if (i > 0 && !(terms[i - 1].exp < terms[i].exp)) {
      throw std::invalid_argument("SparsePoly: exponents must be strictly increasing");
    }
  }
  SparsePoly out;
  out.terms_ = std::move(terms);
  return out;
}

SparsePoly SparsePoly::constant(const Int& c) { return monomial(c, 0); }

SparsePoly SparsePoly::monomial(const Int& c, const Int& e) { return from_terms({{c, e}}); }

SparsePoly SparsePoly::x_pow_minus_one(const Int& m) { return from_terms({{Int(1), m}, {Int(-1), Int(0)}}); }

const Int& SparsePoly::degree() const {
  if (terms_.empty()) throw std::domain_error("degree of the zero polynomial");
  return terms_.back().exp;
}

const Int& SparsePoly::leading_coeff() const {
  if (terms_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return terms_.back().coeff;
}

const Int& SparsePoly::low_exponent() const {
  if (terms_.empty()) throw std::domain_error("low exponent of the zero polynomial");
  return terms_.front().exp;
}

Int SparsePoly::coeff_of(const Int& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Term& t, const Int& x) { return t.exp < x; });
  if (it != terms_.end() && it->exp == e) return it->coeff;
  return 0;
}

SparsePoly operator+(const SparsePoly& f, const SparsePoly& g) {
  const auto& a = f.terms();
  const auto& b = g.terms();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exp < b[j].exp)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exp < a[i].exp) {
      out.push_back(b[j++]);
    } else {
      Int c = a[i].coeff + b[j].coeff;
      if (c != 0) out.push_back({std::move(c), a[i].exp});
      ++i;
      ++j;
    }
  }
  return SparsePoly::from_canonical_terms(std::move(out));
}

SparsePoly operator-(const SparsePoly& f) {
  std::vector<Term> out = f.terms();
  for (auto& t : out) t.coeff = -t.coeff;
  return SparsePoly::from_canonical_terms(std::move(out));
}

SparsePoly operator-(const SparsePoly& f, const SparsePoly& g) { return f + (-g); }

SparsePoly operator*(const SparsePoly& f, const SparsePoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  if (small_product_ok(f.terms(), g.terms())) return mul_small(f.terms(), g.terms());
  return mul_general(f.terms(), g.terms());
}

SparsePoly square(const SparsePoly& f) { return f * f; }

SparsePoly scale(const SparsePoly& f, const Int& c) {
  if (c == 0) return {};
  std::vector<Term> out = f.terms();
  for (auto& t : out) t.coeff *= c;
  return SparsePoly::from_canonical_terms(std::move(out));
}

SparsePoly shift(const SparsePoly& f, const Int& s) {
  std::vector<Term> out = f.terms();
  for (auto& t : out) t.exp += s;
  return SparsePoly::from_terms(std::move(out));
}

Int eval_mod(const SparsePoly& f, const Int& x, const Int& m) {
  if (m < 2) throw std::invalid_argument("eval_mod: modulus must be >= 2");
  const Int base = mod_floor(x, m);
  Int acc = 0, power = 1, prev = 0, step;
  for (const auto& t : f.terms()) {
    mpz_powm(step.get_mpz_t(), base.get_mpz_t(), Int(t.exp - prev).get_mpz_t(), m.get_mpz_t());
    power = power * step % m;
    prev = t.exp;
    acc += t.coeff * power;
  }
  return mod_floor(acc, m);
}

SparsePoly derivative(const SparsePoly& f) {
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    if (t.exp == 0) continue;
    out.push_back({t.coeff * t.exp, t.exp - 1});
  }
  return SparsePoly::from_canonical_terms(std::move(out));
}

SparsePoly exact_div(const SparsePoly& f, const SparsePoly& g, const DivisionCaps& caps) {
  if (g.is_zero()) throw std::invalid_argument("exact_div: division by the zero polynomial");
  if (f.is_zero()) return {};
  if (all_exps_fit_u64(f.terms()) && all_exps_fit_u64(g.terms())) {
    return long_divide<std::uint64_t>(
        f, g, caps, [](const Int& e) { return to_u64(e); }, [](std::uint64_t e) { return from_u64(e); });
  }
  return long_divide<Int>(
      f, g, caps, [](const Int& e) { return e; }, [](const Int& e) { return e; });
}

std::uint64_t size(const SparsePoly& f) {
  std::uint64_t total = 0;
  for (const auto& t : f.terms()) total += 1 + ceil_log2_2_plus(t.coeff) + ceil_log2_2_plus(t.exp);
  return total;
}

std::uint64_t size_p(const SparsePoly& f, const Int& p) { return size(f) + ceil_log2_2_plus(p); }

SparsePoly reverse(const SparsePoly& f) {
  if (f.is_zero()) throw std::invalid_argument("reverse: zero polynomial");
  const Int& deg = f.degree();
  std::vector<Term> out;
  out.reserve(f.term_count());
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) out.push_back({it->coeff, deg - it->exp});
  return SparsePoly::from_canonical_terms(std::move(out));
}

SparsePoly primitive_part(const SparsePoly& f) {
  if (f.is_zero()) return f;
  Int content = 0;
  for (const auto& t : f.terms()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.coeff.get_mpz_t());
  if (f.leading_coeff() < 0) content = -content;
  std::vector<Term> out = f.terms();
  for (auto& t : out) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), content.get_mpz_t());
  return SparsePoly::from_canonical_terms(std::move(out));
}

}  // namespace padicfeas
