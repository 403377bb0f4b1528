#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bmcycles/errors.hpp"
#include "bmcycles/rings/local_field.hpp"

namespace bmc {

/// The field E with its uniformiser π (π^e = p) and the conjugates π_j = ζ^j π.
struct TameFieldContext {
  TameFieldPtr field;
  long precision = 0;
  LocalFieldElement pi;
  LocalFieldElement zeta;
  std::vector<LocalFieldElement> conjugates;

  static TameFieldContext create(long p, long e, std::optional<long> precision = std::nullopt) {
    TameFieldContext c;
    c.field = TameField::create(p, e);
    c.precision = precision.value_or(c.field->default_precision());
    c.pi = LocalFieldElement::pi(c.field, c.precision);
    c.zeta = primitive_root_of_unity(c.field, c.precision);
    LocalFieldElement z = LocalFieldElement::one(c.field, c.precision);
    for (long j = 0; j < e; ++j) {
      c.conjugates.push_back(z * c.pi);
      z = z * c.zeta;
    }
    return c;
  }

  long p() const { return field->p(); }
  long e() const { return field->e(); }
  LocalFieldElement zero() const { return LocalFieldElement::zero(field, precision); }
  LocalFieldElement one() const { return LocalFieldElement::one(field, precision); }
  LocalFieldElement integer(const Integer& n) const { return LocalFieldElement::from_integer(field, n, precision); }
};

/// max_{j != j'} v_π(π_j − π_j').
inline long nu_invariant(const TameFieldContext& ctx) {
  require(ctx.e() >= 2, ErrorKind::PreconditionViolated, "nu needs at least two conjugates");
  long nu = 0;
  for (std::size_t a = 0; a < ctx.conjugates.size(); ++a)
    for (std::size_t b = 0; b < ctx.conjugates.size(); ++b)
      if (a != b) nu = std::max(nu, lf_valuation(ctx.conjugates[a] - ctx.conjugates[b]));
  return nu;
}

/// Σ_n c_n (u − center)^n with coefficients in E.
class LocalPoly {
 public:
  LocalPoly() = default;
  LocalPoly(LocalFieldElement center, std::vector<LocalFieldElement> coeffs)
      : center_(std::move(center)), coeffs_(std::move(coeffs)) {}

  static LocalPoly constant(const LocalFieldElement& center, const LocalFieldElement& c) { return {center, {c}}; }
  /// (u − a) written around `center`.
  static LocalPoly linear(const LocalFieldElement& center, const LocalFieldElement& a) {
    return {center, {center - a, LocalFieldElement::one(center.field(), center.precision())}};
  }

  const LocalFieldElement& center() const { return center_; }
  const std::vector<LocalFieldElement>& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  LocalFieldElement coeff(std::size_t n) const {
    return n < coeffs_.size() ? coeffs_[n] : LocalFieldElement::zero(center_.field(), center_.precision());
  }

  /// Keeps the terms of degree < n.
  LocalPoly truncated(std::size_t n) const {
    LocalPoly r = *this;
    if (r.coeffs_.size() > n) r.coeffs_.resize(n);
    return r;
  }

  friend LocalPoly operator+(const LocalPoly& a, const LocalPoly& b) {
    const std::size_t n = std::max(a.size(), b.size());
    std::vector<LocalFieldElement> c;
    for (std::size_t k = 0; k < n; ++k) c.push_back(a.coeff(k) + b.coeff(k));
    return {a.center_, std::move(c)};
  }
  friend LocalPoly operator-(const LocalPoly& a, const LocalPoly& b) {
    const std::size_t n = std::max(a.size(), b.size());
    std::vector<LocalFieldElement> c;
    for (std::size_t k = 0; k < n; ++k) c.push_back(a.coeff(k) - b.coeff(k));
    return {a.center_, std::move(c)};
  }
  /// Product, optionally keeping only degrees < limit.
  static LocalPoly multiply(const LocalPoly& a, const LocalPoly& b, std::optional<std::size_t> limit = std::nullopt) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) return {a.center_, {}};
    std::size_t n = a.size() + b.size() - 1;
    if (limit) n = std::min(n, *limit);
    std::vector<std::optional<LocalFieldElement>> acc(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i)
      for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
        LocalFieldElement t = a.coeffs_[i] * b.coeffs_[j];
        acc[i + j] = acc[i + j] ? *acc[i + j] + t : t;
      }
    std::vector<LocalFieldElement> c;
    for (auto& x : acc) c.push_back(x ? *x : LocalFieldElement::zero(a.center_.field(), a.center_.precision()));
    return {a.center_, std::move(c)};
  }
  friend LocalPoly operator*(const LocalPoly& a, const LocalPoly& b) { return multiply(a, b); }

  LocalPoly pow(std::size_t n) const {
    LocalPoly r = constant(center_, LocalFieldElement::one(center_.field(), center_.precision()));
    for (std::size_t i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  /// The same polynomial in powers of (u − c): Horner in (u − c) + (c − center).
  LocalPoly recentered(const LocalFieldElement& c) const {
    const LocalPoly step = linear(c, center_);
    LocalPoly r(c, {});
    for (std::size_t k = coeffs_.size(); k-- > 0;) r = r * step + constant(c, coeffs_[k]);
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k].is_zero()) continue;
      s += (s.empty() ? "" : " + ") + std::string("[") + coeffs_[k].to_string() + "]*(u-c)^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }

 private:
  LocalFieldElement center_;
  std::vector<LocalFieldElement> coeffs_;
};

inline Integer binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Truncation of (u − π_κ')^{−r'} around π_κ to degree < r:
/// Σ_{n<r} (−1)^n C(r'−1+n, r'−1) (u − π_κ)^n / (π_κ − π_κ')^{n+r'}.
inline LocalPoly geometric_kernel(long r_target, long r_other, const LocalFieldElement& pi_k,
                                  const LocalFieldElement& pi_o) {
  require(r_target >= 0 && r_other >= 0, ErrorKind::PreconditionViolated, "negative exponents");
  if (r_other == 0) return {pi_k, {LocalFieldElement::one(pi_k.field(), pi_k.precision())}};
  const LocalFieldElement delta = pi_k - pi_o;
  require(!delta.is_zero(), ErrorKind::PreconditionViolated, "conjugates coincide");
  const LocalFieldElement dinv = delta.inverse();
  std::vector<LocalFieldElement> c;
  LocalFieldElement dpow = dinv.pow(static_cast<long>(r_other));
  for (long n = 0; n < r_target; ++n) {
    Integer b = binomial(r_other - 1 + n, r_other - 1);
    if (n % 2 == 1) b = -b;
    c.push_back(LocalFieldElement::from_integer(pi_k.field(), b, pi_k.precision()) * dpow);
    dpow = dpow * dinv;
  }
  for (const auto& x : c)
    require(x.precision() > x.valuation_lower_bound() || x.is_zero(), ErrorKind::PrecisionExhausted,
            "kernel coefficient lost all precision");
  return {pi_k, std::move(c)};
}

struct LedgerEntry {
  long n = 0;
  /// Valuation of the coefficient of (u − π_κ)^n in m ∏ X, or nullopt if it vanishes to precision.
  std::optional<long> valuation;
  long precision = 0;
  long bound = 0;
  bool ok = false;
};

struct InterpolationReport {
  LocalPoly M;
  /// Monomial coefficients of M.
  std::vector<LocalFieldElement> monomial_coeffs;
  bool congruence = false;
  bool divisibility = false;
  bool integrality = false;
  bool ledger_ok = false;
  bool within_bound = false;
  long nu = 0;
  long verified_precision = 0;
  std::vector<LedgerEntry> ledger;
  bool pass() const { return congruence && divisibility && integrality && ledger_ok; }
};

/// m = Σ_{l=1}^{p} (u − π_κ)^{p−l} π^l m_l, as a polynomial around π_κ.
inline LocalPoly claim_input(const TameFieldContext& ctx, const std::vector<LocalFieldElement>& m_coeffs,
                             std::size_t target) {
  require(static_cast<long>(m_coeffs.size()) == ctx.p(), ErrorKind::RankMismatch, "need p coefficients m_1..m_p");
  const long p = ctx.p();
  std::vector<LocalFieldElement> c;
  for (long n = 0; n < p; ++n) {
    const long l = p - n;
    c.push_back(LocalFieldElement::pi_power(ctx.field, l, ctx.precision) * m_coeffs[static_cast<std::size_t>(l - 1)]);
  }
  return {ctx.conjugates.at(target), std::move(c)};
}

namespace detail {
inline bool low_terms_vanish(const LocalPoly& f, std::size_t n, long& prec) {
  bool ok = true;
  for (std::size_t k = 0; k < n; ++k) {
    const LocalFieldElement c = f.coeff(k);
    prec = std::min(prec, c.precision());
    ok = ok && c.is_zero();
  }
  return ok;
}
}  // namespace detail

/// M ∈ π O[u] with M ≡ m mod (u − π_κ)^{r_κ} and (u − π_κ')^{r_κ'} | M for κ' ≠ κ.
inline InterpolationReport interpolate_claim(const TameFieldContext& ctx, const std::vector<LocalFieldElement>& m_coeffs,
                                             const std::vector<long>& r, std::size_t target,
                                             bool override_bounds = false) {
  require(r.size() == ctx.conjugates.size(), ErrorKind::RankMismatch, "need one r per conjugate");
  for (const auto& m : m_coeffs)
    require(m.is_zero() || lf_valuation(m) >= 0, ErrorKind::PreconditionViolated, "m_l must be integral");
  InterpolationReport rep;
  rep.nu = nu_invariant(ctx);
  long total = 0, others = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    require(r[k] >= 0, ErrorKind::PreconditionViolated, "negative r");
    total += r[k];
    if (k != target) others += r[k];
  }
  // Σ r <= (p−1)/ν + 1
  rep.within_bound = (total - 1) * rep.nu <= ctx.p() - 1;
  require(rep.within_bound || override_bounds, ErrorKind::BoundViolated,
          "sum of r = " + std::to_string(total) + " exceeds (p-1)/nu + 1");
  const LocalFieldElement& pk = ctx.conjugates[target];
  const std::size_t rt = static_cast<std::size_t>(r[target]);
  const LocalPoly m = claim_input(ctx, m_coeffs, target);

  LocalPoly prod = m.truncated(rt);
  for (std::size_t k = 0; k < r.size(); ++k)
    if (k != target && r[k] > 0)
      prod = LocalPoly::multiply(prod, geometric_kernel(r[target], r[k], pk, ctx.conjugates[k]), rt);
  const LocalPoly N = prod.truncated(rt);

  rep.ledger_ok = true;
  for (std::size_t n = 0; n < rt; ++n) {
    LedgerEntry le;
    le.n = static_cast<long>(n);
    const LocalFieldElement c = N.coeff(n);
    le.valuation = c.valuation();
    le.precision = c.precision();
    le.bound = ctx.p() - (others + le.n) * rep.nu;
    le.ok = c.valuation_lower_bound() >= le.bound;
    rep.ledger_ok = rep.ledger_ok && le.ok;
    rep.ledger.push_back(le);
  }

  LocalPoly M = N;
  for (std::size_t k = 0; k < r.size(); ++k)
    if (k != target && r[k] > 0)
      M = M * LocalPoly::linear(pk, ctx.conjugates[k]).pow(static_cast<std::size_t>(r[k]));
  rep.M = M;

  long prec = ctx.precision;
  rep.congruence = detail::low_terms_vanish(M - m, rt, prec);
  rep.divisibility = true;
  for (std::size_t k = 0; k < r.size(); ++k)
    if (k != target && r[k] > 0)
      rep.divisibility = detail::low_terms_vanish(M.recentered(ctx.conjugates[k]), static_cast<std::size_t>(r[k]), prec) &&
                         rep.divisibility;
  const LocalPoly mono = M.recentered(ctx.zero());
  rep.monomial_coeffs = mono.coeffs();
  rep.integrality = true;
  for (const auto& c : mono.coeffs()) {
    prec = std::min(prec, c.precision());
    rep.integrality = rep.integrality && c.valuation_lower_bound() >= 1;
  }
  rep.verified_precision = prec;
  return rep;
}

}  // namespace bmc
