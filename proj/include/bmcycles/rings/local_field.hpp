#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bmcycles/errors.hpp"
#include "bmcycles/rings/field.hpp"
#include "bmcycles/rings/poly.hpp"

namespace bmc {

inline Integer int_pow(const Integer& base, long n) {
  Integer r = 1;
  for (long i = 0; i < n; ++i) r *= base;
  return r;
}

/// p-adic valuation of a nonzero integer.
inline long int_valuation(Integer n, long p) {
  long v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

class LocalFieldElement;

/// The totally tamely ramified extension Q_p(ζ_e, π) with π^e = p, gcd(e, p) = 1.
///
/// Its ring of integers is W[π]/(π^e - p) with W = Z_p[x]/(F) unramified of
/// degree r = ord_e(p); F is a monic integer lift of an irreducible polynomial
/// over F_p. Elements are written on the integral basis x^a π^b, a < r, b < e.
class TameField {
 public:
  static std::shared_ptr<const TameField> create(long p, long e) {
    return std::shared_ptr<TameField>(new TameField(p, e));
  }

  long p() const { return p_; }
  long e() const { return e_; }
  long residue_degree() const { return r_; }
  std::size_t basis_size() const { return static_cast<std::size_t>(r_ * e_); }
  /// Monic modulus of the unramified part, low degree first, leading 1 included.
  const std::vector<Integer>& unramified_modulus() const { return modulus_; }
  Integer residue_field_size() const { return int_pow(p_, r_); }

  /// Default working precision (p+2)e in powers of π.
  long default_precision() const { return (p_ + 2) * e_; }

 private:
  TameField(long p, long e) : p_(p), e_(e) {
    require(p >= 2 && e >= 1, ErrorKind::PreconditionViolated, "bad field parameters");
    for (long d = 2; d * d <= p; ++d)
      require(p % d != 0, ErrorKind::PreconditionViolated, "p must be prime");
    require(std::gcd(p, e) == 1, ErrorKind::PreconditionViolated,
            "wild ramification (p divides e) is not supported");
    r_ = 1;
    if (e > 1) {
      long pw = p % e;
      while (pw != 1 % e) {
        pw = (pw * p) % e;
        ++r_;
      }
    }
    modulus_ = find_irreducible(p, r_);
  }

  static std::vector<Integer> find_irreducible(long p, long r) {
    const PrimeField f(static_cast<std::uint64_t>(p));
    if (r == 1) return {0, 1};
    // Enumerate monic degree-r polynomials; keep the first with no monic factor of degree <= r/2.
    std::vector<std::uint64_t> c(static_cast<std::size_t>(r), 0);
    for (;;) {
      std::vector<std::uint64_t> coeffs = c;
      coeffs.push_back(1);
      const Poly<PrimeField> cand(f, coeffs);
      bool irreducible = true;
      for (long d = 1; d <= r / 2 && irreducible; ++d) {
        std::vector<std::uint64_t> g(static_cast<std::size_t>(d), 0);
        for (;;) {
          std::vector<std::uint64_t> gc = g;
          gc.push_back(1);
          if (cand.divisible_by(Poly<PrimeField>(f, gc))) {
            irreducible = false;
            break;
          }
          std::size_t k = 0;
          while (k < g.size() && ++g[k] == static_cast<std::uint64_t>(p)) g[k++] = 0;
          if (k == g.size()) break;
        }
      }
      if (irreducible) {
        std::vector<Integer> out;
        for (auto x : coeffs) out.emplace_back(x);
        return out;
      }
      std::size_t k = 0;
      while (k < c.size() && ++c[k] == static_cast<std::uint64_t>(p)) c[k++] = 0;
      require(k < c.size(), ErrorKind::PreconditionViolated, "no irreducible polynomial found");
    }
  }

  long p_;
  long e_;
  long r_ = 1;
  std::vector<Integer> modulus_;
};

using TameFieldPtr = std::shared_ptr<const TameField>;

/// x = π^shift * Σ c[a,b] x^a π^b, known modulo π^precision.
///
/// Coordinates are kept reduced: c[a,b] modulo p^ceil((precision-shift-b)/e),
/// which is exactly the information the precision determines, so equality of
/// representations is equality within precision.
class LocalFieldElement {
 public:
  LocalFieldElement() = default;
  LocalFieldElement(TameFieldPtr field, long precision)
      : field_(std::move(field)), shift_(0), prec_(precision), coords_(field_->basis_size(), 0) {}

  static LocalFieldElement zero(const TameFieldPtr& f, long precision) { return LocalFieldElement(f, precision); }
  static LocalFieldElement from_integer(const TameFieldPtr& f, const Integer& n, long precision) {
    LocalFieldElement x(f, precision);
    x.coords_[0] = n;
    x.reduce();
    return x;
  }
  static LocalFieldElement one(const TameFieldPtr& f, long precision) { return from_integer(f, 1, precision); }
  /// π^k for any integer k.
  static LocalFieldElement pi_power(const TameFieldPtr& f, long k, long precision) {
    LocalFieldElement x = one(f, precision - k);
    x.shift_ = k;
    x.prec_ = precision;
    x.reduce();
    return x;
  }
  static LocalFieldElement pi(const TameFieldPtr& f, long precision) { return pi_power(f, 1, precision); }
  /// A rational number a/b viewed p-adically.
  static LocalFieldElement from_rational(const TameFieldPtr& f, const Rational& q, long precision) {
    if (q == 0) return zero(f, precision);
    Integer num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
    const long vn = int_valuation(num, f->p()), vd = int_valuation(den, f->p());
    num /= int_pow(f->p(), vn);
    den /= int_pow(f->p(), vd);
    const long shift = (vn - vd) * f->e();
    LocalFieldElement x(f, precision);
    x.shift_ = shift;
    const long rel = precision - shift;
    const long k = std::max<long>(1, (rel + f->e() - 1) / f->e());
    const Integer mod = int_pow(f->p(), k);
    x.coords_[0] = mod_floor(num * inverse_mod(den, mod), mod);
    x.reduce();
    return x;
  }
  /// Coordinate constructor: y = Σ c[a*e+b] x^a π^b (integral), scaled by π^shift.
  static LocalFieldElement from_coords(const TameFieldPtr& f, std::vector<Integer> coords, long shift, long precision) {
    require(coords.size() == f->basis_size(), ErrorKind::RankMismatch, "coordinate vector size");
    LocalFieldElement x(f, precision);
    x.coords_ = std::move(coords);
    x.shift_ = shift;
    x.reduce();
    return x;
  }

  const TameFieldPtr& field() const { return field_; }
  long precision() const { return prec_; }
  long shift() const { return shift_; }
  const std::vector<Integer>& coords() const { return coords_; }

  /// v_π(x), or nullopt when x vanishes to its precision.
  std::optional<long> valuation() const {
    const long e = field_->e(), r = field_->residue_degree();
    const long rel = prec_ - shift_;
    std::optional<long> best;
    for (long a = 0; a < r; ++a)
      for (long b = 0; b < e; ++b) {
        const Integer& c = coords_[static_cast<std::size_t>(a * e + b)];
        if (c == 0) continue;
        const long v = e * int_valuation(c, field_->p()) + b;
        if (v < rel && (!best || v < *best)) best = v;
      }
    if (!best) return std::nullopt;
    return shift_ + *best;
  }
  /// Valuation, or the precision when indeterminate: a lower bound in all cases.
  long valuation_lower_bound() const { return valuation().value_or(prec_); }
  bool is_zero() const { return !valuation().has_value(); }

  LocalFieldElement with_precision(long precision) const {
    LocalFieldElement x = *this;
    x.prec_ = std::min(prec_, precision);
    x.reduce();
    return x;
  }

  LocalFieldElement operator-() const {
    LocalFieldElement x = *this;
    for (auto& c : x.coords_) c = -c;
    x.reduce();
    return x;
  }

  friend LocalFieldElement operator+(const LocalFieldElement& a, const LocalFieldElement& b) {
    return combine(a, b, false);
  }
  friend LocalFieldElement operator-(const LocalFieldElement& a, const LocalFieldElement& b) {
    return combine(a, b, true);
  }

  friend LocalFieldElement operator*(const LocalFieldElement& a, const LocalFieldElement& b) {
    check_field(a, b);
    const long va = a.valuation_lower_bound(), vb = b.valuation_lower_bound();
    const long prec = std::min(a.prec_ + vb, b.prec_ + va);
    LocalFieldElement x(a.field_, prec);
    x.shift_ = a.shift_ + b.shift_;
    x.coords_ = raw_mul(*a.field_, a.coords_, b.coords_);
    x.reduce();
    return x;
  }
  LocalFieldElement& operator+=(const LocalFieldElement& o) { return *this = *this + o; }
  LocalFieldElement& operator-=(const LocalFieldElement& o) { return *this = *this - o; }
  LocalFieldElement& operator*=(const LocalFieldElement& o) { return *this = *this * o; }

  LocalFieldElement times_pi_power(long k) const {
    LocalFieldElement x = *this;
    x.shift_ += k;
    x.prec_ += k;
    return x;
  }

  LocalFieldElement pow(long n) const {
    require(n >= 0, ErrorKind::PreconditionViolated, "negative power; use inverse()");
    if (n == 0) return one(field_, std::max(prec_, 1L));
    LocalFieldElement r = *this;
    for (long i = 1; i < n; ++i) r *= *this;
    return r;
  }

  /// Inverse of a nonzero element; relative precision is preserved, so the
  /// absolute precision drops to precision - 2 v_π(x).
  LocalFieldElement inverse() const {
    const auto v = valuation();
    require(v.has_value(), ErrorKind::IndeterminateValuation, "inverse of an element that vanishes to precision");
    // Strip π^(v - shift) from the integral part: y = π^t u0.
    const long t = *v - shift_;
    std::vector<Integer> u0 = coords_;
    for (long i = 0; i < t; ++i) u0 = div_pi(*field_, u0);
    const long rel = prec_ - shift_ - t;  // relative precision of the unit
    // Residue inverse by u0^(q-2) in the residue field, then Newton doubling.
    LocalFieldElement unit = from_coords(field_, u0, 0, rel);
    LocalFieldElement w = from_coords(field_, u0, 0, 1);
    const Integer q = field_->residue_field_size();
    w = residue_pow(w, q - 2);
    long have = 1;
    const LocalFieldElement two = from_integer(field_, 2, rel);
    while (have < rel) {
      have = std::min(2 * have, rel);
      LocalFieldElement wn = w.with_known_precision(have);
      LocalFieldElement un = unit.with_precision(have);
      w = wn * (two.with_precision(have) - un * wn);
      w = w.with_known_precision(have);
    }
    LocalFieldElement r = w.with_known_precision(rel);
    r.shift_ = -*v;
    r.prec_ = rel - *v;
    r.reduce();
    return r;
  }

  friend LocalFieldElement operator/(const LocalFieldElement& a, const LocalFieldElement& b) { return a * b.inverse(); }

  /// Equality within the smaller of the two precisions.
  friend bool operator==(const LocalFieldElement& a, const LocalFieldElement& b) { return (a - b).is_zero(); }

  std::string to_string() const {
    const long e = field_->e(), r = field_->residue_degree();
    std::string s;
    for (long a = 0; a < r; ++a)
      for (long b = 0; b < e; ++b) {
        const Integer& c = coords_[static_cast<std::size_t>(a * e + b)];
        if (c == 0) continue;
        if (!s.empty()) s += " + ";
        s += c.str();
        if (a > 0) s += "*x^" + std::to_string(a);
        if (b > 0) s += "*pi^" + std::to_string(b);
      }
    if (s.empty()) s = "0";
    return "pi^" + std::to_string(shift_) + "*(" + s + ") + O(pi^" + std::to_string(prec_) + ")";
  }

 private:
  static void check_field(const LocalFieldElement& a, const LocalFieldElement& b) {
    require(a.field_ && a.field_ == b.field_, ErrorKind::RankMismatch, "elements of different local fields");
  }

  static Integer inverse_mod(const Integer& a, const Integer& m) {
    if (m == 1) return 0;
    Integer old_r = mod_floor(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
      Integer q = old_r / r;
      Integer tmp = r;
      r = old_r - q * r;
      old_r = tmp;
      tmp = s;
      s = old_s - q * s;
      old_s = tmp;
    }
    require(old_r == 1, ErrorKind::SingularMatrix, "integer not invertible modulo p^k");
    return mod_floor(old_s, m);
  }

  // Treat the element as known only to `precision` relative digits (no valuation bookkeeping).
  LocalFieldElement with_known_precision(long rel) const {
    LocalFieldElement x = *this;
    x.prec_ = x.shift_ + rel;
    x.reduce();
    return x;
  }

  static LocalFieldElement residue_pow(LocalFieldElement base, Integer n) {
    LocalFieldElement r = one(base.field_, 1);
    while (n > 0) {
      if ((n & 1) != 0) r = (r * base).with_known_precision(1);
      base = (base * base).with_known_precision(1);
      n >>= 1;
    }
    return r;
  }

  static std::vector<Integer> raw_mul(const TameField& f, const std::vector<Integer>& x, const std::vector<Integer>& y) {
    const long e = f.e(), r = f.residue_degree();
    // acc[b][deg] over x-degree up to 2r-2 before reduction.
    std::vector<std::vector<Integer>> acc(static_cast<std::size_t>(e),
                                          std::vector<Integer>(static_cast<std::size_t>(2 * r - 1), 0));
    for (long a1 = 0; a1 < r; ++a1)
      for (long b1 = 0; b1 < e; ++b1) {
        const Integer& c1 = x[static_cast<std::size_t>(a1 * e + b1)];
        if (c1 == 0) continue;
        for (long a2 = 0; a2 < r; ++a2)
          for (long b2 = 0; b2 < e; ++b2) {
            const Integer& c2 = y[static_cast<std::size_t>(a2 * e + b2)];
            if (c2 == 0) continue;
            Integer c = c1 * c2;
            long b = b1 + b2;
            if (b >= e) {
              b -= e;
              c *= f.p();
            }
            acc[static_cast<std::size_t>(b)][static_cast<std::size_t>(a1 + a2)] += c;
          }
      }
    const auto& F = f.unramified_modulus();
    std::vector<Integer> out(f.basis_size(), 0);
    for (long b = 0; b < e; ++b) {
      auto& poly = acc[static_cast<std::size_t>(b)];
      for (long deg = 2 * r - 2; deg >= r; --deg) {
        const Integer c = poly[static_cast<std::size_t>(deg)];
        if (c == 0) continue;
        poly[static_cast<std::size_t>(deg)] = 0;
        for (long k = 0; k < r; ++k) poly[static_cast<std::size_t>(deg - r + k)] -= c * F[static_cast<std::size_t>(k)];
      }
      for (long a = 0; a < r; ++a) out[static_cast<std::size_t>(a * e + b)] = poly[static_cast<std::size_t>(a)];
    }
    return out;
  }

  // Multiply integral coordinates by π.
  static std::vector<Integer> mul_pi(const TameField& f, const std::vector<Integer>& x) {
    const long e = f.e(), r = f.residue_degree();
    std::vector<Integer> out(x.size(), 0);
    for (long a = 0; a < r; ++a)
      for (long b = 0; b < e; ++b) {
        const Integer& c = x[static_cast<std::size_t>(a * e + b)];
        if (b + 1 < e) out[static_cast<std::size_t>(a * e + b + 1)] += c;
        else out[static_cast<std::size_t>(a * e)] += c * f.p();
      }
    return out;
  }
  // Divide integral coordinates by π; requires p | c[a,0].
  static std::vector<Integer> div_pi(const TameField& f, const std::vector<Integer>& x) {
    const long e = f.e(), r = f.residue_degree();
    std::vector<Integer> out(x.size(), 0);
    for (long a = 0; a < r; ++a)
      for (long b = 0; b < e; ++b) {
        const Integer& c = x[static_cast<std::size_t>(a * e + b)];
        if (b > 0) {
          out[static_cast<std::size_t>(a * e + b - 1)] += c;
        } else {
          require(c % f.p() == 0, ErrorKind::InexactDivision, "element not divisible by pi");
          out[static_cast<std::size_t>(a * e + e - 1)] += c / f.p();
        }
      }
    return out;
  }

  static LocalFieldElement combine(const LocalFieldElement& a, const LocalFieldElement& b, bool subtract) {
    check_field(a, b);
    const long s = std::min(a.shift_, b.shift_);
    std::vector<Integer> ya = a.coords_, yb = b.coords_;
    for (long i = 0; i < a.shift_ - s; ++i) ya = mul_pi(*a.field_, ya);
    for (long i = 0; i < b.shift_ - s; ++i) yb = mul_pi(*b.field_, yb);
    LocalFieldElement x(a.field_, std::min(a.prec_, b.prec_));
    x.shift_ = s;
    for (std::size_t k = 0; k < ya.size(); ++k) x.coords_[k] = subtract ? Integer(ya[k] - yb[k]) : Integer(ya[k] + yb[k]);
    x.reduce();
    return x;
  }

  void reduce() {
    const long e = field_->e(), r = field_->residue_degree();
    const long rel = prec_ - shift_;
    for (long a = 0; a < r; ++a)
      for (long b = 0; b < e; ++b) {
        Integer& c = coords_[static_cast<std::size_t>(a * e + b)];
        const long room = rel - b;
        if (room <= 0) {
          c = 0;
          continue;
        }
        c = mod_floor(c, int_pow(field_->p(), (room + e - 1) / e));
      }
  }

  TameFieldPtr field_;
  long shift_ = 0;
  long prec_ = 0;
  std::vector<Integer> coords_;
};

/// v_π(x); throws IndeterminateValuation when x vanishes to its precision.
inline long lf_valuation(const LocalFieldElement& x) {
  const auto v = x.valuation();
  require(v.has_value(), ErrorKind::IndeterminateValuation, "all known coefficients vanish: " + x.to_string());
  return *v;
}

/// A primitive e-th root of unity in W, Hensel-lifted to the given precision.
inline LocalFieldElement primitive_root_of_unity(const TameFieldPtr& f, long precision) {
  const long e = f->e(), r = f->residue_degree();
  if (e == 1) return LocalFieldElement::one(f, precision);
  // Search residues z in F_{p^r}^* (coords on x^a, b = 0) of exact order e.
  const Integer q = f->residue_field_size();
  std::vector<long> primes;
  for (long d = 2, n = e; n > 1; ++d)
    if (n % d == 0) {
      primes.push_back(d);
      while (n % d == 0) n /= d;
    }
  auto power = [&](const LocalFieldElement& base, long n) {
    LocalFieldElement acc = LocalFieldElement::one(f, 1);
    for (long i = 0; i < n; ++i) acc = acc * base;
    return acc;
  };
  std::vector<Integer> c(f->basis_size(), 0);
  std::optional<LocalFieldElement> z;
  const Integer candidates = q;
  for (Integer idx = 1; idx < candidates && !z; ++idx) {
    Integer t = idx;
    for (long a = 0; a < r; ++a) {
      c[static_cast<std::size_t>(a * e)] = t % f->p();
      t /= f->p();
    }
    LocalFieldElement g = LocalFieldElement::from_coords(f, c, 0, 1);
    // g^((q-1)/e) has order dividing e; check it is exactly e.
    LocalFieldElement cand = LocalFieldElement::one(f, 1);
    {
      Integer n = (q - 1) / e;
      LocalFieldElement b = g;
      while (n > 0) {
        if ((n & 1) != 0) cand = cand * b;
        b = b * b;
        n >>= 1;
      }
    }
    if (!(power(cand, e) == LocalFieldElement::one(f, 1))) continue;
    bool exact = true;
    for (long l : primes)
      if (power(cand, e / l) == LocalFieldElement::one(f, 1)) exact = false;
    if (exact) z = cand;
  }
  require(z.has_value(), ErrorKind::PreconditionViolated, "no primitive root of unity in the residue field");
  // Newton on z^e - 1; e is a unit so the derivative e z^(e-1) is a unit.
  LocalFieldElement zz = LocalFieldElement::from_coords(f, z->coords(), 0, precision);
  const LocalFieldElement one = LocalFieldElement::one(f, precision);
  const LocalFieldElement ee = LocalFieldElement::from_integer(f, e, precision);
  for (long have = 1; have < 2 * precision; have *= 2) {
    LocalFieldElement ze1 = LocalFieldElement::one(f, precision);
    for (long i = 0; i < e - 1; ++i) ze1 = ze1 * zz;
    zz = zz - (ze1 * zz - one) * (ee * ze1).inverse();
    zz = zz.with_precision(precision);
  }
  return zz;
}

}  // namespace bmc
