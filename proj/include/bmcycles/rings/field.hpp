#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "bmcycles/errors.hpp"

namespace bmc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Field descriptors. A descriptor owns whatever runtime data the field needs
// (the prime for F_p) and exposes arithmetic on its value_type, so that series,
// polynomial and matrix templates stay agnostic of the coefficient field.

/// The prime field F_p with p < 2^31.
struct PrimeField {
  using value_type = std::uint64_t;

  std::uint64_t p = 2;

  PrimeField() = default;
  explicit PrimeField(std::uint64_t prime) : p(prime) {
    require(prime >= 2 && prime < (1ULL << 31), ErrorKind::PreconditionViolated,
            "prime out of range: " + std::to_string(prime));
  }

  std::uint64_t characteristic() const { return p; }
  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  value_type from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    return static_cast<value_type>(r < 0 ? r + static_cast<long long>(p) : r);
  }
  value_type add(value_type a, value_type b) const { return (a + b) % p; }
  value_type sub(value_type a, value_type b) const { return (a + p - b) % p; }
  value_type neg(value_type a) const { return (p - a) % p; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p; }
  value_type pow(value_type a, std::uint64_t n) const {
    value_type r = one();
    while (n) {
      if (n & 1) r = mul(r, a);
      a = mul(a, a);
      n >>= 1;
    }
    return r;
  }
  value_type inv(value_type a) const {
    require(a % p != 0, ErrorKind::SingularMatrix, "inverse of zero in F_p");
    return pow(a, p - 2);
  }
  bool is_zero(value_type a) const { return a % p == 0; }
  bool equal(value_type a, value_type b) const { return a % p == b % p; }
  std::string to_string(value_type a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }
};

/// The rationals, exact.
struct RationalField {
  using value_type = Rational;

  std::uint64_t characteristic() const { return 0; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const { return v; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    require(a != 0, ErrorKind::SingularMatrix, "inverse of zero in Q");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  std::string to_string(const value_type& a) const { return a.str(); }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

}  // namespace bmc
