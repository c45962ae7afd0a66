#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffec/ratfunc.hpp"

namespace ffec {

using BigInt = boost::multiprecision::cpp_int;

/// Valuation of the zero function.
inline constexpr int kInfVal = std::numeric_limits<int>::max();

/// Closed point of P^1 over F_q: a monic irreducible polynomial or infinity.
class Place {
 public:
  Place() = default;
  static Place infinity(Fq f);
  /// Validates that f is monic and irreducible.
  static Place finite(const Poly& f);

  bool is_infinity() const { return inf_; }
  /// Defining polynomial; for infinity this is the local parameter s = 1/t
  /// written as the polynomial s.
  const Poly& poly() const { return f_; }
  Fq field() const { return f_.field(); }
  std::size_t deg() const { return inf_ ? 1 : f_.degree().value(); }
  BigInt qv() const;

  /// A root of the defining polynomial in the table field F_{q^deg}, when that
  /// field is within kResidueCap. For infinity this is 0 (in the s-chart).
  std::optional<std::uint32_t> root() const;
  /// The table field realizing the residue field, if within the cap.
  std::optional<Fq> table_field() const;

  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) { return a.inf_ == b.inf_ && a.f_ == b.f_; }
  /// Infinity first, then degree-major, then coefficients from the top down.
  friend bool operator<(const Place& a, const Place& b);

 private:
  friend std::vector<Place> places_of_degree(Fq, std::size_t);
  bool inf_ = false;
  Poly f_;
  std::optional<std::uint32_t> root_;
};

/// All monic irreducibles of degree n, sorted canonically.
std::vector<Place> places_of_degree(Fq f, std::size_t n);
/// Infinity followed by all finite places of degree <= D.
std::vector<Place> places_up_to(Fq f, std::size_t D);
/// Number of monic irreducibles of degree n over F_q.
BigInt necklace_count(std::uint64_t q, std::size_t n);

int valuation(const Poly& r, const Place& v);
int valuation(const RatFunc& r, const Place& v);

/// Residue field F_q[s]/(f) of a place (f = s at infinity, after t = 1/s).
class ResidueField {
 public:
  using Elem = Poly;
  explicit ResidueField(const Place& v);
  /// Residue field of the finite place f (also used for the s-chart at infinity).
  explicit ResidueField(const Poly& f);

  Fq base() const { return f_.field(); }
  const Poly& modulus() const { return f_; }
  std::size_t degree() const { return n_; }
  const BigInt& order() const { return qv_; }

  /// Image of a rational function that is integral at the place; throws on a pole.
  Elem reduce(const RatFunc& r) const;
  Elem reduce(const Poly& r) const { return r % f_; }
  Elem from_base(const FqElem& c) const { return Poly::constant(c); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return mulmod(a, b, f_); }
  Elem inv(const Elem& a) const;
  Elem pow(const Elem& a, const BigInt& k) const;
  Elem pow(const Elem& a, std::uint64_t k) const { return powmod(a, k, f_); }

  bool is_square(const Elem& a) const;
  /// The unique b with b^p = a.
  Elem pth_root(const Elem& a) const;
  /// Absolute trace to F_p.
  FqElem abs_trace(const Elem& a) const;
  /// Whether a x^2 + b x + c has a root.
  bool quadratic_has_root(const Elem& a, const Elem& b, const Elem& c) const;
  /// Number of distinct roots of X^3 + b X^2 + c X + d.
  int cubic_roots(const Elem& b, const Elem& c, const Elem& d) const;

 private:
  Poly f_;
  std::size_t n_ = 1;
  std::size_t abs_deg_ = 1;  // e * n
  BigInt qv_;
};

/// Image of r in the residue field of v (F_q[t]/(f), or r(1/s) at s = 0 for infinity).
Poly reduce_at(const RatFunc& r, const Place& v);

}  // namespace ffec
