#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ffec/field.hpp"

namespace ffec {

/// Polynomial degree with a distinct value for the zero polynomial.
class Degree {
 public:
  static Degree neg_inf() { return Degree(); }
  explicit Degree(std::size_t d) : d_(d) {}

  bool is_neg_inf() const { return !d_.has_value(); }
  std::size_t value() const;  // throws on -inf

  friend bool operator==(const Degree&, const Degree&) = default;
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (!a.d_ || !b.d_) return a.d_.has_value() <=> b.d_.has_value();
    return *a.d_ <=> *b.d_;
  }

 private:
  Degree() = default;
  std::optional<std::size_t> d_;
};

/// Univariate polynomial over F_q. Coefficients are packed field indices,
/// lowest degree first, with no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Fq f) : f_(f) {}
  Poly(Fq f, std::vector<std::uint32_t> c);

  static Poly constant(const FqElem& c);
  static Poly monomial(const FqElem& c, std::size_t k);
  static Poly variable(Fq f) { return monomial(f.one(), 1); }
  static Poly from_ints(Fq f, std::initializer_list<long long> low_first);

  Fq field() const { return f_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  Degree degree() const { return c_.empty() ? Degree::neg_inf() : Degree(c_.size() - 1); }
  /// Number of stored coefficients (degree + 1, or 0 for the zero polynomial).
  std::size_t size() const { return c_.size(); }
  FqElem coeff(std::size_t i) const { return {f_, i < c_.size() ? c_[i] : 0u}; }
  FqElem lead() const { return coeff(c_.empty() ? 0 : c_.size() - 1); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const std::vector<std::uint32_t>& raw() const { return c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const FqElem& c) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  /// Exact division; throws if d does not divide *this.
  Poly exact_div(const Poly& d) const;

  Poly monic() const;
  Poly derivative() const;
  Poly shift(std::size_t k) const;  // multiply by t^k
  Poly pow(std::uint64_t k) const;
  /// Substitute t -> t^d.
  Poly compose_power(std::size_t d) const;
  /// Substitute t -> c t.
  Poly scale_var(const FqElem& c) const;
  /// Coefficient-wise map through a field embedding.
  Poly embed(const Embedding& emb) const;
  /// Apply x -> x^p to every coefficient.
  Poly frobenius_coeffs() const;
  /// Coefficients reversed in a window of length n (t^{n-1} p(1/t)).
  Poly reverse(std::size_t n) const;

  FqElem eval(const FqElem& x) const;
  /// Evaluate at a point of a larger field via the canonical embedding.
  std::uint32_t eval_in(const Embedding& emb, std::uint32_t x) const;

  /// Multiplicity of the irreducible f as a factor of *this (nonzero).
  int multiplicity(const Poly& f) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_ && (a.c_.empty() || a.f_ == b.f_); }
  /// Canonical order: degree first, then coefficients from the top down.
  friend bool canonical_less(const Poly& a, const Poly& b);

 private:
  void trim();
  Fq f_;
  std::vector<std::uint32_t> c_;
};

Poly gcd(Poly a, Poly b);
/// Extended gcd: returns (g, s, t) with s a + t b = g, g monic.
struct XGcd {
  Poly g, s, t;
};
XGcd xgcd(const Poly& a, const Poly& b);
Poly powmod(const Poly& base, std::uint64_t k, const Poly& m);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);

bool is_irreducible(const Poly& f);

/// Factorization into monic irreducibles with multiplicities plus a unit.
struct Factorization {
  FqElem unit;
  std::vector<std::pair<Poly, int>> factors;  // sorted canonically
};
Factorization factor(const Poly& f);

/// Raw polynomial product of coefficient arrays (Karatsuba above a threshold).
std::vector<std::uint32_t> poly_mul_raw(Fq f, const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);

}  // namespace ffec
