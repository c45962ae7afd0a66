#pragma once

#include "ffec/poly.hpp"

namespace ffec {

/// Rational function num/den over F_q in reduced form: gcd(num, den) = 1,
/// den monic, zero stored as 0/1.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(Fq f) : num_(f), den_(Poly::constant(f.one())) {}
  RatFunc(Poly num);  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den);

  static RatFunc constant(const FqElem& c) { return RatFunc(Poly::constant(c)); }
  static RatFunc variable(Fq f) { return RatFunc(Poly::variable(f)); }
  static RatFunc from_int(Fq f, long long v) { return constant(f.from_int(v)); }

  Fq field() const { return num_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  /// Value of a constant rational function.
  FqElem constant_value() const;

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc inv() const;
  RatFunc pow(long long k) const;

  /// t -> t^d
  RatFunc compose_power(std::size_t d) const;
  /// t -> 1/t
  RatFunc invert_variable() const;
  /// t -> c t
  RatFunc scale_var(const FqElem& c) const;
  RatFunc embed(const Embedding& emb) const;

  /// max(deg num, deg den)
  std::size_t height() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  Poly num_, den_;
};

/// Multiply by an integer scalar (reduced mod p).
RatFunc scalar(const RatFunc& r, long long k);

}  // namespace ffec
