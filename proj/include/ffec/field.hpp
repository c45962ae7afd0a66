#pragma once

// Finite fields F_{p^e} with table-driven arithmetic.
//
// Elements are stored as packed coefficient indices: the element
// c_0 + c_1 g + ... + c_{e-1} g^{e-1} (g = class of t modulo the defining
// polynomial) has index sum c_i p^i. Multiplication goes through discrete
// log tables relative to a primitive element; addition in odd
// characteristic uses Zech logarithms.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ffec {

/// Public bound on the coefficient field size.
inline constexpr std::uint64_t kFieldCap = 1ull << 16;
/// Bound on residue fields realized as table fields (point counting).
inline constexpr std::uint64_t kResidueCap = 1ull << 20;

namespace detail {
struct FieldTables;
}

class FqElem;

/// Handle to a finite field. Fields are interned: creating the same (p, e)
/// twice yields the same handle, and handles compare by identity.
class Fq {
 public:
  Fq() = default;

  /// F_{p^e} with the deterministic modulus; requires p prime and p^e <= 2^16.
  static Fq create(std::uint32_t p, std::uint32_t e);
  /// Same construction with the larger residue-field bound (p^e <= 2^20).
  static Fq residue(std::uint32_t p, std::uint32_t e);

  bool valid() const { return t_ != nullptr; }
  std::uint32_t p() const;
  std::uint32_t e() const;
  std::uint32_t q() const;
  /// Defining polynomial over F_p, low degree first, monic, e + 1 entries.
  const std::vector<std::uint32_t>& modulus() const;

  FqElem zero() const;
  FqElem one() const;
  /// The class of t modulo the defining polynomial.
  FqElem gen() const;
  /// The multiplicative generator used by the log tables.
  FqElem primitive() const;
  FqElem from_int(long long v) const;
  FqElem from_index(std::uint32_t idx) const;
  FqElem from_coeffs(std::span<const std::uint32_t> c) const;

  // Raw arithmetic on packed indices.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t k) const;
  std::uint32_t from_int_raw(long long v) const;
  /// Discrete log of a nonzero element.
  std::uint32_t log(std::uint32_t a) const;
  std::uint32_t exp(std::uint64_t k) const;
  bool is_square(std::uint32_t a) const;
  /// Some square root of a square (odd characteristic or p = 2).
  std::uint32_t sqrt(std::uint32_t a) const;
  /// Inverse of the absolute Frobenius: the unique b with b^p = a.
  std::uint32_t pth_root(std::uint32_t a) const;
  /// Absolute trace to F_p.
  std::uint32_t trace(std::uint32_t a) const;
  /// Coefficient vector (length e) of a packed index.
  std::vector<std::uint32_t> coeffs(std::uint32_t a) const;

  const detail::FieldTables* raw() const { return t_; }
  friend bool operator==(const Fq& a, const Fq& b) { return a.t_ == b.t_; }

  std::string name() const;

 private:
  explicit Fq(const detail::FieldTables* t) : t_(t) {}
  static Fq make(std::uint32_t p, std::uint32_t e, std::uint64_t cap);
  const detail::FieldTables* t_ = nullptr;
};

/// Element of a finite field; value type carrying its field handle.
class FqElem {
 public:
  FqElem() = default;
  FqElem(Fq f, std::uint32_t v) : f_(f), v_(v) {}

  Fq field() const { return f_; }
  std::uint32_t index() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  std::vector<std::uint32_t> coeffs() const { return f_.coeffs(v_); }

  FqElem operator+(const FqElem& o) const { return {f_, f_.add(v_, o.v_)}; }
  FqElem operator-(const FqElem& o) const { return {f_, f_.sub(v_, o.v_)}; }
  FqElem operator-() const { return {f_, f_.neg(v_)}; }
  FqElem operator*(const FqElem& o) const { return {f_, f_.mul(v_, o.v_)}; }
  FqElem operator/(const FqElem& o) const { return {f_, f_.div(v_, o.v_)}; }
  FqElem& operator+=(const FqElem& o) { return *this = *this + o; }
  FqElem& operator-=(const FqElem& o) { return *this = *this - o; }
  FqElem& operator*=(const FqElem& o) { return *this = *this * o; }
  FqElem inv() const { return {f_, f_.inv(v_)}; }
  FqElem pow(std::uint64_t k) const { return {f_, f_.pow(v_, k)}; }
  FqElem frobenius() const { return pow(f_.p()); }

  friend bool operator==(const FqElem& a, const FqElem& b) { return a.v_ == b.v_ && a.f_ == b.f_; }

 private:
  Fq f_;
  std::uint32_t v_ = 0;
};

/// Canonical inclusion F_{p^e} -> F_{p^{em}}: the generator of the small field
/// is sent to the root of its defining polynomial with least packed index.
class Embedding {
 public:
  static const Embedding& get(Fq small, Fq big);
  Fq small() const { return small_; }
  Fq big() const { return big_; }
  std::uint32_t operator()(std::uint32_t a) const { return map_[a]; }
  FqElem operator()(const FqElem& a) const { return {big_, map_[a.index()]}; }

 private:
  Embedding(Fq s, Fq b);
  Fq small_, big_;
  std::vector<std::uint32_t> map_;
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t ipow(std::uint64_t b, unsigned e);

/// Least m >= 1 with q^m = 1 mod d; requires gcd(q, d) = 1.
std::uint64_t mult_order(std::uint64_t q, std::uint64_t d);

}  // namespace ffec
