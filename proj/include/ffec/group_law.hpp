#pragma once

// Chord-tangent group law on a Weierstrass cubic over any field-like
// coefficient type. A coefficient type supplies Elem, zero(), one(),
// from_int(), add, sub, mul, div, neg and is_zero.

#include <array>
#include <cstdint>

#include "ffec/curve.hpp"
#include "ffec/error.hpp"
#include "ffec/place.hpp"

namespace ffec {

template <class Elem>
struct Point {
  bool inf = true;
  Elem x{}, y{};

  static Point origin() { return {}; }
  static Point affine(Elem x, Elem y) { return {false, std::move(x), std::move(y)}; }
  friend bool operator==(const Point& a, const Point& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.x == b.x && a.y == b.y;
  }
};

/// F_q(t) coefficients.
struct RatFuncOps {
  using Elem = RatFunc;
  Fq f;
  Elem zero() const { return RatFunc(f); }
  Elem one() const { return RatFunc::from_int(f, 1); }
  Elem from_int(long long v) const { return RatFunc::from_int(f, v); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
};

/// Table-field coefficients (packed indices).
struct TableOps {
  using Elem = std::uint32_t;
  Fq f;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const { return f.from_int_raw(v); }
  Elem add(Elem a, Elem b) const { return f.add(a, b); }
  Elem sub(Elem a, Elem b) const { return f.sub(a, b); }
  Elem mul(Elem a, Elem b) const { return f.mul(a, b); }
  Elem div(Elem a, Elem b) const { return f.div(a, b); }
  Elem neg(Elem a) const { return f.neg(a); }
  bool is_zero(Elem a) const { return a == 0; }
};

/// Residue-field coefficients F_q[t]/(f).
struct ResidueOps {
  using Elem = Poly;
  const ResidueField* K;
  Elem zero() const { return Poly(K->base()); }
  Elem one() const { return Poly::constant(K->base().one()); }
  Elem from_int(long long v) const { return Poly::constant(K->base().from_int(v)); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return K->mul(a, b); }
  Elem div(const Elem& a, const Elem& b) const { return K->mul(a, K->inv(b)); }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
};

template <class Ops>
class GroupLaw {
 public:
  using Elem = typename Ops::Elem;
  using Pt = Point<Elem>;

  GroupLaw(Ops ops, std::array<Elem, 5> a) : k_(std::move(ops)), a_(std::move(a)) {}

  const Ops& ops() const { return k_; }
  const std::array<Elem, 5>& coeffs() const { return a_; }

  /// Left side minus right side of the Weierstrass equation.
  Elem equation(const Elem& x, const Elem& y) const {
    const auto& [a1, a2, a3, a4, a6] = a_;
    Elem lhs = k_.add(k_.mul(y, y), k_.mul(y, k_.add(k_.mul(a1, x), a3)));
    Elem x2 = k_.mul(x, x);
    Elem rhs = k_.add(k_.add(k_.mul(x2, k_.add(x, a2)), k_.mul(a4, x)), a6);
    return k_.sub(lhs, rhs);
  }
  bool on_curve(const Pt& P) const { return P.inf || k_.is_zero(equation(P.x, P.y)); }

  Pt neg(const Pt& P) const {
    if (P.inf) return P;
    return Pt::affine(P.x, k_.sub(k_.neg(P.y), k_.add(k_.mul(a_[0], P.x), a_[2])));
  }

  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    const auto& [a1, a2, a3, a4, a6] = a_;
    Elem lambda, nu;
    if (P.x == Q.x) {
      Elem ysum = k_.add(k_.add(P.y, Q.y), k_.add(k_.mul(a1, Q.x), a3));
      if (k_.is_zero(ysum)) return Pt::origin();
      // tangent
      Elem x2 = k_.mul(P.x, P.x);
      Elem den = k_.add(k_.add(k_.mul(k_.from_int(2), P.y), k_.mul(a1, P.x)), a3);
      Elem num = k_.sub(k_.add(k_.add(k_.mul(k_.from_int(3), x2), k_.mul(k_.mul(k_.from_int(2), a2), P.x)), a4), k_.mul(a1, P.y));
      Elem nnum = k_.sub(k_.add(k_.add(k_.neg(k_.mul(x2, P.x)), k_.mul(a4, P.x)), k_.mul(k_.from_int(2), a6)), k_.mul(a3, P.y));
      lambda = k_.div(num, den);
      nu = k_.div(nnum, den);
    } else {
      Elem dx = k_.sub(Q.x, P.x);
      lambda = k_.div(k_.sub(Q.y, P.y), dx);
      nu = k_.div(k_.sub(k_.mul(P.y, Q.x), k_.mul(Q.y, P.x)), dx);
    }
    Elem x3 = k_.sub(k_.sub(k_.sub(k_.add(k_.mul(lambda, lambda), k_.mul(a1, lambda)), a2), P.x), Q.x);
    Elem y3 = k_.sub(k_.sub(k_.neg(k_.mul(k_.add(lambda, a1), x3)), nu), a3);
    return Pt::affine(std::move(x3), std::move(y3));
  }

  Pt dbl(const Pt& P) const { return add(P, P); }
  Pt sub(const Pt& P, const Pt& Q) const { return add(P, neg(Q)); }

  /// Double-and-add; negative n multiplies -P.
  Pt mul(long long n, const Pt& P) const {
    if (n < 0) return mul(-n, neg(P));
    Pt R = Pt::origin(), B = P;
    auto m = static_cast<unsigned long long>(n);
    while (m) {
      if (m & 1) R = add(R, B);
      m >>= 1;
      if (m) B = dbl(B);
    }
    return R;
  }

 private:
  Ops k_;
  std::array<Elem, 5> a_;
};

using RatPoint = Point<RatFunc>;

inline GroupLaw<RatFuncOps> group_law(const Curve& E) { return {RatFuncOps{E.field()}, E.coeffs()}; }

}  // namespace ffec
