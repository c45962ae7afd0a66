#include "ffec/ratfunc.hpp"

#include <algorithm>

#include "ffec/error.hpp"

namespace ffec {

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field().one())) {}

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) fail(ErrorKind::InvalidArgument, "rational function with zero denominator");
  const Fq f = den.field();
  if (num.is_zero()) {
    num_ = Poly(f);
    den_ = Poly::constant(f.one());
    return;
  }
  Poly g = gcd(num, den);
  if (!g.is_one()) {
    num = num.exact_div(g);
    den = den.exact_div(g);
  }
  const FqElem li = den.lead().inv();
  num_ = num * li;
  den_ = den * li;
}

FqElem RatFunc::constant_value() const {
  if (!is_constant()) fail(ErrorKind::InvalidArgument, "rational function is not constant");
  return num_.coeff(0);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  if (den_.is_one()) return RatFunc(num_ * o.den_ + o.num_, o.den_);
  if (o.den_.is_one()) return RatFunc(num_ + o.num_ * den_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc(field());
  if (den_.is_one() && o.den_.is_one()) {
    RatFunc r;
    r.num_ = num_ * o.num_;
    r.den_ = den_;
    return r;
  }
  // cross-cancel before multiplying
  Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  RatFunc r;
  r.num_ = num_.exact_div(g1) * o.num_.exact_div(g2);
  r.den_ = den_.exact_div(g2) * o.den_.exact_div(g1);
  const FqElem li = r.den_.lead().inv();
  r.num_ = r.num_ * li;
  r.den_ = r.den_ * li;
  return r;
}

RatFunc RatFunc::inv() const {
  if (is_zero()) fail(ErrorKind::InvalidArgument, "inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inv(); }

RatFunc RatFunc::pow(long long k) const {
  if (k < 0) return inv().pow(-k);
  RatFunc r;
  r.num_ = num_.pow(static_cast<std::uint64_t>(k));
  r.den_ = den_.pow(static_cast<std::uint64_t>(k));
  if (r.num_.is_zero()) return RatFunc(field());
  return r;
}

RatFunc RatFunc::compose_power(std::size_t d) const { return RatFunc(num_.compose_power(d), den_.compose_power(d)); }

RatFunc RatFunc::invert_variable() const {
  if (is_zero()) return *this;
  // num(1/t)/den(1/t) = t^{dd-dn} rev(num)/rev(den)
  const std::size_t dn = num_.degree().value(), dd = den_.degree().value();
  Poly n = num_.reverse(dn + 1), d = den_.reverse(dd + 1);
  if (dd >= dn)
    n = n.shift(dd - dn);
  else
    d = d.shift(dn - dd);
  return RatFunc(n, d);
}

RatFunc RatFunc::scale_var(const FqElem& c) const { return RatFunc(num_.scale_var(c), den_.scale_var(c)); }

RatFunc RatFunc::embed(const Embedding& emb) const { return RatFunc(num_.embed(emb), den_.embed(emb)); }

std::size_t RatFunc::height() const {
  if (is_zero()) return 0;
  return std::max(num_.degree().value(), den_.degree().value());
}

RatFunc scalar(const RatFunc& r, long long k) {
  if (r.is_zero()) return r;
  return r * RatFunc::from_int(r.field(), k);
}

}  // namespace ffec
