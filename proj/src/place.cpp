#include "ffec/place.hpp"

#include <algorithm>

#include "ffec/error.hpp"
#include "ffec/notation.hpp"

namespace ffec {

namespace {

BigInt big_pow(std::uint64_t q, std::size_t n) {
  BigInt r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= q;
  return r;
}

bool fits_table(Fq f, std::size_t n) {
  std::uint64_t Q = 1;
  for (std::size_t i = 0; i < n * f.e(); ++i) {
    Q *= f.p();
    if (Q > kResidueCap) return false;
  }
  return true;
}

// Least root of f in the table field of degree deg f over F_q.
std::optional<std::uint32_t> least_root(const Poly& f) {
  const Fq k = f.field();
  const std::size_t n = f.degree().value();
  if (!fits_table(k, n)) return std::nullopt;
  if (n == 1) return k.neg(f.coeff(0).index());
  const Fq big = Fq::residue(k.p(), static_cast<std::uint32_t>(k.e() * n));
  const Poly F = f.embed(Embedding::get(k, big));
  std::optional<std::uint32_t> best;
  for (const auto& [g, m] : factor(F).factors) {
    if (g.degree().value() != 1) continue;
    const std::uint32_t r = big.neg(g.coeff(0).index());
    if (!best || r < *best) best = r;
  }
  return best;
}

}  // namespace

Place Place::infinity(Fq f) {
  Place v;
  v.inf_ = true;
  v.f_ = Poly::variable(f);
  v.root_ = 0;
  return v;
}

Place Place::finite(const Poly& f) {
  if (f.is_constant() || !f.is_monic()) fail(ErrorKind::InvalidArgument, "place polynomial must be monic of positive degree");
  if (!is_irreducible(f)) fail(ErrorKind::InvalidArgument, "place polynomial is reducible");
  Place v;
  v.f_ = f;
  v.root_ = least_root(f);
  return v;
}

BigInt Place::qv() const { return big_pow(field().q(), deg()); }

std::optional<std::uint32_t> Place::root() const { return root_; }

std::optional<Fq> Place::table_field() const {
  if (!fits_table(field(), deg())) return std::nullopt;
  return Fq::residue(field().p(), static_cast<std::uint32_t>(field().e() * deg()));
}

std::string Place::to_string() const { return inf_ ? "inf" : format_poly(f_); }

bool operator<(const Place& a, const Place& b) {
  if (a.inf_ != b.inf_) return a.inf_;
  if (a.inf_) return false;
  return canonical_less(a.f_, b.f_);
}

std::vector<Place> places_of_degree(Fq f, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "place degree must be positive");
  std::vector<Place> out;
  const std::uint32_t q = f.q();
  if (n == 1) {
    out.reserve(q);
    for (std::uint32_t c = 0; c < q; ++c) {
      Place v;
      v.f_ = Poly(f, {c, 1});
      v.root_ = f.neg(c);
      out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  if (!fits_table(f, n))
    fail(ErrorKind::CapExceeded, "places of degree " + std::to_string(n) + " over " + f.name() + " exceed the residue-field cap");
  const Fq big = Fq::residue(f.p(), static_cast<std::uint32_t>(f.e() * n));
  const Embedding& emb = Embedding::get(f, big);
  constexpr std::uint32_t kNone = 0xffffffffu;
  std::vector<std::uint32_t> back(big.q(), kNone);
  for (std::uint32_t a = 0; a < q; ++a) back[emb(a)] = a;

  std::vector<char> seen(big.q(), 0);
  std::vector<std::uint32_t> orbit, mp;
  for (std::uint32_t x = 0; x < big.q(); ++x) {
    if (seen[x]) continue;
    orbit.clear();
    std::uint32_t y = x;
    do {
      seen[y] = 1;
      orbit.push_back(y);
      y = big.pow(y, q);
    } while (y != x);
    if (orbit.size() != n) continue;
    // minimal polynomial prod (T - y)
    mp.assign(1, 1);
    for (std::uint32_t r : orbit) {
      mp.push_back(0);
      const std::uint32_t nr = big.neg(r);
      for (std::size_t i = mp.size() - 1; i > 0; --i) mp[i] = big.add(mp[i - 1], big.mul(mp[i], nr));
      mp[0] = big.mul(mp[0], nr);
    }
    std::vector<std::uint32_t> c(mp.size());
    for (std::size_t i = 0; i < mp.size(); ++i) {
      c[i] = back[mp[i]];
      if (c[i] == kNone) fail(ErrorKind::InvalidArgument, "minimal polynomial not defined over the base field");
    }
    Place v;
    v.f_ = Poly(f, std::move(c));
    v.root_ = x;  // least index in its orbit
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Place> places_up_to(Fq f, std::size_t D) {
  if (D == 0) fail(ErrorKind::InvalidArgument, "place degree bound must be positive");
  std::vector<Place> out{Place::infinity(f)};
  for (std::size_t n = 1; n <= D; ++n) {
    auto layer = places_of_degree(f, n);
    out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
  }
  return out;
}

BigInt necklace_count(std::uint64_t q, std::size_t n) {
  auto mobius = [](std::size_t m) {
    int mu = 1;
    for (std::size_t p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) return 0;
      mu = -mu;
    }
    if (m > 1) mu = -mu;
    return mu;
  };
  BigInt s = 0;
  for (std::size_t d = 1; d <= n; ++d)
    if (n % d == 0) s += mobius(n / d) * big_pow(q, d);
  return s / n;
}

int valuation(const Poly& r, const Place& v) {
  if (r.is_zero()) return kInfVal;
  if (v.is_infinity()) return -static_cast<int>(r.degree().value());
  return r.multiplicity(v.poly());
}

int valuation(const RatFunc& r, const Place& v) {
  if (r.is_zero()) return kInfVal;
  if (v.is_infinity()) return static_cast<int>(r.den().degree().value()) - static_cast<int>(r.num().degree().value());
  return r.num().multiplicity(v.poly()) - r.den().multiplicity(v.poly());
}

// ---------------------------------------------------------------- residue field

ResidueField::ResidueField(const Place& v) : ResidueField(v.poly()) {}

ResidueField::ResidueField(const Poly& f) : f_(f) {
  n_ = f.degree().value();
  abs_deg_ = n_ * f.field().e();
  qv_ = big_pow(f.field().q(), n_);
}

ResidueField::Elem ResidueField::reduce(const RatFunc& r) const {
  Poly d = r.den() % f_;
  if (d.is_zero()) fail(ErrorKind::InvalidArgument, "reduction of a function with a pole");
  return mul(r.num() % f_, inv(d));
}

ResidueField::Elem ResidueField::inv(const Elem& a) const {
  if (a.is_zero()) fail(ErrorKind::InvalidArgument, "inverse of zero in residue field");
  return xgcd(a, f_).s % f_;
}

ResidueField::Elem ResidueField::pow(const Elem& a, const BigInt& k) const {
  Elem r = Poly::constant(base().one());
  if (k == 0) return r;
  const std::size_t top = boost::multiprecision::msb(k);
  for (std::size_t i = top + 1; i-- > 0;) {
    r = mul(r, r);
    if (boost::multiprecision::bit_test(k, static_cast<unsigned>(i))) r = mul(r, a);
  }
  return r;
}

bool ResidueField::is_square(const Elem& a) const {
  if (base().p() == 2 || a.is_zero()) return true;
  return pow(a, BigInt((qv_ - 1) / 2)).is_one();
}

ResidueField::Elem ResidueField::pth_root(const Elem& a) const {
  Elem r = a;
  for (std::size_t i = 1; i < abs_deg_; ++i) r = pow(r, static_cast<std::uint64_t>(base().p()));
  return r;
}

FqElem ResidueField::abs_trace(const Elem& a) const {
  Elem s = Poly(base()), x = a;
  for (std::size_t i = 0; i < abs_deg_; ++i) {
    s = s + x;
    x = pow(x, static_cast<std::uint64_t>(base().p()));
  }
  return s.coeff(0);
}

bool ResidueField::quadratic_has_root(const Elem& a, const Elem& b, const Elem& c) const {
  if (a.is_zero()) return !b.is_zero() || c.is_zero();
  if (base().p() == 2) {
    if (b.is_zero()) return true;
    return abs_trace(mul(mul(a, c), inv(mul(b, b)))).is_zero();
  }
  Elem disc = sub(mul(b, b), mul(mul(Poly::constant(base().from_int(4)), a), c));
  return is_square(disc);
}

namespace {

// Polynomials over a residue field, low degree first.
struct KPoly {
  const ResidueField& K;
  using V = std::vector<Poly>;

  void trim(V& a) const {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }
  V mul(const V& a, const V& b) const {
    if (a.empty() || b.empty()) return {};
    V r(a.size() + b.size() - 1, Poly(K.base()));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
    trim(r);
    return r;
  }
  V mod(V a, const V& m) const {
    const Poly li = K.inv(m.back());
    while (a.size() >= m.size()) {
      const Poly c = K.mul(a.back(), li);
      const std::size_t s = a.size() - m.size();
      for (std::size_t i = 0; i < m.size(); ++i) a[s + i] = K.sub(a[s + i], K.mul(c, m[i]));
      a.pop_back();
      trim(a);
    }
    return a;
  }
  V gcd(V a, V b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      V r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }
};

}  // namespace

int ResidueField::cubic_roots(const Elem& b, const Elem& c, const Elem& d) const {
  KPoly kp{*this};
  const Poly one = Poly::constant(base().one()), zero(base());
  KPoly::V P{d, c, b, one};
  KPoly::V X{zero, one};
  // X^{q_v} mod P by repeated p-th powers
  KPoly::V r = X;
  for (std::size_t i = 0; i < abs_deg_; ++i) {
    KPoly::V acc{one};
    for (std::uint32_t k = 0; k < base().p(); ++k) acc = kp.mod(kp.mul(acc, r), P);
    r = acc;
  }
  r.resize(std::max<std::size_t>(r.size(), 2), zero);
  r[1] = sub(r[1], one);
  kp.trim(r);
  KPoly::V g = kp.gcd(P, r);
  return g.empty() ? 3 : static_cast<int>(g.size()) - 1;
}

Poly reduce_at(const RatFunc& r, const Place& v) {
  ResidueField K(v);
  if (v.is_infinity()) return K.reduce(r.invert_variable());
  return K.reduce(r);
}

}  // namespace ffec
