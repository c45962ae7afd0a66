#include "ffec/poly.hpp"

#include <algorithm>
#include <random>

#include "ffec/error.hpp"

namespace ffec {

std::size_t Degree::value() const {
  if (!d_) fail(ErrorKind::InvalidArgument, "degree of the zero polynomial");
  return *d_;
}

Poly::Poly(Fq f, std::vector<std::uint32_t> c) : f_(f), c_(std::move(c)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const FqElem& c) { return Poly(c.field(), {c.index()}); }

Poly Poly::monomial(const FqElem& c, std::size_t k) {
  std::vector<std::uint32_t> v(k + 1, 0);
  v[k] = c.index();
  return Poly(c.field(), std::move(v));
}

Poly Poly::from_ints(Fq f, std::initializer_list<long long> low_first) {
  std::vector<std::uint32_t> v;
  for (long long x : low_first) v.push_back(f.from_int_raw(x));
  return Poly(f, std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
  if (c_.empty()) return o;
  if (o.c_.empty()) return *this;
  std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::uint32_t a = i < c_.size() ? c_[i] : 0;
    const std::uint32_t b = i < o.c_.size() ? o.c_[i] : 0;
    r[i] = f_.add(a, b);
  }
  return Poly(f_, std::move(r));
}

Poly Poly::operator-() const {
  std::vector<std::uint32_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f_.neg(c_[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

namespace {

using Raw = std::vector<std::uint32_t>;
constexpr std::size_t kKaratsubaThreshold = 40;

void schoolbook(Fq f, const std::uint32_t* a, std::size_t na, const std::uint32_t* b, std::size_t nb, std::uint32_t* out) {
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < nb; ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
}

// out += a * b, where a and b have the same length n.
void karatsuba(Fq f, const std::uint32_t* a, const std::uint32_t* b, std::size_t n, std::uint32_t* out) {
  if (n <= kKaratsubaThreshold) {
    schoolbook(f, a, n, b, n, out);
    return;
  }
  const std::size_t h = n / 2, hi = n - h;
  Raw a_sum(hi), b_sum(hi);
  for (std::size_t i = 0; i < hi; ++i) {
    a_sum[i] = f.add(a[h + i], i < h ? a[i] : 0);
    b_sum[i] = f.add(b[h + i], i < h ? b[i] : 0);
  }
  Raw low(2 * h, 0), high(2 * hi, 0), mid(2 * hi, 0);
  karatsuba(f, a, b, h, low.data());
  karatsuba(f, a + h, b + h, hi, high.data());
  karatsuba(f, a_sum.data(), b_sum.data(), hi, mid.data());
  for (std::size_t i = 0; i < low.size(); ++i) mid[i] = f.sub(mid[i], low[i]);
  for (std::size_t i = 0; i < high.size(); ++i) mid[i] = f.sub(mid[i], high[i]);
  for (std::size_t i = 0; i < low.size(); ++i) out[i] = f.add(out[i], low[i]);
  for (std::size_t i = 0; i < mid.size(); ++i) out[h + i] = f.add(out[h + i], mid[i]);
  for (std::size_t i = 0; i < high.size(); ++i) out[2 * h + i] = f.add(out[2 * h + i], high[i]);
}

}  // namespace

std::vector<std::uint32_t> poly_mul_raw(Fq f, const Raw& a, const Raw& b) {
  if (a.empty() || b.empty()) return {};
  Raw out(a.size() + b.size() - 1, 0);
  if (std::min(a.size(), b.size()) <= kKaratsubaThreshold) {
    schoolbook(f, a.data(), a.size(), b.data(), b.size(), out.data());
    return out;
  }
  // Split the longer operand into chunks of the shorter length.
  const Raw& s = a.size() <= b.size() ? a : b;
  const Raw& l = a.size() <= b.size() ? b : a;
  const std::size_t n = s.size();
  Raw chunk(n, 0), prod(2 * n, 0);
  for (std::size_t off = 0; off < l.size(); off += n) {
    const std::size_t len = std::min(n, l.size() - off);
    std::fill(chunk.begin(), chunk.end(), 0);
    std::copy(l.begin() + static_cast<std::ptrdiff_t>(off), l.begin() + static_cast<std::ptrdiff_t>(off + len), chunk.begin());
    std::fill(prod.begin(), prod.end(), 0);
    karatsuba(f, s.data(), chunk.data(), n, prod.data());
    for (std::size_t i = 0; i < prod.size() && off + i < out.size(); ++i) out[off + i] = f.add(out[off + i], prod[i]);
  }
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  if (c_.empty() || o.c_.empty()) return Poly(f_.valid() ? f_ : o.f_);
  return Poly(f_, poly_mul_raw(f_, c_, o.c_));
}

Poly Poly::operator*(const FqElem& c) const {
  std::vector<std::uint32_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f_.mul(c_[i], c.index());
  return Poly(f_, std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) fail(ErrorKind::InvalidArgument, "polynomial division by zero");
  if (c_.size() < d.c_.size()) return {Poly(f_), *this};
  Raw r = c_;
  const std::size_t nd = d.c_.size();
  Raw quo(r.size() - nd + 1, 0);
  const std::uint32_t inv_lead = f_.inv(d.c_.back());
  for (std::size_t k = r.size(); k-- >= nd;) {
    const std::uint32_t coef = r[k];
    if (coef != 0) {
      const std::uint32_t qk = f_.mul(coef, inv_lead);
      const std::size_t shift = k - (nd - 1);
      quo[shift] = qk;
      for (std::size_t i = 0; i < nd; ++i) r[shift + i] = f_.sub(r[shift + i], f_.mul(qk, d.c_[i]));
    }
    if (k == 0) break;
  }
  r.resize(nd - 1);
  return {Poly(f_, std::move(quo)), Poly(f_, std::move(r))};
}

Poly Poly::exact_div(const Poly& d) const {
  auto [q, r] = divmod(d);
  if (!r.is_zero()) fail(ErrorKind::InvalidArgument, "inexact polynomial division");
  return q;
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return *this * lead().inv();
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(f_);
  Raw r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_.mul(c_[i], f_.from_int_raw(static_cast<long long>(i % f_.p())));
  return Poly(f_, std::move(r));
}

Poly Poly::shift(std::size_t k) const {
  if (c_.empty()) return *this;
  Raw r(k, 0);
  r.insert(r.end(), c_.begin(), c_.end());
  return Poly(f_, std::move(r));
}

Poly Poly::pow(std::uint64_t k) const {
  Poly r = Poly::constant(f_.one()), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

Poly Poly::compose_power(std::size_t d) const {
  if (c_.empty() || d == 1) return *this;
  Raw r((c_.size() - 1) * d + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i * d] = c_[i];
  return Poly(f_, std::move(r));
}

Poly Poly::scale_var(const FqElem& c) const {
  Raw r(c_.size());
  std::uint32_t pw = 1;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    r[i] = f_.mul(c_[i], pw);
    pw = f_.mul(pw, c.index());
  }
  return Poly(f_, std::move(r));
}

Poly Poly::embed(const Embedding& emb) const {
  Raw r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = emb(c_[i]);
  return Poly(emb.big(), std::move(r));
}

Poly Poly::frobenius_coeffs() const {
  Raw r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f_.pow(c_[i], f_.p());
  return Poly(f_, std::move(r));
}

Poly Poly::reverse(std::size_t n) const {
  Raw r(n, 0);
  for (std::size_t i = 0; i < c_.size() && i < n; ++i) r[n - 1 - i] = c_[i];
  return Poly(f_, std::move(r));
}

FqElem Poly::eval(const FqElem& x) const {
  std::uint32_t acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = f_.add(f_.mul(acc, x.index()), c_[i]);
  return {f_, acc};
}

std::uint32_t Poly::eval_in(const Embedding& emb, std::uint32_t x) const {
  const Fq& b = emb.big();
  std::uint32_t acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = b.add(b.mul(acc, x), emb(c_[i]));
  return acc;
}

int Poly::multiplicity(const Poly& f) const {
  if (is_zero()) fail(ErrorKind::InvalidArgument, "multiplicity in the zero polynomial");
  int m = 0;
  Poly cur = *this;
  while (true) {
    auto [q, r] = cur.divmod(f);
    if (!r.is_zero()) break;
    cur = std::move(q);
    ++m;
  }
  return m;
}

bool canonical_less(const Poly& a, const Poly& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  for (std::size_t i = a.c_.size(); i-- > 0;)
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  return false;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

XGcd xgcd(const Poly& a, const Poly& b) {
  Fq f = a.field().valid() ? a.field() : b.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(f.one()), s1(f);
  Poly t0(f), t1 = Poly::constant(f.one());
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const FqElem li = r0.lead().inv();
  return {r0 * li, s0 * li, t0 * li};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& base, std::uint64_t k, const Poly& m) {
  Poly r = Poly::constant(m.field().one()) % m, b = base % m;
  while (k) {
    if (k & 1) r = mulmod(r, b, m);
    k >>= 1;
    if (k) b = mulmod(b, b, m);
  }
  return r;
}

bool is_irreducible(const Poly& f) {
  if (f.is_zero() || f.is_constant()) return false;
  const std::size_t n = f.degree().value();
  if (n == 1) return true;
  const Poly m = f.monic();
  const Fq F = f.field();
  const Poly x = Poly::variable(F);
  std::vector<Poly> frob{x % m};
  for (std::size_t i = 1; i <= n; ++i) frob.push_back(powmod(frob.back(), F.q(), m));
  if (!(frob[n] - x).is_zero()) return false;
  for (std::uint64_t r : prime_factors(n)) {
    if (!gcd(m, frob[n / r] - x).is_one()) return false;
  }
  return true;
}

namespace {

Poly pth_root_poly(const Poly& f) {
  const Fq F = f.field();
  const std::uint32_t p = F.p();
  std::vector<std::uint32_t> r;
  for (std::size_t i = 0; i < f.size(); i += p) r.push_back(F.pth_root(f.raw()[i]));
  return Poly(F, std::move(r));
}

void squarefree(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  if (f.is_constant()) return;
  const Poly d = f.derivative();
  if (d.is_zero()) {
    squarefree(pth_root_poly(f), mult * static_cast<int>(f.field().p()), out);
    return;
  }
  Poly c = gcd(f, d);
  Poly w = f.exact_div(c).monic();
  int i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly fac = w.exact_div(y).monic();
    if (!fac.is_one()) out.emplace_back(fac, i * mult);
    w = y;
    c = c.exact_div(y);
    ++i;
  }
  c = c.monic();
  if (!c.is_one()) squarefree(pth_root_poly(c), mult * static_cast<int>(f.field().p()), out);
}

void equal_degree(const Poly& f, std::size_t d, std::mt19937_64& rng, std::vector<Poly>& out) {
  const std::size_t n = f.degree().value();
  if (n == d) {
    out.push_back(f);
    return;
  }
  const Fq F = f.field();
  std::uniform_int_distribution<std::uint32_t> coef(0, F.q() - 1);
  while (true) {
    std::vector<std::uint32_t> a(n);
    for (auto& v : a) v = coef(rng);
    const Poly ap(F, a);
    if (ap.is_constant()) continue;
    Poly b(F);
    if (F.p() == 2) {
      Poly term = ap;
      const std::size_t steps = static_cast<std::size_t>(F.e()) * d;
      for (std::size_t i = 0; i < steps; ++i) {
        b = b + term;
        term = mulmod(term, term, f);
      }
    } else {
      Poly norm = Poly::constant(F.one()), term = ap;
      for (std::size_t i = 0; i < d; ++i) {
        norm = mulmod(norm, term, f);
        term = powmod(term, F.q(), f);
      }
      b = powmod(norm, (F.q() - 1) / 2, f) - Poly::constant(F.one());
    }
    Poly g = gcd(f, b);
    if (!g.is_constant() && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f.exact_div(g).monic(), d, rng, out);
      return;
    }
  }
}

}  // namespace

Factorization factor(const Poly& f) {
  if (f.is_zero()) fail(ErrorKind::InvalidArgument, "factor of the zero polynomial");
  const Fq F = f.field();
  Factorization res{f.lead(), {}};
  std::vector<std::pair<Poly, int>> sqf;
  squarefree(f.monic(), 1, sqf);
  std::mt19937_64 rng(0x5eed);
  const Poly x = Poly::variable(F);
  for (auto& [g0, mult] : sqf) {
    Poly g = g0;
    Poly h = x % g;
    std::size_t i = 1;
    while (!g.is_constant() && g.degree().value() >= 2 * i) {
      h = powmod(h, F.q(), g);
      Poly part = gcd(g, h - x);
      if (!part.is_one()) {
        std::vector<Poly> pieces;
        equal_degree(part, i, rng, pieces);
        for (auto& pc : pieces) res.factors.emplace_back(pc, mult);
        g = g.exact_div(part).monic();
        h = h % g;
      }
      ++i;
    }
    if (!g.is_constant()) res.factors.emplace_back(g, mult);
  }
  std::sort(res.factors.begin(), res.factors.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  // merge equal factors that arrived from different square-free layers
  std::vector<std::pair<Poly, int>> merged;
  for (auto& pr : res.factors) {
    if (!merged.empty() && merged.back().first == pr.first)
      merged.back().second += pr.second;
    else
      merged.push_back(pr);
  }
  res.factors = std::move(merged);
  return res;
}

}  // namespace ffec
