#include "ffec/heights.hpp"

#include <cmath>

#include "ffec/error.hpp"

namespace ffec {

namespace {

constexpr std::size_t kMaxPeriod = 4;

Rational pow4(std::size_t k) {
  BigInt v = 1;
  v <<= 2 * k;
  return Rational(v);
}

// x-only doubling state on an integral model: x = X / Z, gcd(X, Z) = 1.
struct XOnly {
  Poly b2, b4, b6, b8;
  std::vector<Poly> bad;  // finite bad places of the model
  Poly two, four;

  // Returns false when 2P = O.
  bool dbl(Poly& X, Poly& Z) const {
    const Poly X2 = X * X, Z2 = Z * Z, XZ = X * Z;
    Poly num = X2 * (X2 - b4 * Z2) - Z2 * (two * b6 * XZ + b8 * Z2);
    Poly den = Z * (X2 * (four * X + b2 * Z) + Z2 * (two * b4 * X + b6 * Z));
    if (den.is_zero()) return false;
    // common factors of the doubling forms lie over bad places only
    for (const Poly& pi : bad) {
      while (true) {
        auto [qn, rn] = num.divmod(pi);
        if (!rn.is_zero()) break;
        auto [qd, rd] = den.divmod(pi);
        if (!rd.is_zero()) break;
        num = std::move(qn);
        den = std::move(qd);
      }
    }
    X = std::move(num);
    Z = std::move(den);
    return true;
  }
};

Poly as_poly(const RatFunc& r) {
  if (!r.is_polynomial()) fail(ErrorKind::InvalidArgument, "model is not integral");
  return r.num();
}

}  // namespace

std::size_t naive_height(const RatPoint& P) {
  if (P.inf) fail(ErrorKind::InvalidArgument, "naive height of the origin");
  return P.x.height();
}

HeightValue canonical_height(const Curve& E, const RatPoint& P, const HeightOptions& opts) {
  if (P.inf) fail(ErrorKind::InvalidArgument, "canonical height of the origin");
  if (opts.n_iter < 1) fail(ErrorKind::InvalidArgument, "n_iter must be positive");
  if (!group_law(E).on_curve(P)) fail(ErrorKind::InvalidArgument, "point is not on the curve");

  const GlobalModel gm = global_minimal_model(E);
  const Invariants I = invariants(gm.model);
  const Fq F = E.field();
  XOnly st{as_poly(I.b2), as_poly(I.b4), as_poly(I.b6), as_poly(I.b8), {}, Poly::constant(F.from_int(2)), Poly::constant(F.from_int(4))};
  for (const Place& v : gm.bad) st.bad.push_back(v.poly());

  // x' = (x - r) / u^2 on the minimal model
  const RatFunc x0 = (P.x - gm.tau.r) / (gm.tau.u * gm.tau.u);
  Poly X = x0.num(), Z = x0.den();

  HeightValue out;
  out.naive.push_back(std::max(X.size(), Z.size()) - 1);
  for (int k = 1; k <= opts.n_iter; ++k) {
    if (!st.dbl(X, Z)) {
      out.value = 0;
      out.error = 0;
      out.exact = true;
      out.torsion = true;
      out.iterations = k;
      return out;
    }
    const std::size_t h = std::max(X.size(), Z.size()) - 1;
    if (h > opts.degree_budget) fail(ErrorKind::CapExceeded, "doubling exceeded the degree budget at iteration " + std::to_string(k));
    out.naive.push_back(h);
  }
  const std::size_t n = static_cast<std::size_t>(opts.n_iter);
  out.iterations = opts.n_iter;
  const auto& h = out.naive;
  out.value = Rational(h[n]) / pow4(n);
  out.error = std::abs(static_cast<double>(out.value - Rational(h[n - 1]) / pow4(n - 1)));

  // h(2^k P) - 4^k h^ is eventually periodic; with period r the limit is
  // (h_{k+r} - h_k) / ((4^r - 1) 4^k) for every large k
  auto estimate = [&](std::size_t r, std::size_t k) {
    return (Rational(h[k + r]) - Rational(h[k])) / ((pow4(r) - 1) * pow4(k));
  };
  // three agreeing windows guard against coincidences
  for (std::size_t r = 1; r <= kMaxPeriod && r + 2 <= n; ++r) {
    const Rational e = estimate(r, n - r);
    bool stable = true;
    for (std::size_t j = 1; j <= 2 && stable; ++j) stable = estimate(r, n - r - j) == e;
    if (stable) {
      out.value = e;
      out.exact = true;
      break;
    }
  }
  return out;
}

HeightValue height_pairing(const Curve& E, const RatPoint& P, const RatPoint& Q, const HeightOptions& opts) {
  const auto G = group_law(E);
  auto hh = [&](const RatPoint& R) {
    HeightValue v;
    if (R.inf) {
      v.exact = true;
      v.torsion = true;
      return v;
    }
    return canonical_height(E, R, opts);
  };
  const HeightValue s = hh(G.add(P, Q)), a = hh(P), b = hh(Q);
  HeightValue out;
  out.value = (s.value - a.value - b.value) / 2;
  out.error = (s.error + a.error + b.error) / 2;
  out.iterations = opts.n_iter;
  out.exact = s.exact && a.exact && b.exact;
  return out;
}

Rational snap_rational(double x, std::uint64_t max_den) {
  if (max_den == 0) fail(ErrorKind::InvalidArgument, "denominator bound must be positive");
  // continued-fraction convergents, then the best semiconvergent
  const bool neg = x < 0;
  double y = std::abs(x);
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rest = y;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(rest);
    const auto ai = static_cast<long long>(a);
    if (q0 + ai * q1 > static_cast<long long>(max_den)) {
      const long long k = (static_cast<long long>(max_den) - q0) / q1;
      const Rational semi(p0 + k * p1, q0 + k * q1), conv(p1, q1);
      const double ds = std::abs(static_cast<double>(semi) - y), dc = std::abs(static_cast<double>(conv) - y);
      const Rational best = ds < dc ? semi : conv;
      return neg ? Rational(-best) : best;
    }
    const long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = rest - a;
    if (frac < 1e-15) break;
    rest = 1 / frac;
  }
  const Rational r(p1, q1);
  return neg ? Rational(-r) : r;
}

GramResult gram_matrix(const Curve& E, const std::vector<RatPoint>& pts, std::uint64_t max_den, double tol, const HeightOptions& opts) {
  const std::size_t n = pts.size();
  GramResult g;
  g.gram = RMatrix(n, n);
  g.approx.assign(n, std::vector<double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const HeightValue v = i == j ? canonical_height(E, pts[i], opts) : height_pairing(E, pts[i], pts[j], opts);
      const double a = v.approx();
      g.approx[i][j] = g.approx[j][i] = a;
      Rational r;
      if (v.exact && boost::multiprecision::denominator(v.value) <= max_den) {
        r = v.value;
      } else {
        r = snap_rational(a, max_den);
        const double err = std::abs(static_cast<double>(r) - a);
        g.max_snap_error = std::max(g.max_snap_error, err);
        if (err > tol)
          fail(ErrorKind::Inconclusive, "Gram entry (" + std::to_string(i) + ", " + std::to_string(j) + ") = " + std::to_string(a) +
                                            " is not within tolerance of a rational with small denominator; increase the iterations");
      }
      g.gram(i, j) = g.gram(j, i) = r;
    }
  g.rank = g.gram.rank();
  g.kernel = g.gram.kernel();
  return g;
}

std::size_t gram_rank(const Curve& E, const std::vector<RatPoint>& pts, std::uint64_t max_den, double tol, const HeightOptions& opts) {
  return gram_matrix(E, pts, max_den, tol, opts).rank;
}

TorsionVerdict torsion_check(const Curve& E, const RatPoint& P, double tol, const HeightOptions& opts) {
  TorsionVerdict v;
  if (P.inf) {
    v.by_doubling = true;
  } else {
    const HeightValue h = canonical_height(E, P, opts);
    v.by_doubling = h.torsion;
    v.height_small = !h.torsion && h.approx() < tol;
  }
  if (!v.by_doubling && !v.height_small) return v;
  v.multiple = torsion_bound(E).full;
  v.multiple_ok = group_law(E).mul(static_cast<long long>(v.multiple), P).inf;
  if (!v.by_doubling && !v.multiple_ok)
    fail(ErrorKind::Inconclusive, "height is below tolerance but " + std::to_string(v.multiple) + " P is not the origin");
  v.torsion = true;
  return v;
}

bool is_torsion(const Curve& E, const RatPoint& P, double tol, const HeightOptions& opts) { return torsion_check(E, P, tol, opts).torsion; }

PointFamily legendre_family(std::uint32_t p, std::uint32_t f) {
  if (p == 2) fail(ErrorKind::InvalidArgument, "the point family needs p > 2");
  if (!is_prime(p) || f == 0) fail(ErrorKind::InvalidArgument, "p must be prime and f positive");
  const std::uint64_t q = ipow(p, f);
  if (q * q > kFieldCap) fail(ErrorKind::CapExceeded, "F_{q^2} exceeds the field cap");
  const Fq F = Fq::create(p, 2 * f);
  PointFamily fam;
  fam.q = q;
  fam.d = q + 1;
  fam.zeta = F.primitive().pow((q * q - 1) / fam.d);

  const RatFunc u = RatFunc::variable(F);
  const RatFunc ud = u.pow(static_cast<long long>(fam.d));
  const RatFunc zero(F), one = RatFunc::from_int(F, 1), two = RatFunc::from_int(F, 2);
  fam.curve = Curve(F, {one, ud, ud, zero, zero}).with_var('u');

  const auto qq = static_cast<long long>(q);
  const RatFunc w = one + RatFunc::from_int(F, 4) * u;
  const RatFunc uq = u.pow(qq), u2q = uq * uq;
  const RatFunc x = uq * (uq - u) / w.pow(qq);
  const RatFunc y = u2q * (one + two * u + two * uq) / (two * w.pow((3 * qq - 1) / 2)) - u2q / (two * w.pow(qq - 1));

  const auto G = group_law(fam.curve);
  FqElem z = F.one();
  for (std::size_t i = 0; i < fam.d; ++i) {
    RatPoint Pi = RatPoint::affine(x.scale_var(z), y.scale_var(z));
    if (!G.on_curve(Pi)) fail(ErrorKind::InvalidArgument, "family point " + std::to_string(i) + " is not on the curve");
    fam.points.push_back(std::move(Pi));
    z *= fam.zeta;
  }
  return fam;
}

RatPoint sum_points(const Curve& E, const std::vector<RatPoint>& pts, const std::vector<long long>& coeffs) {
  if (pts.size() != coeffs.size()) fail(ErrorKind::InvalidArgument, "points and coefficients differ in length");
  const auto G = group_law(E);
  RatPoint S = RatPoint::origin();
  for (std::size_t i = 0; i < pts.size(); ++i) S = G.add(S, G.mul(coeffs[i], pts[i]));
  return S;
}

}  // namespace ffec
