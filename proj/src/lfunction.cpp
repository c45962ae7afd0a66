#include "ffec/lfunction.hpp"

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <thread>

#include "ffec/error.hpp"
#include "ffec/linalg.hpp"

namespace ffec {

namespace {

BigInt big_pow(std::uint64_t b, std::size_t e) {
  BigInt r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

// In-place multiplication by 1 - a T^k + c T^{2k}, truncated.
void mul_factor(IntPoly& s, const BigInt& a, const BigInt& c, std::size_t k) {
  for (std::size_t i = s.size(); i-- > 0;) {
    if (i >= k && a != 0) s[i] -= a * s[i - k];
    if (i >= 2 * k && c != 0) s[i] += c * s[i - 2 * k];
  }
}

}  // namespace

IntPoly poly_trim(IntPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

IntPoly series_inverse(const IntPoly& f, std::size_t order) {
  if (f.empty() || (f[0] != 1 && f[0] != -1)) fail(ErrorKind::InvalidArgument, "series constant term must be a unit");
  IntPoly g(order + 1, 0);
  g[0] = f[0];
  for (std::size_t n = 1; n <= order; ++n) {
    BigInt acc = 0;
    for (std::size_t i = 1; i <= n && i < f.size(); ++i) acc += f[i] * g[n - i];
    g[n] = -acc * f[0];
  }
  return g;
}

IntPoly euler_factor(long long a_v, std::uint64_t qv, std::size_t k, bool good) {
  IntPoly r(good ? 2 * k + 1 : k + 1, 0);
  r[0] = 1;
  r[k] -= a_v;
  if (good) r[2 * k] += qv;
  return poly_trim(r);
}

IntPoly euler_factor(const LocalData& d) {
  const BigInt qv = d.place.qv();
  IntPoly r(d.type.kind == Kodaira::I0 ? 2 * d.place.deg() + 1 : d.place.deg() + 1, 0);
  r[0] = 1;
  r[d.place.deg()] -= d.a_v;
  if (d.type.kind == Kodaira::I0) r[2 * d.place.deg()] += qv;
  return poly_trim(r);
}

IntPoly euler_product_series(const Curve& E, const BadFibers& bf, std::size_t D, std::size_t order, unsigned threads) {
  const Fq F = E.field();
  IntPoly s(order + 1, 0);
  s[0] = 1;
  // infinity
  {
    const LocalData& d = bf.infinity;
    mul_factor(s, BigInt(d.a_v), d.type.kind == Kodaira::I0 ? BigInt(F.q()) : BigInt(0), 1);
  }
  std::set<Place> bad;
  for (const auto& d : bf.local)
    if (!d.place.is_infinity()) bad.insert(d.place);
  std::map<std::string, const LocalData*> bad_data;
  for (const auto& d : bf.local) bad_data[d.place.to_string()] = &d;

  const auto& model = bf.global.model.coeffs();
  for (std::size_t k = 1; k <= D && k <= order; ++k) {
    const std::vector<Place> layer = places_of_degree(F, k);
    std::vector<long long> av(layer.size(), 0);
    std::vector<char> good(layer.size(), 1);
    for (std::size_t i = 0; i < layer.size(); ++i)
      if (bad.count(layer[i])) {
        good[i] = 0;
        av[i] = bad_data.at(layer[i].to_string())->a_v;
      }
    const Fq table = *layer.front().table_field();
    const unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(layer.size() / 64 + 1)));
    auto work = [&](std::size_t lo, std::size_t hi) {
      std::map<std::array<std::uint32_t, 5>, long long> cache;
      for (std::size_t i = lo; i < hi; ++i) {
        if (!good[i]) continue;
        const auto red = reduce_model(model, layer[i], table);
        auto it = cache.find(red);
        if (it == cache.end())
          it = cache.emplace(red, static_cast<long long>(table.q()) + 1 - static_cast<long long>(count_points_fast(table, red))).first;
        av[i] = it->second;
      }
    };
    if (nt == 1) {
      work(0, layer.size());
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (layer.size() + nt - 1) / nt;
      for (unsigned t = 0; t < nt; ++t) {
        const std::size_t lo = t * chunk, hi = std::min(layer.size(), lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    // places sharing a_v share the factor
    std::map<std::pair<long long, bool>, std::size_t> mult;
    for (std::size_t i = 0; i < layer.size(); ++i) ++mult[{av[i], good[i] != 0}];
    const BigInt qv = big_pow(F.q(), k);
    for (const auto& [key, m] : mult)
      for (std::size_t j = 0; j < m; ++j) mul_factor(s, BigInt(key.first), key.second ? qv : BigInt(0), k);
  }
  return s;
}

LPoly l_polynomial(const Curve& E, const LOptions& opts) { return l_polynomial(E, bad_fibers(E), opts); }

LPoly l_polynomial(const Curve& E, const BadFibers& bf, const LOptions& opts) {
  if (classify(E).constant) fail(ErrorKind::Hypothesis, "constant curve: L-function is not a polynomial");
  const long long Nl = static_cast<long long>(bf.conductor.deg) - 4;
  if (Nl < 0) fail(ErrorKind::DegreeMismatch, "conductor degree below 4 for a non-constant curve");
  const auto N = static_cast<std::size_t>(Nl);
  const std::size_t D = opts.max_place_deg ? opts.max_place_deg : N + opts.slack;
  if (D < N) fail(ErrorKind::InvalidArgument, "place degree bound " + std::to_string(D) + " is below the L-degree " + std::to_string(N));
  if (big_pow(E.field().q(), D) > kResidueCap)
    fail(ErrorKind::CapExceeded, "places of degree " + std::to_string(D) + " over F_" + std::to_string(E.field().q()) + " exceed the residue cap");
  const IntPoly s = euler_product_series(E, bf, D, D, opts.threads);
  IntPoly L = series_inverse(s, D);
  for (std::size_t i = N + 1; i <= D; ++i)
    if (L[i] != 0) fail(ErrorKind::DegreeMismatch, "L-series has a nonzero coefficient at T^" + std::to_string(i) + " beyond degree " + std::to_string(N));
  L.resize(N + 1);
  LPoly out{L, E.field().q(), N};
  check_functional_equation(out);
  return out;
}

LPoly l_polynomial_half(const Curve& E, const BadFibers& bf, const LOptions& opts) {
  if (classify(E).constant) fail(ErrorKind::Hypothesis, "constant curve: L-function is not a polynomial");
  const long long Nl = static_cast<long long>(bf.conductor.deg) - 4;
  if (Nl < 0) fail(ErrorKind::DegreeMismatch, "conductor degree below 4 for a non-constant curve");
  const auto N = static_cast<std::size_t>(Nl);
  const std::size_t D = std::min(N, std::max((N + 1) / 2, opts.max_place_deg));
  if (big_pow(E.field().q(), D) > kResidueCap)
    fail(ErrorKind::CapExceeded, "places of degree " + std::to_string(D) + " over F_" + std::to_string(E.field().q()) + " exceed the residue cap");
  const IntPoly known = series_inverse(euler_product_series(E, bf, D, D, opts.threads), D);
  std::optional<LPoly> found;
  for (int eps : {1, -1}) {
    IntPoly c(N + 1);
    bool ok = true;
    for (std::size_t i = 0; i <= N && ok; ++i) {
      // c_i = eps q^{2i - N} c_{N - i}
      const bool low = i <= D;
      const std::size_t j = N - i;
      if (low) c[i] = known[i];
      if (i == j && eps == -1 && c[i] != 0) ok = false;
      if (j <= D && j < i) {
        const BigInt v = eps * big_pow(E.field().q(), i - j) * known[j];
        if (low)
          ok = c[i] == v;
        else
          c[i] = v;
      }
    }
    if (!ok) continue;
    LPoly L{c, E.field().q(), N};
    if (!check_rh(L)) continue;
    if (found) fail(ErrorKind::Inconclusive, "both functional-equation signs are consistent; raise the place degree");
    found = L;
  }
  if (!found) fail(ErrorKind::DegreeMismatch, "no functional-equation sign is consistent with the computed coefficients");
  check_functional_equation(*found);
  return *found;
}

ConstantL constant_l(long long a, std::uint64_t q) {
  const BigInt Q(q);
  return {poly_mul({1, -a, Q}, {1, -Q * a, Q * Q * Q})};
}

int check_functional_equation(const LPoly& L) {
  const std::size_t N = L.N;
  if (L.coeffs.size() != N + 1 || L.coeffs[0] != 1) fail(ErrorKind::DegreeMismatch, "malformed L-polynomial");
  const BigInt qN = big_pow(L.q, N);
  int eps;
  if (L.coeffs[N] == qN)
    eps = 1;
  else if (L.coeffs[N] == -qN)
    eps = -1;
  else
    fail(ErrorKind::DegreeMismatch, "leading coefficient is not +-q^N");
  BigInt q2i = 1;
  for (std::size_t i = 0; i <= N; ++i) {
    if (q2i * L.coeffs[N - i] != eps * qN * L.coeffs[i]) fail(ErrorKind::DegreeMismatch, "functional equation fails at T^" + std::to_string(i));
    q2i *= BigInt(L.q) * L.q;
  }
  return eps;
}

int functional_equation_sign_reversed(const LPoly& L) {
  // T^N q^N L(1/(q^2 T)) has coefficient c_{N-j} q^{2j-N} at T^j; compare as rationals
  const std::size_t N = L.N;
  std::optional<int> eps;
  for (std::size_t j = 0; j <= N; ++j) {
    const Rational lhs = Rational(L.coeffs[N - j]) * Rational(big_pow(L.q, 2 * j)) / Rational(big_pow(L.q, N));
    if (L.coeffs[j] == 0) {
      if (lhs != 0) fail(ErrorKind::DegreeMismatch, "functional equation fails");
      continue;
    }
    const Rational r = lhs / Rational(L.coeffs[j]);
    if (r != 1 && r != -1) fail(ErrorKind::DegreeMismatch, "functional equation fails");
    const int e = r == 1 ? 1 : -1;
    if (eps && *eps != e) fail(ErrorKind::DegreeMismatch, "inconsistent functional equation sign");
    eps = e;
  }
  return eps.value_or(1);
}

namespace {

RPoly rgcd(RPoly a, RPoly b) {
  a = rpoly_trim(std::move(a));
  b = rpoly_trim(std::move(b));
  while (!b.empty()) {
    RPoly r = rpoly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

double rh_deviation(const LPoly& L) {
  if (L.N == 0) return 0.0;
  // P(z) = L(z/q); its roots lie on the unit circle
  RPoly P(L.N + 1);
  for (std::size_t i = 0; i <= L.N; ++i) P[i] = Rational(L.coeffs[i]) / Rational(big_pow(L.q, i));
  RPoly dP(L.N);
  for (std::size_t i = 1; i <= L.N; ++i) dP[i - 1] = P[i] * static_cast<long long>(i);
  const RPoly g = rgcd(P, dP);
  const RPoly sf = rpoly_divmod(P, g).first;
  const std::size_t n = sf.size() - 1;
  if (n == 0) return 0.0;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    C(0, static_cast<Eigen::Index>(i)) = -static_cast<double>(sf[n - 1 - i] / sf[n]);
    if (i + 1 < n) C(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
  }
  const Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) worst = std::max(worst, std::abs(std::abs(es.eigenvalues()[i]) - 1.0));
  return worst;
}

bool check_rh(const LPoly& L, double tol) { return rh_deviation(L) <= tol; }

int analytic_rank(const LPoly& L) {
  IntPoly c = poly_trim(L.coeffs);
  const BigInt q(L.q);
  int r = 0;
  while (c.size() >= 2) {
    // c = (1 - qT) d
    IntPoly d(c.size() - 1);
    d[0] = c[0];
    for (std::size_t i = 1; i < d.size(); ++i) d[i] = c[i] + q * d[i - 1];
    if (c.back() != -q * d.back()) break;
    c = std::move(d);
    ++r;
  }
  return r;
}

LPoly extend_l(const LPoly& L, unsigned m) {
  if (m == 0) fail(ErrorKind::InvalidArgument, "extension degree must be positive");
  const std::size_t N = L.N;
  const std::size_t K = N * m;
  // power sums of the inverse roots
  std::vector<BigInt> p(K + 1, 0);
  for (std::size_t k = 1; k <= K; ++k) {
    BigInt acc = k <= N ? BigInt(-static_cast<long long>(k)) * L.coeffs[k] : BigInt(0);
    for (std::size_t i = 1; i < k && i <= N; ++i) acc -= L.coeffs[i] * p[k - i];
    p[k] = acc;
  }
  IntPoly c(N + 1, 0);
  c[0] = 1;
  for (std::size_t k = 1; k <= N; ++k) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < k; ++i) acc += c[i] * p[(k - i) * m];
    if (acc % k != 0) fail(ErrorKind::InvalidArgument, "Newton identity produced a non-integer coefficient");
    c[k] = -acc / k;
  }
  LPoly out{c, 1, N};
  for (unsigned i = 0; i < m; ++i) out.q *= L.q;
  return out;
}

int component_excess(const std::vector<LocalData>& bad) {
  int s = 0;
  for (const auto& d : bad) s += d.f_v - 1;
  return s;
}

SurfaceZeta surface_zeta(const LPoly& L, const std::vector<LocalData>& bad) {
  SurfaceZeta z;
  const BigInt q(L.q);
  z.factors.push_back({{1, -1}, -1});
  z.factors.push_back({{1, -q}, -2});
  z.factors.push_back({{1, -q * q}, -1});
  auto at_deg = [](std::initializer_list<BigInt> c, std::size_t k) {
    // c0 + c1 T^k + c2 T^{2k}
    IntPoly r;
    std::size_t i = 0;
    for (const BigInt& x : c) {
      if (r.size() < i * k + 1) r.resize(i * k + 1, 0);
      r[i * k] = x;
      ++i;
    }
    return r;
  };
  for (const auto& d : bad) {
    const std::size_t k = d.place.deg();
    const BigInt qv = d.place.qv();
    const FiberRow& row = d.row;
    // L already carries the bad Euler factor
    if (d.a_v != 0) z.factors.push_back({euler_factor(d), -1});
    if (row.a + 1) z.factors.push_back({at_deg({1, -1}, k), row.a + 1});
    if (row.b) z.factors.push_back({at_deg({1, 1}, k), row.b});
    if (row.f - 1) z.factors.push_back({at_deg({1, -qv}, k), -(row.f - 1)});
    if (row.g) z.factors.push_back({at_deg({1, qv}, k), -row.g});
    if (row.h) z.factors.push_back({at_deg({1, qv, qv * qv}, k), -row.h});
  }
  if (L.N) z.factors.push_back({L.coeffs, -1});
  return z;
}

int SurfaceZeta::ord_at_inv_q() const {
  if (factors.empty()) return 0;
  // q from the Z(P^1, qT) factor
  const BigInt q = -factors[1].first[1];
  int ord = 0;
  for (const auto& [poly, e] : factors) {
    IntPoly c = poly_trim(poly);
    int m = 0;
    while (c.size() >= 2) {
      IntPoly d(c.size() - 1);
      d[0] = c[0];
      for (std::size_t i = 1; i < d.size(); ++i) d[i] = c[i] + q * d[i - 1];
      if (c.back() != -q * d.back()) break;
      c = std::move(d);
      ++m;
    }
    ord += m * e;
  }
  return ord;
}

}  // namespace ffec
