#include <doctest.h>

#include <random>

#include "ffec/error.hpp"
#include "ffec/lfunction.hpp"

using namespace ffec;

namespace {

Curve curve(std::uint32_t p, std::uint32_t e, const char* a1, const char* a2, const char* a3, const char* a4, const char* a6) {
  return Curve::parse(Fq::create(p, e), {a1, a2, a3, a4, a6});
}

// Power sums of the inverse roots of f (f(0) = 1), up to K.
std::vector<BigInt> power_sums(const IntPoly& f, std::size_t K) {
  std::vector<BigInt> p(K + 1, 0);
  for (std::size_t k = 1; k <= K; ++k) {
    BigInt acc = k < f.size() ? BigInt(-static_cast<long long>(k)) * f[k] : BigInt(0);
    for (std::size_t i = 1; i < k && i < f.size(); ++i) acc -= f[i] * p[k - i];
    p[k] = acc;
  }
  return p;
}

// alpha^j + beta^j for 1 - aT + qT^2
BigInt frob_trace(long long a, const BigInt& q, unsigned j) {
  BigInt s0 = 2, s1 = a;
  if (j == 0) return s0;
  for (unsigned i = 1; i < j; ++i) {
    BigInt s2 = a * s1 - q * s0;
    s0 = s1;
    s1 = s2;
  }
  return s1;
}

IntPoly power_of(IntPoly f, unsigned e) {
  IntPoly r{1};
  for (unsigned i = 0; i < e; ++i) r = poly_mul(r, f);
  return r;
}

}  // namespace

TEST_CASE("series helpers") {
  const IntPoly f{1, -3, 5};
  const IntPoly g = series_inverse(f, 10);
  IntPoly one = poly_mul(f, g);
  one.resize(11);
  IntPoly expect(11, 0);
  expect[0] = 1;
  CHECK(one == expect);
  CHECK(euler_factor(2, 5, 2, true) == IntPoly{1, 0, -2, 0, 5});
  CHECK(euler_factor(-1, 5, 3, false) == IntPoly{1, 0, 0, 1});
  CHECK(constant_l(0, 5).denominator == IntPoly{1, 0, 130, 0, 625});
}

TEST_CASE("constant curves match the closed form") {
  std::mt19937_64 rng(11);
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}, {2u, 3u}, {3u, 2u}}) {
    const Fq F = Fq::create(p, e);
    std::size_t D = 0;
    for (std::uint64_t Q = F.q(); D < 8 && Q <= kResidueCap; Q *= F.q()) ++D;
    for (int trial = 0; trial < 2; ++trial) {
      std::array<RatFunc, 5> c;
      std::array<std::uint32_t, 5> raw;
      do {
        for (int i = 0; i < 5; ++i) {
          raw[i] = static_cast<std::uint32_t>(rng() % F.q());
          c[i] = RatFunc(Poly::constant(F.from_index(raw[i])));
        }
      } while (invariants(F, c).delta.is_zero());
      const Curve E(F, c);
      const long long a = static_cast<long long>(F.q()) + 1 - static_cast<long long>(count_points_exhaustive(F, raw));
      CAPTURE(F.q());
      CAPTURE(D);
      const BadFibers bf = bad_fibers(E);
      CHECK(bf.local.empty());
      IntPoly s = euler_product_series(E, bf, D, D);
      IntPoly den = constant_l(a, F.q()).denominator;
      den.resize(D + 1, 0);
      CHECK(s == den);
      CHECK_THROWS_AS(l_polynomial(E), Error);
    }
  }
}

TEST_CASE("L-polynomials of non-constant curves") {
  struct Case {
    Curve E;
    std::size_t N;
  };
  const std::vector<Case> cases{
      {curve(5, 1, "0", "1+t^3", "0", "t^3", "0"), 2},
      {curve(5, 1, "1", "t", "t", "0", "0"), 0},
      {curve(5, 1, "1", "0", "t", "0", "0"), 0},
      {curve(2, 1, "1", "0", "t^2", "0", "t"), 0},
      {curve(3, 1, "1", "0", "0", "0", "t^3+t"), 0},
      {curve(2, 1, "1", "0", "0", "t", "t^3+1"), 0},
      {curve(7, 1, "0", "0", "0", "t", "1"), 0},
      {curve(3, 1, "0", "1", "0", "t^2", "t^4+t"), 0},
  };
  for (const auto& [E, Nexp] : cases) {
    const BadFibers bf = bad_fibers(E);
    const std::size_t N = bf.conductor.deg - 4;
    CAPTURE(format_curve(E));
    if (Nexp) CHECK(N == Nexp);
    const LPoly L = l_polynomial(E, bf);
    CHECK(L.N == N);
    CHECK(L.coeffs.size() == N + 1);
    const int eps = check_functional_equation(L);
    CHECK(functional_equation_sign_reversed(L) == eps);
    CHECK(check_rh(L));
    const int r = analytic_rank(L);
    CHECK(r <= static_cast<int>(N));
    if (r == static_cast<int>(N)) CHECK(L.coeffs == power_of({1, -BigInt(L.q)}, static_cast<unsigned>(N)));
    // T^1 coefficient of the Euler product: minus the sum of a_v over degree-one places
    const IntPoly s = euler_product_series(E, bf, 1, 1);
    long long sum = bf.infinity.a_v;
    for (const Place& v : places_of_degree(E.field(), 1)) {
      bool is_bad = false;
      for (const auto& d : bf.local)
        if (d.place == v) {
          is_bad = true;
          sum += d.a_v;
        }
      if (!is_bad) sum += count_points_good(bf.global.model, v);
    }
    CHECK(s[1] == -sum);
    // threads do not change the answer
    LOptions opts;
    opts.threads = 3;
    CHECK(l_polynomial(E, bf, opts).coeffs == L.coeffs);
  }
}

TEST_CASE("analytic rank and the functional equation") {
  CHECK(analytic_rank({{1, -18, 81}, 9, 2}) == 2);
  CHECK(analytic_rank({{1}, 9, 0}) == 0);
  CHECK(analytic_rank({{1, 0, -25}, 5, 2}) == 1);
  CHECK(check_functional_equation({{1, 0, -25}, 5, 2}) == -1);
  CHECK(check_functional_equation({{1, -5}, 5, 1}) == -1);
  CHECK(check_functional_equation({{1, 5}, 5, 1}) == 1);
  CHECK_THROWS_AS(check_functional_equation({{1, 2, -25}, 5, 2}), Error);
  CHECK(check_rh({{1, 3, 25}, 5, 2}));
  CHECK_FALSE(check_rh({{1, 26, 25}, 5, 2}));
  CHECK(rh_deviation({{1, -18, 81}, 9, 2}) < 1e-12);
}

TEST_CASE("constant field extension") {
  const Curve E = curve(5, 1, "0", "1+t^3", "0", "t^3", "0");
  const LPoly L = l_polynomial(E);
  const Curve E2 = extend_constants(E, 2);
  LOptions opts;
  opts.max_place_deg = 4;
  const LPoly L2 = l_polynomial(E2, opts);
  const LPoly X = extend_l(L, 2);
  CHECK(X.q == 25);
  CHECK(X.coeffs == L2.coeffs);
  CHECK(extend_l(L, 1).coeffs == L.coeffs);
  CHECK(extend_l({{1, -5}, 5, 1}, 3).coeffs == IntPoly{1, -125});
}

TEST_CASE("surface zeta function") {
  const std::vector<Curve> curves{curve(5, 1, "0", "1+t^3", "0", "t^3", "0"), curve(5, 1, "1", "t", "t", "0", "0"),
                                  curve(3, 1, "1", "0", "t", "0", "0"), curve(2, 1, "1", "0", "0", "t", "t^3+1")};
  for (const Curve& E : curves) {
    CAPTURE(format_curve(E));
    const BadFibers bf = bad_fibers(E);
    const LPoly L = l_polynomial(E, bf);
    const SurfaceZeta z = surface_zeta(L, bf.local);
    CHECK(analytic_rank(L) == -z.ord_at_inv_q() - 2 - component_excess(bf.local));

    // N_m from the assembled rational function
    const unsigned M = 3;
    std::vector<BigInt> Nz(M + 1, 0);
    for (const auto& [f, e] : z.factors) {
      const auto ps = power_sums(f, M);
      for (unsigned m = 1; m <= M; ++m) Nz[m] -= e * ps[m];
    }
    // N_m by summing fiber counts over closed points of P^1 of degree dividing m
    for (unsigned m = 1; m <= M; ++m) {
      BigInt n = 0;
      auto add = [&](const Place& v, long long a, const LocalData* d) {
        const unsigned k = static_cast<unsigned>(v.deg());
        if (m % k) return;
        const unsigned j = m / k;
        const BigInt qv = v.qv();
        BigInt qj = 1;
        for (unsigned i = 0; i < j; ++i) qj *= qv;
        n += k * (d ? fiber_counts(d->row, static_cast<std::uint64_t>(qv), j) : qj + 1 - frob_trace(a, qv, j));
      };
      add(Place::infinity(E.field()), bf.infinity.a_v, bf.infinity.type.kind == Kodaira::I0 ? nullptr : &bf.infinity);
      for (std::size_t k = 1; k <= m; ++k)
        for (const Place& v : places_of_degree(E.field(), k)) {
          const LocalData* d = nullptr;
          for (const auto& b : bf.local)
            if (b.place == v) d = &b;
          add(v, d ? 0 : count_points_good(bf.global.model, v), d);
        }
      CAPTURE(m);
      CHECK(n == Nz[m]);
    }
  }
}

TEST_CASE("completion by the functional equation") {
  for (const Curve& E : {Curve::parse(Fq::create(2, 1), {"1", "0", "t", "0", "0"}), Curve::parse(Fq::create(3, 1), {"1", "0", "0", "t", "0"}),
                         base_change_pow(Curve::parse(Fq::create(2, 1), {"1", "0", "t", "0", "0"}), 3)}) {
    const BadFibers bf = bad_fibers(E);
    CHECK(l_polynomial_half(E, bf).coeffs == l_polynomial(E, bf).coeffs);
  }
}
