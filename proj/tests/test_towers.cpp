#include <doctest.h>

#include "ffec/error.hpp"
#include "ffec/towers.hpp"

using namespace ffec;

namespace {

Curve curve(std::uint32_t p, std::uint32_t e, const char* a1, const char* a2, const char* a3, const char* a4, const char* a6) {
  return Curve::parse(Fq::create(p, e), {a1, a2, a3, a4, a6});
}

}  // namespace

TEST_CASE("orbits of multiplication by q") {
  auto o = orbit_decomposition(4, 3);
  CHECK(o.orbits == std::vector<std::vector<std::uint64_t>>{{0}, {1, 3}, {2}});
  o = orbit_decomposition(5, 2);
  CHECK(o.orbits == std::vector<std::vector<std::uint64_t>>{{0}, {1, 2, 3, 4}});
  CHECK(orbit_decomposition(1, 7).orbits == std::vector<std::vector<std::uint64_t>>{{0}});
  CHECK_THROWS_AS(orbit_decomposition(6, 3), Error);
  for (std::uint64_t d = 1; d <= 40; ++d)
    for (std::uint64_t q : {2u, 3u, 5u, 9u}) {
      if (std::gcd(d, q) != 1) continue;
      const auto od = orbit_decomposition(d, q);
      std::size_t total = 0;
      std::vector<int> hit(d, 0);
      for (std::size_t i = 0; i < od.orbits.size(); ++i) {
        CHECK(mult_order(q % d == 0 ? 1 : q, d) % od.sizes[i] == 0);
        total += od.sizes[i];
        for (auto j : od.orbits[i]) {
          ++hit[j];
          CHECK(std::binary_search(od.orbits[i].begin(), od.orbits[i].end(), (j * q) % d));
        }
      }
      CHECK(total == d);
      CHECK(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));
    }
}

TEST_CASE("exact linear algebra") {
  RMatrix m(3, 3);
  const int vals[9] = {2, -1, 0, 1, 3, 4, 0, 5, -2};
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = vals[i];
  CHECK(m * m.inverse() == RMatrix::identity(3));
  CHECK(m.det() == -54);
  // charpoly: x^3 - tr x^2 + (sum of principal 2-minors) x - det
  CHECK(m.charpoly() == RPoly{54, -23, -3, 1});
  RMatrix s(2, 3);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(0, 2) = 3;
  s(1, 0) = 2;
  s(1, 1) = 4;
  s(1, 2) = 6;
  CHECK(s.rank() == 1);
  const RMatrix k = s.kernel();
  CHECK(k.cols() == 2);
  CHECK((s * k).rank() == 0);
}

TEST_CASE("linear algebra lemma") {
  // swap with <w0, w1> = 1
  BlockSystem B;
  B.a = 2;
  B.dims = {1, 1};
  B.phi = RMatrix(2, 2);
  B.phi(0, 1) = 1;
  B.phi(1, 0) = 1;
  B.pairing = B.phi;
  const LemmaCheck c = lemma_la_check(B);
  CHECK(c.hypotheses_hold());
  CHECK(c.det == RPoly{1, 0, -1});
  CHECK(lemma_la_verify(B));

  std::mt19937_64 rng(2024);
  for (std::size_t a : {2u, 4u, 6u})
    for (std::size_t n : {1u, 3u}) {
      const BlockSystem R = random_block_system(a, n, rng);
      const LemmaCheck r = lemma_la_check(R);
      CAPTURE(a);
      CAPTURE(n);
      CHECK(r.hypotheses_hold());
      CHECK(r.divisible);
      // det(1 - phi T) = det(1 - T^a phi^a | W_0)
      RMatrix pa = RMatrix::identity(R.dim());
      for (std::size_t i = 0; i < a; ++i) pa = R.phi * pa;
      const RPoly w = pa.block(0, 0, n, n).charpoly();
      RPoly expect(a * n + 1, 0);
      for (std::size_t i = 0; i <= n; ++i) expect[a * i] = w[n - i];
      CHECK(r.det == expect);
    }
  // even-dimensional W_0: divisibility can fail
  bool failed = false;
  for (int i = 0; i < 20 && !failed; ++i) {
    const LemmaCheck r = lemma_la_check(random_block_system(2, 2, rng));
    CHECK_FALSE(r.hypotheses_hold());
    failed = !r.divisible;
  }
  CHECK(failed);
  CHECK_THROWS_AS(lemma_la_verify(random_block_system(4, 2, rng)), Error);
}

TEST_CASE("tower L-functions") {
  const Curve E = curve(5, 1, "0", "1+t^3", "0", "t^3", "0");
  CHECK(tower_l(E, 1, false).coeffs == l_polynomial(E).coeffs);
  CHECK(tower_l(E, 1, true).coeffs == l_polynomial(E).coeffs);
  CHECK_THROWS_AS(tower_l(E, 5, false), Error);

  // E7 over F_2: d = 3
  const Curve E7 = curve(2, 1, "1", "0", "t", "0", "0");
  const TowerL f3 = tower_l_detail(E7, 3, false);
  const TowerL k3 = tower_l_detail(E7, 3, true);
  CHECK(k3.m == 2);
  CHECK(k3.L.q == 4);
  CHECK(analytic_rank(k3.L) >= analytic_rank(f3.L));
  CHECK(check_rh(k3.L));
  // direct and constant-extension routes agree
  CHECK(extend_l(f3.L, 2).coeffs == k3.L.coeffs);
}

TEST_CASE("cyclotomic part") {
  // (1 - 9T)^2
  CyclotomicPart c = cyclotomic_part({{1, -18, 81}, 9, 2});
  CHECK(c.factors == std::vector<std::pair<std::size_t, int>>{{1, 2}});
  CHECK(c.residual_degree == 0);
  // 1 - 16 T^2 = (1 - 4T)(1 + 4T)
  c = cyclotomic_part({{1, 0, -16}, 4, 2});
  CHECK(c.factors == std::vector<std::pair<std::size_t, int>>{{1, 1}, {2, 1}});
  // 1 + 4T^2 + ... has no such factor
  c = cyclotomic_part({{1, 1, 4}, 2, 2});
  CHECK(c.factors.empty());
  CHECK(c.residual_degree == 2);
}

TEST_CASE("rank growth scan guard") {
  for (const Curve& E : {curve(5, 1, "0", "1+t^3", "0", "t^3", "0"), curve(7, 1, "0", "0", "0", "t^2", "t")}) {
    const ScanResult r = rank_growth_scan(E, 1);
    CHECK(r.warning.has_value() == (nprime_deg(E) % 2 == 0));
    CHECK((r.rows.size() == 2 || r.stopped.has_value()));
  }
}
