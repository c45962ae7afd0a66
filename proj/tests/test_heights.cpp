#include <doctest.h>

#include "ffec/error.hpp"
#include "ffec/heights.hpp"

using namespace ffec;

namespace {

const PointFamily& family3() {
  static const PointFamily fam = legendre_family(3, 1);
  return fam;
}

}  // namespace

TEST_CASE("naive heights") {
  const Fq F = Fq::create(5, 1);
  const RatFunc u = RatFunc::variable(F);
  CHECK(naive_height(RatPoint::affine(u, u)) == 1);
  CHECK(naive_height(RatPoint::affine(RatFunc::from_int(F, 3), u)) == 0);
  CHECK_THROWS_AS(naive_height(RatPoint::origin()), Error);
  // u^3 (u^3 - u) / (1 + u)^3 reduces to u^4 (u - 1) / (u + 1)^2 over F_3
  CHECK(naive_height(family3().points[0]) == 5);
}

TEST_CASE("rational snapping") {
  CHECK(snap_rational(1.5, 64) == Rational(3, 2));
  CHECK(snap_rational(-0.7499, 64) == Rational(-3, 4));
  CHECK(snap_rational(0.3333, 8) == Rational(1, 3));
  CHECK(snap_rational(3.14159265, 7) == Rational(22, 7));
  CHECK(snap_rational(0.0, 64) == 0);
}

TEST_CASE("point family construction") {
  const PointFamily& fam = family3();
  CHECK(fam.d == 4);
  CHECK(fam.q == 3);
  CHECK(fam.curve.field().q() == 9);
  CHECK(fam.zeta.pow(4).is_one());
  CHECK_FALSE(fam.zeta.pow(2).is_one());
  const auto G = group_law(fam.curve);
  for (std::size_t i = 0; i < fam.d; ++i) {
    CHECK(G.on_curve(fam.points[i]));
    CHECK(fam.points[i].x == fam.points[0].x.scale_var(fam.zeta.pow(i)));
  }
  const PointFamily f5 = legendre_family(5, 1);
  CHECK(f5.d == 6);
  CHECK(f5.points.size() == 6);
  for (const auto& P : f5.points) CHECK(group_law(f5.curve).on_curve(P));
  CHECK_THROWS_AS(legendre_family(2, 1), Error);
}

TEST_CASE("canonical height by doubling") {
  const PointFamily& fam = family3();
  const Curve& E = fam.curve;
  const auto G = group_law(E);
  const RatPoint& P = fam.points[0];

  HeightOptions o;
  o.n_iter = 6;
  const HeightValue h = canonical_height(E, P, o);
  CHECK(h.exact);
  CHECK(h.value == Rational(3, 2));
  CHECK(8 % boost::multiprecision::denominator(h.value) == 0);
  CHECK(h.error < 1.0 / 16);
  // the bracket shrinks by about 4 per iteration
  o.n_iter = 4;
  const HeightValue h4 = canonical_height(E, P, o);
  CHECK(h4.value == h.value);
  o.n_iter = 3;
  CHECK(std::abs(canonical_height(E, P, o).approx() - 1.5) < 0.2);
  o.n_iter = 4;
  CHECK(h.error <= h4.error / 4 + 1e-12);

  // x-only doubling matches the group law
  o.n_iter = 2;
  const HeightValue hs = canonical_height(E, P, o);
  CHECK(hs.naive[1] == naive_height(G.dbl(P)));
  CHECK(hs.naive[2] == naive_height(G.dbl(G.dbl(P))));

  o.n_iter = 6;
  CHECK(canonical_height(E, G.neg(P), o).value == h.value);
  const HeightValue h2 = canonical_height(E, G.dbl(P), o);
  CHECK(std::abs(h2.approx() - 4 * h.approx()) <= 2 * (h2.error + 4 * h.error) + 1e-12);
  CHECK(h2.value == 4 * h.value);

  // quasi-parallelogram defect stays bounded
  const RatPoint& Q = fam.points[1];
  const auto d = [&](const RatPoint& A, const RatPoint& B) {
    return std::abs(static_cast<long long>(naive_height(G.add(A, B))) + static_cast<long long>(naive_height(G.sub(A, B))) -
                    2 * static_cast<long long>(naive_height(A)) - 2 * static_cast<long long>(naive_height(B)));
  };
  CHECK(d(P, Q) <= 16);
  CHECK(d(G.dbl(P), Q) <= 16);
  CHECK(d(P, G.mul(3, Q)) <= 16);

  CHECK_THROWS_AS(canonical_height(E, RatPoint::origin(), o), Error);
  o.degree_budget = 100;
  CHECK_THROWS_AS(canonical_height(E, P, o), Error);
}

TEST_CASE("Gram matrix of the family") {
  const PointFamily& fam = family3();
  const GramResult g = gram_matrix(fam.curve, fam.points, 4 * fam.d * fam.d);
  CHECK(g.rank == fam.d - 2);
  for (std::size_t i = 0; i < fam.d; ++i) CHECK(g.gram(i, i) > 0);
  for (const std::vector<int>& k : {std::vector<int>{1, 1, 1, 1}, std::vector<int>{1, -1, 1, -1}}) {
    RMatrix v(fam.d, 1);
    for (std::size_t i = 0; i < fam.d; ++i) v(i, 0) = k[i];
    CHECK((g.gram * v).rank() == 0);
  }
  // measured pattern: <P_i, P_j> = 3/2, 0, -3/2 as j - i = 0, odd, 2
  for (std::size_t i = 0; i < fam.d; ++i)
    for (std::size_t j = 0; j < fam.d; ++j) {
      const std::size_t k = (j + fam.d - i) % fam.d;
      CHECK(g.gram(i, j) == (k == 0 ? Rational(3, 2) : k == 2 ? Rational(-3, 2) : Rational(0)));
    }
  CHECK(gram_rank(fam.curve, {fam.points[0]}, 64) == 1);
}

TEST_CASE("torsion") {
  const PointFamily& fam = family3();
  const Curve& E = fam.curve;
  CHECK(is_torsion(E, RatPoint::origin()));
  for (const std::vector<long long>& k : {std::vector<long long>{1, 1, 1, 1}, std::vector<long long>{1, -1, 1, -1}}) {
    const TorsionVerdict v = torsion_check(E, sum_points(E, fam.points, k));
    CHECK(v.torsion);
    CHECK(v.multiple_ok);
  }
  HeightOptions o;
  o.n_iter = 3;
  CHECK_FALSE(is_torsion(E, fam.points[0], 1e-6, o));

  // (0, 0) has order 2
  const Curve C = Curve::parse(Fq::create(5, 1), {"0", "1+t^3", "0", "t^3", "0"});
  const RatPoint T = RatPoint::affine(RatFunc(C.field()), RatFunc(C.field()));
  const TorsionVerdict v = torsion_check(C, T);
  CHECK(v.torsion);
  CHECK(v.by_doubling);
  CHECK(v.multiple_ok);
  CHECK(v.multiple % 2 == 0);
}
