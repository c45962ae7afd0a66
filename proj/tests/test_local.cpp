#include <doctest.h>

#include <random>

#include "ffec/error.hpp"
#include "ffec/group_law.hpp"
#include "ffec/local.hpp"
#include "ffec/notation.hpp"

using namespace ffec;

namespace {

Curve curve(std::uint32_t p, std::uint32_t e, const char* a1, const char* a2, const char* a3, const char* a4, const char* a6) {
  return Curve::parse(Fq::create(p, e), {a1, a2, a3, a4, a6});
}

const LocalData* at(const BadFibers& bf, const std::string& place) {
  for (const auto& d : bf.local)
    if (d.place.to_string() == place) return &d;
  return nullptr;
}

// #E~(kappa) of the reduced minimal model, singular point included.
std::uint64_t reduced_count(const LocalData& d) {
  const Place cp = d.place.is_infinity() ? Place::finite(d.place.poly()) : d.place;
  const Fq table = *cp.table_field();
  return count_points_exhaustive(table, reduce_model(d.model, cp, table));
}

}  // namespace

TEST_CASE("invariants and transforms") {
  const Curve E = curve(5, 1, "1", "0", "t", "0", "0");
  const Fq F = E.field();
  const Invariants I = invariants(E);
  CHECK(I.delta == RatFunc(parse_poly(F, "t^3 - 27*t^4")));

  const Transform tau{RatFunc(parse_poly(F, "t+2")), parse_ratfunc(F, "t^2"), parse_ratfunc(F, "3"), parse_ratfunc(F, "1/(t+1)")};
  const Curve E2 = apply_transform(E, tau);
  const Invariants J = invariants(E2);
  CHECK(J.delta == I.delta / tau.u.pow(12));
  CHECK(*J.j == *I.j);
  // composing transforms matches applying them in turn
  const Transform sigma{parse_ratfunc(F, "2"), parse_ratfunc(F, "t"), parse_ratfunc(F, "t^2"), parse_ratfunc(F, "1")};
  CHECK(apply_transform(E2, sigma) == apply_transform(E, tau.then(sigma)));

  const Curve Fr = frobenius_twist(E);
  CHECK(*invariants(Fr).j == I.j->pow(5));
  CHECK_THROWS_AS(curve(5, 1, "0", "0", "0", "0", "0"), Error);
}

TEST_CASE("curve files") {
  const Curve E = parse_curve("# first\np = 3\ne = 2\na1 = 1\na3 = t\na2 = g*t^2\n");
  CHECK(E.field().q() == 9);
  CHECK(parse_curve(format_curve(E)) == E);
  CHECK_THROWS_AS(parse_curve("p = 5\na5 = 1\n"), Error);
  CHECK_THROWS_AS(parse_curve("e = 1\n"), Error);
  CHECK_THROWS_AS(parse_curve("p = 5\na1 = t t\n"), Error);
  CHECK_THROWS_AS(parse_curve("p = 5\na1 = 1\n"), Error);  // singular
  try {
    parse_curve("p = 5\n\na4 = t+*2\n");
    FAIL("expected a parse error");
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("fiber rows") {
  std::vector<KodairaType> types{{Kodaira::II, 0}, {Kodaira::III, 0}, {Kodaira::IV, 0}, {Kodaira::I0s, 0},
                                 {Kodaira::IVs, 0}, {Kodaira::IIIs, 0}, {Kodaira::IIs, 0}};
  for (int n = 1; n <= 7; ++n) {
    types.push_back({Kodaira::In, n});
    types.push_back({Kodaira::Ins, n});
  }
  for (const auto& t : types) {
    CAPTURE(t.name());
    CHECK(KodairaType::parse(t.name()) == t);
    for (bool split : {true, false}) {
      const FiberRow r = fiber_row(t, split);
      CHECK(r.f + r.g + 2 * r.h == t.components());
      for (std::uint64_t q : {2u, 5u, 9u}) {
        // over F_{q^6} every component is defined
        CHECK(fiber_counts(r, q, 6) == fiber_counts(fiber_row(t, true), q, 6));
        // a tree (additive) or cycle (multiplicative) of rational curves
        BigInt q6 = 1;
        for (int i = 0; i < 6; ++i) q6 *= q;
        CHECK(fiber_counts(r, q, 6) == t.components() * q6 + (t.additive() ? 1 : 0));
      }
    }
  }
  const FiberRow cubic = fiber_row({Kodaira::I0s, 0}, false, 0);
  CHECK(cubic.f + cubic.g + 2 * cubic.h == 5);
  CHECK(fiber_counts(cubic, 7, 1) == 3 * 7 + 1 - 7);
  CHECK(fiber_counts(cubic, 7, 3) == 5 * 343 + 1);
  // non-split I_n over F_q: identity component plus a fixed node (n odd) or a fixed component (n even)
  CHECK(fiber_counts(fiber_row({Kodaira::In, 5}, false), 7, 1) == 9);
  CHECK(fiber_counts(fiber_row({Kodaira::In, 4}, false), 7, 1) == 16);
}

TEST_CASE("reduction types of a known family") {
  // y^2 = x(x+1)(x+t^3) over F_5
  const Curve E = curve(5, 1, "0", "1+t^3", "0", "t^3", "0");
  const BadFibers bf = bad_fibers(E);
  REQUIRE(bf.local.size() == 4);
  CHECK(bf.local[0].place.is_infinity());
  CHECK(bf.local[0].type.name() == "I6*");
  CHECK(bf.local[0].n_v == 2);
  const LocalData* t0 = at(bf, "t");
  REQUIRE(t0);
  CHECK(t0->type.name() == "I6");
  CHECK(*t0->split);
  CHECK(t0->n_v == 1);
  CHECK(t0->f_v == 6);
  CHECK(t0->a_v == 1);
  const LocalData* t1 = at(bf, "t+4");
  REQUIRE(t1);
  CHECK(t1->type.name() == "I2");
  const LocalData* t2 = at(bf, "t^2+t+1");
  REQUIRE(t2);
  CHECK(t2->type.name() == "I2");
  CHECK(classify(E).height == 2);
  CHECK(bf.conductor.deg == 1 + 1 + 2 + 2);
  for (const auto& d : bf.local) CHECK(static_cast<long long>(reduced_count(d)) == static_cast<long long>(d.place.deg() == 1 ? 5 : 25) + 1 - d.a_v);
}

TEST_CASE("E7-type curve") {
  for (std::uint32_t p : {5u, 7u, 11u}) {
    CAPTURE(p);
    const Curve E = curve(p, 1, "1", "0", "t", "0", "0");
    const BadFibers bf = bad_fibers(E);
    CHECK(bf.infinity.type.name() == "IV*");
    CHECK(bf.infinity.vdelta_min == 8);
    CHECK(bf.conductor.deg == 4);
    CHECK(classify(E).height == 1);
    const LocalData* t0 = at(bf, "t");
    REQUIRE(t0);
    CHECK(t0->type.name() == "I3");
  }
  // characteristic 2: conductor degree 4 with wild reduction at infinity
  const Curve E2 = curve(2, 1, "1", "0", "t", "0", "0");
  const BadFibers bf2 = bad_fibers(E2);
  CHECK(bf2.infinity.type.name() == "IV*");
  CHECK(bf2.conductor.deg == 4);
}

TEST_CASE("conductor of the first example") {
  const Curve E = curve(5, 1, "1", "t", "t", "0", "0");
  CHECK(invariants(E).delta == RatFunc(parse_poly(E.field(), "t^4 - 16*t^5")));
  const BadFibers bf = bad_fibers(E);
  CHECK(bf.conductor.deg == 4);
  CHECK(nprime_deg(bf) == 1);
  const LocalData* t0 = at(bf, "t");
  REQUIRE(t0);
  CHECK(t0->type.name() == "I4");
}

TEST_CASE("second example") {
  const Curve E = curve(7, 1, "2*t", "0", "0", "-t^2", "0");
  CHECK(invariants(E).delta == RatFunc(parse_poly(E.field(), "16*t^6*(t^2+4)")));
  const BadFibers bf = bad_fibers(E);
  const LocalData* v = at(bf, "t^2+4");
  REQUIRE(v);
  CHECK(v->type.name() == "I1");
  CHECK(v->n_v == 1);
}

TEST_CASE("global minimal model") {
  const Curve E = curve(5, 1, "0", "0", "0", "0", "t^6*(1+t)");
  const GlobalModel gm = global_minimal_model(E);
  CHECK(gm.delta == parse_poly(E.field(), "-432*(1+t)^2"));
  REQUIRE(gm.bad.size() == 1);
  CHECK(gm.bad[0].to_string() == "t+1");
  CHECK(apply_transform(E, gm.tau) == gm.model);

  // denominators are cleared
  const Curve R = curve(7, 1, "0", "0", "0", "1/t", "1");
  const GlobalModel gr = global_minimal_model(R);
  CHECK(gr.model.all_polynomial());
  CHECK(apply_transform(R, gr.tau) == gr.model);
}

TEST_CASE("infinity chart") {
  const Curve E = curve(7, 1, "0", "0", "0", "0", "t");
  const LocalData d = tate_type(E, Place::infinity(E.field()));
  CHECK(d.vdelta_min == 10);
  CHECK(d.type.name() == "II*");
  for (const auto& c : d.model) CHECK(valuation(c, Place::finite(Poly::variable(E.field()))) >= 0);
  const Classification c = classify(E);
  CHECK(c.isotrivial);
  CHECK_FALSE(c.constant);
  CHECK(c.height == 1);
}

TEST_CASE("constant curves") {
  const Curve E = curve(5, 1, "0", "0", "0", "0", "1");
  const Classification c = classify(E);
  CHECK(c.constant);
  CHECK(c.height == 0);
  CHECK(bad_fibers(E).local.empty());
  CHECK(count_points_good(E, Place::finite(parse_poly(E.field(), "t"))) == 0);
  CHECK(count_points_good(curve(3, 1, "0", "0", "0", "1", "0"), Place::finite(parse_poly(Fq::create(3, 1), "t+1"))) == 0);
  // a twist by a non-square constant is still constant
  const Curve T = curve(7, 1, "0", "0", "0", "0", "3*(t+1)^6");
  CHECK(classify(T).constant);
}

TEST_CASE("fast point counts agree with enumeration") {
  std::mt19937_64 rng(7);
  for (auto [p, e] : {std::pair{2u, 12u}, {3u, 8u}, {5u, 6u}, {7u, 5u}, {101u, 2u}, {2u, 13u}}) {
    const Fq F = Fq::create(p, e);
    int done = 0;
    while (done < 4) {
      std::array<std::uint32_t, 5> a;
      for (auto& c : a) c = static_cast<std::uint32_t>(rng() % F.q());
      std::array<RatFunc, 5> r;
      for (int i = 0; i < 5; ++i) r[i] = RatFunc(Poly::constant(F.from_index(a[i])));
      if (invariants(F, r).delta.is_zero()) continue;
      CAPTURE(F.q());
      CHECK(count_points_fast(F, a) == count_points_exhaustive(F, a));
      ++done;
    }
  }
}

TEST_CASE("group law") {
  const Fq F = Fq::create(3, 5);
  const std::array<std::uint32_t, 5> a{1, 2, 0, 5, 17};
  const GroupLaw<TableOps> G(TableOps{F}, a);
  using Pt = Point<std::uint32_t>;
  std::vector<Pt> pts;
  const std::uint32_t four = F.from_int_raw(4), half = F.inv(F.from_int_raw(2));
  for (std::uint32_t x = 0; x < F.q() && pts.size() < 30; ++x) {
    const std::uint32_t A = F.add(F.mul(a[0], x), a[2]);
    const std::uint32_t B = F.add(F.mul(F.add(F.mul(F.add(x, a[1]), x), a[3]), x), a[4]);
    const std::uint32_t D = F.add(F.mul(A, A), F.mul(four, B));
    if (F.is_square(D)) pts.push_back(Pt::affine(x, F.mul(F.sub(F.sqrt(D), A), half)));
  }
  REQUIRE(pts.size() >= 10);
  const auto order = static_cast<long long>(count_points_exhaustive(F, a));
  for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
    const Pt &P = pts[i], &Q = pts[i + 1], &R = pts[i + 2];
    CHECK(G.on_curve(P));
    CHECK(G.on_curve(G.add(P, Q)));
    CHECK(G.add(P, Q) == G.add(Q, P));
    CHECK(G.add(G.add(P, Q), R) == G.add(P, G.add(Q, R)));
    CHECK(G.add(P, G.neg(P)).inf);
    CHECK(G.mul(order, P).inf);
    CHECK(G.mul(5, P) == G.add(G.dbl(G.dbl(P)), P));
  }
}

TEST_CASE("Hasse invariant and p-torsion") {
  CHECK(hasse_invariant(curve(3, 1, "0", "0", "0", "1", "0")).is_zero());
  CHECK(hasse_invariant(curve(3, 1, "0", "1", "0", "0", "t")) == parse_ratfunc(Fq::create(3, 1), "1"));
  CHECK(hasse_invariant(curve(5, 1, "0", "0", "0", "t", "1")) == parse_ratfunc(Fq::create(5, 1), "2*t"));
  // y^2 + xy = x^3 + t^2 has the 2-torsion point (0, t)
  const Curve E = curve(2, 1, "1", "0", "0", "0", "t^2");
  CHECK(has_p_torsion(E));
  CHECK_FALSE(has_p_torsion(curve(2, 1, "1", "0", "0", "0", "t")));
  const auto G = group_law(E);
  const RatPoint P = RatPoint::affine(RatFunc(E.field()), parse_ratfunc(E.field(), "t"));
  CHECK(G.on_curve(P));
  CHECK(G.dbl(P).inf);
  const TorsionBound tb = torsion_bound(E);
  CHECK(tb.full % 2 == 0);
  CHECK(tb.bound % 2 == 1);
  CHECK_THROWS_AS(has_p_torsion(curve(5, 1, "0", "0", "0", "0", "t")), Error);
}
