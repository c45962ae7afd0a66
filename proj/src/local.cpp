#include "ffec/local.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <unordered_map>

#include "ffec/error.hpp"
#include "ffec/group_law.hpp"

namespace ffec {

// ---------------------------------------------------------------- types

std::string KodairaType::name() const {
  switch (kind) {
    case Kodaira::I0: return "I0";
    case Kodaira::In: return "I" + std::to_string(n);
    case Kodaira::II: return "II";
    case Kodaira::III: return "III";
    case Kodaira::IV: return "IV";
    case Kodaira::I0s: return "I0*";
    case Kodaira::Ins: return "I" + std::to_string(n) + "*";
    case Kodaira::IVs: return "IV*";
    case Kodaira::IIIs: return "III*";
    case Kodaira::IIs: return "II*";
  }
  return "?";
}

KodairaType KodairaType::parse(const std::string& s) {
  static const std::map<std::string, Kodaira> fixed = {{"I0", Kodaira::I0},  {"II", Kodaira::II},   {"III", Kodaira::III},
                                                        {"IV", Kodaira::IV},  {"I0*", Kodaira::I0s}, {"IV*", Kodaira::IVs},
                                                        {"III*", Kodaira::IIIs}, {"II*", Kodaira::IIs}};
  if (auto it = fixed.find(s); it != fixed.end()) return {it->second, 0};
  if (s.size() >= 2 && s[0] == 'I' && std::isdigit(static_cast<unsigned char>(s[1]))) {
    const bool star = s.back() == '*';
    const std::string digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 7) {
      const int n = std::stoi(digits);
      if (n >= 1) return {star ? Kodaira::Ins : Kodaira::In, n};
    }
  }
  fail(ErrorKind::Parse, "unknown Kodaira symbol '" + s + "'");
}

int KodairaType::components() const {
  switch (kind) {
    case Kodaira::I0: return 1;
    case Kodaira::In: return n;
    case Kodaira::II: return 1;
    case Kodaira::III: return 2;
    case Kodaira::IV: return 3;
    case Kodaira::I0s: return 5;
    case Kodaira::Ins: return 5 + n;
    case Kodaira::IVs: return 7;
    case Kodaira::IIIs: return 8;
    case Kodaira::IIs: return 9;
  }
  return 0;
}

FiberRow fiber_row(const KodairaType& t, bool split, int rational_ends) {
  switch (t.kind) {
    case Kodaira::I0: fail(ErrorKind::InvalidArgument, "no fiber row for good reduction");
    case Kodaira::In:
      if (split) return {0, 0, t.n, 0, 0};
      if (t.n % 2) return {-1, 1, (t.n + 1) / 2, (t.n - 1) / 2, 0};
      return {-1, 1, t.n / 2 + 1, (t.n - 2) / 2, 0};
    case Kodaira::Ins: return split ? FiberRow{-1, 0, 5 + t.n, 0, 0} : FiberRow{-1, 0, 4 + t.n, 1, 0};
    case Kodaira::I0s: {
      const int ends = rational_ends < 0 ? (split ? 3 : 1) : rational_ends;
      if (ends == 3) return {-1, 0, 5, 0, 0};
      if (ends == 1) return {-1, 0, 4, 1, 0};
      if (ends == 0) return {-1, 0, 3, 0, 1};
      fail(ErrorKind::InvalidArgument, "I0* with " + std::to_string(ends) + " rational far components");
    }
    case Kodaira::II: return {-1, 0, 1, 0, 0};
    case Kodaira::III: return {-1, 0, 2, 0, 0};
    case Kodaira::IV: return split ? FiberRow{-1, 0, 3, 0, 0} : FiberRow{-1, 0, 2, 1, 0};
    case Kodaira::IVs: return split ? FiberRow{-1, 0, 7, 0, 0} : FiberRow{-1, 0, 5, 2, 0};
    case Kodaira::IIIs: return {-1, 0, 8, 0, 0};
    case Kodaira::IIs: return {-1, 0, 9, 0, 0};
  }
  fail(ErrorKind::InvalidArgument, "unknown reduction type");
}

BigInt fiber_counts(const FiberRow& row, std::uint64_t qv, unsigned m) {
  if (m == 0) fail(ErrorKind::InvalidArgument, "extension degree must be positive");
  BigInt qm = 1;
  for (unsigned i = 0; i < m; ++i) qm *= qv;
  const BigInt sq = (m % 2) ? BigInt(-qm) : qm;
  const int sgn = (m % 2) ? -1 : 1;
  BigInt n = row.f * qm + row.g * sq - row.a - row.b * sgn;
  // (1 + qT + q^2T^2)^{-1} = (1 - qT) / (1 - q^3 T^3)
  if (row.h) n += row.h * ((m % 3 == 0 ? 3 : 0) * qm - qm);
  return n;
}

BigInt fiber_counts(const KodairaType& t, bool split, std::uint64_t qv, unsigned m) {
  return fiber_counts(fiber_row(t, split), qv, m);
}

// ---------------------------------------------------------------- Tate

namespace {

struct LocalRing {
  Poly pi;
  RatFunc piR;
  ResidueField K;
  Fq F;

  explicit LocalRing(const Poly& p) : pi(p), piR(p), K(p), F(p.field()) {}

  int val(const RatFunc& x) const {
    if (x.is_zero()) return kInfVal;
    return x.num().multiplicity(pi) - x.den().multiplicity(pi);
  }
  bool div(const RatFunc& x) const { return val(x) > 0; }
  RatFunc lift(const Poly& r) const { return RatFunc(r); }
  RatFunc red(const RatFunc& x) const { return lift(K.reduce(x)); }
  RatFunc inv_red(const RatFunc& x) const { return lift(K.inv(K.reduce(x))); }
  RatFunc proot(const RatFunc& x) const { return lift(K.pth_root(K.reduce(x))); }
  bool quadroots(const RatFunc& a, const RatFunc& b, const RatFunc& c) const {
    return K.quadratic_has_root(K.reduce(a), K.reduce(b), K.reduce(c));
  }
  int cubicroots(const RatFunc& b, const RatFunc& c, const RatFunc& d) const {
    return K.cubic_roots(K.reduce(b), K.reduce(c), K.reduce(d));
  }
};

struct TateOut {
  KodairaType type;
  int vdelta = 0;
  std::optional<bool> split;
  int rational_ends = -1;
  std::array<RatFunc, 5> a;
  Transform tau;
};

TateOut tate_chart(std::array<RatFunc, 5> a, const Poly& pi) {
  const LocalRing L(pi);
  const Fq F = L.F;
  const std::uint32_t p = F.p();
  auto k = [F](long long v) { return RatFunc::from_int(F, v); };
  const RatFunc zero(F), one = k(1);
  const RatFunc half = p == 2 ? zero : k(2).inv();
  Transform tau = Transform::identity(F);

  auto apply = [&](const Transform& st) {
    a = apply_transform(a, st);
    tau = tau.then(st);
  };
  auto rst = [&](const RatFunc& r, const RatFunc& s, const RatFunc& w) { apply(Transform{one, r, s, w}); };

  // integral model at pi
  {
    static constexpr int w[5] = {1, 2, 3, 4, 6};
    int kk = 0;
    for (int i = 0; i < 5; ++i) {
      const int v = L.val(a[i]);
      if (v == kInfVal || v >= 0) continue;
      kk = std::max(kk, (-v + w[i] - 1) / w[i]);
    }
    if (kk > 0) apply(Transform::scaling(L.piR.pow(-kk)));
  }

  TateOut out;
  auto finish = [&](Kodaira kind, int n, int vD) {
    out.type = {kind, n};
    out.vdelta = vD;
    out.a = a;
    out.tau = tau;
    return out;
  };

  while (true) {
    Invariants I = invariants(F, a);
    const int vD = L.val(I.delta);
    if (vD == 0) return finish(Kodaira::I0, 0, 0);

    // move the singular point of the reduction to (0, 0)
    {
      const auto& [a1, a2, a3, a4, a6] = a;
      RatFunc r, w;
      if (p == 2) {
        if (L.div(I.b2)) {
          r = L.proot(a4);
          w = L.proot(((r + a2) * r + a4) * r + a6);
        } else {
          const RatFunc tmp = L.inv_red(a1);
          r = tmp * a3;
          w = tmp * (a4 + r * r);
        }
      } else if (p == 3) {
        r = L.div(I.b2) ? L.proot(-I.b6) : -L.inv_red(I.b2) * I.b4;
        w = a1 * r + a3;
      } else {
        r = L.div(I.c4) ? -k(12).inv() * I.b2 : -L.inv_red(k(12) * I.c4) * (I.c6 + I.b2 * I.c4);
        w = -half * (a1 * r + a3);
      }
      rst(L.red(r), zero, L.red(w));
    }
    I = invariants(F, a);

    if (!L.div(I.b2)) {
      out.split = L.quadroots(one, a[0], -a[1]);
      return finish(Kodaira::In, vD, vD);
    }
    if (L.val(a[4]) < 2) return finish(Kodaira::II, 0, vD);
    if (L.val(I.b8) < 3) return finish(Kodaira::III, 0, vD);
    if (L.val(I.b6) < 3) {
      out.split = L.quadroots(one, a[2] / L.piR, -a[4] / L.piR.pow(2));
      return finish(Kodaira::IV, 0, vD);
    }

    // now arrange pi | a1, a2; pi^2 | a3, a4; pi^3 | a6
    {
      RatFunc s, w;
      if (p == 2) {
        s = L.proot(a[1]);
        w = L.piR * L.proot(a[4] / L.piR.pow(2));
      } else if (p == 3) {
        s = a[0];
        w = a[2];
      } else {
        s = -a[0] * half;
        w = -a[2] * half;
      }
      rst(zero, s, w);
    }

    const RatFunc b = a[1] / L.piR, c = a[3] / L.piR.pow(2), d = a[4] / L.piR.pow(3);
    const RatFunc bb = b * b, cc = c * c, bc = b * c;
    const RatFunc disc = k(27) * d * d - bb * cc + k(4) * b * bb * d - k(18) * bc * d + k(4) * c * cc;
    const RatFunc x = k(3) * c - bb;
    const int sw = L.div(disc) ? (L.div(x) ? 3 : 2) : 1;

    if (sw == 1) {
      const int roots = L.cubicroots(b, c, d);
      out.rational_ends = roots;
      out.split = roots == 3;
      return finish(Kodaira::I0s, 0, vD);
    }

    if (sw == 2) {
      // double root to T = 0
      RatFunc r;
      if (p == 2)
        r = L.proot(c);
      else if (p == 3)
        r = c * L.inv_red(b);
      else
        r = (bc - k(9) * d) * L.inv_red(k(2) * x);
      rst(L.piR * L.red(r), zero, zero);

      int ix = 3, iy = 3;
      RatFunc mx = L.piR.pow(2), my = mx;
      bool split = false;
      while (true) {
        RatFunc a2t = a[1] / L.piR, a3t = a[2] / my, a4t = a[3] / (L.piR * mx), a6t = a[4] / (mx * my);
        if (!L.div(a3t * a3t + k(4) * a6t)) {
          split = L.quadroots(one, a3t, -a6t);
          break;
        }
        RatFunc w = p == 2 ? my * L.proot(a6t) : my * L.red(-a3t * half);
        rst(zero, zero, w);
        my = my * L.piR;
        ++iy;
        a2t = a[1] / L.piR;
        a3t = a[2] / my;
        a4t = a[3] / (L.piR * mx);
        a6t = a[4] / (mx * my);
        if (!L.div(a4t * a4t - k(4) * a6t * a2t)) {
          split = L.quadroots(a2t, a4t, a6t);
          break;
        }
        RatFunc r2 = p == 2 ? mx * L.proot(a6t * L.inv_red(a2t)) : mx * L.red(-a4t * L.inv_red(k(2) * a2t));
        rst(r2, zero, zero);
        mx = mx * L.piR;
        ++ix;
      }
      out.split = split;
      return finish(Kodaira::Ins, ix + iy - 5, vD);
    }

    // triple root to T = 0
    {
      RatFunc r;
      if (p == 2)
        r = b;
      else if (p == 3)
        r = L.proot(-d);
      else
        r = -b * k(3).inv();
      rst(L.piR * L.red(r), zero, zero);
    }
    const RatFunc a3t = a[2] / L.piR.pow(2), a6t = a[4] / L.piR.pow(4);
    if (!L.div(a3t * a3t + k(4) * a6t)) {
      out.split = L.quadroots(one, a3t, -a6t);
      return finish(Kodaira::IVs, 0, vD);
    }
    {
      RatFunc w = p == 2 ? -L.piR.pow(2) * L.proot(a6t) : L.piR.pow(2) * L.red(-a3t * half);
      rst(zero, zero, w);
    }
    if (L.val(a[3]) < 4) return finish(Kodaira::IIIs, 0, vD);
    if (L.val(a[4]) < 6) return finish(Kodaira::IIs, 0, vD);
    // not minimal
    apply(Transform::scaling(L.piR));
  }
}

}  // namespace

std::array<RatFunc, 5> chart_coeffs(const Curve& E, const Place& v) {
  if (!v.is_infinity()) return E.coeffs();
  std::array<RatFunc, 5> a;
  for (int i = 0; i < 5; ++i) a[i] = E.coeffs()[i].invert_variable();
  return a;
}

std::pair<Curve, Transform> minimal_model_at(const Curve& E, const Place& v) {
  TateOut t = tate_chart(chart_coeffs(E, v), v.poly());
  return {Curve(E.field(), t.a).with_var(v.is_infinity() ? 's' : E.var()), t.tau};
}

namespace {

Place chart_place(const Place& v) { return v.is_infinity() ? Place::finite(v.poly()) : v; }

}  // namespace

LocalData tate_type(const Curve& E, const Place& v, bool count_good) {
  TateOut t = tate_chart(chart_coeffs(E, v), v.poly());
  LocalData d;
  d.place = v;
  d.type = t.type;
  d.vdelta_min = t.vdelta;
  d.model = t.a;
  d.transform_used = t.tau;
  d.split = t.split;
  if (t.type.kind == Kodaira::I0) {
    d.n_v = 0;
    d.f_v = 1;
    if (count_good) {
      const Place cp = chart_place(v);
      auto table = cp.table_field();
      if (!table) fail(ErrorKind::CapExceeded, "residue field at " + v.to_string() + " exceeds the cap");
      const std::uint64_t qv = table->q();
      d.a_v = static_cast<int>(static_cast<long long>(qv) + 1 - static_cast<long long>(count_points_fast(*table, reduce_model(t.a, cp, *table))));
    }
    return d;
  }
  d.n_v = t.vdelta - t.type.components() + 1;
  d.row = fiber_row(t.type, t.split.value_or(false), t.rational_ends);
  d.f_v = d.row.f;
  if (t.type.kind == Kodaira::In)
    d.a_v = *t.split ? 1 : -1;
  else
    d.a_v = 0;
  return d;
}

GlobalModel global_minimal_model(const Curve& E) {
  const Fq F = E.field();
  std::array<RatFunc, 5> a = E.coeffs();
  Transform tau = Transform::identity(F);
  Poly D = Poly::constant(F.one());
  for (const auto& c : a) {
    if (c.den().is_one()) continue;
    D = D * c.den().exact_div(gcd(D, c.den()));
  }
  if (!D.is_one()) {
    const Transform sc = Transform::scaling(RatFunc(Poly::constant(F.one()), D));
    a = apply_transform(a, sc);
    tau = tau.then(sc);
  }
  Poly delta = invariants(F, a).delta.num();
  const Factorization fac = factor(delta);
  for (const auto& [g, m] : fac.factors) {
    if (m < 12) continue;  // v(delta) < 12 is already minimal
    TateOut t = tate_chart(a, g);
    a = t.a;
    tau = tau.then(t.tau);
  }
  GlobalModel gm;
  gm.model = Curve(F, a).with_var(E.var());
  gm.tau = tau;
  gm.delta = invariants(F, a).delta.num();
  for (const auto& [g, m] : fac.factors)
    if ((gm.delta % g).is_zero()) gm.bad.push_back(Place::finite(g));
  std::sort(gm.bad.begin(), gm.bad.end());
  return gm;
}

BadFibers bad_fibers(const Curve& E) {
  BadFibers bf;
  bf.global = global_minimal_model(E);
  for (const Place& v : bf.global.bad) bf.local.push_back(tate_type(bf.global.model, v, false));
  bf.infinity = tate_type(E, Place::infinity(E.field()), true);
  if (bf.infinity.type.kind != Kodaira::I0) bf.local.insert(bf.local.begin(), bf.infinity);
  for (const auto& d : bf.local) {
    bf.conductor.entries.emplace_back(d.place, d.n_v);
    bf.conductor.deg += static_cast<std::size_t>(d.n_v) * d.place.deg();
  }
  return bf;
}

Conductor conductor(const Curve& E) { return bad_fibers(E).conductor; }

long long nprime_deg(const BadFibers& bf) {
  long long n = static_cast<long long>(bf.conductor.deg);
  for (const auto& d : bf.local)
    if (d.place.is_infinity() || d.place.poly() == Poly::variable(d.place.field())) n -= d.tame();
  return n;
}

long long nprime_deg(const Curve& E) { return nprime_deg(bad_fibers(E)); }

// ---------------------------------------------------------------- counting

std::array<std::uint32_t, 5> reduce_model(const std::array<RatFunc, 5>& a, const Place& v, Fq table) {
  if (v.is_infinity()) fail(ErrorKind::InvalidArgument, "reduce_model expects a chart place");
  const auto root = v.root();
  if (!root) fail(ErrorKind::CapExceeded, "residue field at " + v.to_string() + " exceeds the cap");
  const Embedding& emb = Embedding::get(v.field(), table);
  std::array<std::uint32_t, 5> out{};
  for (int i = 0; i < 5; ++i) {
    const std::uint32_t den = a[i].den().eval_in(emb, *root);
    if (den == 0) fail(ErrorKind::InvalidArgument, "model is not integral at " + v.to_string());
    out[i] = table.div(a[i].num().eval_in(emb, *root), den);
  }
  return out;
}

std::uint64_t count_points_exhaustive(Fq F, const std::array<std::uint32_t, 5>& a) {
  const auto [a1, a2, a3, a4, a6] = a;
  const std::uint32_t Q = F.q();
  std::uint64_t n = 1;
  if (F.p() == 2) {
    for (std::uint32_t x = 0; x < Q; ++x) {
      const std::uint32_t A = F.add(F.mul(a1, x), a3);
      const std::uint32_t B = F.add(F.mul(F.add(F.mul(F.add(x, a2), x), a4), x), a6);
      if (A == 0)
        n += 1;
      else if (F.trace(F.div(B, F.mul(A, A))) == 0)
        n += 2;
    }
    return n;
  }
  const std::uint32_t four = F.from_int_raw(4);
  for (std::uint32_t x = 0; x < Q; ++x) {
    const std::uint32_t A = F.add(F.mul(a1, x), a3);
    const std::uint32_t B = F.add(F.mul(F.add(F.mul(F.add(x, a2), x), a4), x), a6);
    const std::uint32_t D = F.add(F.mul(A, A), F.mul(four, B));
    if (D == 0)
      n += 1;
    else if (F.is_square(D))
      n += 2;
  }
  return n;
}

namespace {

// Solver for z^2 + z = c over F_{2^e}: Gaussian elimination on the F_2-linear map.
struct ArtinSchreier {
  std::uint32_t e = 0;
  std::vector<std::uint32_t> rows;  // reduced row echelon basis of the image with preimages
  std::vector<std::uint32_t> pre;
  std::vector<int> pivot;

  explicit ArtinSchreier(Fq F) : e(F.e()) {
    for (std::uint32_t i = 0; i < e; ++i) {
      std::uint32_t z = 1u << i;
      std::uint32_t img = F.add(F.mul(z, z), z), src = z;
      for (std::size_t j = 0; j < rows.size(); ++j)
        if (img >> pivot[j] & 1u) {
          img ^= rows[j];
          src ^= pre[j];
        }
      if (!img) continue;
      int pv = 31 - __builtin_clz(img);
      for (std::size_t j = 0; j < rows.size(); ++j)
        if (rows[j] >> pv & 1u) {
          rows[j] ^= img;
          pre[j] ^= src;
        }
      rows.push_back(img);
      pre.push_back(src);
      pivot.push_back(pv);
    }
  }
  std::optional<std::uint32_t> solve(std::uint32_t c) const {
    std::uint32_t z = 0;
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (c >> pivot[j] & 1u) {
        c ^= rows[j];
        z ^= pre[j];
      }
    if (c) return std::nullopt;
    return z;
  }
};

const ArtinSchreier& artin_schreier(Fq F) {
  static std::mutex mu;
  static std::map<const void*, std::unique_ptr<ArtinSchreier>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[F.raw()];
  if (!slot) slot = std::make_unique<ArtinSchreier>(F);
  return *slot;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::uint64_t count_points_fast(Fq F, const std::array<std::uint32_t, 5>& a) {
  const std::uint64_t Q = F.q();
  if (Q <= 2048) return count_points_exhaustive(F, a);
  const auto [a1, a2, a3, a4, a6] = a;
  const GroupLaw<TableOps> G(TableOps{F}, a);
  using Pt = Point<std::uint32_t>;

  const std::uint64_t w = isqrt(4 * Q);  // floor(2 sqrt Q)
  const std::uint64_t lo = Q + 1 - w, width = 2 * w;
  const std::uint64_t s = isqrt(width) + 1;

  std::uint64_t seed = 0x9e3779b97f4a7c15ull ^ Q;
  for (auto c : a) seed = seed * 1000003u + c;
  std::mt19937_64 rng(seed);
  const bool char2 = F.p() == 2;
  const ArtinSchreier* as = char2 ? &artin_schreier(F) : nullptr;
  const std::uint32_t four = F.from_int_raw(4), two_inv = char2 ? 0 : F.inv(F.from_int_raw(2));

  auto random_point = [&]() -> Pt {
    while (true) {
      const auto x = static_cast<std::uint32_t>(rng() % Q);
      const std::uint32_t A = F.add(F.mul(a1, x), a3);
      const std::uint32_t B = F.add(F.mul(F.add(F.mul(F.add(x, a2), x), a4), x), a6);
      if (char2) {
        if (A == 0) return Pt::affine(x, F.pth_root(B));
        auto z = as->solve(F.div(B, F.mul(A, A)));
        if (z) return Pt::affine(x, F.mul(*z, A));
      } else {
        const std::uint32_t D = F.add(F.mul(A, A), F.mul(four, B));
        if (F.is_square(D)) return Pt::affine(x, F.mul(F.sub(F.sqrt(D), A), two_inv));
      }
    }
  };
  auto key = [](const Pt& P) -> std::uint64_t { return P.inf ? ~0ull : (static_cast<std::uint64_t>(P.x) << 32 | P.y); };

  std::vector<std::uint64_t> cands;
  for (int attempt = 0; attempt < 10; ++attempt) {
    const Pt P = random_point();
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> baby;
    Pt cur = Pt::origin();
    for (std::uint64_t j = 0; j < s; ++j) {
      baby[key(cur)].push_back(static_cast<std::uint32_t>(j));
      cur = G.add(cur, P);
    }
    const Pt S = cur;  // s P
    Pt giant = G.neg(G.mul(static_cast<long long>(lo), P));
    const Pt negS = G.neg(S);
    std::vector<std::uint64_t> found;
    for (std::uint64_t i = 0; i * s <= width; ++i) {
      if (auto it = baby.find(key(giant)); it != baby.end())
        for (std::uint32_t j : it->second)
          if (i * s + j <= width) found.push_back(lo + i * s + j);
      giant = G.add(giant, negS);
    }
    std::sort(found.begin(), found.end());
    if (attempt == 0) {
      cands = found;
    } else {
      std::vector<std::uint64_t> keep;
      std::set_intersection(cands.begin(), cands.end(), found.begin(), found.end(), std::back_inserter(keep));
      cands.swap(keep);
    }
    if (cands.size() == 1) return cands[0];
    if (cands.empty()) fail(ErrorKind::InvalidArgument, "group order search failed; is the model smooth?");
  }
  return count_points_exhaustive(F, a);
}

long long count_points_good(const Curve& E, const Place& v) {
  const LocalData d = tate_type(E, v, false);
  if (d.type.kind != Kodaira::I0) fail(ErrorKind::InvalidArgument, "bad reduction at " + v.to_string());
  const Place cp = chart_place(v);
  auto table = cp.table_field();
  if (!table) fail(ErrorKind::CapExceeded, "residue field at " + v.to_string() + " exceeds the cap");
  const std::uint64_t n = count_points_exhaustive(*table, reduce_model(d.model, cp, *table));
  return static_cast<long long>(table->q()) + 1 - static_cast<long long>(n);
}

TorsionBound torsion_bound(const Curve& E, std::size_t max_place_deg) {
  const BadFibers bf = bad_fibers(E);
  TorsionBound tb;
  const std::uint32_t p = E.field().p();
  for (std::size_t n = 1; n <= max_place_deg && tb.used.size() < 2; ++n) {
    std::vector<Place> layer;
    if (n == 1) layer.push_back(Place::infinity(E.field()));
    auto rest = places_of_degree(E.field(), n);
    layer.insert(layer.end(), rest.begin(), rest.end());
    for (const Place& v : layer) {
      if (tb.used.size() == 2) break;
      std::uint64_t count;
      if (v.is_infinity()) {
        if (bf.infinity.type.kind != Kodaira::I0) continue;
        count = E.field().q() + 1 - bf.infinity.a_v;
      } else {
        if ((bf.global.delta % v.poly()).is_zero()) continue;
        const Fq table = *v.table_field();
        count = count_points_fast(table, reduce_model(bf.global.model.coeffs(), v, table));
      }
      tb.used.emplace_back(v, count);
    }
  }
  if (tb.used.size() < 2) fail(ErrorKind::CapExceeded, "fewer than two good places within the place cap");
  tb.full = std::gcd(tb.used[0].second, tb.used[1].second);
  tb.bound = tb.full;
  while (tb.bound % p == 0) tb.bound /= p;
  return tb;
}

// ---------------------------------------------------------------- classify

Classification classify(const Curve& E) {
  Classification c;
  const Invariants I = invariants(E);
  c.isotrivial = I.j->is_constant();
  const BadFibers bf = bad_fibers(E);
  const long long total = static_cast<long long>(bf.global.delta.degree().value()) + bf.infinity.vdelta_min;
  if (total % 12 != 0) fail(ErrorKind::InvalidArgument, "minimal discriminant degree is not divisible by 12");
  c.height = static_cast<std::size_t>(total / 12);
  if (c.height == 0 && c.isotrivial) {
    const Curve& M = bf.global.model;
    bool constant = M.all_constant();
    if (!constant && E.field().p() > 3) {
      const Invariants J = invariants(M);
      constant = J.c4.is_constant() && J.c6.is_constant();
    }
    c.constant = constant;
  }
  return c;
}

}  // namespace ffec
