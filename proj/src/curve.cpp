#include "ffec/curve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "ffec/error.hpp"
#include "ffec/notation.hpp"

namespace ffec {

Transform Transform::identity(Fq f) { return {RatFunc::from_int(f, 1), RatFunc(f), RatFunc(f), RatFunc(f)}; }

Transform Transform::scaling(const RatFunc& u) {
  const Fq f = u.field();
  return {u, RatFunc(f), RatFunc(f), RatFunc(f)};
}

Transform Transform::then(const Transform& n) const {
  const RatFunc u2 = u * u;
  return {u * n.u, r + u2 * n.r, s + u * n.s, w + u2 * u * n.w + s * u2 * n.r};
}

Curve::Curve(Fq f, std::array<RatFunc, 5> a) : f_(f), a_(std::move(a)) {
  for (auto& c : a_)
    if (!c.field().valid()) c = RatFunc(f);
  if (invariants(f_, a_).delta.is_zero()) fail(ErrorKind::NotElliptic, "not an elliptic curve: discriminant is zero");
}

Curve Curve::from_ints(Fq f, std::array<long long, 5> a) {
  std::array<RatFunc, 5> c;
  for (int i = 0; i < 5; ++i) c[i] = RatFunc::from_int(f, a[i]);
  return Curve(f, c);
}

Curve Curve::parse(Fq f, const std::array<std::string, 5>& a) {
  std::array<RatFunc, 5> c;
  for (int i = 0; i < 5; ++i) c[i] = parse_ratfunc(f, a[i]);
  return Curve(f, c);
}

bool Curve::all_constant() const {
  for (auto& c : a_)
    if (!c.is_constant()) return false;
  return true;
}

bool Curve::all_polynomial() const {
  for (auto& c : a_)
    if (!c.is_polynomial()) return false;
  return true;
}

Invariants invariants(Fq f, const std::array<RatFunc, 5>& a) {
  const auto& [a1, a2, a3, a4, a6] = a;
  auto k = [f](long long v) { return RatFunc::from_int(f, v); };
  Invariants I;
  I.b2 = a1 * a1 + k(4) * a2;
  I.b4 = k(2) * a4 + a1 * a3;
  I.b6 = a3 * a3 + k(4) * a6;
  I.b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  I.c4 = I.b2 * I.b2 - k(24) * I.b4;
  I.c6 = -I.b2 * I.b2 * I.b2 + k(36) * I.b2 * I.b4 - k(216) * I.b6;
  I.delta = -I.b2 * I.b2 * I.b8 - k(8) * I.b4 * I.b4 * I.b4 - k(27) * I.b6 * I.b6 + k(9) * I.b2 * I.b4 * I.b6;
  if (!I.delta.is_zero()) I.j = I.c4 * I.c4 * I.c4 / I.delta;
  return I;
}

Invariants invariants(const Curve& E) { return invariants(E.field(), E.coeffs()); }

std::array<RatFunc, 5> apply_transform(const std::array<RatFunc, 5>& a, const Transform& tau) {
  const auto& [a1, a2, a3, a4, a6] = a;
  const auto& [u, r, s, w] = tau;
  if (u.is_zero()) fail(ErrorKind::InvalidArgument, "transform with u = 0");
  const Fq f = u.field();
  auto k = [f](long long v) { return RatFunc::from_int(f, v); };
  const RatFunc ui = u.inv();
  const RatFunc ui2 = ui * ui, ui3 = ui2 * ui;
  std::array<RatFunc, 5> b;
  b[0] = ui * (a1 + k(2) * s);
  b[1] = ui2 * (a2 - s * a1 + k(3) * r - s * s);
  b[2] = ui3 * (a3 + r * a1 + k(2) * w);
  b[3] = ui2 * ui2 * (a4 - s * a3 + k(2) * r * a2 - (w + r * s) * a1 + k(3) * r * r - k(2) * s * w);
  b[4] = ui3 * ui3 * (a6 + r * a4 + r * r * a2 + r * r * r - w * a3 - w * w - r * w * a1);
  return b;
}

Curve apply_transform(const Curve& E, const Transform& tau) {
  return Curve(E.field(), apply_transform(E.coeffs(), tau)).with_var(E.var());
}

Curve frobenius_twist(const Curve& E) {
  std::array<RatFunc, 5> a;
  for (int i = 0; i < 5; ++i) a[i] = E.coeffs()[i].pow(E.field().p());
  return Curve(E.field(), a).with_var(E.var());
}

RatFunc hasse_invariant(const Curve& E) {
  const Fq f = E.field();
  const std::uint32_t p = f.p();
  if (p == 2) return E.a1();
  // complete the square: y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4
  const Invariants I = invariants(E);
  auto k = [f](long long v) { return RatFunc::from_int(f, v); };
  const std::vector<RatFunc> cubic{I.b6 / k(4), I.b4 / k(2), I.b2 / k(4), k(1)};
  std::vector<RatFunc> acc{k(1)};
  for (std::uint32_t i = 0; i < (p - 1) / 2; ++i) {
    std::vector<RatFunc> nxt(acc.size() + 3, RatFunc(f));
    for (std::size_t x = 0; x < acc.size(); ++x)
      for (std::size_t y = 0; y < 4; ++y) nxt[x + y] += acc[x] * cubic[y];
    acc = std::move(nxt);
  }
  return acc[p - 1];
}

bool is_kth_power(const RatFunc& r, std::uint64_t k) {
  if (r.is_zero()) fail(ErrorKind::InvalidArgument, "power test on zero");
  if (k == 1) return true;
  for (const Poly* side : {&r.num(), &r.den()}) {
    if (side->is_constant()) continue;
    for (const auto& [g, m] : factor(*side).factors)
      if (m % k != 0) return false;
  }
  // leading constant (all factors monic, den monic)
  const Fq f = r.field();
  const std::uint64_t q1 = f.q() - 1;
  const FqElem kappa = r.num().lead();
  return kappa.pow(q1 / std::gcd(q1, k)).is_one();
}

bool has_p_torsion(const Curve& E) {
  const Invariants I = invariants(E);
  if (I.j->is_constant()) fail(ErrorKind::Hypothesis, "curve is isotrivial");
  const std::uint32_t p = E.field().p();
  const RatFunc A = hasse_invariant(E);
  if (A.is_zero()) fail(ErrorKind::Hypothesis, "Hasse invariant vanishes");
  for (const Poly* side : {&I.j->num(), &I.j->den()}) {
    if (side->is_constant()) continue;
    for (const auto& [g, m] : factor(*side).factors)
      if (m % p != 0) return false;
  }
  return is_kth_power(A, p - 1);
}

Curve base_change_pow(const Curve& E, std::size_t d) {
  if (d == 0 || d % E.field().p() == 0) fail(ErrorKind::InvalidArgument, "base change degree must be positive and prime to p");
  std::array<RatFunc, 5> a;
  for (int i = 0; i < 5; ++i) a[i] = E.coeffs()[i].compose_power(d);
  return Curve(E.field(), a).with_var(d == 1 ? E.var() : 'u');
}

Curve extend_constants(const Curve& E, std::uint32_t m) {
  if (m == 0) fail(ErrorKind::InvalidArgument, "extension degree must be positive");
  if (m == 1) return E;
  const Fq big = Fq::create(E.field().p(), E.field().e() * m);
  const Embedding& emb = Embedding::get(E.field(), big);
  std::array<RatFunc, 5> a;
  for (int i = 0; i < 5; ++i) a[i] = E.coeffs()[i].embed(emb);
  return Curve(big, a).with_var(E.var());
}

std::string format_curve(const Curve& E) {
  std::ostringstream os;
  os << "p = " << E.field().p() << "\n";
  os << "e = " << E.field().e() << "\n";
  static const char* names[5] = {"a1", "a2", "a3", "a4", "a6"};
  for (int i = 0; i < 5; ++i) os << names[i] << " = " << format_ratfunc(E.coeffs()[i], E.var()) << "\n";
  return os.str();
}

Curve parse_curve(std::string_view text) {
  struct Line {
    int no;
    std::size_t col;
    std::string value;
  };
  std::map<std::string, Line> kv;
  int no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Parse, "line " + std::to_string(no) + ", column 1: expected key = value");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    static const char* allowed[] = {"p", "e", "a1", "a2", "a3", "a4", "a6"};
    if (std::find(std::begin(allowed), std::end(allowed), key) == std::end(allowed))
      fail(ErrorKind::Parse, "line " + std::to_string(no) + ", column 1: unknown key '" + key + "'");
    if (kv.count(key)) fail(ErrorKind::Parse, "line " + std::to_string(no) + ", column 1: duplicate key '" + key + "'");
    kv[key] = {no, eq + 2, trim(line.substr(eq + 1))};
  }
  auto number = [&](const char* key, long long dflt) -> long long {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (dflt < 0) fail(ErrorKind::Parse, std::string("missing key '") + key + "'");
      return dflt;
    }
    const std::string& v = it->second.value;
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 9)
      fail(ErrorKind::Parse, "line " + std::to_string(it->second.no) + ", column " + std::to_string(it->second.col) + ": expected a positive integer");
    return std::stoll(v);
  };
  const long long p = number("p", -1), e = number("e", 1);
  if (e < 1) fail(ErrorKind::Parse, "extension degree must be positive");
  const Fq f = Fq::create(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(e));
  std::array<RatFunc, 5> a;
  static const char* names[5] = {"a1", "a2", "a3", "a4", "a6"};
  char var = 't';
  for (int i = 0; i < 5; ++i) {
    auto it = kv.find(names[i]);
    if (it == kv.end()) {
      a[i] = RatFunc(f);
      continue;
    }
    try {
      a[i] = parse_ratfunc(f, it->second.value);
    } catch (const Error& err) {
      fail(ErrorKind::Parse, "line " + std::to_string(it->second.no) + ": " + err.what());
    }
    if (it->second.value.find('u') != std::string::npos) var = 'u';
  }
  return Curve(f, a).with_var(var);
}

}  // namespace ffec
