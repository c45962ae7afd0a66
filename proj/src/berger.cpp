#include "ffec/berger.hpp"

#include <numeric>
#include <set>
#include <sstream>

#include "ffec/error.hpp"
#include "ffec/local.hpp"

namespace ffec {

namespace {

int total(const std::vector<std::pair<std::string, int>>& v) {
  int s = 0;
  for (const auto& e : v) s += e.second;
  return s;
}

void check_divisor(const Divisor& D, const std::string& name, std::uint32_t p, std::vector<std::string>& out) {
  if (D.zeros.empty() || D.poles.empty()) out.push_back(name + " needs at least one zero and one pole");
  std::set<std::string> labels;
  int g = 0;
  for (const auto* side : {&D.zeros, &D.poles})
    for (const auto& [label, a] : *side) {
      if (a <= 0) out.push_back(name + ": multiplicity at " + label + " must be positive");
      if (!labels.insert(label).second) out.push_back(name + ": point " + label + " is listed twice");
      if (p && a % static_cast<int>(p) == 0) out.push_back(name + ": multiplicity at " + label + " is divisible by p");
      g = std::gcd(g, a);
    }
  if (total(D.zeros) != total(D.poles)) out.push_back(name + ": zeros and poles have different total multiplicity");
  if (g != 1) out.push_back(name + ": multiplicities have a common factor");
}

std::vector<std::pair<std::string, int>> parse_side(const std::string& s, std::size_t line) {
  std::vector<std::pair<std::string, int>> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    const auto at = tok.find('@');
    if (at == std::string::npos || at == 0 || at + 1 == tok.size())
      fail(ErrorKind::Parse, "line " + std::to_string(line) + ": expected multiplicity@point, got '" + tok + "'");
    int a = 0;
    try {
      std::size_t used = 0;
      a = std::stoi(tok.substr(0, at), &used);
      if (used != at) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "line " + std::to_string(line) + ": bad multiplicity in '" + tok + "'");
    }
    out.emplace_back(tok.substr(at + 1), a);
  }
  return out;
}

std::string format_side(const std::vector<std::pair<std::string, int>>& v) {
  std::string s;
  for (const auto& [label, a] : v) s += (s.empty() ? "" : " ") + std::to_string(a) + "@" + label;
  return s;
}

Divisor simple(std::initializer_list<std::pair<const char*, int>> zeros, std::initializer_list<std::pair<const char*, int>> poles) {
  Divisor d;
  for (const auto& [l, a] : zeros) d.zeros.emplace_back(l, a);
  for (const auto& [l, a] : poles) d.poles.emplace_back(l, a);
  return d;
}

}  // namespace

int BergerData::m() const { return total(f.zeros); }
int BergerData::n() const { return total(g.zeros); }

std::vector<std::string> BergerData::violations(std::uint32_t p) const {
  std::vector<std::string> out;
  check_divisor(f, "f", p, out);
  check_divisor(g, "g", p, out);
  return out;
}

void BergerData::validate(std::uint32_t p) const {
  const auto v = violations(p);
  if (v.empty()) return;
  std::string msg = "Berger data hypotheses fail:";
  for (const auto& s : v) msg += " " + s + ";";
  fail(ErrorKind::Hypothesis, msg);
}

BergerData parse_berger(const std::string& text) {
  BergerData d;
  bool have_f = false, have_g = false;
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail(ErrorKind::Parse, "line " + std::to_string(no) + ": expected 'f:' or 'g:'");
    std::string key = line.substr(0, colon);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    const std::string rest = line.substr(colon + 1);
    const auto slash = rest.find('/');
    if (slash == std::string::npos) fail(ErrorKind::Parse, "line " + std::to_string(no) + ": expected 'zeros / poles'");
    Divisor D{parse_side(rest.substr(0, slash), no), parse_side(rest.substr(slash + 1), no)};
    if (key == "f" && !have_f) {
      d.f = std::move(D);
      have_f = true;
    } else if (key == "g" && !have_g) {
      d.g = std::move(D);
      have_g = true;
    } else {
      fail(ErrorKind::Parse, "line " + std::to_string(no) + ": unexpected or repeated key '" + key + "'");
    }
  }
  if (!have_f || !have_g) fail(ErrorKind::Parse, "Berger data needs both 'f:' and 'g:' lines");
  return d;
}

std::string format_berger(const BergerData& d) {
  return "f: " + format_side(d.f.zeros) + " / " + format_side(d.f.poles) + "\ng: " + format_side(d.g.zeros) + " / " +
         format_side(d.g.poles) + "\n";
}

long long delta(long long a, long long b) {
  if (a < 1 || b < 1) fail(ErrorKind::InvalidArgument, "delta needs positive arguments");
  return (a * b - a - b + std::gcd(a, b)) / 2;
}

long long genus(const BergerData& d, std::uint32_t p) {
  d.validate(p);
  long long g = static_cast<long long>(d.m() - 1) * (d.n() - 1);
  for (const auto& [pl, a] : d.f.zeros)
    for (const auto& [ql, b] : d.g.zeros) g -= delta(a, b);
  for (const auto& [pl, a] : d.f.poles)
    for (const auto& [ql, b] : d.g.poles) g -= delta(a, b);
  return g;
}

long long c2(const BergerData& d) {
  auto s = [](std::size_t x) { return static_cast<long long>(x) - 1; };
  return s(d.k()) * s(d.l()) + s(d.k_prime()) * s(d.l_prime());
}

long long c1(const Curve& E) {
  const BadFibers bf = bad_fibers(E);
  const Poly t = Poly::variable(E.field());
  long long c = 0;
  for (const LocalData& ld : bf.local) {
    if (ld.place.is_infinity() || ld.place.poly() == t) continue;
    c += static_cast<long long>(ld.place.deg()) * (ld.type.components() - 1);
  }
  return c;
}

std::vector<std::string> catalog_names() {
  return {"E7", "E8", "E9", "split-family", "legendre", "quadratic-a", "berger-a", "first-example", "second-example"};
}

CatalogEntry berger_catalog(const std::string& name, std::uint32_t p, long long param) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "p must be prime");
  const Fq F = Fq::create(p, 1);
  auto P = [&](std::initializer_list<long long> c) { return RatFunc(Poly::from_ints(F, c)); };
  const RatFunc z(F), one = RatFunc::from_int(F, 1);
  CatalogEntry e;
  e.name = name;
  if (name == "E7") {
    e.curve = Curve(F, {one, z, P({0, 1}), z, z});
  } else if (name == "E8") {
    e.curve = Curve(F, {one, z, z, P({0, 1}), z});
  } else if (name == "E9") {
    e.curve = Curve(F, {one, z, z, z, P({0, 1})});
  } else if (name == "split-family") {
    // y^2 = x (x + 1) (x + t^d)
    if (param < 1) fail(ErrorKind::InvalidArgument, "split-family needs d >= 1");
    const RatFunc td = RatFunc::variable(F).pow(param);
    e.curve = Curve(F, {z, one + td, z, td, z});
  } else if (name == "legendre") {
    // y^2 + xy + t^d y = x^3 + t^d x^2
    if (param < 1) fail(ErrorKind::InvalidArgument, "legendre needs d >= 1");
    const RatFunc td = RatFunc::variable(F).pow(param);
    e.curve = Curve(F, {one, td, td, z, z});
    // f = x(x - 1), g = y^2/(1 - y), in the tower t -> t^d
    e.data = BergerData{simple({{"0", 1}, {"1", 1}}, {{"inf", 2}}), simple({{"0", 2}}, {{"1", 1}, {"inf", 1}})};
  } else if (name == "quadratic-a") {
    // f = x(x - a)/(x - 1), g = y(y - 1): y^2 + txy - ty = x^3 - tax^2 + t^2 a x
    const long long a = ((param % p) + p) % p;
    if (a == 0 || a == 1) fail(ErrorKind::InvalidArgument, "quadratic-a needs a != 0, 1 in F_p");
    e.curve = Curve(F, {P({0, 1}), P({0, -a}), P({0, -1}), P({0, 0, a}), z});
    e.data = BergerData{simple({{"0", 1}, {"a", 1}}, {{"1", 1}, {"inf", 1}}), simple({{"0", 1}, {"1", 1}}, {{"inf", 2}})};
  } else if (name == "berger-a") {
    const long long a = ((param % p) + p) % p;
    if (a == 0 || a == 1 || a == 2 % static_cast<long long>(p)) fail(ErrorKind::InvalidArgument, "berger-a needs a != 0, 1, 2 in F_p");
    e.curve = Curve(F, {P({-a, a}), P({0, 2 * a + 1}), P({0, -a, a}), P({0, 0, a * (a + 2)}), P({0, 0, 0, a * a})});
    // f = x(x - a)/(x - 1), g = y(y - a)/(y - 1)
    const Divisor q = simple({{"0", 1}, {"a", 1}}, {{"1", 1}, {"inf", 1}});
    e.data = BergerData{q, q};
    const long long a2 = a * a;
    RatFunc D = RatFunc::from_int(F, a2 * ipow(static_cast<std::uint64_t>(a - 1 + p) % p, 4) % p);
    D *= RatFunc::variable(F).pow(4) * P({-1, 1}).pow(2) * P({a2, -(2 * a2 - 16 * a + 16), a2});
    e.delta_formula = D;
  } else if (name == "first-example") {
    e.curve = Curve(F, {one, P({0, 1}), P({0, 1}), z, z});
    // f = x(x - 1), g = y^2/(1 - y)
    e.data = BergerData{simple({{"0", 1}, {"1", 1}}, {{"inf", 2}}), simple({{"0", 2}}, {{"1", 1}, {"inf", 1}})};
  } else if (name == "second-example") {
    if (p == 2) fail(ErrorKind::InvalidArgument, "second-example needs p > 2");
    e.curve = Curve(F, {P({0, 2}), z, z, P({0, 0, -1}), z});
    // f = x/(x^2 - 1), g = y(y - 1)
    e.data = BergerData{simple({{"0", 1}, {"inf", 1}}, {{"1", 1}, {"-1", 1}}), simple({{"0", 1}, {"1", 1}}, {{"inf", 2}})};
  } else {
    std::string known;
    for (const auto& n : catalog_names()) known += " " + n;
    fail(ErrorKind::InvalidArgument, "unknown catalog curve '" + name + "'; known:" + known);
  }
  return e;
}

}  // namespace ffec
