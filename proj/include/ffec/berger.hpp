#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffec/curve.hpp"

namespace ffec {

/// Zeros and poles of a rational function on P^1 as (label, multiplicity).
struct Divisor {
  std::vector<std::pair<std::string, int>> zeros, poles;
};

/// Data of the curve f(x) = t g(y) in P^1 x P^1.
struct BergerData {
  Divisor f, g;

  int m() const;  // degree of f
  int n() const;  // degree of g
  std::size_t k() const { return f.zeros.size(); }
  std::size_t k_prime() const { return f.poles.size(); }
  std::size_t l() const { return g.zeros.size(); }
  std::size_t l_prime() const { return g.poles.size(); }

  /// Violated hypotheses in characteristic p (0 skips the prime-to-p test).
  std::vector<std::string> violations(std::uint32_t p = 0) const;
  /// Throws Hypothesis on any violation.
  void validate(std::uint32_t p = 0) const;
  /// Same data with the roles of f and g exchanged.
  BergerData swapped() const { return {g, f}; }
};

/// Two lines "f: a@P ... / a'@P' ..." and "g: ...".
BergerData parse_berger(const std::string& text);
std::string format_berger(const BergerData& d);

/// (ab - a - b + gcd(a, b)) / 2
long long delta(long long a, long long b);
long long genus(const BergerData& d, std::uint32_t p = 0);
/// (k - 1)(l - 1) + (k' - 1)(l' - 1)
long long c2(const BergerData& d);
/// Sum over bad places v other than t = 0 and infinity of deg(v)(m_v - 1),
/// m_v the number of geometric fiber components.
long long c1(const Curve& E);

struct CatalogEntry {
  std::string name;
  Curve curve;
  std::optional<BergerData> data;
  /// Closed-form discriminant when one is known.
  std::optional<RatFunc> delta_formula;
};
/// Curves over F_p(t) by name; see catalog_names(). The integer parameter is
/// d for "split-family" and "legendre", a for "quadratic-a" and "berger-a".
CatalogEntry berger_catalog(const std::string& name, std::uint32_t p, long long param = 0);
std::vector<std::string> catalog_names();

}  // namespace ffec
