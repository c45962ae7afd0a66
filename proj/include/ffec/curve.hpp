#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "ffec/ratfunc.hpp"

namespace ffec {

/// Coordinate change (x, y) = (u^2 x' + r, u^3 y' + s u^2 x' + w).
struct Transform {
  RatFunc u, r, s, w;

  static Transform identity(Fq f);
  static Transform scaling(const RatFunc& u);
  /// The composite "apply *this, then next" (next acts on the primed model).
  Transform then(const Transform& next) const;
};

/// Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q(t).
class Curve {
 public:
  Curve() = default;
  /// Throws NotElliptic if the discriminant vanishes.
  Curve(Fq f, std::array<RatFunc, 5> a);
  static Curve from_ints(Fq f, std::array<long long, 5> a);
  static Curve parse(Fq f, const std::array<std::string, 5>& a);

  Fq field() const { return f_; }
  const RatFunc& a1() const { return a_[0]; }
  const RatFunc& a2() const { return a_[1]; }
  const RatFunc& a3() const { return a_[2]; }
  const RatFunc& a4() const { return a_[3]; }
  const RatFunc& a6() const { return a_[4]; }
  const std::array<RatFunc, 5>& coeffs() const { return a_; }
  bool all_constant() const;
  bool all_polynomial() const;

  /// Name of the function-field variable used when printing ('t' or 'u').
  char var() const { return var_; }
  Curve with_var(char v) const {
    Curve c = *this;
    c.var_ = v;
    return c;
  }

  friend bool operator==(const Curve& x, const Curve& y) { return x.f_ == y.f_ && x.a_ == y.a_; }

 private:
  Fq f_;
  std::array<RatFunc, 5> a_;
  char var_ = 't';
};

struct Invariants {
  RatFunc b2, b4, b6, b8, c4, c6, delta;
  std::optional<RatFunc> j;
};

/// Invariants of the coefficient tuple (does not require smoothness).
Invariants invariants(Fq f, const std::array<RatFunc, 5>& a);
Invariants invariants(const Curve& E);

Curve apply_transform(const Curve& E, const Transform& tau);
std::array<RatFunc, 5> apply_transform(const std::array<RatFunc, 5>& a, const Transform& tau);

/// a_i -> a_i^p
Curve frobenius_twist(const Curve& E);

/// Hasse invariant of the standard differential; for p > 2 computed on the
/// model with a1 = a3 = 0 obtained by completing the square.
RatFunc hasse_invariant(const Curve& E);

struct Classification {
  bool isotrivial = false;
  bool constant = false;
  std::size_t height = 0;
};
/// j constant, height of the minimal model, constant-model detection.
Classification classify(const Curve& E);

/// Whether r is a k-th power in F_q(t)^x (r nonzero).
bool is_kth_power(const RatFunc& r, std::uint64_t k);

/// j in K^p and A a (p-1)st power; throws Hypothesis for isotrivial input.
bool has_p_torsion(const Curve& E);

/// Substitute t = u^d; requires p not dividing d.
Curve base_change_pow(const Curve& E, std::size_t d);
/// Re-embed coefficients into F_{q^m}.
Curve extend_constants(const Curve& E, std::uint32_t m);

/// Curve file: key = value lines with keys p, e, a1, a2, a3, a4, a6.
std::string format_curve(const Curve& E);
Curve parse_curve(std::string_view text);

}  // namespace ffec
