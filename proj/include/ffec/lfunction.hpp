#pragma once

#include <vector>

#include "ffec/local.hpp"

namespace ffec {

/// Integer polynomial, lowest degree first.
using IntPoly = std::vector<BigInt>;

/// L(E, T) as an integer polynomial with constant term 1.
struct LPoly {
  IntPoly coeffs;
  std::uint64_t q = 0;
  std::size_t N = 0;
};

/// 1 - a T^k + q_v T^{2k} (good) or 1 - a T^k (bad), k = deg v.
IntPoly euler_factor(const LocalData& d);
IntPoly euler_factor(long long a_v, std::uint64_t qv, std::size_t k, bool good);

struct LOptions {
  std::size_t max_place_deg = 0;  // 0: N + slack
  std::size_t slack = 4;
  unsigned threads = 1;
};

/// Product of the Euler factors over all places of degree <= D, mod T^{order+1}.
IntPoly euler_product_series(const Curve& E, const BadFibers& bf, std::size_t D, std::size_t order, unsigned threads = 1);

/// Truncated power series inverse mod T^{order+1} (constant term +-1).
IntPoly series_inverse(const IntPoly& f, std::size_t order);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_trim(IntPoly a);

/// L-polynomial of a non-constant curve. Throws DegreeMismatch if the
/// series does not terminate at degree N = deg n - 4.
LPoly l_polynomial(const Curve& E, const LOptions& opts = {});
LPoly l_polynomial(const Curve& E, const BadFibers& bf, const LOptions& opts = {});
/// L from places of degree <= ceil(N/2) (or opts.max_place_deg if larger),
/// completed by the functional equation. The sign is the one consistent with
/// the computed coefficients and the Riemann hypothesis; throws Inconclusive
/// if both signs survive.
LPoly l_polynomial_half(const Curve& E, const BadFibers& bf, const LOptions& opts = {});

/// Closed form for a constant curve over F_q(t): L = 1 / denominator.
struct ConstantL {
  IntPoly denominator;  // (1 - aT + qT^2)(1 - qaT + q^3T^2)
};
ConstantL constant_l(long long a, std::uint64_t q);

/// Sign of the functional equation; throws DegreeMismatch if violated.
int check_functional_equation(const LPoly& L);
/// Same sign computed from T^N q^N L(1/(q^2 T)) = eps L(T).
int functional_equation_sign_reversed(const LPoly& L);
/// Maximum of | |z| - 1 | over roots z of L(z/q) (after removing exact factors).
double rh_deviation(const LPoly& L);
bool check_rh(const LPoly& L, double tol = 1e-9);
/// Multiplicity of (1 - qT).
int analytic_rank(const LPoly& L);

/// L over F_{q^m}(t) from L over F_q(t): inverse roots raised to the m-th power.
LPoly extend_l(const LPoly& L, unsigned m);

/// Z(surface, T) as a product of integer polynomials with exponents.
struct SurfaceZeta {
  std::vector<std::pair<IntPoly, int>> factors;  // positive exponent: numerator
  /// Order of vanishing at T = 1/q (negative for a pole).
  int ord_at_inv_q() const;
};
SurfaceZeta surface_zeta(const LPoly& L, const std::vector<LocalData>& bad);
/// Sum of (f_v - 1) over bad places.
int component_excess(const std::vector<LocalData>& bad);

}  // namespace ffec
