#pragma once

#include <optional>
#include <vector>

#include "ffec/group_law.hpp"
#include "ffec/linalg.hpp"
#include "ffec/local.hpp"

namespace ffec {

/// max(deg num, deg den) of x(P); throws for the origin.
std::size_t naive_height(const RatPoint& P);

struct HeightValue {
  Rational value;        // exact when `exact`, else h(2^n P)/4^n
  double error = 0;      // |h(2^n P)/4^n - h(2^{n-1} P)/4^{n-1}|
  int iterations = 0;
  bool exact = false;    // the doubling defect became periodic
  bool torsion = false;  // 2^k P = O was hit
  std::vector<std::size_t> naive;  // h(2^k P), k = 0..iterations
  double approx() const { return static_cast<double>(value); }
};

struct HeightOptions {
  int n_iter = 6;
  std::size_t degree_budget = 1u << 20;
};

/// Doubling limit of the naive height. Periodicity of the defect
/// h(2^k P) - 4^k h^(P) is detected for periods up to 4 and used to return the
/// exact limit.
HeightValue canonical_height(const Curve& E, const RatPoint& P, const HeightOptions& opts = {});
/// (h^(P+Q) - h^(P) - h^(Q)) / 2
HeightValue height_pairing(const Curve& E, const RatPoint& P, const RatPoint& Q, const HeightOptions& opts = {});

/// Best rational approximation with denominator <= max_den.
Rational snap_rational(double x, std::uint64_t max_den);

struct GramResult {
  RMatrix gram;                             // snapped entries
  std::vector<std::vector<double>> approx;  // raw estimates
  std::size_t rank = 0;
  RMatrix kernel;                           // basis vectors as columns
  double max_snap_error = 0;
};
/// Gram matrix of the height pairing snapped to denominators <= max_den;
/// throws Inconclusive if an entry is further than tol from its snap.
GramResult gram_matrix(const Curve& E, const std::vector<RatPoint>& pts, std::uint64_t max_den, double tol = 1e-3, const HeightOptions& opts = {});
std::size_t gram_rank(const Curve& E, const std::vector<RatPoint>& pts, std::uint64_t max_den, double tol = 1e-3, const HeightOptions& opts = {});

struct TorsionVerdict {
  bool torsion = false;
  bool by_doubling = false;   // 2^k P = O
  bool height_small = false;  // canonical height below tol
  bool multiple_ok = false;   // m P = O for m = torsion bound
  std::uint64_t multiple = 0;
};
/// Torsion test combining the height signal with m P = O; throws
/// Inconclusive when the height is small but the multiple check fails.
TorsionVerdict torsion_check(const Curve& E, const RatPoint& P, double tol = 1e-6, const HeightOptions& opts = {});
bool is_torsion(const Curve& E, const RatPoint& P, double tol = 1e-6, const HeightOptions& opts = {});

/// y^2 + xy + u^d y = x^3 + u^d x^2 over F_{q^2}(u), d = q + 1, with the points
/// P_i = P(zeta^i u).
struct PointFamily {
  Curve curve;
  std::size_t d = 0;
  std::uint64_t q = 0;
  FqElem zeta;
  std::vector<RatPoint> points;
};
PointFamily legendre_family(std::uint32_t p, std::uint32_t f);

RatPoint sum_points(const Curve& E, const std::vector<RatPoint>& pts, const std::vector<long long>& coeffs);

}  // namespace ffec
