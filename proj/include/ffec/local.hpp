#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffec/curve.hpp"
#include "ffec/place.hpp"

namespace ffec {

enum class Kodaira { I0, In, II, III, IV, I0s, Ins, IVs, IIIs, IIs };

struct KodairaType {
  Kodaira kind = Kodaira::I0;
  int n = 0;  // for In / Ins

  /// "I0", "I6", "II", "I0*", "I3*", "IV*", ...
  std::string name() const;
  static KodairaType parse(const std::string& s);
  /// Number of geometric components of the special fiber.
  int components() const;
  bool additive() const { return kind != Kodaira::I0 && kind != Kodaira::In; }
  friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

/// Exponents of the fiber zeta function
/// (1-T)^a (1+T)^b / ((1-qT)^f (1+qT)^g (1+qT+q^2T^2)^h).
struct FiberRow {
  int a = 0, b = 0, f = 0, g = 0, h = 0;
  friend bool operator==(const FiberRow&, const FiberRow&) = default;
};

/// Table row for a reduction type. For I0*, `rational_ends` is the number of
/// Frobenius-fixed non-identity far components (3, 1 or 0); split means 3.
FiberRow fiber_row(const KodairaType& t, bool split, int rational_ends = -1);
/// Point count over F_{q^m} of the fiber with the given row.
BigInt fiber_counts(const FiberRow& row, std::uint64_t qv, unsigned m);
BigInt fiber_counts(const KodairaType& t, bool split, std::uint64_t qv, unsigned m);

struct LocalData {
  Place place;
  KodairaType type;
  int n_v = 0;           // conductor exponent
  int f_v = 1;           // Frobenius orbits on fiber components
  std::optional<bool> split;
  int a_v = 0;
  int vdelta_min = 0;
  FiberRow row;
  /// Model in the local chart (variable s = 1/t at infinity) and the
  /// transform to it from the chart model.
  std::array<RatFunc, 5> model;
  Transform transform_used;

  int tame() const { return type.kind == Kodaira::I0 ? 0 : (type.kind == Kodaira::In ? 1 : 2); }
};

/// Coefficients of E written in the local chart of v: unchanged for finite
/// places, t -> 1/s for infinity.
std::array<RatFunc, 5> chart_coeffs(const Curve& E, const Place& v);

/// Minimal model at v in its chart plus the transform from the chart model.
std::pair<Curve, Transform> minimal_model_at(const Curve& E, const Place& v);

/// Tate's algorithm at v. Good places get a_v by point counting when
/// `count_good` is set (subject to the residue cap).
LocalData tate_type(const Curve& E, const Place& v, bool count_good = true);

/// Polynomial model minimal at every finite place.
struct GlobalModel {
  Curve model;
  Transform tau;            // from the input model
  Poly delta;               // discriminant of the minimal model
  std::vector<Place> bad;   // finite bad places, sorted
};
GlobalModel global_minimal_model(const Curve& E);

struct Conductor {
  std::vector<std::pair<Place, int>> entries;
  std::size_t deg = 0;
};

/// All bad-place local data (finite bad places then infinity if bad),
/// sorted by the canonical place order.
struct BadFibers {
  GlobalModel global;
  std::vector<LocalData> local;  // bad places only, canonical order
  LocalData infinity;            // always computed
  Conductor conductor;
};
BadFibers bad_fibers(const Curve& E);

Conductor conductor(const Curve& E);
/// deg n minus the tame parts at t = 0 and t = infinity.
long long nprime_deg(const Curve& E);
long long nprime_deg(const BadFibers& bf);

/// Exhaustive count of #E_v(kappa_v) at a good place (q_v <= kResidueCap).
/// Returns a_v = q_v + 1 - #E_v.
long long count_points_good(const Curve& E, const Place& v);

/// Number of points on y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over the
/// table field F (smooth model).
std::uint64_t count_points_exhaustive(Fq F, const std::array<std::uint32_t, 5>& a);
/// Same count by baby-step giant-step on the group order, falling back to
/// enumeration when the Hasse interval is ambiguous.
std::uint64_t count_points_fast(Fq F, const std::array<std::uint32_t, 5>& a);

/// Reduction of an integral model at a place into its table field.
std::array<std::uint32_t, 5> reduce_model(const std::array<RatFunc, 5>& a, const Place& v, Fq table);

/// Prime-to-p part of gcd(#E_v) over the first two good places, and the full gcd.
struct TorsionBound {
  std::uint64_t bound = 0;  // prime to p
  std::uint64_t full = 0;
  std::vector<std::pair<Place, std::uint64_t>> used;
};
TorsionBound torsion_bound(const Curve& E, std::size_t max_place_deg = 6);

}  // namespace ffec
