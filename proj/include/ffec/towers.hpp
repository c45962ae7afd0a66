#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ffec/lfunction.hpp"
#include "ffec/linalg.hpp"

namespace ffec {

/// Orbits of j -> q j on Z/dZ, each sorted, listed by least element.
struct OrbitDecomposition {
  std::uint64_t d = 0, q = 0;
  std::vector<std::vector<std::uint64_t>> orbits;
  std::vector<std::size_t> sizes;
};
OrbitDecomposition orbit_decomposition(std::uint64_t d, std::uint64_t q);

/// V = W_0 + ... + W_{a-1} with phi(W_i) = W_{i+1} and a phi-invariant
/// symmetric pairing; coordinates are block-major.
struct BlockSystem {
  std::size_t a = 0;
  std::vector<std::size_t> dims;
  RMatrix phi;
  RMatrix pairing;

  std::size_t offset(std::size_t i) const;
  std::size_t dim() const;
};

struct LemmaCheck {
  std::vector<std::string> violations;  // hypotheses that fail
  RPoly det;                            // det(1 - phi T)
  bool divisible = false;               // (1 - T^a) | det
  bool hypotheses_hold() const { return violations.empty(); }
};
/// Checks the structural invariants and hypotheses, and tests 1 - T^a | det(1 - phi T).
LemmaCheck lemma_la_check(const BlockSystem& B);
/// The divisibility verdict alone; throws Hypothesis listing any violated hypotheses.
bool lemma_la_verify(const BlockSystem& B);

/// Random instance with a blocks of dimension n: block-cyclic phi whose second
/// half is solved from the invariance constraint. Hypotheses hold iff a is
/// even and n is odd.
BlockSystem random_block_system(std::size_t a, std::size_t n, std::mt19937_64& rng);

struct TowerL {
  LPoly L;
  std::size_t d = 1;
  bool over_kd = false;
  unsigned m = 1;          // constant field degree over F_q
  std::string route;       // "direct" or "constant-extension"
  std::size_t conductor_deg = 0;
};
/// L of E over F_d = F_q(t^{1/d}) or K_d = F_q(mu_d)(t^{1/d}).
TowerL tower_l_detail(const Curve& E, std::size_t d, bool use_mu_d, const LOptions& opts = {});
LPoly tower_l(const Curve& E, std::size_t d, bool use_mu_d, const LOptions& opts = {});

/// Multiplicities of the factors prod_{zeta primitive k-th root} (1 - zeta q T)
/// in L, and the degree left over.
struct CyclotomicPart {
  std::vector<std::pair<std::size_t, int>> factors;  // (k, multiplicity)
  std::size_t residual_degree = 0;
};
CyclotomicPart cyclotomic_part(const LPoly& L);

struct ScanRow {
  std::size_t d = 0, n = 0;
  std::string field;  // "F_d" or "K_d"
  std::size_t N = 0;
  int rank = 0;
  double c_obs = 0;
  std::string route;
};
struct ScanResult {
  std::vector<ScanRow> rows;
  std::optional<std::string> warning;  // hypothesis not met
  std::optional<std::string> stopped;  // a later d was infeasible
  double c_obs = 0;
};
/// d = q^n + 1 for n = 1..n_max; ranks over F_d and K_d and the observed constant.
ScanResult rank_growth_scan(const Curve& E, std::size_t n_max, const LOptions& opts = {});

}  // namespace ffec
