#include "ffec/towers.hpp"

#include <algorithm>
#include <numeric>

#include "ffec/error.hpp"

namespace ffec {

OrbitDecomposition orbit_decomposition(std::uint64_t d, std::uint64_t q) {
  if (d == 0) fail(ErrorKind::InvalidArgument, "d must be positive");
  if (std::gcd(d, q) != 1) fail(ErrorKind::InvalidArgument, "gcd(d, q) must be 1");
  OrbitDecomposition o;
  o.d = d;
  o.q = q;
  std::vector<char> seen(d, 0);
  for (std::uint64_t j = 0; j < d; ++j) {
    if (seen[j]) continue;
    std::vector<std::uint64_t> orb;
    std::uint64_t x = j;
    do {
      seen[x] = 1;
      orb.push_back(x);
      x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * q) % d);
    } while (x != j);
    std::sort(orb.begin(), orb.end());
    o.sizes.push_back(orb.size());
    o.orbits.push_back(std::move(orb));
  }
  return o;
}

std::size_t BlockSystem::offset(std::size_t i) const {
  std::size_t s = 0;
  for (std::size_t k = 0; k < i; ++k) s += dims[k];
  return s;
}

std::size_t BlockSystem::dim() const { return offset(a); }

LemmaCheck lemma_la_check(const BlockSystem& B) {
  LemmaCheck out;
  auto& v = out.violations;
  if (B.a == 0 || B.dims.size() != B.a) fail(ErrorKind::InvalidArgument, "block count and dimension list disagree");
  const std::size_t n = B.dim();
  if (B.phi.rows() != n || B.phi.cols() != n || B.pairing.rows() != n || B.pairing.cols() != n)
    fail(ErrorKind::InvalidArgument, "matrix sizes do not match the block dimensions");

  if (B.phi.det() == 0) v.push_back("phi is not invertible");
  if (!B.pairing.is_symmetric()) v.push_back("pairing is not symmetric");
  if (B.pairing.det() == 0) v.push_back("pairing is degenerate");
  for (std::size_t i = 0; i < B.a; ++i) {
    const std::size_t target = (i + 1) % B.a;
    bool ok = true;
    for (std::size_t r = 0; r < B.a && ok; ++r) {
      if (r == target) continue;
      const RMatrix blk = B.phi.block(B.offset(r), B.offset(i), B.dims[r], B.dims[i]);
      for (std::size_t x = 0; x < blk.rows() && ok; ++x)
        for (std::size_t y = 0; y < blk.cols() && ok; ++y)
          if (blk(x, y) != 0) ok = false;
    }
    if (!ok) {
      v.push_back("phi does not map W_" + std::to_string(i) + " into W_" + std::to_string(target));
      break;
    }
  }
  if (!(B.phi.transpose() * B.pairing * B.phi == B.pairing)) v.push_back("pairing is not phi-invariant");
  if (B.a % 2) {
    v.push_back("a is odd");
  } else {
    const std::size_t h = B.a / 2;
    if (B.dims[h] != B.dims[0] || B.pairing.block(B.offset(h), 0, B.dims[h], B.dims[0]).det() == 0)
      v.push_back("pairing does not identify W_{a/2} with the dual of W_0");
  }
  if (B.dims[0] % 2 == 0) v.push_back("dim W_0 is even");

  // det(1 - phi T) is the reversed characteristic polynomial
  const RPoly chi = B.phi.charpoly();
  out.det.assign(chi.rbegin(), chi.rend());
  RPoly div(B.a + 1, 0);
  div[0] = 1;
  div[B.a] = -1;
  out.divisible = rpoly_divmod(out.det, div).second.empty();
  return out;
}

bool lemma_la_verify(const BlockSystem& B) {
  const LemmaCheck c = lemma_la_check(B);
  if (!c.hypotheses_hold()) {
    std::string msg = "hypotheses fail:";
    for (const auto& s : c.violations) msg += " " + s + ";";
    fail(ErrorKind::Hypothesis, msg);
  }
  return c.divisible;
}

BlockSystem random_block_system(std::size_t a, std::size_t n, std::mt19937_64& rng) {
  if (a == 0 || a % 2 || n == 0) fail(ErrorKind::InvalidArgument, "random block systems need even a and positive n");
  std::uniform_int_distribution<int> entry(-2, 2);
  auto invertible = [&]() {
    while (true) {
      RMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
      if (m.det() != 0) return m;
    }
  };
  const std::size_t h = a / 2;
  std::vector<RMatrix> G(h), A(a);
  for (auto& g : G) g = invertible();
  // P(i) pairs W_i with W_{i+h}
  auto P = [&](std::size_t i) { return i < h ? G[i] : G[i - h].transpose(); };
  for (std::size_t i = 0; i < h; ++i) A[i] = invertible();
  // A_i^T P(i+1) A_{i+h} = P(i)
  for (std::size_t i = 0; i < h; ++i) A[i + h] = (A[i].transpose() * P(i + 1)).inverse() * P(i);

  BlockSystem B;
  B.a = a;
  B.dims.assign(a, n);
  B.phi = RMatrix(a * n, a * n);
  B.pairing = RMatrix(a * n, a * n);
  for (std::size_t i = 0; i < a; ++i) {
    B.phi.set_block(((i + 1) % a) * n, i * n, A[i]);
    B.pairing.set_block(i * n, ((i + h) % a) * n, P(i));
  }
  return B;
}

TowerL tower_l_detail(const Curve& E, std::size_t d, bool use_mu_d, const LOptions& opts) {
  const Fq F = E.field();
  if (d == 0 || d % F.p() == 0) fail(ErrorKind::InvalidArgument, "d must be positive and prime to p");
  TowerL out;
  out.d = d;
  out.over_kd = use_mu_d;
  out.m = use_mu_d && d > 1 ? static_cast<unsigned>(mult_order(F.q() % d, d)) : 1;
  const Curve Ed = base_change_pow(E, d);
  const BadFibers bf = bad_fibers(Ed);
  out.conductor_deg = bf.conductor.deg;
  if (out.m == 1) {
    out.L = l_polynomial(Ed, bf, opts);
    out.route = "direct";
    return out;
  }
  // the curve over K_d is the curve over F_d with constants extended
  const std::uint64_t Q = ipow(F.q(), out.m);
  const std::size_t N = bf.conductor.deg >= 4 ? bf.conductor.deg - 4 : 0;
  const std::size_t D = opts.max_place_deg ? opts.max_place_deg : N + opts.slack;
  bool direct = Q <= kFieldCap;
  if (direct) {
    BigInt QD = 1;
    for (std::size_t i = 0; i < D; ++i) QD *= Q;
    direct = QD <= kResidueCap;
  }
  if (direct) {
    out.L = l_polynomial(extend_constants(Ed, out.m), opts);
    out.route = "direct";
  } else {
    out.L = extend_l(l_polynomial(Ed, bf, opts), out.m);
    out.route = "constant-extension";
  }
  return out;
}

LPoly tower_l(const Curve& E, std::size_t d, bool use_mu_d, const LOptions& opts) { return tower_l_detail(E, d, use_mu_d, opts).L; }

namespace {

// f / g when g(0) = 1 and the division is exact.
std::optional<IntPoly> exact_div(const IntPoly& f, const IntPoly& g) {
  if (f.size() < g.size()) return std::nullopt;
  const std::size_t n = f.size() - g.size();
  IntPoly q(n + 1, 0);
  for (std::size_t i = 0; i <= n; ++i) {
    BigInt acc = f[i];
    for (std::size_t j = 1; j < g.size() && j <= i; ++j) acc -= g[j] * q[i - j];
    q[i] = acc;
  }
  if (poly_mul(q, g) != f) return std::nullopt;
  return q;
}

// Integer cyclotomic polynomial Phi_k, lowest degree first.
IntPoly cyclotomic(std::size_t k) {
  IntPoly f(k + 1, 0);
  f[0] = -1;
  f[k] = 1;
  for (std::size_t j = 1; j < k; ++j) {
    if (k % j) continue;
    IntPoly g = cyclotomic(j);
    if (g[0] == -1) {
      for (auto& c : g) c = -c;
      for (auto& c : f) c = -c;
    }
    f = *exact_div(f, g);
  }
  if (f.back() < 0)
    for (auto& c : f) c = -c;
  return f;
}

}  // namespace

CyclotomicPart cyclotomic_part(const LPoly& L) {
  CyclotomicPart out;
  IntPoly rest = poly_trim(L.coeffs);
  for (std::size_t k = 1; k <= L.N && rest.size() > 1; ++k) {
    const IntPoly phi = cyclotomic(k);
    const std::size_t e = phi.size() - 1;
    // prod over primitive k-th roots zeta of (1 - zeta q T)
    IntPoly fk(e + 1);
    BigInt qj = 1;
    for (std::size_t j = 0; j <= e; ++j) {
      fk[j] = phi[e - j] * qj;
      qj *= L.q;
    }
    if (fk[0] != 1) {
      for (auto& c : fk) c = -c;
    }
    int mult = 0;
    while (auto q = exact_div(rest, fk)) {
      rest = std::move(*q);
      ++mult;
    }
    if (mult) out.factors.emplace_back(k, mult);
  }
  out.residual_degree = rest.size() - 1;
  return out;
}

ScanResult rank_growth_scan(const Curve& E, std::size_t n_max, const LOptions& opts) {
  ScanResult res;
  const std::uint64_t q = E.field().q();
  const long long npd = nprime_deg(E);
  if (npd % 2 == 0) res.warning = "deg n' = " + std::to_string(npd) + " is even; the rank-growth bound does not apply";
  bool have = false;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::uint64_t d = ipow(q, static_cast<unsigned>(n)) + 1;
    try {
      for (bool kd : {false, true}) {
        const TowerL t = tower_l_detail(E, d, kd, opts);
        ScanRow row;
        row.d = d;
        row.n = n;
        row.field = kd ? "K_d" : "F_d";
        row.N = t.L.N;
        row.rank = analytic_rank(t.L);
        row.c_obs = static_cast<double>(d) / (2.0 * static_cast<double>(n)) - row.rank;
        row.route = t.route;
        if (!kd) {
          res.c_obs = have ? std::max(res.c_obs, row.c_obs) : row.c_obs;
          have = true;
        }
        res.rows.push_back(row);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded) throw;
      res.stopped = "d = " + std::to_string(d) + ": " + e.what();
      break;
    }
  }
  return res;
}

}  // namespace ffec
