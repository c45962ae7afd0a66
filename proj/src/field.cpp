#include "ffec/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "ffec/error.hpp"

namespace ffec {

namespace detail {

struct FieldTables {
  std::uint32_t p = 0, e = 0, q = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint32_t> exp;   // 2(q-1) entries
  std::vector<std::uint32_t> log;   // q entries, log[0] unused
  std::vector<std::uint32_t> zech;  // q-1 entries: log(1 + g^k), or kNone
  std::vector<std::uint32_t> basis_trace;
  std::uint32_t prim = 1;
  std::uint32_t half = 0;
  static constexpr std::uint32_t kNone = 0xffffffffu;
};

}  // namespace detail

using detail::FieldTables;

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t mult_order(std::uint64_t q, std::uint64_t d) {
  if (d == 0 || std::gcd(q, d) != 1) fail(ErrorKind::InvalidArgument, "mult_order: gcd(q, d) != 1");
  if (d == 1) return 1;
  std::uint64_t x = q % d, m = 1;
  while (x != 1) {
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * q) % d);
    ++m;
  }
  return m;
}

namespace {

using Digits = std::vector<std::uint32_t>;

// Polynomials over F_p, low degree first, used only while building tables.
void trim(Digits& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Digits fp_mod(Digits a, const Digits& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t inv_lead = [&] {
    std::uint32_t l = m.back();
    for (std::uint32_t x = 1; x < p; ++x)
      if ((static_cast<std::uint64_t>(l) * x) % p == 1) return x;
    return 1u;
  }();
  while (a.size() > dm && !a.empty()) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t c = (static_cast<std::uint64_t>(a.back()) * inv_lead) % p;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - (c * m[i]) % p)) % p);
    trim(a);
  }
  return a;
}

Digits fp_mulmod(const Digits& a, const Digits& b, const Digits& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Digits r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return fp_mod(std::move(r), m, p);
}

Digits fp_powmod(Digits base, std::uint64_t k, const Digits& m, std::uint32_t p) {
  Digits r{1};
  base = fp_mod(base, m, p);
  while (k) {
    if (k & 1) r = fp_mulmod(r, base, m, p);
    base = fp_mulmod(base, base, m, p);
    k >>= 1;
  }
  return r;
}

Digits fp_gcd(Digits a, Digits b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Digits r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool fp_irreducible(const Digits& f, std::uint32_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  const Digits x{0, 1};
  auto frob_iter = [&](unsigned k) {
    Digits y = x;
    for (unsigned i = 0; i < k; ++i) y = fp_powmod(y, p, f, p);
    return y;
  };
  Digits full = frob_iter(n);
  trim(full);
  if (full != Digits{0, 1}) return false;
  for (std::uint64_t r : prime_factors(n)) {
    Digits y = frob_iter(n / static_cast<unsigned>(r));
    y.resize(std::max<std::size_t>(y.size(), 2), 0);
    y[1] = (y[1] + p - 1) % p;
    trim(y);
    Digits g = fp_gcd(f, y, p);
    if (g.size() > 1) return false;
  }
  return true;
}

Digits lex_least_irreducible(std::uint32_t p, std::uint32_t e) {
  const std::uint64_t n = ipow(p, e);
  for (std::uint64_t k = 0; k < n; ++k) {
    Digits f(e + 1, 0);
    std::uint64_t x = k;
    for (std::uint32_t i = 0; i < e; ++i) {
      f[i] = static_cast<std::uint32_t>(x % p);
      x /= p;
    }
    f[e] = 1;
    if (f[0] == 0 && e > 1) continue;
    if (fp_irreducible(f, p)) return f;
  }
  fail(ErrorKind::InvalidArgument, "no irreducible polynomial found");
}

Digits to_digits(std::uint64_t idx, std::uint32_t p, std::uint32_t e) {
  Digits d(e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    d[i] = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
  std::uint64_t idx = 0;
  for (std::size_t i = d.size(); i-- > 0;) idx = idx * p + d[i];
  return static_cast<std::uint32_t>(idx);
}

// Multiplication by a fixed element, specialised for characteristic 2.
struct SlowMul {
  std::uint32_t p, e;
  const Digits& mod;
  std::uint32_t by;
  std::uint64_t mod_bits = 0;

  SlowMul(std::uint32_t p_, std::uint32_t e_, const Digits& m, std::uint32_t b) : p(p_), e(e_), mod(m), by(b) {
    if (p == 2)
      for (std::uint32_t i = 0; i <= e; ++i)
        if (m[i]) mod_bits |= 1ull << i;
  }

  std::uint32_t operator()(std::uint32_t a) const {
    if (p == 2) {
      std::uint64_t acc = 0;
      for (std::uint32_t i = 0; i < e; ++i)
        if ((by >> i) & 1u) acc ^= static_cast<std::uint64_t>(a) << i;
      for (int i = static_cast<int>(2 * e); i >= static_cast<int>(e); --i)
        if ((acc >> i) & 1ull) acc ^= mod_bits << (i - e);
      return static_cast<std::uint32_t>(acc);
    }
    Digits r = fp_mulmod(to_digits(a, p, e), to_digits(by, p, e), mod, p);
    r.resize(e, 0);
    return from_digits(r, p);
  }
};

std::unique_ptr<FieldTables> build(std::uint32_t p, std::uint32_t e) {
  auto t = std::make_unique<FieldTables>();
  t->p = p;
  t->e = e;
  t->q = static_cast<std::uint32_t>(ipow(p, e));
  t->modulus = lex_least_irreducible(p, e);
  const std::uint32_t q = t->q;
  const std::uint32_t n = q - 1;
  t->half = (p == 2) ? 0 : n / 2;

  if (q == 2) {
    t->prim = 1;
  } else {
    const auto factors = prime_factors(n);
    for (std::uint32_t c = 1; c < q; ++c) {
      Digits cd = to_digits(c, p, e);
      trim(cd);
      bool ok = true;
      for (std::uint64_t r : factors) {
        Digits y = fp_powmod(cd, n / r, t->modulus, p);
        if (y == Digits{1}) {
          ok = false;
          break;
        }
      }
      if (ok) {
        t->prim = c;
        break;
      }
    }
  }

  t->exp.assign(2 * static_cast<std::size_t>(n) + 2, 0);
  t->log.assign(q, 0);
  SlowMul step(p, e, t->modulus, t->prim);
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k < n; ++k) {
    t->exp[k] = x;
    t->log[x] = k;
    x = step(x);
  }
  for (std::uint32_t k = n; k < 2 * n + 2; ++k) t->exp[k] = t->exp[k % std::max<std::uint32_t>(n, 1)];

  t->zech.assign(n, FieldTables::kNone);
  for (std::uint32_t k = 0; k < n; ++k) {
    const std::uint32_t v = t->exp[k];
    std::uint32_t w;
    if (p == 2) {
      w = v ^ 1u;
    } else {
      const std::uint32_t c0 = v % p;
      w = v - c0 + (c0 + 1) % p;
    }
    t->zech[k] = (w == 0) ? FieldTables::kNone : t->log[w];
  }

  // trace of each basis element g^i; the trace is F_p-linear in the digits
  t->basis_trace.assign(e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    const std::uint32_t b = static_cast<std::uint32_t>(ipow(p, i));
    Digits acc(e, 0);
    std::uint64_t l = t->log[b];
    for (std::uint32_t j = 0; j < e; ++j) {
      const Digits d = to_digits(t->exp[static_cast<std::uint32_t>(l % std::max<std::uint32_t>(n, 1))], p, e);
      for (std::uint32_t k = 0; k < e; ++k) acc[k] = (acc[k] + d[k]) % p;
      l = (l * p) % std::max<std::uint32_t>(n, 1);
    }
    t->basis_trace[i] = acc[0];
  }
  return t;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FieldTables>> fields;
  std::map<std::pair<const void*, const void*>, std::unique_ptr<Embedding>> embeddings;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

Fq Fq::make(std::uint32_t p, std::uint32_t e, std::uint64_t cap) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "field characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) fail(ErrorKind::InvalidArgument, "extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > cap) fail(ErrorKind::CapExceeded, "field size " + std::to_string(p) + "^" + std::to_string(e) + " exceeds cap");
  }
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  auto& slot = reg.fields[{p, e}];
  if (!slot) slot = build(p, e);
  return Fq(slot.get());
}

Fq Fq::create(std::uint32_t p, std::uint32_t e) { return make(p, e, kFieldCap); }
Fq Fq::residue(std::uint32_t p, std::uint32_t e) { return make(p, e, kResidueCap); }

std::uint32_t Fq::p() const { return t_->p; }
std::uint32_t Fq::e() const { return t_->e; }
std::uint32_t Fq::q() const { return t_->q; }
const std::vector<std::uint32_t>& Fq::modulus() const { return t_->modulus; }

FqElem Fq::zero() const { return {*this, 0}; }
FqElem Fq::one() const { return {*this, 1}; }
FqElem Fq::gen() const { return {*this, t_->e == 1 ? 0u : t_->p}; }
FqElem Fq::primitive() const { return {*this, t_->prim}; }
FqElem Fq::from_index(std::uint32_t idx) const {
  if (idx >= t_->q) fail(ErrorKind::InvalidArgument, "element index out of range");
  return {*this, idx};
}
FqElem Fq::from_int(long long v) const { return {*this, from_int_raw(v)}; }
FqElem Fq::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() > t_->e) fail(ErrorKind::InvalidArgument, "too many coefficients for " + name());
  std::uint64_t idx = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= t_->p) fail(ErrorKind::InvalidArgument, "coefficient out of range for " + name());
    idx = idx * t_->p + c[i];
  }
  return {*this, static_cast<std::uint32_t>(idx)};
}

std::uint32_t Fq::from_int_raw(long long v) const {
  const long long p = t_->p;
  return static_cast<std::uint32_t>(((v % p) + p) % p);
}

std::uint32_t Fq::add(std::uint32_t a, std::uint32_t b) const {
  const FieldTables& t = *t_;
  if (t.p == 2) return a ^ b;
  if (t.e == 1) {
    const std::uint32_t s = a + b;
    return s >= t.p ? s - t.p : s;
  }
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint32_t n = t.q - 1;
  const std::uint32_t la = t.log[a], lb = t.log[b];
  const std::uint32_t d = lb >= la ? lb - la : lb + n - la;
  const std::uint32_t z = t.zech[d];
  if (z == FieldTables::kNone) return 0;
  return t.exp[la + z];
}

std::uint32_t Fq::neg(std::uint32_t a) const {
  const FieldTables& t = *t_;
  if (t.p == 2 || a == 0) return a;
  if (t.e == 1) return t.p - a;
  return t.exp[t.log[a] + t.half];
}

std::uint32_t Fq::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Fq::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  const FieldTables& t = *t_;
  return t.exp[t.log[a] + t.log[b]];
}

std::uint32_t Fq::inv(std::uint32_t a) const {
  if (a == 0) fail(ErrorKind::InvalidArgument, "division by zero in " + name());
  const FieldTables& t = *t_;
  const std::uint32_t l = t.log[a];
  return l == 0 ? 1 : t.exp[t.q - 1 - l];
}

std::uint32_t Fq::pow(std::uint32_t a, std::uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  const FieldTables& t = *t_;
  const std::uint64_t n = t.q - 1;
  return t.exp[static_cast<std::uint32_t>((static_cast<unsigned __int128>(t.log[a]) * k) % n)];
}

std::uint32_t Fq::log(std::uint32_t a) const {
  if (a == 0) fail(ErrorKind::InvalidArgument, "log of zero");
  return t_->log[a];
}

std::uint32_t Fq::exp(std::uint64_t k) const { return t_->exp[k % (t_->q - 1)]; }

bool Fq::is_square(std::uint32_t a) const {
  if (a == 0 || t_->p == 2) return true;
  return (t_->log[a] & 1u) == 0;
}

std::uint32_t Fq::sqrt(std::uint32_t a) const {
  if (a == 0) return 0;
  if (t_->p == 2) return pth_root(a);
  if (!is_square(a)) fail(ErrorKind::InvalidArgument, "sqrt of a non-square");
  return t_->exp[t_->log[a] / 2];
}

std::uint32_t Fq::pth_root(std::uint32_t a) const { return pow(a, t_->q / t_->p); }

std::uint32_t Fq::trace(std::uint32_t a) const {
  const FieldTables& t = *t_;
  std::uint64_t acc = 0;
  for (std::uint32_t i = 0; i < t.e && a; ++i) {
    acc += static_cast<std::uint64_t>(a % t.p) * t.basis_trace[i];
    a /= t.p;
  }
  return static_cast<std::uint32_t>(acc % t.p);
}

std::vector<std::uint32_t> Fq::coeffs(std::uint32_t a) const { return to_digits(a, t_->p, t_->e); }

std::string Fq::name() const {
  if (t_->e == 1) return "GF(" + std::to_string(t_->p) + ")";
  return "GF(" + std::to_string(t_->p) + "^" + std::to_string(t_->e) + ")";
}

Embedding::Embedding(Fq s, Fq b) : small_(s), big_(b), map_(s.q()) {
  if (s.p() != b.p() || b.e() % s.e() != 0) fail(ErrorKind::InvalidArgument, "no embedding " + s.name() + " -> " + b.name());
  if (s.e() == 1) {
    for (std::uint32_t a = 0; a < s.q(); ++a) map_[a] = b.from_int_raw(a);
    return;
  }
  const auto& m = s.modulus();
  auto eval = [&](std::uint32_t x) {
    std::uint32_t acc = 0;
    for (std::size_t i = m.size(); i-- > 0;) acc = b.add(b.mul(acc, x), b.from_int_raw(m[i]));
    return acc;
  };
  const std::uint64_t step = (static_cast<std::uint64_t>(b.q()) - 1) / (s.q() - 1);
  std::uint32_t root = 0;
  bool found = false;
  for (std::uint64_t k = 0; k < s.q() - 1; ++k) {
    const std::uint32_t x = b.exp(k * step);
    if (eval(x) == 0 && (!found || x < root)) {
      root = x;
      found = true;
    }
  }
  if (!found) fail(ErrorKind::InvalidArgument, "embedding root not found");
  for (std::uint32_t a = 0; a < s.q(); ++a) {
    const auto c = s.coeffs(a);
    std::uint32_t acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = b.add(b.mul(acc, root), b.from_int_raw(c[i]));
    map_[a] = acc;
  }
}

const Embedding& Embedding::get(Fq small, Fq big) {
  auto& reg = registry();
  {
    std::lock_guard lock(reg.mu);
    auto it = reg.embeddings.find({small.raw(), big.raw()});
    if (it != reg.embeddings.end()) return *it->second;
  }
  auto emb = std::unique_ptr<Embedding>(new Embedding(small, big));
  std::lock_guard lock(reg.mu);
  auto& slot = reg.embeddings[{small.raw(), big.raw()}];
  if (!slot) slot = std::move(emb);
  return *slot;
}

}  // namespace ffec
