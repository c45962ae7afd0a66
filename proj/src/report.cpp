#include "ffec/report.hpp"

#include <chrono>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "ffec/error.hpp"
#include "ffec/local.hpp"
#include "ffec/notation.hpp"

namespace ffec {

namespace {

using json = nlohmann::json;

constexpr const char* kVersion = "0.1.0";

json big(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) return static_cast<long long>(v);
  return v.str();
}

json int_poly(const IntPoly& c) {
  json a = json::array();
  for (const auto& v : c) a.push_back(big(v));
  return a;
}

std::string rat(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

json curve_json(const Curve& E) {
  json j;
  j["p"] = E.field().p();
  j["e"] = E.field().e();
  j["var"] = std::string(1, E.var());
  static const char* names[5] = {"a1", "a2", "a3", "a4", "a6"};
  for (int i = 0; i < 5; ++i) j[names[i]] = format_ratfunc(E.coeffs()[i], E.var());
  return j;
}

json local_json(const LocalData& ld, char var) {
  json j;
  j["place"] = ld.place.is_infinity() ? std::string("inf") : format_poly(ld.place.poly(), var);
  j["deg"] = ld.place.deg();
  j["type"] = ld.type.name();
  j["vdelta"] = ld.vdelta_min;
  j["n_v"] = ld.n_v;
  j["f_v"] = ld.f_v;
  j["components"] = ld.type.components();
  j["split"] = ld.split ? json(*ld.split) : json(nullptr);
  j["a_v"] = ld.a_v;
  return j;
}

json lpoly_json(const LPoly& L, double tol) {
  json j;
  j["coeffs"] = int_poly(L.coeffs);
  j["q"] = L.q;
  j["N"] = L.N;
  j["eps"] = check_functional_equation(L);
  j["analytic_rank"] = analytic_rank(L);
  j["rh"] = check_rh(L, tol);
  j["rh_deviation"] = rh_deviation(L);
  return j;
}

json height_json(const HeightValue& h) {
  json j;
  j["value"] = rat(h.value);
  j["approx"] = h.approx();
  j["error"] = h.error;
  j["exact"] = h.exact;
  j["iterations"] = h.iterations;
  j["torsion"] = h.torsion;
  return j;
}

std::string summarize(const json& checks) {
  std::string s;
  for (const auto& [k, v] : checks.items()) s += "  " + k + ": " + (v.get<bool>() ? "ok" : "FAILED") + "\n";
  return s;
}

bool all_ok(const json& checks) {
  for (const auto& [k, v] : checks.items())
    if (!v.get<bool>()) return false;
  return true;
}

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

Report finish(json& j, const json& checks, const std::string& head, const Timer& timer) {
  j["checks"] = checks;
  j["ok"] = all_ok(checks);
  j["version"] = kVersion;
  j["timing"] = {{"seconds", timer.seconds()}};
  return {j.dump(), head + summarize(checks), all_ok(checks)};
}

}  // namespace

std::string input_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Report analyze_report(const Curve& E, const std::string& input_text, const AnalyzeOptions& opts) {
  const Timer timer;
  json j, checks;
  j["command"] = "analyze";
  j["input_hash"] = input_hash(input_text);
  j["curve"] = curve_json(E);

  const Invariants I = invariants(E);
  j["invariants"] = {{"delta", format_ratfunc(I.delta, E.var())},
                     {"c4", format_ratfunc(I.c4, E.var())},
                     {"c6", format_ratfunc(I.c6, E.var())},
                     {"j", I.j ? json(format_ratfunc(*I.j, E.var())) : json(nullptr)}};
  const Classification cl = classify(E);
  j["classification"] = {{"isotrivial", cl.isotrivial}, {"constant", cl.constant}, {"height", cl.height}};

  const BadFibers bf = bad_fibers(E);
  j["global_model"] = curve_json(bf.global.model);
  json bad = json::array();
  for (const auto& ld : bf.local) bad.push_back(local_json(ld, E.var()));
  j["bad_places"] = bad;
  j["conductor_deg"] = bf.conductor.deg;
  j["nprime_deg"] = nprime_deg(bf);

  std::string head = "analyze: " + E.field().name() + "(" + std::string(1, E.var()) + "), deg n = " + std::to_string(bf.conductor.deg);
  if (cl.constant) {
    j["route"] = "closed-form";
    const Curve& M = bf.global.model;
    if (M.all_constant()) {
      const long long a = count_points_good(M, Place::finite(Poly::variable(E.field())));
      j["constant_trace"] = a;
      j["l_denominator"] = int_poly(constant_l(a, E.field().q()).denominator);
      head += ", constant curve with a = " + std::to_string(a) + "\n";
    } else {
      j["l_denominator"] = nullptr;
      head += ", constant curve (twisted model; closed form not applied)\n";
    }
    return finish(j, checks, head, timer);
  }

  j["route"] = "euler-product";
  const LPoly L = l_polynomial(E, bf, opts.l);
  j["l"] = lpoly_json(L, opts.tol);
  const int rank = analytic_rank(L);
  const SurfaceZeta Z = surface_zeta(L, bf.local);
  j["zeta_order_at_inv_q"] = Z.ord_at_inv_q();
  checks["degree"] = static_cast<long long>(L.N) == static_cast<long long>(bf.conductor.deg) - 4;
  checks["functional_equation"] = check_functional_equation(L) == functional_equation_sign_reversed(L);
  checks["rh"] = check_rh(L, opts.tol);
  checks["rank_le_N"] = rank <= static_cast<int>(L.N);
  checks["zeta_order"] = rank == -Z.ord_at_inv_q() - 2 - component_excess(bf.local);
  head += ", N = " + std::to_string(L.N) + ", analytic rank " + std::to_string(rank) + "\n";
  return finish(j, checks, head, timer);
}

Report tower_report(const Curve& E, const std::string& input_text, const TowerRequest& req, const LOptions& opts) {
  const Timer timer;
  json j, checks;
  j["command"] = "tower";
  j["input_hash"] = input_hash(input_text);
  j["curve"] = curve_json(E);
  std::string head;
  if (req.scan) {
    const ScanResult r = rank_growth_scan(E, req.scan, opts);
    json rows = json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"d", row.d}, {"n", row.n}, {"field", row.field}, {"N", row.N}, {"rank", row.rank}, {"c_obs", row.c_obs}, {"route", row.route}});
    j["scan"] = {{"n_max", req.scan}, {"rows", rows}, {"c_obs", r.c_obs}};
    j["warning"] = r.warning ? json(*r.warning) : json(nullptr);
    j["stopped"] = r.stopped ? json(*r.stopped) : json(nullptr);
    bool mono = true;
    for (std::size_t i = 0; i + 1 < r.rows.size(); i += 2) mono = mono && r.rows[i + 1].rank >= r.rows[i].rank;
    checks["kd_rank_ge_fd_rank"] = mono;
    head = "tower scan: " + std::to_string(r.rows.size()) + " rows, c_obs = " + std::to_string(r.c_obs) + "\n";
    if (r.warning) head += "  warning: " + *r.warning + "\n";
    if (r.stopped) head += "  stopped: " + *r.stopped + "\n";
  } else {
    const TowerL t = tower_l_detail(E, req.d, req.mu, opts);
    j["d"] = t.d;
    j["field"] = t.over_kd ? "K_d" : "F_d";
    j["m"] = t.m;
    j["route"] = t.route;
    j["conductor_deg"] = t.conductor_deg;
    j["l"] = lpoly_json(t.L, req.tol);
    const CyclotomicPart cp = cyclotomic_part(t.L);
    json fac = json::array();
    for (const auto& [k, m] : cp.factors) fac.push_back({{"k", k}, {"mult", m}});
    j["cyclotomic_part"] = {{"factors", fac}, {"residual_degree", cp.residual_degree}};
    checks["rh"] = check_rh(t.L, req.tol);
    checks["functional_equation"] = check_functional_equation(t.L) == functional_equation_sign_reversed(t.L);
    checks["rank_le_N"] = analytic_rank(t.L) <= static_cast<int>(t.L.N);
    head = "tower: d = " + std::to_string(t.d) + " over " + (t.over_kd ? "K_d" : "F_d") + ", N = " + std::to_string(t.L.N) + ", rank " +
           std::to_string(analytic_rank(t.L)) + " (" + t.route + ")\n";
  }
  return finish(j, checks, head, timer);
}

Report points_report(const PointsRequest& req) {
  const Timer timer;
  json j, checks;
  j["command"] = "points";
  j["family"] = "legendre";
  j["p"] = req.p;
  j["f"] = req.f;
  const PointFamily fam = legendre_family(req.p, req.f);
  j["curve"] = curve_json(fam.curve);
  j["d"] = fam.d;
  j["zeta"] = format_elem(fam.zeta);

  json pts = json::array();
  const auto G = group_law(fam.curve);
  bool on = true;
  for (const auto& P : fam.points) {
    on = on && G.on_curve(P);
    pts.push_back({{"x", format_ratfunc(P.x, 'u')},
                   {"y", format_ratfunc(P.y, 'u')},
                   {"naive_height", naive_height(P)},
                   {"canonical_height", height_json(canonical_height(fam.curve, P, req.heights))}});
  }
  j["points"] = pts;
  checks["on_curve"] = on;

  const std::uint64_t max_den = 4 * fam.d * fam.d;
  const GramResult g = gram_matrix(fam.curve, fam.points, max_den, req.tol, req.heights);
  json gram = json::array(), kernel = json::array();
  for (std::size_t r = 0; r < g.gram.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < g.gram.cols(); ++c) row.push_back(rat(g.gram(r, c)));
    gram.push_back(row);
  }
  for (std::size_t c = 0; c < g.kernel.cols(); ++c) {
    json v = json::array();
    for (std::size_t r = 0; r < g.kernel.rows(); ++r) v.push_back(rat(g.kernel(r, c)));
    kernel.push_back(v);
  }
  j["gram"] = gram;
  j["gram_rank"] = g.rank;
  j["kernel"] = kernel;
  j["max_snap_error"] = g.max_snap_error;
  checks["gram_rank_is_d_minus_2"] = g.rank == fam.d - 2;

  json rel = json::array();
  bool rel_ok = true;
  for (int alt = 0; alt < 2; ++alt) {
    std::vector<long long> k(fam.d);
    RMatrix v(fam.d, 1);
    for (std::size_t i = 0; i < fam.d; ++i) v(i, 0) = k[i] = alt && (i % 2) ? -1 : 1;
    const bool in_kernel = (g.gram * v).rank() == 0;
    const TorsionVerdict tv = torsion_check(fam.curve, sum_points(fam.curve, fam.points, k), 1e-6, req.heights);
    rel.push_back({{"coefficients", k},
                   {"in_kernel", in_kernel},
                   {"torsion", tv.torsion},
                   {"by_doubling", tv.by_doubling},
                   {"height_small", tv.height_small},
                   {"multiple", tv.multiple},
                   {"multiple_ok", tv.multiple_ok}});
    rel_ok = rel_ok && in_kernel && tv.torsion && tv.multiple_ok;
  }
  j["relations"] = rel;
  checks["relations_torsion"] = rel_ok;
  const std::string head = "points: legendre family p = " + std::to_string(req.p) + ", f = " + std::to_string(req.f) + ", d = " +
                           std::to_string(fam.d) + ", Gram rank " + std::to_string(g.rank) + "\n";
  return finish(j, checks, head, timer);
}

Report berger_report(const BergerRequest& req) {
  const Timer timer;
  json j, checks;
  j["command"] = "berger";
  std::optional<BergerData> data;
  std::optional<CatalogEntry> entry;
  std::string head = "berger:";
  if (req.catalog) {
    entry = berger_catalog(*req.catalog, req.p, req.param);
    j["catalog"] = {{"name", *req.catalog}, {"p", req.p}, {"param", req.param}};
    j["curve"] = curve_json(entry->curve);
    data = entry->data;
    head += " " + *req.catalog;
  }
  if (req.data_text) {
    data = parse_berger(*req.data_text);
    j["input_hash"] = input_hash(*req.data_text);
  }
  if (!entry && !data) fail(ErrorKind::InvalidArgument, "berger needs a catalog name or a data file");
  if (data) {
    const std::uint32_t p = req.p;
    j["data"] = format_berger(*data);
    j["m"] = data->m();
    j["n"] = data->n();
    j["k"] = data->k();
    j["k_prime"] = data->k_prime();
    j["l"] = data->l();
    j["l_prime"] = data->l_prime();
    j["genus"] = genus(*data, p);
    j["genus_swapped"] = genus(data->swapped(), p);
    j["c2"] = c2(*data);
    checks["genus_symmetric"] = j["genus"] == j["genus_swapped"];
    head += " genus " + std::to_string(j["genus"].get<long long>()) + ", c2 = " + std::to_string(c2(*data));
  }
  if (entry) {
    const BadFibers bf = bad_fibers(entry->curve);
    json bad = json::array();
    for (const auto& ld : bf.local) bad.push_back(local_json(ld, entry->curve.var()));
    j["bad_places"] = bad;
    j["delta"] = format_ratfunc(invariants(entry->curve).delta);
    j["nprime_deg"] = nprime_deg(bf);
    j["c1"] = c1(entry->curve);
    head += ", c1 = " + std::to_string(c1(entry->curve)) + ", deg n' = " + std::to_string(nprime_deg(bf));
    if (entry->delta_formula) checks["delta_matches_closed_form"] = invariants(entry->curve).delta == *entry->delta_formula;
  }
  return finish(j, checks, head + "\n", timer);
}

}  // namespace ffec
