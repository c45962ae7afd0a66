// ffec: elliptic curves over F_q(t) from the command line.
// One JSON record per run on stdout, a human summary on stderr.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "ffec/error.hpp"
#include "ffec/report.hpp"

using namespace ffec;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// key=value pairs, e.g. p=7 a=3
std::map<std::string, long long> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, long long> out;
  for (const auto& it : items) {
    const auto eq = it.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Parse, "parameter '" + it + "' is not key=value");
    try {
      out[it.substr(0, eq)] = std::stoll(it.substr(eq + 1));
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "parameter '" + it + "' has a non-integer value");
    }
  }
  return out;
}

struct CurveSource {
  std::string file, catalog;
  std::vector<std::string> params;

  void add(CLI::App* app) {
    auto* f = app->add_option("--curve", file, "Curve file (p, e, a1..a6)")->check(CLI::ExistingFile);
    auto* c = app->add_option("--catalog", catalog, "Catalog curve name");
    app->add_option("--params", params, "Catalog parameters as key=value (p, a, d)");
    f->excludes(c);
  }

  std::pair<Curve, std::string> load() const {
    if (!file.empty()) {
      std::string text = read_file(file);
      return {parse_curve(text), text};
    }
    if (catalog.empty()) fail(ErrorKind::InvalidArgument, "give --curve FILE or --catalog NAME");
    const auto kv = parse_params(params);
    const auto p = kv.count("p") ? kv.at("p") : 0;
    const long long param = kv.count("a") ? kv.at("a") : kv.count("d") ? kv.at("d") : 0;
    if (p <= 0) fail(ErrorKind::InvalidArgument, "catalog curves need --params p=P");
    const CatalogEntry e = berger_catalog(catalog, static_cast<std::uint32_t>(p), param);
    return {e.curve, catalog + " " + std::to_string(p) + " " + std::to_string(param)};
  }
};

int emit(const Report& r) {
  std::cout << r.json << "\n";
  std::cerr << r.summary;
  return r.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ffec: elliptic curves over function fields"};
  app.require_subcommand(1);

  std::size_t max_place_deg = 0, threads = 1;
  double tol = 1e-9;
  int iters = 6;
  auto add_l = [&](CLI::App* s) {
    s->add_option("--max-place-deg", max_place_deg, "Largest place degree in the Euler product (default N + 4)");
    s->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    s->add_option("--tol", tol, "Tolerance for the Riemann hypothesis check");
  };
  auto lopts = [&] {
    LOptions o;
    o.max_place_deg = max_place_deg;
    o.threads = static_cast<unsigned>(threads);
    return o;
  };

  auto* analyze = app.add_subcommand("analyze", "Local data, conductor, L-function and rank checks");
  CurveSource a_src;
  a_src.add(analyze);
  add_l(analyze);

  auto* tower = app.add_subcommand("tower", "L-functions in the tower t -> t^(1/d)");
  CurveSource t_src;
  t_src.add(tower);
  std::size_t d = 0, scan = 0;
  bool mu = false;
  auto* d_opt = tower->add_option("--d", d, "Degree of the layer")->check(CLI::PositiveNumber);
  auto* s_opt = tower->add_option("--scan", scan, "Scan d = q^n + 1 for n = 1..N")->check(CLI::PositiveNumber);
  d_opt->excludes(s_opt);
  tower->add_flag("--mu", mu, "Adjoin the d-th roots of unity to the constants");
  add_l(tower);

  auto* points = app.add_subcommand("points", "Explicit points, heights and the Gram matrix");
  std::string family = "legendre";
  std::uint32_t p = 3, f = 1;
  points->add_option("--family", family, "Point family")->check(CLI::IsMember({"legendre"}));
  points->add_option("--p", p, "Characteristic")->required();
  points->add_option("--f", f, "q = p^f")->check(CLI::PositiveNumber);
  points->add_option("--iters", iters, "Doubling iterations")->check(CLI::PositiveNumber);
  double snap_tol = 1e-3;
  points->add_option("--tol", snap_tol, "Snapping tolerance for Gram entries");

  auto* berger = app.add_subcommand("berger", "Berger data: genus and rank-formula constants");
  std::string b_catalog, b_data;
  std::vector<std::string> b_params;
  auto* bc = berger->add_option("--catalog", b_catalog, "Catalog name");
  auto* bd = berger->add_option("--data", b_data, "Berger data file")->check(CLI::ExistingFile);
  berger->add_option("--params", b_params, "Parameters as key=value (p, a, d)");
  bc->excludes(bd);

  auto* lemma = app.add_subcommand("lemma", "Random instances of the block linear-algebra lemma (seed from FFEC_SEED)");
  std::size_t trials = 50, blocks = 2, dim = 1;
  lemma->add_option("--trials", trials, "Number of instances")->check(CLI::PositiveNumber);
  lemma->add_option("--a", blocks, "Number of blocks (even)")->check(CLI::PositiveNumber);
  lemma->add_option("--n", dim, "Block dimension")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      const auto [E, text] = a_src.load();
      AnalyzeOptions o;
      o.l = lopts();
      o.tol = tol;
      return emit(analyze_report(E, text, o));
    }
    if (*tower) {
      const auto [E, text] = t_src.load();
      TowerRequest r;
      r.d = d ? d : 1;
      r.scan = scan;
      r.mu = mu;
      r.tol = tol;
      return emit(tower_report(E, text, r, lopts()));
    }
    if (*points) {
      PointsRequest r;
      r.p = p;
      r.f = f;
      r.heights.n_iter = iters;
      r.tol = snap_tol;
      return emit(points_report(r));
    }
    if (*berger) {
      BergerRequest r;
      const auto kv = parse_params(b_params);
      if (!b_catalog.empty()) {
        r.catalog = b_catalog;
        if (!kv.count("p")) fail(ErrorKind::InvalidArgument, "catalog curves need --params p=P");
      }
      if (kv.count("p")) r.p = static_cast<std::uint32_t>(kv.at("p"));
      r.param = kv.count("a") ? kv.at("a") : kv.count("d") ? kv.at("d") : 0;
      if (!b_data.empty()) r.data_text = read_file(b_data);
      return emit(berger_report(r));
    }
    if (*lemma) {
      const char* env = std::getenv("FFEC_SEED");
      const std::uint64_t seed = env ? std::strtoull(env, nullptr, 10) : 1;
      std::mt19937_64 rng(seed);
      std::size_t divisible = 0, hyp = 0, hyp_divisible = 0;
      for (std::size_t i = 0; i < trials; ++i) {
        const LemmaCheck c = lemma_la_check(random_block_system(blocks, dim, rng));
        divisible += c.divisible;
        hyp += c.hypotheses_hold();
        hyp_divisible += c.hypotheses_hold() && c.divisible;
      }
      const bool ok = hyp_divisible == hyp;
      std::cout << "{\"a\":" << blocks << ",\"command\":\"lemma\",\"divisible\":" << divisible << ",\"hypotheses_hold\":" << hyp
                << ",\"n\":" << dim << ",\"ok\":" << (ok ? "true" : "false") << ",\"seed\":" << seed << ",\"trials\":" << trials << "}\n";
      std::cerr << "lemma: " << divisible << "/" << trials << " divisible, hypotheses hold in " << hyp << "\n";
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
