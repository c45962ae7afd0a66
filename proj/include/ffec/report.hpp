#pragma once

#include <optional>
#include <string>

#include "ffec/berger.hpp"
#include "ffec/heights.hpp"
#include "ffec/towers.hpp"

namespace ffec {

/// One JSON record plus a human summary. `ok` is false when an internal
/// consistency check failed. Keys are sorted, so the JSON text is
/// deterministic apart from the "timing" field.
struct Report {
  std::string json;
  std::string summary;
  bool ok = true;
};

/// Hex FNV-1a hash of an input text.
std::string input_hash(const std::string& text);

struct AnalyzeOptions {
  LOptions l;
  double tol = 1e-9;
};
Report analyze_report(const Curve& E, const std::string& input_text, const AnalyzeOptions& opts = {});

struct TowerRequest {
  std::size_t d = 1;
  std::size_t scan = 0;  // n_max; 0 for a single d
  bool mu = false;
  double tol = 1e-9;
};
Report tower_report(const Curve& E, const std::string& input_text, const TowerRequest& req, const LOptions& opts = {});

struct PointsRequest {
  std::uint32_t p = 3, f = 1;
  HeightOptions heights;
  double tol = 1e-3;  // snapping tolerance
};
Report points_report(const PointsRequest& req);

struct BergerRequest {
  std::optional<std::string> catalog;  // catalog name
  std::uint32_t p = 0;
  long long param = 0;
  std::optional<std::string> data_text;  // Berger data file contents
};
Report berger_report(const BergerRequest& req);

}  // namespace ffec
