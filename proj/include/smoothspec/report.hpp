#pragma once

#include "smoothspec/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>

namespace smoothspec {

nlohmann::json config_to_json(const PipelineConfig& cfg);
PipelineConfig config_from_json(const nlohmann::json& j);

struct RunReport {
  PipelineConfig config;
  std::vector<StageTiming> timings;
  int tiny_clusters = 0;
  double tiny_epsilon = 0.0;
  std::vector<int> pi_iterations;
  std::optional<double> max_stationarity_residual;
  double inertia = 0.0;
  bool degenerate = false;
  std::map<std::string, double> metrics;       // nmi, purity, rand_index when labels are known
  std::map<std::string, std::string> outputs;  // role -> path
  std::vector<std::string> warnings;
};

RunReport make_report(const PipelineConfig& cfg, const PipelineResult& res);
nlohmann::json to_json(const RunReport& r);

}  // namespace smoothspec
