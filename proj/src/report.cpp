#include "smoothspec/report.hpp"

#include "smoothspec/error.hpp"

namespace smoothspec {

nlohmann::json config_to_json(const PipelineConfig& cfg) {
  nlohmann::json j;
  j["k"] = cfg.k;
  j["method"] = to_string(cfg.method);
  j["similarity"] = to_string(cfg.similarity);
  j["sigma"] = cfg.sigma ? nlohmann::json(*cfg.sigma) : nlohmann::json(nullptr);
  j["l"] = cfg.l;
  j["knn_k"] = cfg.knn_k;
  j["p"] = cfg.effective_p();
  j["alpha1"] = cfg.params.alpha1;
  j["alpha2"] = cfg.params.alpha2;
  j["alpha3"] = cfg.params.alpha3;
  j["alpha4"] = cfg.params.alpha4;
  j["tiny_epsilon"] = cfg.tiny_epsilon ? nlohmann::json(*cfg.tiny_epsilon) : nlohmann::json(nullptr);
  j["tiny_epsilon_rel"] = cfg.tiny_epsilon_rel;
  j["w_diag"] = cfg.w_diag == ReachDiagonal::one ? 1 : 0;
  j["seed"] = cfg.seed;
  j["restarts"] = cfg.restarts;
  j["pi_t_max"] = cfg.pi_t_max;
  j["pi_eps_accel"] = cfg.pi_eps_accel;
  return j;
}

PipelineConfig config_from_json(const nlohmann::json& j) {
  try {
    PipelineConfig cfg;
    cfg.k = j.at("k").get<int>();
    cfg.method = parse_method(j.at("method").get<std::string>());
    cfg.similarity = parse_similarity(j.at("similarity").get<std::string>());
    if (!j.at("sigma").is_null()) cfg.sigma = j.at("sigma").get<double>();
    cfg.l = j.at("l").get<int>();
    cfg.knn_k = j.at("knn_k").get<int>();
    cfg.p = j.at("p").get<int>();
    cfg.params.alpha1 = j.at("alpha1").get<double>();
    cfg.params.alpha2 = j.at("alpha2").get<double>();
    cfg.params.alpha3 = j.at("alpha3").get<double>();
    cfg.params.alpha4 = j.at("alpha4").get<double>();
    if (!j.at("tiny_epsilon").is_null()) cfg.tiny_epsilon = j.at("tiny_epsilon").get<double>();
    cfg.tiny_epsilon_rel = j.at("tiny_epsilon_rel").get<double>();
    cfg.w_diag = j.at("w_diag").get<int>() == 1 ? ReachDiagonal::one : ReachDiagonal::zero;
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.restarts = j.at("restarts").get<int>();
    cfg.pi_t_max = j.at("pi_t_max").get<int>();
    cfg.pi_eps_accel = j.at("pi_eps_accel").get<double>();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config JSON: ") + e.what());
  }
}

RunReport make_report(const PipelineConfig& cfg, const PipelineResult& res) {
  RunReport r;
  r.config = cfg;
  r.timings = res.timings;
  r.tiny_clusters = res.tiny.count();
  r.tiny_epsilon = res.tiny_epsilon;
  r.pi_iterations = res.pi_iterations;
  r.max_stationarity_residual = res.max_stationarity_residual;
  r.inertia = res.assignment.inertia;
  r.degenerate = res.assignment.degenerate;
  r.warnings = res.warnings;
  return r;
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["config"] = config_to_json(r.config);
  auto& times = j["stage_seconds"] = nlohmann::json::object();
  for (const auto& t : r.timings) times[t.stage] = t.seconds;
  j["tiny_clusters"] = r.tiny_clusters;
  j["tiny_epsilon"] = r.tiny_epsilon;
  j["pi_iterations"] = r.pi_iterations;
  j["max_stationarity_residual"] =
      r.max_stationarity_residual ? nlohmann::json(*r.max_stationarity_residual) : nlohmann::json(nullptr);
  j["inertia"] = r.inertia;
  j["degenerate"] = r.degenerate;
  j["metrics"] = r.metrics;
  j["outputs"] = r.outputs;
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace smoothspec
