#include "widenet/config.hpp"

#include <cstdlib>

#include "widenet/errors.hpp"

namespace widenet {

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find(',', begin);
    if (end == std::string::npos) end = text.size();
    const std::string field = text.substr(begin, end - begin);
    char* stop = nullptr;
    const unsigned long long v = std::strtoull(field.c_str(), &stop, 10);
    if (field.empty() || stop != field.c_str() + field.size() || v == 0) {
      throw ConfigError("cannot parse positive integer list entry '" + field + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
    begin = end + 1;
    if (end == text.size()) break;
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

std::string format_size_list(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t v : values) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

nlohmann::ordered_json config_echo(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["dataset"] = cfg.dataset_path;
  j["activation"] = cfg.activation;
  j["c_law"] = cfg.c_law;
  j["alpha"] = cfg.alpha;
  j["T"] = cfg.horizon;
  j["seed"] = cfg.seed;
  j["N"] = cfg.n_units;
  j["Ns"] = cfg.ns;
  j["replicas"] = cfg.replicas;
  j["n_mc"] = cfg.n_mc;
  j["n_nodes"] = cfg.n_nodes;
  j["grid_points"] = cfg.grid_points;
  j["dt"] = cfg.dt;
  j["n_seeds"] = cfg.n_seeds;
  j["x_index"] = cfg.x_index;
  j["martingale_Ns"] = cfg.martingale_ns;
  j["martingale_replicas"] = cfg.martingale_replicas;
  j["martingale_T"] = cfg.martingale_horizon;
  j["gauss_seeds"] = cfg.gauss_seeds;
  return j;
}

}  // namespace widenet
