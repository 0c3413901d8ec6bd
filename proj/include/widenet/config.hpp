#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace widenet {

// Resolved experiment configuration shared by the CLI subcommands. `out_dir`
// and `workers` steer execution only (results never depend on them), so they
// are excluded from the JSON echo embedded in every output file.
struct ExperimentConfig {
  std::string dataset_path;
  std::string activation = "tanh";
  std::string c_law = "point_mass";  // point_mass | uniform:<half_width>
  double alpha = 1.0;
  double horizon = 1.0;  // T
  std::uint64_t seed = 1;

  std::size_t n_units = 1000;                    // N (simulate, gauss-test)
  std::vector<std::size_t> ns = {250, 1000, 4000};  // sweep
  std::size_t replicas = 20;
  std::size_t n_mc = 1000000;
  std::size_t n_nodes = 128;
  std::size_t grid_points = 41;
  double dt = 1e-3;

  std::size_t n_seeds = 400;  // gauss-test
  std::size_t x_index = 0;

  std::vector<std::size_t> martingale_ns = {250, 1000};
  std::size_t martingale_replicas = 50;
  double martingale_horizon = 1.0;
  std::size_t gauss_seeds = 0;  // gaussianity section of sweep; 0 = skip

  std::string out_dir = "out";
  std::size_t workers = 1;
};

// "250,1000,4000" -> {250, 1000, 4000}
std::vector<std::size_t> parse_size_list(const std::string& text);
std::string format_size_list(const std::vector<std::size_t>& values);

nlohmann::ordered_json config_echo(const ExperimentConfig& cfg);

}  // namespace widenet
