#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "widenet/config.hpp"
#include "widenet/csv.hpp"
#include "widenet/errors.hpp"

using namespace widenet;

TEST_CASE("format_real: round-trips doubles") {
  for (double v : {1.0, -0.3333333333333333, 1e-17, 2281601.5421116026, 0.1}) {
    const std::string s = format_real(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("matrix csv: write then read") {
  Eigen::MatrixXd m(2, 2);
  m << 0.1, -2.5e-7, 3.0, 1.0 / 3.0;
  const auto path = (std::filesystem::temp_directory_path() / "widenet_mat.csv").string();
  write_matrix_csv(path, m);
  const auto back = read_matrix_csv(path);
  CHECK(back == m);
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
}

TEST_CASE("write_csv: width mismatch rejected") {
  const auto path = (std::filesystem::temp_directory_path() / "widenet_bad.csv").string();
  CHECK_THROWS_AS(write_csv(path, {"a", "b"}, {{1.0}}), ConfigError);
}

TEST_CASE("parse_size_list") {
  CHECK(parse_size_list("250,1000,4000") == std::vector<std::size_t>{250, 1000, 4000});
  CHECK(parse_size_list("7") == std::vector<std::size_t>{7});
  CHECK_THROWS_AS(parse_size_list(""), ConfigError);
  CHECK_THROWS_AS(parse_size_list("1,,2"), ConfigError);
  CHECK_THROWS_AS(parse_size_list("0"), ConfigError);
  CHECK_THROWS_AS(parse_size_list("12a"), ConfigError);
  CHECK(format_size_list({250, 1000}) == "250,1000");
}

TEST_CASE("config echo: stable key order, no execution-only fields") {
  ExperimentConfig cfg;
  cfg.dataset_path = "data.csv";
  cfg.out_dir = "somewhere";
  cfg.workers = 16;
  const auto j = config_echo(cfg);
  const std::string text = j.dump();
  CHECK(text.find("\"dataset\"") != std::string::npos);
  CHECK(text.find("workers") == std::string::npos);
  CHECK(text.find("somewhere") == std::string::npos);
  // key order is fixed, so two echoes of the same config are byte-identical
  ExperimentConfig cfg2 = cfg;
  cfg2.workers = 1;
  cfg2.out_dir = "elsewhere";
  CHECK(config_echo(cfg2).dump() == text);
}
