#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "widenet/dataset.hpp"
#include "widenet/errors.hpp"
#include "widenet/rng.hpp"

using namespace widenet;

namespace {

Dataset make_four() {
  return Dataset({{{0.5, -1.0}, 1.0}, {{1.2, 0.3}, -1.0}, {{-0.7, 0.8}, 0.5}, {{0.2, 1.5}, -0.5}});
}

std::string write_temp(const std::string& name, const std::string& contents) {
  const auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path, std::ios::trunc);
  out << contents;
  return path;
}

}  // namespace

TEST_CASE("dataset: single point always sampled") {
  Dataset ds({{{1.0}, 2.0}});
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto& p = ds.sample_pair(rng);
    CHECK(p.x[0] == 1.0);
    CHECK(p.y == 2.0);
  }
}

TEST_CASE("dataset: sampling is uniform (chi-square oracle)") {
  Dataset ds = make_four();
  Rng rng(2024);
  const std::size_t n = 100000;
  std::array<std::size_t, 4> counts{};
  for (std::size_t i = 0; i < n; ++i) counts[ds.sample_index(rng)]++;

  const double expected = static_cast<double>(n) / 4.0;
  const double freq_sd = std::sqrt(0.25 * 0.75 / static_cast<double>(n));
  double chi_sq = 0.0;
  for (std::size_t c : counts) {
    const double freq = static_cast<double>(c) / static_cast<double>(n);
    CHECK(std::abs(freq - 0.25) <= 4.0 * freq_sd);
    const double diff = static_cast<double>(c) - expected;
    chi_sq += diff * diff / expected;
  }
  CHECK(chi_sq < 16.27);  // 99.9% quantile, 3 degrees of freedom
}

TEST_CASE("dataset: sample_index consumes exactly one uniform") {
  Dataset ds = make_four();
  Rng a(99), b(99);
  (void)ds.sample_index(a);
  (void)b.uniform();
  for (int i = 0; i < 8; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("dataset: duplicate inputs rejected at construction") {
  CHECK_THROWS_AS(Dataset({{{1.0, 2.0}, 0.0}, {{1.0, 2.0}, 1.0}}), ConfigError);
  // -0.0 and 0.0 are the same canonical value
  CHECK_THROWS_AS(Dataset({{{0.0}, 0.0}, {{-0.0}, 1.0}}), ConfigError);
}

TEST_CASE("dataset: validation") {
  CHECK_THROWS_AS(Dataset({}), ConfigError);
  CHECK_THROWS_AS(Dataset({{{1.0}, std::nan("")}}), ConfigError);
  CHECK_THROWS_AS(Dataset({{{std::numeric_limits<double>::infinity()}, 0.0}}), ConfigError);
  CHECK_THROWS_AS(Dataset({{{1.0}, 0.0}, {{1.0, 2.0}, 0.0}}), ConfigError);
}

TEST_CASE("dataset: targets follow construction order") {
  Dataset ds({{{1.0}, 1.0}, {{2.0}, -1.0}});
  const auto y = ds.targets();
  CHECK(y[0] == 1.0);
  CHECK(y[1] == -1.0);

  Dataset single({{{3.0}, 0.0}});
  CHECK(single.targets()[0] == 0.0);

  Dataset permuted({{{2.0}, -1.0}, {{1.0}, 1.0}});
  const auto yp = permuted.targets();
  CHECK(yp[0] == -1.0);
  CHECK(yp[1] == 1.0);
}

TEST_CASE("dataset: csv round trip") {
  const auto path = write_temp("widenet_ds_ok.csv",
                               "x_1,x_2,y\n"
                               "0.5,-1.0,1.0\n"
                               "1.25,0.375,-1.0\n");
  Dataset ds = Dataset::from_csv(path);
  CHECK(ds.size() == 2);
  CHECK(ds.dim() == 2);
  CHECK(ds[1].x[0] == 1.25);
  CHECK(ds[1].y == -1.0);
}

TEST_CASE("dataset: csv errors name the line") {
  const auto bad_header = write_temp("widenet_ds_h.csv", "a,b\n1,2\n");
  CHECK_THROWS_WITH_AS(Dataset::from_csv(bad_header), doctest::Contains(":1:"), ConfigError);

  const auto bad_field = write_temp("widenet_ds_f.csv", "x_1,y\n1.0,2.0\noops,3.0\n");
  CHECK_THROWS_WITH_AS(Dataset::from_csv(bad_field), doctest::Contains(":3:"), ConfigError);

  const auto bad_width = write_temp("widenet_ds_w.csv", "x_1,y\n1.0,2.0,3.0\n");
  CHECK_THROWS_WITH_AS(Dataset::from_csv(bad_width), doctest::Contains(":2:"), ConfigError);

  CHECK_THROWS_AS(Dataset::from_csv("/nonexistent/widenet.csv"), ConfigError);
}
