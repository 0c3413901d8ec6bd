#include "mc_pair_moments.hpp"

#include <cmath>
#include <functional>

#include "widenet/errors.hpp"
#include "widenet/parallel.hpp"
#include "widenet/rng.hpp"

namespace widenet::detail {

namespace {

constexpr std::size_t kChunk = 1 << 16;

struct ChunkSums {
  std::vector<double> sum;
  std::vector<double> sum_sq;
};

}  // namespace

PairMoments mc_pair_moments(const Activation& act, std::span<const std::vector<double>> xs,
                            double ec2, std::uint64_t base_seed, std::size_t n_mc,
                            std::size_t workers) {
  const std::size_t m = xs.size();
  if (m == 0) throw ConfigError("mc_pair_moments: empty point set");
  const std::size_t d = xs[0].size();
  const std::size_t n_pairs = m * (m + 1) / 2;
  const bool with_deriv = ec2 != 0.0;

  Eigen::MatrixXd gram(m, m);
  if (with_deriv) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k < d; ++k) g += xs[i][k] * xs[j][k];
        gram(i, j) = gram(j, i) = g;
      }
    }
  }

  const std::size_t n_chunks = (n_mc + kChunk - 1) / kChunk;
  std::vector<ChunkSums> partials(n_chunks);

  parallel_for(n_chunks, workers, [&](std::size_t chunk) {
    Rng rng(derive_seed(base_seed, "mc.pair.chunk", chunk));
    const std::size_t lo = chunk * kChunk;
    const std::size_t hi = std::min(n_mc, lo + kChunk);

    ChunkSums acc;
    acc.sum.assign(n_pairs, 0.0);
    acc.sum_sq.assign(n_pairs, 0.0);
    std::vector<double> w(d), s(m), ds(m);

    for (std::size_t k = lo; k < hi; ++k) {
      for (std::size_t j = 0; j < d; ++j) w[j] = rng.normal();
      for (std::size_t i = 0; i < m; ++i) {
        double z = 0.0;
        for (std::size_t j = 0; j < d; ++j) z += w[j] * xs[i][j];
        s[i] = act.eval(z);
        if (with_deriv) ds[i] = act.d1(z);
      }
      std::size_t p = 0;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j, ++p) {
          double v = s[i] * s[j];
          if (with_deriv) v += ec2 * ds[i] * ds[j] * gram(i, j);
          acc.sum[p] += v;
          acc.sum_sq[p] += v * v;
        }
      }
    }
    partials[chunk] = std::move(acc);
  });

  std::vector<double> sum(n_pairs, 0.0), sum_sq(n_pairs, 0.0);
  for (const auto& part : partials) {
    for (std::size_t p = 0; p < n_pairs; ++p) {
      sum[p] += part.sum[p];
      sum_sq[p] += part.sum_sq[p];
    }
  }

  PairMoments out;
  out.n = n_mc;
  out.mean.resize(m, m);
  out.stderr_.resize(m, m);
  const auto nd = static_cast<double>(n_mc);
  std::size_t p = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j, ++p) {
      const double mean = sum[p] / nd;
      double se = 0.0;
      if (n_mc > 1) {
        const double var = std::max(0.0, (sum_sq[p] - nd * mean * mean) / (nd - 1.0));
        se = std::sqrt(var / nd);
      }
      out.mean(i, j) = out.mean(j, i) = mean;
      out.stderr_(i, j) = out.stderr_(j, i) = se;
    }
  }
  return out;
}

}  // namespace widenet::detail
