#include "flipclust/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "flipclust/errors.hpp"
#include "flipclust/rng.hpp"
#include "flipclust/spectral.hpp"

namespace flipclust {

Vertex BlockModelSpec::total_vertices() const {
  std::uint64_t total = 0;
  for (Vertex s : block_sizes) total += s;
  return static_cast<Vertex>(total);
}

void BlockModelSpec::validate() const {
  const std::size_t k = block_sizes.size();
  if (k == 0) throw std::invalid_argument("block model: no blocks");
  for (Vertex s : block_sizes) {
    if (s == 0) throw std::invalid_argument("block model: empty block");
  }
  if (probabilities.size() != k) {
    throw std::invalid_argument("block model: probability matrix shape");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (probabilities[i].size() != k) {
      throw std::invalid_argument("block model: probability matrix shape");
    }
    for (std::size_t j = 0; j < k; ++j) {
      const double p = probabilities[i][j];
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("block model: probability out of [0,1]: " +
                                    std::to_string(p));
      }
      if (probabilities[i][j] != probabilities[j][i]) {
        throw std::invalid_argument("block model: probability matrix not symmetric");
      }
    }
  }
}

namespace {

// Appends the sampled pairs of one block pair. Diagonal blocks walk the
// within-block triangle, off-diagonal blocks the full rectangle.
void sample_block_pair(Vertex off_i, Vertex size_i, Vertex off_j, Vertex size_j,
                       bool diagonal, double p, std::uint64_t stream_seed,
                       std::vector<VertexPair>& out) {
  SplitMix64 rng(stream_seed);
  if (diagonal) {
    const std::uint64_t count =
        static_cast<std::uint64_t>(size_i) * (size_i - 1) / 2;
    Vertex row = 0;
    std::uint64_t row_start = 0;
    std::uint64_t row_len = size_i > 0 ? size_i - 1 : 0;
    sample_bernoulli_indices(count, p, rng, [&](std::uint64_t index) {
      while (index >= row_start + row_len) {
        row_start += row_len;
        --row_len;
        ++row;
      }
      const Vertex a = off_i + row;
      const Vertex b = off_i + row + 1 + static_cast<Vertex>(index - row_start);
      out.push_back({a, b});
    });
  } else {
    const std::uint64_t count =
        static_cast<std::uint64_t>(size_i) * size_j;
    sample_bernoulli_indices(count, p, rng, [&](std::uint64_t index) {
      const Vertex a = off_i + static_cast<Vertex>(index / size_j);
      const Vertex b = off_j + static_cast<Vertex>(index % size_j);
      out.push_back(a < b ? VertexPair{a, b} : VertexPair{b, a});
    });
  }
}

}  // namespace

Graph erdos_renyi(Vertex n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("erdos_renyi: p must lie in [0, 1]");
  }
  std::vector<VertexPair> pairs;
  if (n > 1) sample_block_pair(0, n, 0, n, true, p, seed, pairs);
  std::sort(pairs.begin(), pairs.end());
  return Graph::from_canonical_pairs(n, pairs);
}

Graph sbm(const BlockModelSpec& spec, std::uint64_t seed) {
  spec.validate();
  const std::size_t k = spec.block_sizes.size();
  std::vector<Vertex> offsets(k, 0);
  for (std::size_t i = 1; i < k; ++i) {
    offsets[i] = offsets[i - 1] + spec.block_sizes[i - 1];
  }
  std::vector<VertexPair> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      sample_block_pair(offsets[i], spec.block_sizes[i], offsets[j],
                        spec.block_sizes[j], i == j, spec.probabilities[i][j],
                        mix_seed(seed, i, j), pairs);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return Graph::from_canonical_pairs(spec.total_vertices(), pairs);
}

NegativeFamilySpec NegativeFamilySpec::create(Vertex n, double beta) {
  if (!(beta > 0.1 && beta < 0.5)) {
    throw std::invalid_argument(
        "negative family: beta must lie in (1/10, 1/2)");
  }
  if (n < 10) {
    throw std::invalid_argument("negative family: n too small");
  }
  NegativeFamilySpec spec;
  spec.n = n;
  spec.beta = beta;
  spec.size_a = static_cast<Vertex>(std::llround(beta * n));
  spec.size_c = static_cast<Vertex>(std::llround((1.0 - beta) * n / 2.0));
  if (spec.size_a + spec.size_c >= n) {
    throw std::invalid_argument("negative family: rounded blocks leave B empty");
  }
  spec.size_b = n - spec.size_a - spec.size_c;

  const double nn = static_cast<double>(n);
  const double log_n = std::log(nn);
  spec.rate_aa = 400.0 * log_n * log_n / nn;
  spec.rate_bb = log_n / nn;
  spec.rate_cc = spec.rate_aa;
  spec.rate_bc = 20.0 * log_n / nn;
  spec.rate_ab = 1.0 / (10.0 * nn);
  return spec;
}

bool NegativeFamilySpec::sampling_valid() const {
  const double worst = std::max({rate_aa, rate_bb, rate_cc, rate_bc, rate_ab});
  return worst <= 1.0;
}

Vertex NegativeFamilySpec::min_sampling_n() {
  // 400 ln^2(n)/n <= 1 dominates. The rate peaks near n = e^2 and decreases
  // beyond it, so search on the decreasing side only.
  const auto ok = [](std::uint64_t n) {
    const double nn = static_cast<double>(n);
    const double l = std::log(nn);
    return 400.0 * l * l / nn <= 1.0 && 20.0 * l / nn <= 1.0;
  };
  std::uint64_t lo = 10, hi = 16;
  while (!ok(hi) && hi < (1ULL << 40)) hi <<= 1;
  while (lo + 1 < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return static_cast<Vertex>(hi);
}

Graph negative_family(const NegativeFamilySpec& spec, std::uint64_t seed) {
  if (!spec.sampling_valid()) {
    throw std::invalid_argument(
        "negative_family: edge rates exceed 1 at n=" + std::to_string(spec.n) +
        "; sampling requires n >= " +
        std::to_string(NegativeFamilySpec::min_sampling_n()));
  }
  BlockModelSpec bm;
  bm.block_sizes = {spec.size_a, spec.size_b, spec.size_c};
  bm.probabilities = {{spec.rate_aa, spec.rate_ab, spec.rate_ab},
                      {spec.rate_ab, spec.rate_bb, spec.rate_bc},
                      {spec.rate_ab, spec.rate_bc, spec.rate_cc}};
  return sbm(bm, seed);
}

Eigen::MatrixXd expected_laplacian_negative(const NegativeFamilySpec& spec) {
  if (spec.n > 4000) {
    throw std::invalid_argument(
        "expected_laplacian_negative: dense path capped at n = 4000");
  }
  const Eigen::Index n = spec.n;
  Eigen::MatrixXd adj(n, n);
  const auto block_of = [&](Eigen::Index v) {
    if (v < spec.size_a) return 0;
    if (v < spec.size_a + spec.size_b) return 1;
    return 2;
  };
  const double rates[3][3] = {
      {spec.rate_aa, spec.rate_ab, spec.rate_ab},
      {spec.rate_ab, spec.rate_bb, spec.rate_bc},
      {spec.rate_ab, spec.rate_bc, spec.rate_cc}};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      adj(i, j) = i == j ? 0.0 : rates[block_of(i)][block_of(j)];
    }
  }
  Eigen::MatrixXd lap = -adj;
  lap.diagonal() = adj.rowwise().sum();
  return lap;
}

Eigen::MatrixXd expected_flipped_laplacian(const Eigen::MatrixXd& expected_laplacian,
                                           double p) {
  const Eigen::Index n = expected_laplacian.rows();
  if (expected_laplacian.cols() != n || n == 0) {
    throw std::invalid_argument("expected_flipped_laplacian: matrix not square");
  }
  if (expected_laplacian.rowwise().sum().cwiseAbs().maxCoeff() >
      1e-6 * std::max(1.0, expected_laplacian.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument(
        "expected_flipped_laplacian: input rows do not sum to zero");
  }
  const double nn = static_cast<double>(n);
  Eigen::MatrixXd out =
      (1.0 - 2.0 * p) * expected_laplacian +
      p * nn *
          (Eigen::MatrixXd::Identity(n, n) -
           Eigen::MatrixXd::Constant(n, n, 1.0 / nn));
  return out;
}

std::vector<std::pair<double, double>> eigenvalue_ratio_curve(
    const NegativeFamilySpec& spec, std::span<const double> p_grid) {
  for (double p : p_grid) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("eigenvalue_ratio_curve: p must be >= 0");
    }
  }
  const Eigen::MatrixXd lap = expected_laplacian_negative(spec);
  const Spectrum spec3 = smallest_eigenpairs(lap, 3);
  const double lambda2 = spec3.eigenvalues(1);
  const double lambda3 = spec3.eigenvalues(2);
  const double nn = static_cast<double>(spec.n);

  std::vector<std::pair<double, double>> curve;
  curve.reserve(p_grid.size());
  for (double p : p_grid) {
    const double num = p * nn + (1.0 - 2.0 * p) * lambda2;
    const double den = p * nn + (1.0 - 2.0 * p) * lambda3;
    curve.emplace_back(p, num / den);
  }
  return curve;
}

}  // namespace flipclust
