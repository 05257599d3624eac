#include "flipclust/privacy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "flipclust/errors.hpp"
#include "flipclust/rng.hpp"
#include "flipclust/spectral.hpp"

namespace flipclust {

namespace {

void check_flip_probability(double p) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::invalid_argument("flip probability must lie in [0, 0.5], got " +
                                std::to_string(p));
  }
}

}  // namespace

FlipSample flip_sample(Vertex n, double p, std::uint64_t seed) {
  check_flip_probability(p);
  const std::uint64_t pair_count =
      static_cast<std::uint64_t>(n) * (n - 1) / 2;

  std::vector<VertexPair> pairs;
  SplitMix64 rng(seed);
  // Walk the ascending linear index and decode (u, v) incrementally.
  Vertex row = 0;
  std::uint64_t row_start = 0;
  std::uint64_t row_len = n > 0 ? n - 1 : 0;
  sample_bernoulli_indices(pair_count, p, rng, [&](std::uint64_t index) {
    while (index >= row_start + row_len) {
      row_start += row_len;
      --row_len;
      ++row;
    }
    const Vertex v = row + 1 + static_cast<Vertex>(index - row_start);
    pairs.push_back({row, v});
  });

  return FlipSample{EdgeSet(n, std::move(pairs)), p, seed};
}

std::pair<Graph, FlipSample> apply_randomized_response(const Graph& g, double p,
                                                       std::uint64_t seed) {
  FlipSample sample = flip_sample(g.vertex_count(), p, seed);
  Graph flipped = symmetric_difference(g, sample.pairs);
  return {std::move(flipped), std::move(sample)};
}

PrivacyBudget privacy_budget(double p) {
  if (p == 0.0) {
    throw std::invalid_argument(
        "privacy_budget: p = 0 gives an infinite budget");
  }
  if (!(p > 0.0 && p <= 0.5)) {
    throw std::invalid_argument("privacy_budget: p must lie in (0, 0.5]");
  }
  return PrivacyBudget{std::log((1.0 - p) / p), p};
}

double expected_flipped_cut_ratio(double alpha, double p) {
  return (1.0 - 2.0 * p) * alpha + p;
}

double expected_cut_ratio_margin(double gamma, double alpha_a, double alpha_s,
                                 double p) {
  if (!(gamma > 1.0)) {
    throw std::invalid_argument("expected_cut_ratio_margin: gamma must exceed 1");
  }
  return (1.0 - 2.0 * p) * (gamma * alpha_a - alpha_s) + p * (gamma - 1.0);
}

double cut_margin_tail_bound(double gamma, double alpha_a, double alpha_s,
                             double eps, std::size_t n) {
  if (!(gamma > 1.0)) {
    throw std::invalid_argument("cut_margin_tail_bound: gamma must exceed 1");
  }
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::invalid_argument("cut_margin_tail_bound: eps must lie in (0, 1/2)");
  }
  const double margin = gamma * alpha_a - alpha_s;
  const double nn = static_cast<double>(n);
  return std::exp(-4.0 * margin * margin * eps * eps * nn * nn /
                  (25.0 * gamma * gamma));
}

double gamma_threshold(double max_degree, double lambda3) {
  if (!(lambda3 > 0.0)) {
    throw NumericalError("gamma_threshold: lambda3 must be positive");
  }
  return 200.0 * std::sqrt(max_degree / lambda3);
}

double gamma_threshold(const Graph& g) {
  const Spectrum spec = smallest_eigenpairs(laplacian(g), 3);
  const double lambda3 = spec.eigenvalues(2);
  if (lambda3 <= 1e-9) {
    throw NumericalError("gamma_threshold: lambda3 is numerically zero");
  }
  return gamma_threshold(static_cast<double>(g.max_degree()), lambda3);
}

}  // namespace flipclust
