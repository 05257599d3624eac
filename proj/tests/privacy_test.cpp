#include "flipclust/privacy.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "flipclust/errors.hpp"
#include "flipclust/rng.hpp"
#include "flipclust/spectral.hpp"
#include "support/test_graphs.hpp"

using namespace flipclust;
namespace tg = flipclust::testing;

TEST_CASE("flip_sample basics") {
  CHECK(flip_sample(30, 0.0, 99).pairs.size() == 0);
  CHECK_THROWS_AS(flip_sample(10, -0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(flip_sample(10, 0.6, 1), std::invalid_argument);

  const FlipSample a = flip_sample(40, 0.07, 1234);
  const FlipSample b = flip_sample(40, 0.07, 1234);
  CHECK(a.pairs.pairs() == b.pairs.pairs());
  CHECK(flip_sample(40, 0.07, 1235).pairs.pairs() != a.pairs.pairs());

  for (const VertexPair& e : a.pairs.pairs()) {
    CHECK(e.u < e.v);
    CHECK(e.v < 40);
  }
}

TEST_CASE("flip_sample count is binomial") {
  // |F| ~ Binomial(C(100,2), 0.01): mean 49.5, variance 49.005.
  const int samples = 10000;
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double size =
        static_cast<double>(flip_sample(100, 0.01, mix_seed(5, 0, s)).pairs.size());
    sum += size;
    sum_sq += size * size;
  }
  const double mean = sum / samples;
  const double var = sum_sq / samples - mean * mean;

  const double expected_mean = 4950 * 0.01;
  const double expected_var = 4950 * 0.01 * 0.99;
  const double mean_se = std::sqrt(expected_var / samples);
  CHECK(std::abs(mean - expected_mean) <= 4 * mean_se);
  // Sample variance of a near-normal count: SE ~ var * sqrt(2/samples).
  const double var_se = expected_var * std::sqrt(2.0 / samples);
  CHECK(std::abs(var - expected_var) <= 4 * var_se);
}

TEST_CASE("randomized response composes and inverts") {
  SplitMix64 rng(67);
  const Graph g = tg::random_connected_graph(25, 40, rng);

  const auto [same, empty] = apply_randomized_response(g, 0.0, 7);
  CHECK(same.edge_list() == g.edge_list());
  CHECK(empty.pairs.size() == 0);

  const auto [flipped, sample] = apply_randomized_response(g, 0.2, 7);
  const Graph back = symmetric_difference(flipped, sample.pairs);
  CHECK(back.edge_list() == g.edge_list());

  std::size_t shared = 0;
  for (const VertexPair& e : sample.pairs.pairs()) {
    if (g.has_edge(e.u, e.v)) ++shared;
  }
  CHECK(flipped.edge_count() ==
        g.edge_count() + sample.pairs.size() - 2 * shared);
}

TEST_CASE("p = 1/2 makes every pair a fair coin regardless of the input") {
  const Graph g = tg::barbell(3);  // has both edges and non-edges
  const int samples = 8000;
  std::map<VertexPair, int> present;
  for (int s = 0; s < samples; ++s) {
    const auto [flipped, sample] = apply_randomized_response(g, 0.5, mix_seed(11, 1, s));
    for (const VertexPair& e : flipped.edge_list()) ++present[e];
  }
  const double se = std::sqrt(0.25 / samples);
  for (Vertex u = 0; u < 6; ++u) {
    for (Vertex v = u + 1; v < 6; ++v) {
      const double freq = present[{u, v}] / static_cast<double>(samples);
      CHECK(std::abs(freq - 0.5) <= 4 * se);
    }
  }
}

TEST_CASE("per-pair likelihood ratios are tight at (1-p)/p") {
  // All 8 graphs on 3 vertices; mechanism output distribution is a product
  // over pairs, so P(y | x) = p^{|x xor y|} (1-p)^{3 - |x xor y|}.
  for (const double p : {0.1, 0.25, 0.5}) {
    const double eps = std::log((1.0 - p) / p);
    double worst_ratio = 0.0;
    for (int x = 0; x < 8; ++x) {
      for (int bit = 0; bit < 3; ++bit) {
        const int x_neighbor = x ^ (1 << bit);
        for (int y = 0; y < 8; ++y) {
          const auto likelihood = [&](int input) {
            const int flips = __builtin_popcount(input ^ y);
            return std::pow(p, flips) * std::pow(1.0 - p, 3 - flips);
          };
          const double ratio = likelihood(x) / likelihood(x_neighbor);
          CHECK(ratio <= std::exp(eps) + 1e-12);
          worst_ratio = std::max(worst_ratio, ratio);
        }
      }
    }
    CHECK(worst_ratio == doctest::Approx((1.0 - p) / p).epsilon(1e-12));
  }
}

TEST_CASE("privacy_budget values") {
  CHECK(privacy_budget(0.5).epsilon == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(privacy_budget(0.1).epsilon == doctest::Approx(std::log(9.0)).epsilon(1e-15));
  CHECK(privacy_budget(0.005).epsilon == doctest::Approx(5.29330).epsilon(1e-5));
  CHECK_THROWS_WITH_AS(privacy_budget(0.0),
                       doctest::Contains("infinite budget"),
                       std::invalid_argument);
  CHECK_THROWS_AS(privacy_budget(0.7), std::invalid_argument);
}

TEST_CASE("expected flipped cut ratio closed form and Monte Carlo") {
  CHECK(expected_flipped_cut_ratio(0.37, 0.0) == 0.37);
  CHECK(expected_flipped_cut_ratio(0.5, 0.5) == doctest::Approx(0.5));

  // Fixed n = 50 graph with alpha(S) = 100 / (10 * 40) = 0.25.
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < 10; ++u) {
    for (Vertex v = 10; v < 20; ++v) pairs.emplace_back(u, v);
  }
  const Graph g = tg::from_pairs(50, pairs);
  const Cut s = tg::prefix_cut(50, 10);
  REQUIRE(cut_ratio_alpha(g, s) == 0.25);

  const double p = 0.1;
  const int samples = 20000;
  double sum = 0.0;
  for (int t = 0; t < samples; ++t) {
    const auto [flipped, sample] = apply_randomized_response(g, p, mix_seed(13, 2, t));
    sum += cut_ratio_alpha(flipped, s);
  }
  const double mean = sum / samples;
  const double target = expected_flipped_cut_ratio(0.25, p);
  CHECK(target == doctest::Approx(0.3).epsilon(1e-12));
  // Each pair contributes variance p(1-p) to the crossing count.
  const double se = std::sqrt(p * (1 - p) / (10.0 * 40.0)) / std::sqrt(samples);
  CHECK(std::abs(mean - target) <= 4 * se);
}

TEST_CASE("expected margin closed form") {
  CHECK(expected_cut_ratio_margin(2.0, 0.3, 0.1, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(expected_cut_ratio_margin(2.0, 0.3, 0.1, 0.05) ==
        doctest::Approx(0.5).epsilon(1e-15));
  // Boundary: gamma * alpha_a = alpha_s leaves p * (gamma - 1) > 0.
  CHECK(expected_cut_ratio_margin(3.0, 0.1, 0.3, 0.2) ==
        doctest::Approx(0.2 * 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(expected_cut_ratio_margin(1.0, 0.3, 0.1, 0.0),
                  std::invalid_argument);
}

TEST_CASE("expected margin matches Monte Carlo") {
  SplitMix64 rng(71);
  const Graph g = tg::planted_blocks(15, 0.7, 0.1, 97);
  const Cut a(30, std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 15, 16, 17, 18});
  const Cut s = tg::prefix_cut(30, 15);
  const double gamma = 1.8, p = 0.05;
  const double alpha_a = cut_ratio_alpha(g, a);
  const double alpha_s = cut_ratio_alpha(g, s);

  const int samples = 20000;
  double sum = 0.0;
  for (int t = 0; t < samples; ++t) {
    const auto [flipped, sample] = apply_randomized_response(g, p, mix_seed(17, 3, t));
    sum += gamma * cut_ratio_alpha(flipped, a) - cut_ratio_alpha(flipped, s);
  }
  const double mean = sum / samples;
  const double target = expected_cut_ratio_margin(gamma, alpha_a, alpha_s, p);
  // Conservative spread: both ratios fluctuate with per-pair variance p(1-p).
  const double se =
      (gamma + 1.0) * std::sqrt(p * (1 - p) / (12.0 * 18.0)) / std::sqrt(samples);
  CHECK(std::abs(mean - target) <= 4 * se);
}

TEST_CASE("margin tail bound arithmetic") {
  CHECK(cut_margin_tail_bound(2.0, 0.3, 0.1, 0.1, 100) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  // Vacuous when the unflipped margin vanishes.
  CHECK(cut_margin_tail_bound(2.0, 0.05, 0.1, 0.1, 100) == 1.0);
  CHECK_THROWS_AS(cut_margin_tail_bound(0.9, 0.3, 0.1, 0.1, 100),
                  std::invalid_argument);
  CHECK_THROWS_AS(cut_margin_tail_bound(2.0, 0.3, 0.1, 0.6, 100),
                  std::invalid_argument);
}

TEST_CASE("margin tail bound dominates the empirical inversion frequency") {
  const Graph g = tg::planted_blocks(20, 0.75, 0.08, 131);
  const Cut planted = tg::prefix_cut(40, 20);
  // A mixes the blocks, so its ratio is far above the planted one.
  std::vector<Vertex> mixed;
  for (Vertex v = 0; v < 10; ++v) mixed.push_back(v);
  for (Vertex v = 20; v < 30; ++v) mixed.push_back(v);
  const Cut a(40, mixed);

  const double gamma = 3.0, p = 0.05, eps = 0.4;
  const double alpha_a = cut_ratio_alpha(g, a);
  const double alpha_s = cut_ratio_alpha(g, planted);
  REQUIRE(gamma * alpha_a > alpha_s);

  const int samples = 5000;
  int inversions = 0;
  for (int t = 0; t < samples; ++t) {
    const auto [flipped, sample] = apply_randomized_response(g, p, mix_seed(19, 4, t));
    if (gamma * cut_ratio_alpha(flipped, a) < cut_ratio_alpha(flipped, planted)) {
      ++inversions;
    }
  }
  const double bound = cut_margin_tail_bound(gamma, alpha_a, alpha_s, eps, 40);
  CHECK(static_cast<double>(inversions) / samples <= bound);
  MESSAGE("inversions=", inversions, " bound=", bound);
}

TEST_CASE("gamma_threshold formula and assumption-linked lower bound") {
  CHECK(gamma_threshold(100.0, 25.0) == doctest::Approx(400.0).epsilon(1e-12));
  CHECK(gamma_threshold(17.0, 17.0) == doctest::Approx(200.0).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_threshold(4.0, 0.0), NumericalError);

  // Star K_{1,50}: spectrum {0, 1 (x49), 51}, max degree 50, so the degree
  // clause max_deg >= 10 ln(n) lambda3 holds and the threshold must clear
  // 200 sqrt(10 ln n).
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex v = 1; v <= 50; ++v) pairs.emplace_back(0, v);
  const Graph star = tg::from_pairs(51, pairs);
  const AssumptionReport rep = check_assumptions(star, 0.0001);
  REQUIRE(rep.degree_gap.pass);
  const double gamma = gamma_threshold(star);
  CHECK(gamma > 200.0 * std::sqrt(10.0 * std::log(51.0)));
}
