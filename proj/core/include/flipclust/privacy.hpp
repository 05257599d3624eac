#pragma once

#include <cstdint>
#include <utility>

#include "flipclust/graph.hpp"

namespace flipclust {

/// A seeded sample of the pair set flipped by randomized response.
/// Regenerating with the same (n, p, seed) reproduces `pairs` exactly: the
/// sampler walks the linearized pair index ((0,1),(0,2),...,(0,n-1),(1,2),...)
/// with geometric skips driven by splitmix64(seed).
struct FlipSample {
  EdgeSet pairs;
  double p = 0.0;
  std::uint64_t seed = 0;
};

/// Draws each of the C(n,2) unordered pairs independently with probability p.
/// p must lie in [0, 0.5]; the mechanism is not defined beyond a fair coin.
FlipSample flip_sample(Vertex n, double p, std::uint64_t seed);

/// Publishes g under randomized response: returns (g xor F, F).
std::pair<Graph, FlipSample> apply_randomized_response(const Graph& g, double p,
                                                       std::uint64_t seed);

/// Tight per-pair budget of the flipping mechanism.
struct PrivacyBudget {
  double epsilon = 0.0;  // ln((1-p)/p), in nats
  double p = 0.0;
};

/// epsilon = ln((1-p)/p) for p in (0, 0.5]. p = 0 is rejected: the budget is
/// infinite and reported as such in the error message.
PrivacyBudget privacy_budget(double p);

/// E[alpha_{G xor F}(S)] = (1-2p) * alpha + p for a fixed cut S.
double expected_flipped_cut_ratio(double alpha, double p);

/// Mean of the flipped cut-ratio margin gamma*alpha(A) - alpha(S):
/// (1-2p) * (gamma*alpha_a - alpha_s) + p * (gamma - 1).
double expected_cut_ratio_margin(double gamma, double alpha_a, double alpha_s,
                                 double p);

/// Hoeffding tail bound on the probability that the flipped margin goes
/// negative: exp(-4 (gamma*alpha_a - alpha_s)^2 eps^2 n^2 / (25 gamma^2)),
/// valid for gamma > 1 and cut sides of size at least eps*n, eps in (0, 1/2).
double cut_margin_tail_bound(double gamma, double alpha_a, double alpha_s,
                             double eps, std::size_t n);

/// The margin multiplier 200 * sqrt(max_degree / lambda3).
double gamma_threshold(double max_degree, double lambda3);
double gamma_threshold(const Graph& g);

}  // namespace flipclust
