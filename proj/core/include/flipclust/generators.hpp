#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "flipclust/graph.hpp"

namespace flipclust {

/// Stochastic block model: block sizes plus a symmetric probability matrix.
struct BlockModelSpec {
  std::vector<Vertex> block_sizes;
  std::vector<std::vector<double>> probabilities;

  Vertex total_vertices() const;
  void validate() const;  // throws std::invalid_argument on a bad spec
};

/// G(n, p): every unordered pair present independently with probability p.
Graph erdos_renyi(Vertex n, double p, std::uint64_t seed);

/// Samples the block model; pair (u, v) appears with probability
/// P[block(u)][block(v)]. Each block pair uses the stream mix_seed(seed, i, j)
/// so the result does not depend on iteration order.
Graph sbm(const BlockModelSpec& spec, std::uint64_t seed);

/// Three-block family whose expected flipped Laplacian loses its spectral
/// gap as the flip rate grows. Blocks A, B, C with
///   |A| = round(beta*n), |C| = round((1-beta)*n/2), |B| = n - |A| - |C|
/// (the rounding residue lands in B) and edge rates
///   A-A: 400 ln^2(n)/n   B-B: ln(n)/n   C-C: 400 ln^2(n)/n
///   B-C: 20 ln(n)/n      A-(B u C): 1/(10 n).
/// The rates may exceed 1 at small n; only sampling requires genuine
/// probabilities, the expected-matrix path treats them as rates.
struct NegativeFamilySpec {
  Vertex n = 0;
  double beta = 0.0;
  Vertex size_a = 0, size_b = 0, size_c = 0;
  double rate_aa = 0.0, rate_bb = 0.0, rate_cc = 0.0, rate_bc = 0.0,
         rate_ab = 0.0;

  static NegativeFamilySpec create(Vertex n, double beta);

  bool sampling_valid() const;
  /// Smallest n at which every rate is a probability (rates only grow as n
  /// shrinks, 400 ln^2(n)/n is the binding one).
  static Vertex min_sampling_n();
};

/// Samples the family. Rejects specs whose rates exceed 1 (the error message
/// carries the minimum usable n) rather than clamping them.
Graph negative_family(const NegativeFamilySpec& spec, std::uint64_t seed);

/// Entrywise expectation of the Laplacian of the family: E[D] - E[A] with a
/// zero diagonal in E[A]. Rows sum to zero. Dense; n is capped at 4000.
Eigen::MatrixXd expected_laplacian_negative(const NegativeFamilySpec& spec);

/// p*n*(I - J/n) + (1-2p)*EL for a zero-row-sum matrix EL. For eigenvalues
/// this shifts every nonzero mode to p*n + (1-2p)*lambda_i and keeps the
/// constant vector in the kernel. p is an algebraic parameter here and is not
/// clamped to the mechanism's [0, 0.5] range.
Eigen::MatrixXd expected_flipped_laplacian(const Eigen::MatrixXd& expected_laplacian,
                                           double p);

/// (p, lambda2/lambda3) of the expected flipped Laplacian per grid entry,
/// computed from the closed-form eigenvalue shift. Nondecreasing in p.
std::vector<std::pair<double, double>> eigenvalue_ratio_curve(
    const NegativeFamilySpec& spec, std::span<const double> p_grid);

}  // namespace flipclust
