#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "flipclust/graph.hpp"

namespace flipclust {

/// Combinatorial Laplacian L = D - A as a dense symmetric matrix.
Eigen::MatrixXd laplacian(const Graph& g);

/// The k smallest eigenpairs of a symmetric matrix, eigenvalues ascending.
/// Eigenvectors are unit length, pairwise orthogonal, and sign-fixed so that
/// the first entry of magnitude above 1e-12 is positive.
struct Spectrum {
  Eigen::VectorXd eigenvalues;   // size k
  Eigen::MatrixXd eigenvectors;  // n x k
};

/// Dense symmetric solve (tridiagonal reduction + implicit-shift iteration
/// via Eigen). Deterministic for a fixed input. Throws NumericalError if the
/// iteration fails to converge or the residual check against `tol` fails.
Spectrum smallest_eigenpairs(const Eigen::MatrixXd& symmetric, int k,
                             double tol = 1e-9);

/// All eigenvalues ascending, without accumulating eigenvectors.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& symmetric);

enum class DisconnectedPolicy {
  kError,             // refuse disconnected input
  kLargestComponent,  // sweep the largest component, report via the result
};

/// Result of the two-way sweep cut.
struct SweepCut {
  Cut cut;                     // over the ambient vertex set of the input
  double alpha = 0.0;          // cut ratio achieved on the swept graph
  std::size_t crossing = 0;    // crossing edges of the chosen prefix
  std::vector<Vertex> order;   // sweep order (ambient vertex ids)
  std::size_t prefix_len = 0;  // chosen prefix length i0
  bool used_largest_component = false;
  std::size_t swept_vertices = 0;  // vertices actually swept
};

/// Two-way spectral clustering: sort vertices by the second-smallest
/// Laplacian eigenvector (ties by vertex id ascending) and return the prefix
/// minimizing the alpha cut-ratio over prefix lengths 1..n-1; argmin ties go
/// to the shortest prefix.
SweepCut sweep_cut_sc2(const Graph& g,
                       DisconnectedPolicy policy = DisconnectedPolicy::kError);

/// max_degree * lambda2 / lambda3^2. Throws NumericalError when lambda3 is
/// numerically zero (three or more components).
double spectral_robustness(const Graph& g);

struct AssumptionClause {
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
};

/// Per-clause evaluation of the well-clustering assumptions for (g, p).
/// Logs use the natural logarithm. The balance clause is exact only when the
/// brute-force oracle applies (n <= 16); otherwise it is a heuristic based on
/// the sweep-cut side sizes.
struct AssumptionReport {
  Vertex n = 0;
  double p = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  std::size_t max_deg = 0;
  double eta = 0.0;
  AssumptionClause flip_probability;  // p < ln n / (10 n)
  AssumptionClause degree_gap;        // max_deg >= 10 ln n * lambda3
  AssumptionClause connectivity;      // lambda2 >= 1/10
  AssumptionClause robustness;        // eta < 1 (reporting convention; the
                                      // requirement is only that eta is small)
  AssumptionClause eigenvalue_gap;    // lambda3 >= 10 ln n
  AssumptionClause cut_balance;       // min cut sides >= n/10
  bool cut_balance_exact = false;
};

AssumptionReport check_assumptions(const Graph& g, double p);

/// Cheeger sandwich lambda2 <= n*alpha <= sqrt(8 * max_deg * lambda2), with
/// alpha exact for n <= 16 and the sweep-cut value as a witness otherwise,
/// plus the improved-Cheeger witness quantity.
struct CheegerReport {
  double lambda2 = 0.0;
  double alpha = 0.0;
  bool alpha_exact = false;
  double n_alpha = 0.0;
  double upper = 0.0;  // sqrt(8 * max_deg * lambda2)
  bool left_ok = false;
  bool right_ok = false;
  double improved_witness = 0.0;  // lambda2 * sqrt(max_deg) / (n * sqrt(lambda3))
};

CheegerReport cheeger_diagnostics(const Graph& g);

}  // namespace flipclust
