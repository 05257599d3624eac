#include "flipclust/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "flipclust/errors.hpp"

namespace flipclust {

Eigen::MatrixXd laplacian(const Graph& g) {
  const Eigen::Index n = g.vertex_count();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    lap(u, u) = static_cast<double>(g.degree(u));
    for (Vertex v : g.neighbors(u)) lap(u, v) = -1.0;
  }
  return lap;
}

Spectrum smallest_eigenpairs(const Eigen::MatrixXd& symmetric, int k,
                             double tol) {
  const Eigen::Index n = symmetric.rows();
  if (symmetric.cols() != n) {
    throw std::invalid_argument("smallest_eigenpairs: matrix not square");
  }
  if (k < 1 || k > n) {
    throw std::invalid_argument("smallest_eigenpairs: k out of range");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("smallest_eigenpairs: iteration did not converge");
  }

  Spectrum out;
  out.eigenvalues = solver.eigenvalues().head(k);
  out.eigenvectors = solver.eigenvectors().leftCols(k);

  // Sign convention: first entry of magnitude above 1e-12 made positive.
  for (int j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double x = out.eigenvectors(i, j);
      if (std::abs(x) > 1e-12) {
        if (x < 0) out.eigenvectors.col(j) = -out.eigenvectors.col(j);
        break;
      }
    }
  }

  // Residual and orthonormality contract.
  const double scale = std::max(1.0, std::abs(out.eigenvalues(k - 1)));
  for (int j = 0; j < k; ++j) {
    const double resid = (symmetric * out.eigenvectors.col(j) -
                          out.eigenvalues(j) * out.eigenvectors.col(j))
                             .norm();
    if (resid > tol * scale) {
      throw NumericalError("smallest_eigenpairs: residual " +
                           std::to_string(resid) + " exceeds tolerance");
    }
  }
  const Eigen::MatrixXd gram =
      out.eigenvectors.transpose() * out.eigenvectors;
  if ((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() >
      tol * 10) {
    throw NumericalError("smallest_eigenpairs: eigenvectors not orthonormal");
  }
  return out;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& symmetric) {
  if (symmetric.cols() != symmetric.rows()) {
    throw std::invalid_argument("symmetric_eigenvalues: matrix not square");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric_eigenvalues: iteration did not converge");
  }
  return solver.eigenvalues();
}

namespace {

struct SweepEngine {
  // Runs the sweep over a connected graph; `ambient` maps local vertex ids
  // back to the caller's id space.
  static SweepCut run(const Graph& g, std::span<const Vertex> ambient,
                      Vertex ambient_n) {
    const Vertex n = g.vertex_count();
    const Spectrum spec = smallest_eigenpairs(laplacian(g), 2);
    const Eigen::VectorXd& fiedler = spec.eigenvectors.col(1);
    const double lambda2 = spec.eigenvalues(1);

    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      if (fiedler(a) != fiedler(b)) return fiedler(a) < fiedler(b);
      return a < b;
    });

    // Incremental crossing count: moving v into the prefix adds deg(v) and
    // retracts two for each neighbor already inside.
    std::vector<char> inside(n, 0);
    std::uint64_t crossing = 0;
    std::uint64_t best_cross = 0;
    std::uint64_t best_weight = 0;
    std::size_t best_prefix = 0;
    for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(n); ++i) {
      const Vertex v = order[i];
      std::uint64_t to_inside = 0;
      for (Vertex w : g.neighbors(v)) to_inside += inside[w];
      crossing += g.degree(v) - 2 * to_inside;
      inside[v] = 1;

      const std::uint64_t size = i + 1;
      const std::uint64_t weight = size * (n - size);
      // Cheeger lower bound holds for every prefix; a violation means the
      // eigensolve lied.
      if (lambda2 > static_cast<double>(n) * static_cast<double>(crossing) /
                            static_cast<double>(weight) +
                        1e-7 * std::max(1.0, lambda2)) {
        throw NumericalError(
            "sweep_cut_sc2: prefix cut ratio fell below the lambda2 bound");
      }
      if (best_prefix == 0 || crossing * best_weight < best_cross * weight) {
        best_cross = crossing;
        best_weight = weight;
        best_prefix = size;
      }
    }

    std::vector<Vertex> members;
    members.reserve(best_prefix);
    for (std::size_t i = 0; i < best_prefix; ++i) {
      members.push_back(ambient[order[i]]);
    }

    SweepCut out{Cut(ambient_n, members),
                 static_cast<double>(best_cross) /
                     static_cast<double>(best_weight),
                 static_cast<std::size_t>(best_cross),
                 {},
                 best_prefix,
                 false,
                 n};
    out.order.reserve(n);
    for (Vertex v : order) out.order.push_back(ambient[v]);
    return out;
  }
};

}  // namespace

SweepCut sweep_cut_sc2(const Graph& g, DisconnectedPolicy policy) {
  const Vertex n = g.vertex_count();
  if (n < 2) {
    throw std::invalid_argument("sweep_cut_sc2: need at least two vertices");
  }
  const auto comps = connected_components(g);
  if (comps.size() == 1) {
    std::vector<Vertex> identity(n);
    std::iota(identity.begin(), identity.end(), Vertex{0});
    return SweepEngine::run(g, identity, n);
  }
  if (policy == DisconnectedPolicy::kError) {
    throw DataError("sweep_cut_sc2: graph is disconnected (" +
                    std::to_string(comps.size()) + " components)");
  }
  const std::vector<Vertex>& keep = comps.front();
  if (keep.size() < 2) {
    throw DataError("sweep_cut_sc2: largest component has fewer than 2 vertices");
  }
  const Graph sub = induced_subgraph(g, keep);
  SweepCut out = SweepEngine::run(sub, keep, n);
  out.used_largest_component = true;
  return out;
}

double spectral_robustness(const Graph& g) {
  if (g.vertex_count() < 3) {
    throw std::invalid_argument("spectral_robustness: need at least 3 vertices");
  }
  const Spectrum spec = smallest_eigenpairs(laplacian(g), 3);
  const double lambda2 = spec.eigenvalues(1);
  const double lambda3 = spec.eigenvalues(2);
  if (lambda3 <= 1e-9) {
    throw NumericalError(
        "spectral_robustness: lambda3 is numerically zero (graph has 3+ "
        "components)");
  }
  return static_cast<double>(g.max_degree()) * lambda2 / (lambda3 * lambda3);
}

AssumptionReport check_assumptions(const Graph& g, double p) {
  const Vertex n = g.vertex_count();
  if (n < 3) {
    throw std::invalid_argument("check_assumptions: need at least 3 vertices");
  }
  const double log_n = std::log(static_cast<double>(n));
  const Spectrum spec = smallest_eigenpairs(laplacian(g), 3);

  AssumptionReport rep;
  rep.n = n;
  rep.p = p;
  rep.lambda2 = spec.eigenvalues(1);
  rep.lambda3 = spec.eigenvalues(2);
  rep.max_deg = g.max_degree();
  rep.eta = rep.lambda3 > 1e-9 ? static_cast<double>(rep.max_deg) *
                                     rep.lambda2 / (rep.lambda3 * rep.lambda3)
                               : 0.0;

  rep.flip_probability = {p < log_n / (10.0 * n), p, log_n / (10.0 * n)};
  rep.degree_gap = {static_cast<double>(rep.max_deg) >= 10.0 * log_n * rep.lambda3,
                    static_cast<double>(rep.max_deg), 10.0 * log_n * rep.lambda3};
  rep.connectivity = {rep.lambda2 >= 0.1, rep.lambda2, 0.1};
  rep.robustness = {rep.eta < 1.0 && rep.lambda3 > 1e-9, rep.eta, 1.0};
  rep.eigenvalue_gap = {rep.lambda3 >= 10.0 * log_n, rep.lambda3, 10.0 * log_n};

  // Balance of the minimum-cut sides: exact via enumeration when feasible,
  // otherwise the sweep-cut sides stand in.
  const double balance_threshold = static_cast<double>(n) / 10.0;
  double min_side = 0.0;
  bool exact = false;
  try {
    if (n <= 16) {
      const MinCutResult mc = brute_force_min_cut(g);
      min_side = static_cast<double>(
          std::min<std::size_t>(mc.cut.size(), n - mc.cut.size()));
      exact = true;
    } else {
      const SweepCut sc = sweep_cut_sc2(g, DisconnectedPolicy::kLargestComponent);
      min_side = static_cast<double>(
          std::min<std::size_t>(sc.cut.size(), n - sc.cut.size()));
    }
    rep.cut_balance = {min_side >= balance_threshold, min_side,
                       balance_threshold};
  } catch (const std::exception&) {
    rep.cut_balance = {false, 0.0, balance_threshold};
  }
  rep.cut_balance_exact = exact;
  return rep;
}

CheegerReport cheeger_diagnostics(const Graph& g) {
  const Vertex n = g.vertex_count();
  if (n < 2) {
    throw std::invalid_argument("cheeger_diagnostics: need at least 2 vertices");
  }
  if (connected_components(g).size() != 1) {
    throw DataError("cheeger_diagnostics: graph is disconnected");
  }
  const int k = n >= 3 ? 3 : 2;
  const Spectrum spec = smallest_eigenpairs(laplacian(g), k);

  CheegerReport rep;
  rep.lambda2 = spec.eigenvalues(1);
  if (n <= 16) {
    const MinCutResult mc = brute_force_min_cut(g);
    rep.alpha = mc.alpha;
    rep.alpha_exact = true;
  } else {
    rep.alpha = sweep_cut_sc2(g).alpha;
    rep.alpha_exact = false;
  }
  rep.n_alpha = static_cast<double>(n) * rep.alpha;
  rep.upper = std::sqrt(8.0 * static_cast<double>(g.max_degree()) * rep.lambda2);
  rep.left_ok = rep.lambda2 <= rep.n_alpha + 1e-9;
  rep.right_ok = rep.n_alpha <= rep.upper + 1e-9;
  if (k == 3 && spec.eigenvalues(2) > 1e-12) {
    rep.improved_witness = rep.lambda2 *
                           std::sqrt(static_cast<double>(g.max_degree())) /
                           (static_cast<double>(n) * std::sqrt(spec.eigenvalues(2)));
  }
  return rep;
}

}  // namespace flipclust
