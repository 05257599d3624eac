#include "flipclust/spectral.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <vector>

#include "flipclust/errors.hpp"
#include "flipclust/rng.hpp"
#include "support/test_graphs.hpp"

using namespace flipclust;
namespace tg = flipclust::testing;

namespace {

// Exact-rational minimum of alpha over the sweep prefixes, recomputed from
// scratch; returns (best crossing, best weight, best prefix length).
struct PrefixMin {
  std::uint64_t cross = 0;
  std::uint64_t weight = 0;
  std::size_t prefix = 0;
};

PrefixMin independent_prefix_min(const Graph& g,
                                 const std::vector<Vertex>& order) {
  const Vertex n = g.vertex_count();
  PrefixMin best;
  for (std::size_t i = 1; i < n; ++i) {
    const Cut cut(n, std::span<const Vertex>(order.data(), i));
    const std::uint64_t cross = cut_edges(g, cut);
    const std::uint64_t weight = i * (n - i);
    if (best.prefix == 0 || cross * best.weight < best.cross * weight) {
      best = {cross, weight, i};
    }
  }
  return best;
}

}  // namespace

TEST_CASE("laplacian structure and known spectra") {
  const Graph tri = tg::triangle();
  const Eigen::MatrixXd lap = laplacian(tri);
  CHECK(lap.rows() == 3);
  CHECK(lap.isApprox(lap.transpose()));
  CHECK(lap.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
  CHECK(lap(0, 0) == 2.0);
  CHECK(lap(0, 1) == -1.0);

  const Spectrum tri_spec = smallest_eigenpairs(lap, 3);
  CHECK(tri_spec.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(tri_spec.eigenvalues(1) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(tri_spec.eigenvalues(2) == doctest::Approx(3.0).epsilon(1e-9));

  CHECK(laplacian(tg::from_pairs(3, {})).isZero(0.0));

  const Spectrum p3 = smallest_eigenpairs(laplacian(tg::path(3)), 3);
  CHECK(p3.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(p3.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p3.eigenvalues(2) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("smallest_eigenpairs invariants on random graphs") {
  SplitMix64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const Vertex n = 5 + static_cast<Vertex>(rng.next() % 20);
    const Graph g = tg::random_connected_graph(n, 2 * n, rng);
    const Eigen::MatrixXd lap = laplacian(g);
    const int k = 4 <= static_cast<int>(n) ? 4 : static_cast<int>(n);
    const Spectrum spec = smallest_eigenpairs(lap, k);

    CHECK(std::is_sorted(spec.eigenvalues.begin(), spec.eigenvalues.end()));
    CHECK(spec.eigenvalues(0) >= -1e-9);
    const double scale = std::max(1.0, spec.eigenvalues(k - 1));
    for (int j = 0; j < k; ++j) {
      const double resid =
          (lap * spec.eigenvectors.col(j) -
           spec.eigenvalues(j) * spec.eigenvectors.col(j))
              .norm();
      CHECK(resid <= 1e-9 * scale);
      CHECK(std::abs(spec.eigenvectors.col(j).norm() - 1.0) <= 1e-9);
      for (int i = 0; i < j; ++i) {
        CHECK(std::abs(spec.eigenvectors.col(i).dot(spec.eigenvectors.col(j))) <=
              1e-9);
      }
    }
  }
}

TEST_CASE("zero eigenvalue multiplicity equals component count") {
  SplitMix64 rng(37);
  for (int rep = 0; rep < 10; ++rep) {
    // Union of a few random connected blobs.
    const int blocks = 1 + static_cast<int>(rng.next() % 3);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    Vertex offset = 0;
    for (int b = 0; b < blocks; ++b) {
      const Vertex size = 3 + static_cast<Vertex>(rng.next() % 5);
      const Graph blob = tg::random_connected_graph(size, 4, rng);
      for (const VertexPair& e : blob.edge_list()) {
        pairs.emplace_back(offset + e.u, offset + e.v);
      }
      offset += size;
    }
    const Graph g = tg::from_pairs(offset, pairs);
    const Spectrum spec =
        smallest_eigenpairs(laplacian(g), static_cast<int>(offset));
    const std::size_t zero_mult = static_cast<std::size_t>(std::count_if(
        spec.eigenvalues.begin(), spec.eigenvalues.end(),
        [](double x) { return std::abs(x) <= 1e-7; }));
    CHECK(zero_mult == connected_components(g).size());
  }
}

TEST_CASE("eigensolver is deterministic and isomorphism-invariant") {
  SplitMix64 rng(41);
  const Graph g = tg::random_connected_graph(18, 30, rng);
  const Eigen::MatrixXd lap = laplacian(g);

  const Spectrum a = smallest_eigenpairs(lap, 5);
  const Spectrum b = smallest_eigenpairs(lap, 5);
  CHECK(std::memcmp(a.eigenvalues.data(), b.eigenvalues.data(),
                    sizeof(double) * 5) == 0);
  CHECK(std::memcmp(a.eigenvectors.data(), b.eigenvectors.data(),
                    sizeof(double) * 5 * 18) == 0);

  // Relabel and compare eigenvalues.
  std::vector<Vertex> perm(18);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.next() % i]);
  }
  std::vector<std::pair<Vertex, Vertex>> relabeled;
  for (const VertexPair& e : g.edge_list()) {
    relabeled.emplace_back(perm[e.u], perm[e.v]);
  }
  const Spectrum c =
      smallest_eigenpairs(laplacian(tg::from_pairs(18, relabeled)), 5);
  for (int j = 0; j < 5; ++j) {
    CHECK(a.eigenvalues(j) == doctest::Approx(c.eigenvalues(j)).epsilon(1e-9));
  }
}

TEST_CASE("sweep cut recovers the barbell bridge") {
  const Graph bb = tg::barbell(3);
  const SweepCut sc = sweep_cut_sc2(bb);
  CHECK(sc.alpha == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  const Cut planted = tg::prefix_cut(6, 3);
  CHECK(d_size(sc.cut, planted) == 0);

  const MinCutResult mc = brute_force_min_cut(bb);
  CHECK(sc.alpha == doctest::Approx(mc.alpha).epsilon(1e-12));
}

TEST_CASE("sweep cut rejects disconnected input unless told otherwise") {
  const Graph two_triangles =
      tg::from_pairs(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK_THROWS_AS(sweep_cut_sc2(two_triangles), DataError);

  const SweepCut sc =
      sweep_cut_sc2(two_triangles, DisconnectedPolicy::kLargestComponent);
  CHECK(sc.used_largest_component);
  CHECK(sc.swept_vertices == 3);
  CHECK(sc.cut.ambient_size() == 6);
}

TEST_CASE("sweep cut separates two dense blocks joined by two edges") {
  // Two ER(20, 0.6) blocks plus two fixed cross edges.
  SplitMix64 rng(43);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < 20; ++u) {
    for (Vertex v = u + 1; v < 20; ++v) {
      if (rng.next_unit() < 0.6) pairs.emplace_back(u, v);
      if (rng.next_unit() < 0.6) pairs.emplace_back(20 + u, 20 + v);
    }
  }
  pairs.emplace_back(3, 27);
  pairs.emplace_back(11, 35);
  const Graph g = tg::from_pairs(40, pairs);
  REQUIRE(connected_components(g).size() == 1);

  const SweepCut sc = sweep_cut_sc2(g);
  CHECK(d_size(sc.cut, tg::prefix_cut(40, 20)) == 0);
}

TEST_CASE("sweep alpha equals the independent prefix minimum") {
  SplitMix64 rng(47);
  for (int rep = 0; rep < 15; ++rep) {
    const Vertex n = 6 + static_cast<Vertex>(rng.next() % 14);
    const Graph g = tg::random_connected_graph(n, n, rng);
    const SweepCut sc = sweep_cut_sc2(g);

    const PrefixMin best = independent_prefix_min(g, sc.order);
    CHECK(sc.prefix_len == best.prefix);
    CHECK(sc.crossing == best.cross);
    CHECK(sc.alpha == doctest::Approx(static_cast<double>(best.cross) /
                                      static_cast<double>(best.weight))
                          .epsilon(1e-15));

    // Restriction to prefixes can only lose against the exhaustive optimum.
    if (n <= 12) {
      const MinCutResult mc = brute_force_min_cut(g);
      CHECK(sc.alpha >= mc.alpha - 1e-12);
      MESSAGE("d_size(sweep, optimal) = ", d_size(sc.cut, mc.cut), " of n=", n);
    }
  }
}

TEST_CASE("lambda2 lower-bounds n*alpha along the sweep") {
  SplitMix64 rng(53);
  for (int rep = 0; rep < 10; ++rep) {
    const Vertex n = 5 + static_cast<Vertex>(rng.next() % 10);
    const Graph g = tg::random_connected_graph(n, n / 2, rng);
    const Spectrum spec = smallest_eigenpairs(laplacian(g), 2);
    const SweepCut sc = sweep_cut_sc2(g);
    for (std::size_t i = 1; i < n; ++i) {
      const Cut cut(n, std::span<const Vertex>(sc.order.data(), i));
      CHECK(spec.eigenvalues(1) <=
            static_cast<double>(n) * cut_ratio_alpha(g, cut) + 1e-9);
    }
  }
}

TEST_CASE("spectral_robustness formula and edge cases") {
  // Known spectrum: barbell(3) is connected with eta = delta*l2/l3^2.
  const Graph bb = tg::barbell(3);
  const Spectrum spec = smallest_eigenpairs(laplacian(bb), 3);
  const double expected = static_cast<double>(bb.max_degree()) *
                          spec.eigenvalues(1) /
                          (spec.eigenvalues(2) * spec.eigenvalues(2));
  CHECK(spectral_robustness(bb) == doctest::Approx(expected).epsilon(1e-12));

  // Two components: lambda2 = 0, so eta = 0.
  const Graph two =
      tg::from_pairs(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK(spectral_robustness(two) == doctest::Approx(0.0).epsilon(1e-9));

  // Three components: lambda3 = 0 is an error.
  const Graph three = tg::from_pairs(6, {{0, 1}, {2, 3}, {4, 5}});
  CHECK_THROWS_AS(spectral_robustness(three), NumericalError);
}

TEST_CASE("assumption thresholds use the natural logarithm") {
  SplitMix64 rng(59);
  const Graph g120 = tg::random_connected_graph(120, 300, rng);
  const AssumptionReport r120 = check_assumptions(g120, 0.003);
  CHECK(r120.flip_probability.threshold ==
        doctest::Approx(0.0039896).epsilon(1e-4));
  CHECK(r120.flip_probability.pass);

  const Graph g574 = tg::random_connected_graph(574, 1200, rng);
  const AssumptionReport r574 = check_assumptions(g574, 0.002);
  CHECK(r574.flip_probability.threshold ==
        doctest::Approx(0.0011068).epsilon(1e-4));
  CHECK_FALSE(r574.flip_probability.pass);

  const AssumptionReport zero_p = check_assumptions(g120, 0.0);
  CHECK(zero_p.flip_probability.pass);

  // Disconnected input fails the connectivity clause.
  const Graph two =
      tg::from_pairs(20, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {5, 3}, {0, 2}});
  const AssumptionReport broken = check_assumptions(two, 0.001);
  CHECK_FALSE(broken.connectivity.pass);
  CHECK(broken.lambda2 == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("assumption balance clause is exact at oracle scale") {
  const Graph bb = tg::barbell(5);  // n = 10 <= 16
  const AssumptionReport rep = check_assumptions(bb, 0.001);
  CHECK(rep.cut_balance_exact);
  CHECK(rep.cut_balance.measured == 5.0);
  CHECK(rep.cut_balance.pass);

  SplitMix64 rng(61);
  const Graph big = tg::random_connected_graph(40, 80, rng);
  CHECK_FALSE(check_assumptions(big, 0.001).cut_balance_exact);
}

TEST_CASE("cheeger_diagnostics") {
  const Graph bb = tg::barbell(3);
  const CheegerReport rep = cheeger_diagnostics(bb);
  CHECK(rep.alpha_exact);
  CHECK(rep.alpha == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(rep.left_ok);
  CHECK(rep.right_ok);

  // K4: lambda2 = 4, alpha = 1, so the left side is tight.
  const CheegerReport k4 = cheeger_diagnostics(tg::complete(4));
  CHECK(k4.lambda2 == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(k4.n_alpha == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(k4.upper == doctest::Approx(std::sqrt(8.0 * 3.0 * k4.lambda2)).epsilon(1e-9));
  CHECK(k4.left_ok);
  CHECK(k4.right_ok);

  const Graph two = tg::from_pairs(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(cheeger_diagnostics(two), DataError);
}
