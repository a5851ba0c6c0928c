#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cvtel/sampling.hpp"

using namespace cvtel;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid weights sum to the square area") {
  const QuadratureGrid g = make_grid(2.0, 40);
  double total = 0.0;
  for (const auto& node : g.nodes) total += node.weight;
  CHECK(std::abs(total - 16.0) < 1e-12);
  CHECK(integrate_plane([](Complex) { return 1.0; }, g) ==
        doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("gaussian integrates to one") {
  const QuadratureGrid g = make_grid(8.0, 160);
  const double total = integrate_plane(
      [](Complex b) { return std::exp(-std::norm(b)) / kPi; }, g);
  CHECK(std::abs(total - 1.0) < 1e-6);
}

TEST_CASE("integrate_plane is linear and rejects non-finite values") {
  const QuadratureGrid g = make_grid(3.0, 20);
  auto f = [](Complex b) { return std::exp(-std::norm(b)); };
  auto h = [](Complex b) { return b.real() * b.real(); };
  const double combined =
      integrate_plane([&](Complex b) { return 2.0 * f(b) + 3.0 * h(b); }, g);
  CHECK(std::abs(combined - 2.0 * integrate_plane(f, g) -
                 3.0 * integrate_plane(h, g)) < 1e-12);
  CHECK_THROWS_AS(
      integrate_plane([](Complex) { return std::nan(""); }, g),
      std::domain_error);
}

TEST_CASE("grid integrals self-converge") {
  auto p_of_beta = [](Complex b) {
    return 0.75 / kPi * std::exp(-0.75 * std::norm(b - Complex(1.0, 0.0)));
  };
  const double coarse = integrate_plane(p_of_beta, make_grid(8.0, 160));
  const double fine = integrate_plane(p_of_beta, make_grid(8.0, 320));
  CHECK(std::abs(coarse - fine) < 2e-3);
  CHECK(std::abs(fine - 1.0) < 1e-6);
}

TEST_CASE("coherent sampler moments") {
  const TeleportParams p{0.5, 1.0, 40};
  const int n = 100000;
  const SampleSet s = sample_beta_coherent(p, Complex(2.0, 0.0), n, 12345);
  REQUIRE(static_cast<int>(s.betas.size()) == n);

  double mean_re = 0.0, mean_im = 0.0;
  for (const auto& b : s.betas) {
    mean_re += b.real();
    mean_im += b.imag();
  }
  mean_re /= n;
  mean_im /= n;
  double var_re = 0.0, var_im = 0.0;
  for (const auto& b : s.betas) {
    var_re += (b.real() - mean_re) * (b.real() - mean_re);
    var_im += (b.imag() - mean_im) * (b.imag() - mean_im);
  }
  var_re /= n - 1;
  var_im /= n - 1;

  const double sigma2 = 1.0 / (2.0 * 0.75);
  const double se_mean = std::sqrt(sigma2 / n);
  const double se_var = sigma2 * std::sqrt(2.0 / (n - 1));
  CHECK(std::abs(mean_re - 2.0) < 3.0 * se_mean);
  CHECK(std::abs(mean_im - 0.0) < 3.0 * se_mean);
  CHECK(std::abs(var_re - sigma2) < 3.0 * se_var);
  CHECK(std::abs(var_im - sigma2) < 3.0 * se_var);
}

TEST_CASE("strong entanglement narrows the outcome distribution") {
  const TeleportParams p{0.99, 1.0, 40};
  const int n = 100000;
  const SampleSet s = sample_beta_coherent(p, 0.0, n, 99);
  double var = 0.0;
  for (const auto& b : s.betas) var += b.real() * b.real();
  var /= n;
  const double sigma2 = 1.0 / (2.0 * (1.0 - 0.99 * 0.99));
  CHECK(std::abs(var - sigma2) < 3.0 * sigma2 * std::sqrt(2.0 / n));
}

TEST_CASE("samplers are reproducible for a fixed seed") {
  const TeleportParams p{0.5, 1.0, 30};
  const SampleSet a = sample_beta_coherent(p, Complex(1.0, -1.0), 1000, 7);
  const SampleSet b = sample_beta_coherent(p, Complex(1.0, -1.0), 1000, 7);
  CHECK(a.betas == b.betas);

  const QuadratureGrid grid = make_grid(6.0, 60);
  const FockVector one = fock_state(1, 30);
  const SampleSet c = sample_beta(p, one, grid, 500, 7);
  const SampleSet d = sample_beta(p, one, grid, 500, 7);
  CHECK(c.betas == d.betas);
}

TEST_CASE("grid sampler matches the density histogram") {
  // chi-square over grid cells, Wilson-Hilferty normal approximation;
  // require p > 0.001
  const int dim = 30;
  const TeleportParams p{0.5, 1.0, dim};
  FockVector psi = FockVector::Zero(dim);
  psi(0) = psi(1) = 1.0 / std::sqrt(2.0);
  const QuadratureGrid grid = make_grid(6.0, 40);
  const int n = 100000;
  const SampleSet s = sample_beta(p, psi, grid, n, 2024);

  std::vector<double> expected(grid.nodes.size());
  double total = 0.0;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    expected[i] = grid.nodes[i].weight * p_density(p, grid.nodes[i].beta, psi);
    total += expected[i];
  }
  std::vector<int> counts(grid.nodes.size(), 0);
  const double h = grid.cell_width();
  for (const auto& b : s.betas) {
    const int i = static_cast<int>((b.real() + grid.radius) / h);
    const int j = static_cast<int>((b.imag() + grid.radius) / h);
    REQUIRE(i >= 0);
    REQUIRE(i < grid.points_per_axis);
    counts[static_cast<std::size_t>(i) * grid.points_per_axis + j]++;
  }

  double chi2 = 0.0;
  int dof = 0;
  double lump_expected = 0.0;
  int lump_count = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = n * expected[i] / total;
    if (e < 5.0) {
      lump_expected += e;
      lump_count += counts[i];
      continue;
    }
    chi2 += (counts[i] - e) * (counts[i] - e) / e;
    ++dof;
  }
  if (lump_expected > 0.0) {
    chi2 += (lump_count - lump_expected) * (lump_count - lump_expected) /
            lump_expected;
    ++dof;
  }
  --dof;  // normalization constraint
  REQUIRE(dof > 10);
  const double z = (std::cbrt(chi2 / dof) - (1.0 - 2.0 / (9.0 * dof))) /
                   std::sqrt(2.0 / (9.0 * dof));
  CHECK(z < 3.09);  // p > 0.001
}

TEST_CASE("grid sampler demands enough captured mass") {
  const int dim = 30;
  const TeleportParams p{0.5, 1.0, dim};
  const QuadratureGrid tiny = make_grid(0.4, 8);
  CHECK_THROWS_AS(sample_beta(p, fock_state(0, dim), tiny, 10, 1), ToleranceError);
}

TEST_CASE("completeness of the transfer operator") {
  const QuadratureGrid grid = default_grid();

  SUBCASE("q=0.5, g=1") {
    const TeleportParams p{0.5, 1.0, 60};
    CHECK(completeness_check(p, grid, 10) < 2e-3);
  }

  SUBCASE("q=0.9 needs a larger radius") {
    const TeleportParams p{0.9, 1.0, 60};
    CHECK(completeness_check(p, make_grid(12.0, 240), 10) < 5e-3);
  }

  SUBCASE("q=0, g=0 reduces to coherent-state completeness") {
    const TeleportParams p{0.0, 0.0, 60};
    CHECK(completeness_check(p, grid, 10) < 2e-3);
  }
}
