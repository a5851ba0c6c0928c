#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cvtel/fock.hpp"
#include "cvtel/quadrature.hpp"

namespace cvtel {

struct GainSweep {
  double start = 0.0;
  double stop = 1.5;
  int steps = 31;

  std::vector<double> values() const;
};

struct ExperimentConfig {
  double q = 0.5;
  double gain = 1.0;
  bool use_sweep = false;
  GainSweep sweep;
  int truncation = 60;
  double grid_radius = 8.0;
  int grid_points = 160;
  int samples = 100000;
  std::uint64_t seed = 1;
  std::string input = "vacuum";  // vacuum | coherent:RE,IM | fock:N | file:PATH
  std::string format = "csv";    // csv | json

  void validate() const;

  // Flat key=value echo, lossless for doubles. Unknown keys on parse are
  // errors.
  std::vector<std::pair<std::string, std::string>> to_kv() const;
  static ExperimentConfig from_kv(
      const std::vector<std::pair<std::string, std::string>>& kv);

  QuadratureGrid grid() const { return make_grid(grid_radius, grid_points); }
};

// Resolved input-state descriptor. Coherent inputs keep their amplitude so
// the exact Gaussian beta-sampler can be used.
struct InputState {
  FockVector psi;  // normalized
  bool is_vacuum = false;
  bool is_coherent = false;
  Complex alpha = 0.0;
  int fock_n = -1;  // >= 0 when the descriptor was fock:N
};
InputState resolve_input(const std::string& descriptor, int truncation);

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
  void write(std::ostream& os, const std::string& format) const;
};

// columns: g, average_fidelity, mean_output_photons
ResultTable run_gain_sweep(const ExperimentConfig& cfg);

// columns: g, mean_output_photons; vacuum input enforced
ResultTable run_vacuum_intensity(const ExperimentConfig& cfg);

// columns: n, probability; input fock:1 enforced
ResultTable run_single_photon(const ExperimentConfig& cfg);

// columns: case, q, g, abs_beta, residual over the randomized suite;
// hermiticity of the g=1 compensated operator reported in the metadata
ResultTable run_equivalence_suite(const ExperimentConfig& cfg);

// columns: beta_re, beta_im
ResultTable run_sample(const ExperimentConfig& cfg);

}  // namespace cvtel
