#include "cvtel/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cvtel/beamsplitter.hpp"
#include "cvtel/sampling.hpp"
#include "cvtel/teleport.hpp"

namespace cvtel {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("malformed number: " + s);
  return v;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  const int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("malformed integer: " + s);
  return v;
}

std::string sweep_to_string(const GainSweep& s) {
  return fmt_double(s.start) + ":" + fmt_double(s.stop) + ":" + std::to_string(s.steps);
}

GainSweep sweep_from_string(const std::string& s) {
  const auto c1 = s.find(':');
  const auto c2 = s.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("gain sweep must be start:stop:steps, got " + s);
  GainSweep sweep;
  sweep.start = parse_double(s.substr(0, c1));
  sweep.stop = parse_double(s.substr(c1 + 1, c2 - c1 - 1));
  sweep.steps = parse_int(s.substr(c2 + 1));
  return sweep;
}

double mean_photons_of_density(const Eigen::MatrixXcd& density) {
  double tr = 0.0, acc = 0.0;
  for (int n = 0; n < density.rows(); ++n) {
    tr += density(n, n).real();
    acc += n * density(n, n).real();
  }
  if (tr <= 0.0) throw std::domain_error("density has non-positive trace");
  return acc / tr;
}

std::vector<std::pair<std::string, std::string>> base_metadata(
    const ExperimentConfig& cfg) {
  auto kv = cfg.to_kv();
  kv.emplace_back("version", kVersion);
  return kv;
}

}  // namespace

std::vector<double> GainSweep::values() const {
  if (steps < 1) throw std::invalid_argument("gain sweep needs at least one step");
  std::vector<double> v(steps);
  for (int i = 0; i < steps; ++i)
    v[i] = steps == 1 ? start : start + (stop - start) * i / (steps - 1);
  return v;
}

void ExperimentConfig::validate() const {
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("config: q must satisfy 0 <= q < 1");
  if (!(gain >= 0.0)) throw std::invalid_argument("config: gain must be >= 0");
  if (use_sweep && (sweep.steps < 1 || sweep.start < 0.0))
    throw std::invalid_argument("config: invalid gain sweep");
  if (truncation < 1) throw std::invalid_argument("config: truncation must be >= 1");
  if (!(grid_radius > 0.0))
    throw std::invalid_argument("config: grid radius must be > 0");
  if (grid_points < 1)
    throw std::invalid_argument("config: grid points must be >= 1");
  if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
  if (format != "csv" && format != "json")
    throw std::invalid_argument("config: format must be csv or json");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::to_kv() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("q", fmt_double(q));
  if (use_sweep)
    kv.emplace_back("gain_sweep", sweep_to_string(sweep));
  else
    kv.emplace_back("gain", fmt_double(gain));
  kv.emplace_back("truncation", std::to_string(truncation));
  kv.emplace_back("grid_radius", fmt_double(grid_radius));
  kv.emplace_back("grid_points", std::to_string(grid_points));
  kv.emplace_back("samples", std::to_string(samples));
  kv.emplace_back("seed", std::to_string(seed));
  kv.emplace_back("input", input);
  kv.emplace_back("format", format);
  return kv;
}

ExperimentConfig ExperimentConfig::from_kv(
    const std::vector<std::pair<std::string, std::string>>& kv) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : kv) {
    if (key == "q") cfg.q = parse_double(value);
    else if (key == "gain") { cfg.gain = parse_double(value); cfg.use_sweep = false; }
    else if (key == "gain_sweep") { cfg.sweep = sweep_from_string(value); cfg.use_sweep = true; }
    else if (key == "truncation") cfg.truncation = parse_int(value);
    else if (key == "grid_radius") cfg.grid_radius = parse_double(value);
    else if (key == "grid_points") cfg.grid_points = parse_int(value);
    else if (key == "samples") cfg.samples = parse_int(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "input") cfg.input = value;
    else if (key == "format") cfg.format = value;
    else if (key == "version") { /* informational echo */ }
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

InputState resolve_input(const std::string& descriptor, int truncation) {
  InputState in;
  if (descriptor == "vacuum") {
    in.psi = fock_state(0, truncation);
    in.is_vacuum = true;
    in.is_coherent = true;  // alpha = 0
    in.alpha = 0.0;
    return in;
  }
  if (descriptor.rfind("coherent:", 0) == 0) {
    const std::string body = descriptor.substr(9);
    const auto comma = body.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("input: coherent:RE,IM expected, got " + descriptor);
    in.alpha = Complex(parse_double(body.substr(0, comma)),
                       parse_double(body.substr(comma + 1)));
    in.is_coherent = true;
    in.is_vacuum = (in.alpha == Complex(0.0));
    in.psi = coherent_state(in.alpha, truncation);
    const double deficit = std::abs(in.psi.squaredNorm() - 1.0);
    if (deficit > 1e-6)
      throw ToleranceError("input: coherent state poorly represented at this "
                           "truncation (norm deficit " + fmt_double(deficit) + ")");
    in.psi.normalize();
    return in;
  }
  if (descriptor.rfind("fock:", 0) == 0) {
    in.fock_n = parse_int(descriptor.substr(5));
    in.psi = fock_state(in.fock_n, truncation);
    in.is_vacuum = (in.fock_n == 0);
    in.is_coherent = in.is_vacuum;
    return in;
  }
  if (descriptor.rfind("file:", 0) == 0) {
    const std::string path = descriptor.substr(5);
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("input: cannot open " + path);
    std::vector<Complex> amps;
    double re, im;
    while (f >> re >> im) amps.emplace_back(re, im);
    if (amps.empty()) throw std::invalid_argument("input: no amplitudes in " + path);
    if (static_cast<int>(amps.size()) > truncation)
      throw std::invalid_argument("input: amplitude list longer than truncation");
    in.psi = FockVector::Zero(truncation);
    for (std::size_t n = 0; n < amps.size(); ++n) in.psi(n) = amps[n];
    if (in.psi.norm() == 0.0)
      throw std::invalid_argument("input: zero state in " + path);
    in.psi.normalize();
    return in;
  }
  throw std::invalid_argument("input: unknown descriptor '" + descriptor + "'");
}

void ResultTable::write_csv(std::ostream& os) const {
  for (const auto& [key, value] : metadata) os << "# " << key << " = " << value << "\n";
  for (std::size_t c = 0; c < columns.size(); ++c)
    os << columns[c] << (c + 1 < columns.size() ? "," : "");
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << fmt_double(row[c]) << (c + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

void ResultTable::write_json(std::ostream& os) const {
  nlohmann::json j;
  j["metadata"] = nlohmann::json::object();
  for (const auto& [key, value] : metadata) j["metadata"][key] = value;
  j["columns"] = columns;
  j["rows"] = rows;
  os << j.dump(2) << "\n";
}

void ResultTable::write(std::ostream& os, const std::string& format) const {
  if (format == "csv") write_csv(os);
  else if (format == "json") write_json(os);
  else throw std::invalid_argument("unknown output format: " + format);
}

ResultTable run_gain_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const InputState in = resolve_input(cfg.input, cfg.truncation);
  const QuadratureGrid grid = cfg.grid();
  const GainSweep sweep = cfg.use_sweep ? cfg.sweep : GainSweep{};

  ResultTable t;
  t.columns = {"g", "average_fidelity", "mean_output_photons"};
  t.metadata = base_metadata(cfg);
  for (double g : sweep.values()) {
    const TeleportParams p{cfg.q, g, cfg.truncation};
    const AveragedOutput avg = average_output(p, in.psi, grid);
    t.rows.push_back({g, avg.fidelity, mean_photons_of_density(avg.density)});
  }
  return t;
}

ResultTable run_vacuum_intensity(const ExperimentConfig& cfg) {
  cfg.validate();
  const InputState in = resolve_input(cfg.input, cfg.truncation);
  if (!in.is_vacuum)
    throw std::invalid_argument("vacuum-intensity requires input vacuum");
  const QuadratureGrid grid = cfg.grid();
  const GainSweep sweep = cfg.use_sweep ? cfg.sweep : GainSweep{};

  ResultTable t;
  t.columns = {"g", "mean_output_photons"};
  t.metadata = base_metadata(cfg);
  for (double g : sweep.values()) {
    const TeleportParams p{cfg.q, g, cfg.truncation};
    const Eigen::MatrixXcd density = average_output(p, in.psi, grid).density;
    t.rows.push_back({g, mean_photons_of_density(density)});
  }
  return t;
}

ResultTable run_single_photon(const ExperimentConfig& cfg) {
  cfg.validate();
  const InputState in = resolve_input(cfg.input, cfg.truncation);
  if (in.fock_n != 1)
    throw std::invalid_argument("single-photon requires input fock:1");
  const TeleportParams p{cfg.q, cfg.gain, cfg.truncation};
  const Eigen::MatrixXcd density = average_output(p, in.psi, cfg.grid()).density;

  ResultTable t;
  t.columns = {"n", "probability"};
  t.metadata = base_metadata(cfg);
  for (int n = 0; n < density.rows(); ++n)
    t.rows.push_back({static_cast<double>(n), density(n, n).real()});
  return t;
}

ResultTable run_equivalence_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  const int dim = cfg.truncation;
  constexpr int kCases = 50;
  constexpr int kSupport = 8;
  const double qs[] = {0.3, 0.5, 0.8};
  const double gains[] = {-1.0, 1.0, 1.3};  // -1 stands for g = q

  ResultTable t;
  t.columns = {"case", "q", "g", "abs_beta", "residual"};
  t.metadata = base_metadata(cfg);

  Rng rng(cfg.seed);
  for (int c = 0; c < kCases; ++c) {
    const double q = qs[c % 3];
    const double g_raw = gains[(c / 3) % 3];
    const double g = g_raw < 0.0 ? q : g_raw;
    FockVector psi = FockVector::Zero(dim);
    for (int n = 0; n < kSupport; ++n) psi(n) = Complex(rng.normal(), rng.normal());
    psi.normalize();
    const double r = 2.0 * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const Complex beta = std::polar(r, phi);
    t.rows.push_back({static_cast<double>(c), q, g, std::abs(beta),
                      equivalence_residual(q, g, beta, psi)});
  }

  // hermiticity of the g=1 compensated measurement operator (f = 1-q)
  const Complex beta_probe(0.6, -0.3);
  const int block = std::min(10, dim);
  for (double q : qs) {
    const FockOperator m =
        compensated_operator_matrix(q, 1.0 - q, beta_probe, dim).topLeftCorner(block, block);
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    t.metadata.emplace_back("hermiticity_deviation_q" + fmt_double(q), fmt_double(dev));
  }
  return t;
}

ResultTable run_sample(const ExperimentConfig& cfg) {
  cfg.validate();
  const InputState in = resolve_input(cfg.input, cfg.truncation);
  const TeleportParams p{cfg.q, cfg.gain, cfg.truncation};
  const SampleSet set =
      in.is_coherent
          ? sample_beta_coherent(p, in.alpha, cfg.samples, cfg.seed)
          : sample_beta(p, in.psi, cfg.grid(), cfg.samples, cfg.seed);

  ResultTable t;
  t.columns = {"beta_re", "beta_im"};
  t.metadata = base_metadata(cfg);
  for (const Complex& b : set.betas) t.rows.push_back({b.real(), b.imag()});
  return t;
}

}  // namespace cvtel
