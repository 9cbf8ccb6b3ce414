#include "pbv/ple_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pbv/errors.hpp"
#include "pbv/format.hpp"
#include "pbv/levmar.hpp"

namespace pbv {

void LineShape::check() const {
  if (!(fwhm_mhz > 0.0)) throw std::domain_error("line fwhm must be positive");
  if (amplitude_per_ms < 0.0)
    throw std::domain_error("line amplitude must be non-negative");
  if (background_per_ms < 0.0)
    throw std::domain_error("line background must be non-negative");
}

double lorentzian_shape(const LineShape& line, double detuning_ghz) {
  const double half_ghz = 0.5 * line.fwhm_mhz * 1e-3;
  const double d = detuning_ghz - line.center_ghz;
  return half_ghz * half_ghz / (d * d + half_ghz * half_ghz);
}

double lorentzian_value(const LineShape& line, double detuning_ghz) {
  return line.background_per_ms +
         line.amplitude_per_ms * lorentzian_shape(line, detuning_ghz);
}

void Spectrum::check() const {
  if (detuning_ghz.size() != counts.size())
    throw std::domain_error("spectrum grid/count length mismatch");
  if (detuning_ghz.size() >= 2) {
    const bool ascending = detuning_ghz[1] > detuning_ghz[0];
    for (std::size_t i = 1; i < detuning_ghz.size(); ++i) {
      const bool ok = ascending ? detuning_ghz[i] > detuning_ghz[i - 1]
                                : detuning_ghz[i] < detuning_ghz[i - 1];
      if (!ok) throw std::domain_error("spectrum grid must be strictly monotone");
    }
  }
  if (!(dwell_ms >= 0.0)) throw std::domain_error("dwell must be non-negative");
}

Spectrum simulate_ple_scan(const LineShape& line,
                           const std::vector<double>& grid_ghz,
                           double dwell_ms, CounterRng& rng) {
  return simulate_ple_scan(line, grid_ghz, dwell_ms,
                           std::vector<double>(grid_ghz.size(), 1.0), rng);
}

Spectrum simulate_ple_scan(const LineShape& line,
                           const std::vector<double>& grid_ghz,
                           double dwell_ms,
                           const std::vector<double>& bright_occupancy,
                           CounterRng& rng) {
  line.check();
  if (bright_occupancy.size() != grid_ghz.size())
    throw std::domain_error("occupancy list must match the scan grid");
  Spectrum spec;
  spec.detuning_ghz = grid_ghz;
  spec.dwell_ms = dwell_ms;
  spec.counts.reserve(grid_ghz.size());
  for (std::size_t i = 0; i < grid_ghz.size(); ++i) {
    const double occ = std::clamp(bright_occupancy[i], 0.0, 1.0);
    const double mean =
        (line.background_per_ms +
         line.amplitude_per_ms * lorentzian_shape(line, grid_ghz[i]) * occ) *
        dwell_ms;
    spec.counts.push_back(rng.poisson(mean));
  }
  spec.check();
  return spec;
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double min_grid_spacing(const std::vector<double>& grid) {
  double spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < grid.size(); ++i)
    spacing = std::min(spacing, std::abs(grid[i] - grid[i - 1]));
  return spacing;
}

}  // namespace

LorentzianFit fit_lorentzian(const Spectrum& spec) {
  spec.check();
  const std::size_t n = spec.detuning_ghz.size();
  if (n < 5)
    throw std::domain_error("lorentzian fit requires at least 5 points");

  std::vector<double> y(n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = static_cast<double>(spec.counts[i]);
    w[i] = 1.0 / std::max(y[i], 1.0);
  }

  // Derivative-free starting point: peak at the maximum, background at the
  // median, width from the span of points above half maximum.
  const auto max_it = std::max_element(y.begin(), y.end());
  const std::size_t max_idx = static_cast<std::size_t>(max_it - y.begin());
  const double background0 = median_of(y);
  const double amplitude0 = std::max(*max_it - background0, 1e-3);
  const double half_level = background0 + 0.5 * amplitude0;
  double lo = spec.detuning_ghz[max_idx];
  double hi = spec.detuning_ghz[max_idx];
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] >= half_level) {
      lo = std::min(lo, spec.detuning_ghz[i]);
      hi = std::max(hi, spec.detuning_ghz[i]);
    }
  }
  const double spacing = min_grid_spacing(spec.detuning_ghz);
  const double fwhm0 = std::max(hi - lo, 2.0 * spacing);
  const double fwhm_floor = 0.25 * spacing;

  Eigen::VectorXd p0(4);
  p0 << spec.detuning_ghz[max_idx], fwhm0, amplitude0, background0;

  const ModelFn model = [](double x, const Eigen::VectorXd& p) {
    const double half = 0.5 * p(1);
    const double d = x - p(0);
    return p(3) + p(2) * half * half / (d * d + half * half);
  };
  const ProjectFn project = [fwhm_floor](Eigen::VectorXd& p) {
    p(1) = std::max(p(1), fwhm_floor);
    p(2) = std::max(p(2), 0.0);
    p(3) = std::max(p(3), 0.0);
  };

  const LevMarResult res =
      levmar_fit(model, spec.detuning_ghz, y, w, p0, project);
  if (!res.converged)
    throw FitError("lorentzian fit did not converge", res.iterations,
                   std::sqrt(res.chi2));

  LorentzianFit fit;
  fit.center_ghz = res.params(0);
  fit.fwhm_mhz = res.params(1) * 1e3;
  fit.amplitude = res.params(2);
  fit.background = res.params(3);
  fit.center_err_ghz = std::sqrt(std::max(res.covariance(0, 0), 0.0));
  fit.fwhm_err_mhz = std::sqrt(std::max(res.covariance(1, 1), 0.0)) * 1e3;
  fit.amplitude_err = std::sqrt(std::max(res.covariance(2, 2), 0.0));
  fit.background_err = std::sqrt(std::max(res.covariance(3, 3), 0.0));
  fit.converged = res.converged;
  fit.iterations = res.iterations;
  fit.chi2 = res.chi2;
  fit.significance =
      fit.amplitude_err > 0.0 ? fit.amplitude / fit.amplitude_err : 0.0;
  fit.peak_present = fit.significance >= 3.0;
  return fit;
}

const char* to_string(PeakDecision d) {
  return d == PeakDecision::Present ? "present" : "absent";
}

PeakDetection detect_peak(const Spectrum& spec) {
  PeakDetection det;
  LorentzianFit fit;
  try {
    fit = fit_lorentzian(spec);
  } catch (const FitError&) {
    det.decision = PeakDecision::Absent;
    return det;
  }
  det.fit = fit;
  det.significance = fit.significance;
  // A line narrower than the grid spacing is an unresolved noise spike, not
  // a peak.
  const bool resolved = fit.fwhm_mhz * 1e-3 >= min_grid_spacing(spec.detuning_ghz);
  det.decision = (fit.peak_present && resolved) ? PeakDecision::Present
                                                : PeakDecision::Absent;
  return det;
}

std::string spectrum_csv(const Spectrum& spec) {
  std::ostringstream out;
  out << "detuning_GHz,counts\n";
  for (std::size_t i = 0; i < spec.detuning_ghz.size(); ++i)
    out << num_str(spec.detuning_ghz[i]) << ',' << spec.counts[i] << '\n';
  return out.str();
}

std::string fit_json(const LorentzianFit& fit) {
  nlohmann::ordered_json j;
  j["center_GHz"] = fit.center_ghz;
  j["fwhm_MHz"] = fit.fwhm_mhz;
  j["amplitude"] = fit.amplitude;
  j["background"] = fit.background;
  j["stderr"] = {{"center_GHz", fit.center_err_ghz},
                 {"fwhm_MHz", fit.fwhm_err_mhz},
                 {"amplitude", fit.amplitude_err},
                 {"background", fit.background_err}};
  j["peak_present"] = fit.peak_present;
  return j.dump(2) + "\n";
}

}  // namespace pbv
