// Lorentzian line model, simulated frequency scans, and line fitting.

#pragma once

#include <string>
#include <vector>

#include "pbv/rng.hpp"

namespace pbv {

// Lorentzian line parameters. Amplitude and background are count rates per
// millisecond of dwell; expected counts in a dwell window scale with its
// length.
struct LineShape {
  double center_ghz = 0.0;
  double fwhm_mhz = 38.0;
  double amplitude_per_ms = 0.0;  // peak signal rate above background
  double background_per_ms = 0.0;

  void check() const;
};

// Unit-peak Lorentzian profile at the given detuning (1 at line center).
double lorentzian_shape(const LineShape& line, double detuning_ghz);

// Expected count rate per ms at the given detuning:
// background + amplitude * (G/2)^2 / ((d - center)^2 + (G/2)^2).
double lorentzian_value(const LineShape& line, double detuning_ghz);

struct Spectrum {
  std::vector<double> detuning_ghz;  // strictly monotone grid
  std::vector<long> counts;
  double dwell_ms = 1.0;

  void check() const;
};

// Poisson-sampled scan of a fully bright emitter.
Spectrum simulate_ple_scan(const LineShape& line,
                           const std::vector<double>& grid_ghz,
                           double dwell_ms, CounterRng& rng);

// Same with a per-point bright occupancy in [0, 1]; the occupancy scales the
// line signal while the background stays. Dark throughout gives background
// counts only.
Spectrum simulate_ple_scan(const LineShape& line,
                           const std::vector<double>& grid_ghz,
                           double dwell_ms,
                           const std::vector<double>& bright_occupancy,
                           CounterRng& rng);

// Lorentzian fit of one spectrum. Amplitude and background are in counts per
// dwell window of the fitted spectrum.
struct LorentzianFit {
  double center_ghz = 0.0;
  double fwhm_mhz = 0.0;
  double amplitude = 0.0;
  double background = 0.0;
  double center_err_ghz = 0.0;
  double fwhm_err_mhz = 0.0;
  double amplitude_err = 0.0;
  double background_err = 0.0;
  bool peak_present = false;  // amplitude at least 3x its standard error
  double significance = 0.0;  // amplitude / amplitude_err
  bool converged = false;
  int iterations = 0;
  double chi2 = 0.0;
};

// Weighted nonlinear least squares with Poisson weights 1/max(count, 1).
// Throws std::domain_error for fewer than 5 points or a non-monotone grid,
// FitError when the minimizer fails to converge.
LorentzianFit fit_lorentzian(const Spectrum& spec);

enum class PeakDecision { Present, Absent };

const char* to_string(PeakDecision d);

struct PeakDetection {
  PeakDecision decision = PeakDecision::Absent;
  double significance = 0.0;
  LorentzianFit fit;
};

// Presence test used by the three-scan reproduction: present when the fit
// converged with a 3-sigma amplitude and a width resolvable on the grid.
PeakDetection detect_peak(const Spectrum& spec);

std::string spectrum_csv(const Spectrum& spec);  // detuning_GHz,counts
std::string fit_json(const LorentzianFit& fit);

}  // namespace pbv
