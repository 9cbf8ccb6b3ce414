// Transition-rate laws of the bright/dark charge cycle and the closed-form
// two-state master-equation solution used as the Monte Carlo oracle.

#pragma once

namespace pbv {

// Photo-physical rate coefficients of the two-state charge model.
//
// Shelving (bright -> dark) is k_shelve * blue^m plus a resonant-power term
// and a leak proportional to the instantaneous repump rate. Repumping
// (dark -> bright) is k_repump * green^n. The proportional leak reproduces a
// power-independent stationary bright population of 1 / (1 + leak_ratio).
struct RateParams {
  double k_shelve = 32.0;       // Hz per uW^shelve_exponent of 445 nm power
  double shelve_exponent = 1.0;
  double k_repump = 0.0;        // Hz per uW^repump_exponent of 532 nm power;
                                // experiment-specific, no universal default
  double repump_exponent = 2.0;
  double leak_ratio = 0.1236;   // dark leak as a fraction of the repump rate
  double resonant_shelve_rate = 0.0;  // Hz per nW of resonant readout power

  void check() const;  // throws std::domain_error on invariant violation
};

struct Illumination {
  double blue_uw = 0.0;
  double green_uw = 0.0;
  double resonant_nw = 0.0;

  void check() const;
};

// Total bright -> dark rate in Hz.
double shelving_rate_hz(const RateParams& params, const Illumination& illum);

// Dark -> bright rate in Hz.
double repump_rate_hz(const RateParams& params, const Illumination& illum);

// Stationary bright population b / (a + b) of the two-state process with
// bright -> dark rate a and dark -> bright rate b. Requires a + b > 0.
double steady_state_bright(double a_hz, double b_hz);

// Closed-form bright population after time t:
//   p(t) = p_ss + (p0 - p_ss) * exp(-(a + b) t)
// For a + b = 0 the population is frozen at p0.
double evolve_population(double p0, double a_hz, double b_hz, double t_s);

}  // namespace pbv
