#include "pbv/rate_model.hpp"

#include <cmath>
#include <stdexcept>

namespace pbv {

void RateParams::check() const {
  if (!(k_shelve >= 0.0) || !(k_repump >= 0.0))
    throw std::domain_error("rate coefficients must be non-negative");
  if (!(shelve_exponent > 0.0) || shelve_exponent > 4.0)
    throw std::domain_error("shelve_exponent must lie in (0, 4]");
  if (!(repump_exponent > 0.0) || repump_exponent > 4.0)
    throw std::domain_error("repump_exponent must lie in (0, 4]");
  if (!(leak_ratio >= 0.0))
    throw std::domain_error("leak_ratio must be non-negative");
  if (!(resonant_shelve_rate >= 0.0))
    throw std::domain_error("resonant_shelve_rate must be non-negative");
}

void Illumination::check() const {
  if (!(blue_uw >= 0.0) || !(green_uw >= 0.0) || !(resonant_nw >= 0.0))
    throw std::domain_error("laser powers must be non-negative");
}

double repump_rate_hz(const RateParams& params, const Illumination& illum) {
  if (illum.green_uw <= 0.0 || params.k_repump <= 0.0) return 0.0;
  return params.k_repump * std::pow(illum.green_uw, params.repump_exponent);
}

double shelving_rate_hz(const RateParams& params, const Illumination& illum) {
  double rate = 0.0;
  if (illum.blue_uw > 0.0 && params.k_shelve > 0.0)
    rate += params.k_shelve * std::pow(illum.blue_uw, params.shelve_exponent);
  rate += params.resonant_shelve_rate * illum.resonant_nw;
  rate += params.leak_ratio * repump_rate_hz(params, illum);
  return rate;
}

double steady_state_bright(double a_hz, double b_hz) {
  if (a_hz < 0.0 || b_hz < 0.0)
    throw std::domain_error("rates must be non-negative");
  const double total = a_hz + b_hz;
  if (total <= 0.0)
    throw std::domain_error("stationary distribution undefined for a = b = 0");
  return b_hz / total;
}

double evolve_population(double p0, double a_hz, double b_hz, double t_s) {
  if (p0 < 0.0 || p0 > 1.0)
    throw std::domain_error("initial population must lie in [0, 1]");
  if (t_s < 0.0) throw std::domain_error("time must be non-negative");
  const double total = a_hz + b_hz;
  if (total <= 0.0) return p0;
  const double p_ss = b_hz / total;
  return p_ss + (p0 - p_ss) * std::exp(-total * t_s);
}

}  // namespace pbv
