#include "pbv/mechanism.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pbv/format.hpp"

namespace pbv {

const char* to_string(ChargeState s) {
  switch (s) {
    case ChargeState::NegOne: return "neg_one";
    case ChargeState::Neutral: return "neutral";
    case ChargeState::NegTwo: return "neg_two";
  }
  return "?";
}

const char* to_string(DarkStateHypothesis h) {
  switch (h) {
    case DarkStateHypothesis::Neutral: return "neutral";
    case DarkStateHypothesis::NegTwo: return "neg_two";
    case DarkStateHypothesis::Undetermined: return "undetermined";
  }
  return "?";
}

void TransitionThresholds::check() const {
  const double t[] = {neg_to_neutral_ev, neg_to_negtwo_ev, neutral_to_neg_ev,
                      negtwo_to_neg_ev};
  for (double v : t) {
    if (!(v > 0.0))
      throw std::domain_error("transition threshold must be positive");
    if (!(v < kDiamondBandGapEv))
      throw std::domain_error("transition threshold must lie below the band gap");
  }
}

double photon_energy_ev(double wavelength_nm) {
  if (!(wavelength_nm > 0.0))
    throw std::domain_error("wavelength must be positive");
  return kEvNmProduct / wavelength_nm;
}

PhotonOrder min_photon_order(double threshold_ev, double wavelength_nm,
                             int max_order) {
  if (!(threshold_ev > 0.0))
    throw std::domain_error("threshold energy must be positive");
  if (max_order < 1) throw std::domain_error("max_order must be at least 1");
  const double e_photon = photon_energy_ev(wavelength_nm);
  const int order = static_cast<int>(std::ceil(threshold_ev / e_photon));
  if (order > max_order) return PhotonOrder{};
  return PhotonOrder{order};
}

DarkStateHypothesis classify_dark_state(PhotonOrder shelve_order_blue,
                                        PhotonOrder repump_order_green) {
  if (!shelve_order_blue.feasible() || !repump_order_green.feasible())
    throw std::domain_error("classify_dark_state requires feasible photon orders");
  const int s = *shelve_order_blue.order;
  const int r = *repump_order_green.order;
  if (s == 1 && r == 2) return DarkStateHypothesis::Neutral;
  if (s == 2 && r == 1) return DarkStateHypothesis::NegTwo;
  return DarkStateHypothesis::Undetermined;
}

std::string photon_order_table_csv(const TransitionThresholds& thresholds,
                                   int max_order) {
  thresholds.check();
  struct Row {
    const char* transition;
    double threshold_ev;
  };
  const Row rows[] = {
      {"neg_to_neutral", thresholds.neg_to_neutral_ev},
      {"neg_to_negtwo", thresholds.neg_to_negtwo_ev},
      {"neutral_to_neg", thresholds.neutral_to_neg_ev},
      {"negtwo_to_neg", thresholds.negtwo_to_neg_ev},
  };
  const double wavelengths[] = {445.0, 532.0};

  std::ostringstream out;
  out << "transition,threshold_eV,wavelength_nm,photon_eV,order\n";
  for (const Row& row : rows) {
    for (double wl : wavelengths) {
      const PhotonOrder order = min_photon_order(row.threshold_ev, wl, max_order);
      out << row.transition << ',' << num_str(row.threshold_ev) << ','
          << num_str(wl) << ',' << num_str(photon_energy_ev(wl)) << ','
          << (order.feasible() ? std::to_string(*order.order)
                               : std::string("infeasible"))
          << '\n';
    }
  }
  return out.str();
}

}  // namespace pbv
