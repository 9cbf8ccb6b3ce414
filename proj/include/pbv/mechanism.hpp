// Energy-budget model of the charge-state cycle: photon energies, ionization
// thresholds, minimal photon order per transition, dark-state identification.

#pragma once

#include <optional>
#include <string>

namespace pbv {

// Charge states of the defect. NegOne is the only state that fluoresces
// under resonant excitation.
enum class ChargeState { NegOne, Neutral, NegTwo };

const char* to_string(ChargeState s);

inline constexpr double kEvNmProduct = 1239.84193;  // hc, eV * nm
inline constexpr double kDiamondBandGapEv = 5.47;

// Threshold optical energies for the four charge transitions, in eV.
// These are configuration inputs, not computed quantities.
struct TransitionThresholds {
  double neg_to_neutral_ev = 2.6;
  double neg_to_negtwo_ev = 3.5;
  double neutral_to_neg_ev = 2.9;
  double negtwo_to_neg_ev = 2.0;

  void check() const;  // throws std::domain_error on violation
};

double photon_energy_ev(double wavelength_nm);

// Number of photons needed to reach a threshold, or infeasible when it
// exceeds max_order.
struct PhotonOrder {
  std::optional<int> order;

  bool feasible() const { return order.has_value(); }
  bool operator==(const PhotonOrder&) const = default;
};

PhotonOrder min_photon_order(double threshold_ev, double wavelength_nm,
                             int max_order = 2);

enum class DarkStateHypothesis { Neutral, NegTwo, Undetermined };

const char* to_string(DarkStateHypothesis h);

// Identifies the dark state from the observed photon orders: a one-photon
// blue shelve plus a two-photon green repump points at the neutral state;
// the swapped pair points at the doubly negative state.
DarkStateHypothesis classify_dark_state(PhotonOrder shelve_order_blue,
                                        PhotonOrder repump_order_green);

// CSV table of photon orders for the four transitions at the two control
// wavelengths (445 nm and 532 nm).
// Columns: transition,threshold_eV,wavelength_nm,photon_eV,order
std::string photon_order_table_csv(const TransitionThresholds& thresholds = {},
                                   int max_order = 2);

}  // namespace pbv
