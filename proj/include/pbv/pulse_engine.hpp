// Timed laser sequences: construction of the shelving, repump, and
// three-scan protocols, structural validation, and serialization.

#pragma once

#include <string>
#include <vector>

namespace pbv {

enum class PulseChannel { Resonant, Blue445, Green532, Off };
enum class PulseRole { Readout, Control, Wait };

const char* to_string(PulseChannel c);
const char* to_string(PulseRole r);

// One single-channel laser segment. Power is in nW for the resonant channel
// and in uW otherwise; detuning applies to the resonant channel only.
struct PulseSegment {
  PulseChannel channel = PulseChannel::Off;
  double power = 0.0;
  double duration_s = 0.0;
  PulseRole role = PulseRole::Wait;
  double detuning_ghz = 0.0;

  bool operator==(const PulseSegment&) const = default;
};

struct PulseSequence {
  std::vector<PulseSegment> segments;
  int repetitions = 1;

  double period_s() const;          // one pass over the segment list
  double total_duration_s() const;  // period_s() * repetitions

  bool operator==(const PulseSequence&) const = default;
};

// Power/duration pair for one laser pulse; units follow the channel it is
// used for (nW for resonant readout, uW for the control lasers).
struct LaserPulse {
  double power = 0.0;
  double duration_ms = 0.0;
};

// Readout/control alternation R,C,R,C,...,R followed by one green
// initialization segment. Requires n_readout = n_control + 1.
PulseSequence build_shelving_sequence(int n_readout, int n_control,
                                      LaserPulse readout, LaserPulse blue,
                                      LaserPulse green_init);

// One blue reset segment followed by the alternation R,G,R,G,...,R.
PulseSequence build_repump_sequence(int n_readout, int n_control,
                                    LaserPulse readout, LaserPulse green,
                                    LaserPulse blue_reset);

struct ScanSpec {
  double start_ghz = 4.5;
  double stop_ghz = -7.2;
  double step_ghz = 0.004;
  double dwell_ms = 2.0;
};

// Detuning grid of one scan: start towards stop in steps of |step_ghz|.
std::vector<double> scan_grid(const ScanSpec& scan);

// Three identical frequency scans with a blue control pulse between scans 1
// and 2 and a green control pulse between scans 2 and 3. The control pulses
// may only fire while the resonant laser is parked at |detuning| >=
// gate_detuning_ghz; if no scan boundary satisfies the gate this throws.
PulseSequence build_three_scan_ple_sequence(const ScanSpec& scan,
                                            LaserPulse blue, LaserPulse green,
                                            double gate_detuning_ghz = 4.0,
                                            double readout_power_nw = 2.0);

struct Violation {
  int segment_index;  // -1 for sequence-level violations
  std::string message;
};

// Structural checks; returns the list of violations instead of throwing.
std::vector<Violation> validate(const PulseSequence& seq);

// JSON serialization of the explicit segment list; parse(serialize(s)) == s.
std::string serialize_sequence(const PulseSequence& seq);
PulseSequence parse_sequence(const std::string& text);

}  // namespace pbv
