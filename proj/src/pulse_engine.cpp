#include "pbv/pulse_engine.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace pbv {

namespace {

constexpr double kMsToS = 1e-3;

PulseSegment readout_segment(LaserPulse readout, double detuning_ghz = 0.0) {
  return {PulseChannel::Resonant, readout.power, readout.duration_ms * kMsToS,
          PulseRole::Readout, detuning_ghz};
}

PulseSegment control_segment(PulseChannel channel, LaserPulse pulse) {
  return {channel, pulse.power, pulse.duration_ms * kMsToS, PulseRole::Control,
          0.0};
}

void require_positive_durations(std::initializer_list<LaserPulse> pulses) {
  for (const LaserPulse& p : pulses)
    if (!(p.duration_ms > 0.0))
      throw std::invalid_argument("pulse durations must be positive");
}

}  // namespace

const char* to_string(PulseChannel c) {
  switch (c) {
    case PulseChannel::Resonant: return "resonant";
    case PulseChannel::Blue445: return "blue445";
    case PulseChannel::Green532: return "green532";
    case PulseChannel::Off: return "off";
  }
  return "?";
}

const char* to_string(PulseRole r) {
  switch (r) {
    case PulseRole::Readout: return "readout";
    case PulseRole::Control: return "control";
    case PulseRole::Wait: return "wait";
  }
  return "?";
}

double PulseSequence::period_s() const {
  double t = 0.0;
  for (const PulseSegment& s : segments) t += s.duration_s;
  return t;
}

double PulseSequence::total_duration_s() const {
  return period_s() * repetitions;
}

PulseSequence build_shelving_sequence(int n_readout, int n_control,
                                      LaserPulse readout, LaserPulse blue,
                                      LaserPulse green_init) {
  if (n_readout != n_control + 1)
    throw std::invalid_argument(
        "shelving sequence requires n_readout = n_control + 1");
  if (n_control > 0)
    require_positive_durations({readout, blue, green_init});
  else
    require_positive_durations({readout, green_init});

  PulseSequence seq;
  seq.segments.reserve(static_cast<std::size_t>(n_readout + n_control + 1));
  for (int i = 0; i < n_readout; ++i) {
    if (i > 0) seq.segments.push_back(control_segment(PulseChannel::Blue445, blue));
    seq.segments.push_back(readout_segment(readout));
  }
  seq.segments.push_back(control_segment(PulseChannel::Green532, green_init));
  return seq;
}

PulseSequence build_repump_sequence(int n_readout, int n_control,
                                    LaserPulse readout, LaserPulse green,
                                    LaserPulse blue_reset) {
  if (n_readout != n_control + 1)
    throw std::invalid_argument(
        "repump sequence requires n_readout = n_control + 1");
  if (n_control > 0)
    require_positive_durations({readout, green, blue_reset});
  else
    require_positive_durations({readout, blue_reset});

  PulseSequence seq;
  seq.segments.reserve(static_cast<std::size_t>(n_readout + n_control + 1));
  seq.segments.push_back(control_segment(PulseChannel::Blue445, blue_reset));
  for (int i = 0; i < n_readout; ++i) {
    if (i > 0)
      seq.segments.push_back(control_segment(PulseChannel::Green532, green));
    seq.segments.push_back(readout_segment(readout));
  }
  return seq;
}

std::vector<double> scan_grid(const ScanSpec& scan) {
  if (!(std::abs(scan.step_ghz) > 0.0))
    throw std::invalid_argument("scan step must be nonzero");
  if (scan.stop_ghz == scan.start_ghz)
    throw std::invalid_argument("scan range must be non-degenerate");
  const double span = scan.stop_ghz - scan.start_ghz;
  const double step = std::copysign(std::abs(scan.step_ghz), span);
  const int n = static_cast<int>(std::floor(span / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid.push_back(scan.start_ghz + i * step);
  return grid;
}

PulseSequence build_three_scan_ple_sequence(const ScanSpec& scan,
                                            LaserPulse blue, LaserPulse green,
                                            double gate_detuning_ghz,
                                            double readout_power_nw) {
  if (!(scan.dwell_ms > 0.0))
    throw std::invalid_argument("scan dwell must be positive");
  require_positive_durations({blue, green});

  const std::vector<double> grid = scan_grid(scan);
  const double max_abs_detuning =
      std::max(std::abs(grid.front()), std::abs(grid.back()));
  if (max_abs_detuning < gate_detuning_ghz)
    throw std::invalid_argument(
        "control pulses cannot satisfy the detuning gate within the scan range");

  const LaserPulse readout{readout_power_nw, scan.dwell_ms};
  PulseSequence seq;
  seq.segments.reserve(3 * grid.size() + 2);
  auto append_scan = [&] {
    for (double detuning : grid)
      seq.segments.push_back(readout_segment(readout, detuning));
  };
  append_scan();
  seq.segments.push_back(control_segment(PulseChannel::Blue445, blue));
  append_scan();
  seq.segments.push_back(control_segment(PulseChannel::Green532, green));
  append_scan();
  return seq;
}

std::vector<Violation> validate(const PulseSequence& seq) {
  std::vector<Violation> violations;
  if (seq.segments.empty())
    violations.push_back({-1, "sequence has no segments"});
  if (seq.repetitions < 1)
    violations.push_back({-1, "repetitions must be at least 1"});
  for (std::size_t i = 0; i < seq.segments.size(); ++i) {
    const PulseSegment& s = seq.segments[i];
    const int idx = static_cast<int>(i);
    if (!(s.duration_s > 0.0))
      violations.push_back({idx, "segment duration must be positive"});
    if (s.power < 0.0)
      violations.push_back({idx, "segment power must be non-negative"});
    if (s.role == PulseRole::Readout && s.channel != PulseChannel::Resonant)
      violations.push_back({idx, "readout role requires the resonant channel"});
    if (s.channel != PulseChannel::Resonant && s.detuning_ghz != 0.0)
      violations.push_back({idx, "detuning applies to the resonant channel only"});
  }
  return violations;
}

namespace {

PulseChannel channel_from_string(const std::string& s) {
  if (s == "resonant") return PulseChannel::Resonant;
  if (s == "blue445") return PulseChannel::Blue445;
  if (s == "green532") return PulseChannel::Green532;
  if (s == "off") return PulseChannel::Off;
  throw std::invalid_argument("unknown pulse channel: " + s);
}

PulseRole role_from_string(const std::string& s) {
  if (s == "readout") return PulseRole::Readout;
  if (s == "control") return PulseRole::Control;
  if (s == "wait") return PulseRole::Wait;
  throw std::invalid_argument("unknown pulse role: " + s);
}

}  // namespace

std::string serialize_sequence(const PulseSequence& seq) {
  nlohmann::ordered_json j;
  j["repetitions"] = seq.repetitions;
  auto& segs = j["segments"] = nlohmann::ordered_json::array();
  for (const PulseSegment& s : seq.segments) {
    nlohmann::ordered_json seg;
    seg["channel"] = to_string(s.channel);
    seg["power"] = s.power;
    seg["duration_s"] = s.duration_s;
    seg["role"] = to_string(s.role);
    seg["detuning_GHz"] = s.detuning_ghz;
    segs.push_back(std::move(seg));
  }
  return j.dump(2) + "\n";
}

PulseSequence parse_sequence(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  PulseSequence seq;
  seq.repetitions = j.at("repetitions").get<int>();
  for (const auto& seg : j.at("segments")) {
    PulseSegment s;
    s.channel = channel_from_string(seg.at("channel").get<std::string>());
    s.power = seg.at("power").get<double>();
    s.duration_s = seg.at("duration_s").get<double>();
    s.role = role_from_string(seg.at("role").get<std::string>());
    s.detuning_ghz = seg.at("detuning_GHz").get<double>();
    seq.segments.push_back(s);
  }
  return seq;
}

}  // namespace pbv
