#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace rancm {

// Difficulty knob set for the generator. Bucket probabilities are identical
// across presets; update frequency, SLA band and breach probability tighten
// as intensity grows.
struct IntensityProfile {
  std::string name;

  // ICP selection buckets: shared / injected-coupling / unassigned.
  double shared_prob = 0.30;
  double injected_prob = 0.50;
  double unassigned_prob = 0.20;

  double update_freq = 0.0;   // per-step update probability
  double sla_band = 0.0;      // thresholds drawn from [0.9 - band, 0.9]
  double breach_prob = 0.0;   // per-update forced-breach probability

  // Expected fraction of rows carrying a conflict label, as a closed interval.
  double ratio_min = 0.0;
  double ratio_max = 0.0;

  static IntensityProfile low();
  static IntensityProfile medium();
  static IntensityProfile high();
  static std::optional<IntensityProfile> by_name(std::string_view name);
};

}  // namespace rancm
