#include "rancm/intensity.hpp"

namespace rancm {

IntensityProfile IntensityProfile::low() {
  IntensityProfile p;
  p.name = "low";
  p.update_freq = 0.05;
  p.sla_band = 0.30;
  p.breach_prob = 0.03;
  p.ratio_min = 0.01;
  p.ratio_max = 0.04;
  return p;
}

IntensityProfile IntensityProfile::medium() {
  IntensityProfile p;
  p.name = "medium";
  p.update_freq = 0.10;
  p.sla_band = 0.20;
  p.breach_prob = 0.06;
  p.ratio_min = 0.05;
  p.ratio_max = 0.07;
  return p;
}

IntensityProfile IntensityProfile::high() {
  IntensityProfile p;
  p.name = "high";
  p.update_freq = 0.15;
  p.sla_band = 0.15;
  p.breach_prob = 0.10;
  p.ratio_min = 0.08;
  p.ratio_max = 0.10;
  return p;
}

std::optional<IntensityProfile> IntensityProfile::by_name(std::string_view name) {
  if (name == "low") return low();
  if (name == "medium") return medium();
  if (name == "high") return high();
  return std::nullopt;
}

}  // namespace rancm
