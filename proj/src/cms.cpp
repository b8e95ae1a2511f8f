#include "rancm/cms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "rancm/features.hpp"
#include "rancm/golden.hpp"
#include "rancm/graph.hpp"

namespace rancm {

double Surrogate::eval(int kpi, std::span<const double> icp_values) const {
  const KpiResponse& r = responses[kpi];
  const double z = (icp_values[r.driving_icp] - r.center) / r.sigma;
  return std::exp(-0.5 * z * z);
}

void Surrogate::eval_all(std::span<const double> icp_values,
                         std::span<double> kpi_values) const {
  for (std::size_t k = 0; k < responses.size(); ++k)
    kpi_values[k] = eval(static_cast<int>(k), icp_values);
}

PmonResult pmon_step(long t, std::span<const double> kpi_values,
                     std::span<const double> sla, PmonState& state,
                     const PmonConfig& cfg) {
  PmonResult result;
  for (std::size_t k = 0; k < kpi_values.size(); ++k) {
    const KpiId kpi(static_cast<int>(k));
    const bool breached = kpi_values[k] < sla[k];
    auto it = state.breach_start.find(kpi);
    if (breached) {
      if (it == state.breach_start.end()) {
        state.breach_start.emplace(kpi, t);
        result.newly_violated.push_back(kpi);
      } else if (t - it->second >= cfg.persistence_required) {
        result.persistent.push_back(kpi);
        // Single shot: the trigger fires the step the persistence window is
        // first met, not on every later step of the same episode.
        if (t - it->second == cfg.persistence_required) result.trigger = true;
      }
    } else if (it != state.breach_start.end()) {
      state.breach_start.erase(it);
      result.recovered.push_back(kpi);
    }
  }
  return result;
}

CdcOutcome cdc_classify(const CmsState& state, const MappingTables& mappings,
                        long t, std::span<const double> icp_values,
                        std::span<const double> kpi_values,
                        std::span<const double> sla,
                        const std::vector<KpiId>& persistent_vk) {
  CdcOutcome out;
  out.alarm = !persistent_vk.empty() && !state.rcp_log.empty();

  out.record.t = t;
  out.record.icp_values.assign(icp_values.begin(), icp_values.end());
  out.record.kpi_values.assign(kpi_values.begin(), kpi_values.end());
  out.record.sla.assign(sla.begin(), sla.end());
  out.record.vk = persistent_vk;

  if (persistent_vk.empty()) {
    out.note = "no persistent violation";
    return out;
  }
  if (state.rcp_log.empty()) {
    // Alarm context without any recorded change; nothing to attribute.
    out.note = "alarm with empty change log";
    return out;
  }

  const RcpEntry& last = state.rcp_log.back();
  if (last.actor) out.record.rcp = Rcp{*last.actor, last.icp};

  const auto before = std::chrono::steady_clock::now();
  if (state.classifier.kind == CdcClassifier::Kind::Learned &&
      state.classifier.model != nullptr) {
    const ClassifierModel& model = *state.classifier.model;
    int pred;
    if (model.enc.kind == "graph")
      pred = predict(model, encode_record(out.record, mappings));
    else
      pred = predict(model, tabular_features(out.record, mappings));
    out.annotation.label = static_cast<ConflictLabel>(pred);
    out.annotation.v_size = static_cast<int>(persistent_vk.size());
    out.note = "learned classifier";
  } else {
    out.annotation = annotate(out.record, mappings);
    out.note = "rule classifier";
  }
  const auto after = std::chrono::steady_clock::now();
  out.classify_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
          after - before)
          .count();
  out.deadline_exceeded = out.classify_ms > state.cfg.classify_deadline_ms;
  return out;
}

MitigationResult cmc_mitigate(const AnnotationResult& conflict, CmsState& state,
                              const Surrogate& surrogate,
                              std::span<const double> sla,
                              std::span<double> icp_values, IcpId conflicted,
                              long t) {
  MitigationResult result;
  result.icp = conflicted;
  result.old_value = icp_values[conflicted.v];

  double sigma_max = 0.0;
  for (std::size_t k = 0; k < surrogate.responses.size(); ++k) {
    if (surrogate.responses[k].driving_icp == conflicted.v) {
      result.affected.push_back(KpiId(static_cast<int>(k)));
      sigma_max = std::max(sigma_max, surrogate.responses[k].sigma);
    }
  }
  if (result.affected.empty() || conflict.label == ConflictLabel::NoConflict) {
    result.new_value = result.old_value;
    return result;
  }

  auto margin_at = [&](double p) {
    double worst = 2.0;
    for (KpiId k : result.affected) {
      const KpiResponse& r = surrogate.responses[k.v];
      const double z = (p - r.center) / r.sigma;
      worst = std::min(worst, std::exp(-0.5 * z * z) - sla[k.v]);
    }
    return worst;
  };

  result.margin_before = margin_at(result.old_value);

  constexpr int kGridPoints = 1001;
  const double lo = -3.0 * sigma_max;
  const double hi = 3.0 * sigma_max;
  const double step = (hi - lo) / (kGridPoints - 1);
  double best_p = lo;
  double best_margin = margin_at(lo);
  for (int i = 1; i < kGridPoints; ++i) {
    const double p = lo + step * i;
    const double m = margin_at(p);
    if (m > best_margin) {
      best_margin = m;
      best_p = p;
    }
  }

  const double refined = golden_section_max(
      margin_at, std::max(lo, best_p - step), std::min(hi, best_p + step),
      1e-9 * (hi - lo));
  if (margin_at(refined) > best_margin) best_p = refined;

  result.new_value = best_p;
  result.margin_after = margin_at(best_p);
  result.feasible = result.margin_after > 0.0;

  icp_values[conflicted.v] = best_p;
  state.rcp_log.push_back(
      {t, std::nullopt, conflicted, result.old_value, best_p});
  return result;
}

}  // namespace rancm
