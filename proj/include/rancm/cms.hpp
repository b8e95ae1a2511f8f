#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rancm/model.hpp"
#include "rancm/nn.hpp"
#include "rancm/record.hpp"
#include "rancm/rule_engine.hpp"

namespace rancm {

// Deterministic KPI response model used by the control loop and the
// mitigation search: each KPI follows a Gaussian bump over its driving ICP.
struct KpiResponse {
  int driving_icp = 0;
  double center = 0.0;
  double sigma = 1.0;
};

struct Surrogate {
  std::vector<KpiResponse> responses;  // by KPI index

  double eval(int kpi, std::span<const double> icp_values) const;
  void eval_all(std::span<const double> icp_values,
                std::span<double> kpi_values) const;
};

struct PmonConfig {
  int persistence_required = 10;  // seconds below threshold before a trigger
  int control_interval = 1;       // seconds per loop step
  double classify_deadline_ms = 1000.0;
};

// Breach bookkeeping: KPI -> step at which the current breach started.
struct PmonState {
  std::map<KpiId, long> breach_start;
};

struct PmonResult {
  std::vector<KpiId> newly_violated;
  std::vector<KpiId> recovered;
  std::vector<KpiId> persistent;  // violated for >= persistence_required
  bool trigger = false;
};

// Threshold monitor step. KPIs crossing below their threshold enter the
// store; recovered KPIs leave. The trigger fires once a breach has lasted
// exactly persistence_required steps (single-shot per breach episode).
PmonResult pmon_step(long t, std::span<const double> kpi_values,
                     std::span<const double> sla, PmonState& state,
                     const PmonConfig& cfg);

struct RcpEntry {
  long t = 0;
  std::optional<XAppId> actor;  // empty when the CMS itself applied the change
  IcpId icp;
  double old_value = 0.0;
  double new_value = 0.0;
};

struct CdcClassifier {
  enum class Kind { Rule, Learned };
  Kind kind = Kind::Rule;
  const ClassifierModel* model = nullptr;  // Learned only
};

struct CmsState {
  std::vector<RcpEntry> rcp_log;  // timestamps non-decreasing
  PmonState pmon;
  PmonConfig cfg;
  CdcClassifier classifier;
};

struct CdcOutcome {
  bool alarm = false;
  AnnotationResult annotation;
  SnapshotRecord record;  // the stage-2 input assembled from state
  std::string note;
  double classify_ms = 0.0;
  bool deadline_exceeded = false;
};

// Two-stage detection/classification. Stage 1 raises a binary alarm when a
// persistent violation coincides with a non-empty change log; stage 2 builds
// a snapshot from the latest change plus the persistent violations and runs
// the configured classifier.
CdcOutcome cdc_classify(const CmsState& state, const MappingTables& mappings,
                        long t, std::span<const double> icp_values,
                        std::span<const double> kpi_values,
                        std::span<const double> sla,
                        const std::vector<KpiId>& persistent_vk);

struct MitigationResult {
  IcpId icp;
  double old_value = 0.0;
  double new_value = 0.0;
  double margin_before = 0.0;  // min over affected KPIs of value - threshold
  double margin_after = 0.0;
  bool feasible = false;
  std::vector<KpiId> affected;
};

// Compromise-point search for the conflicted ICP: maximize the minimum SLA
// margin over every KPI the ICP drives. Coarse grid of 1001 points over
// +-3 sigma, then golden-section refinement around the best cell. The change
// is applied to icp_values and logged in state.rcp_log without an actor.
MitigationResult cmc_mitigate(const AnnotationResult& conflict, CmsState& state,
                              const Surrogate& surrogate,
                              std::span<const double> sla,
                              std::span<double> icp_values, IcpId conflicted,
                              long t);

}  // namespace rancm
