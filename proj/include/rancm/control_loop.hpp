#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rancm/cms.hpp"
#include "rancm/scenario.hpp"

namespace rancm {

struct LoopEvent {
  long t = 0;
  std::string kind;  // action | violation | recovery | trigger |
                     // classification | mitigation | timeout
  std::string detail;               // human-readable summary
  ConflictLabel label = ConflictLabel::NoConflict;  // classification only
  int icp = -1;
  int xapp = -1;
  double value = 0.0;
};

struct LoopResult {
  std::vector<LoopEvent> events;
  std::vector<std::vector<double>> kpi_trace;  // [t][kpi]
  std::vector<std::vector<double>> icp_trace;  // [t][icp]
  CmsState state;
  std::vector<double> final_kpis;
};

// Runs the detect -> classify -> mitigate cycle over the scenario script:
// apply scheduled actions, recompute KPIs through the surrogate, monitor
// thresholds, and on a persistence trigger classify and mitigate. Extra
// actions are merged with the scenario's own script.
LoopResult run_control_loop(const Scenario& scenario,
                            const std::vector<ScenarioAction>& extra_actions,
                            long steps, CdcClassifier classifier = {});

void write_events_jsonl(std::ostream& out, const LoopResult& result);
void write_kpi_trace_csv(std::ostream& out, const Scenario& scenario,
                         const LoopResult& result);

}  // namespace rancm
