#pragma once

#include <string>
#include <vector>

#include "rancm/cms.hpp"
#include "rancm/model.hpp"
#include "rancm/opencellid.hpp"

namespace rancm {

// A scheduled xApp action: set an ICP to a value at a step.
struct ScenarioAction {
  long t = 0;
  int xapp = 0;
  int icp = 0;
  double value = 0.0;
};

// Closed-loop scenario: a hand-built system model (names instead of the
// synthesized p_i/k_j symbols), the deterministic KPI surrogate, fixed
// thresholds and a script of xApp actions. Topology cells only feed
// metadata and exports; KPIs are driven by the surrogate.
struct Scenario {
  std::string name;
  SystemModel model;
  std::vector<std::string> xapp_names;
  std::vector<std::string> icp_names;
  std::vector<std::string> kpi_names;
  Surrogate surrogate;
  std::vector<double> sla;
  std::vector<double> initial_icp;
  long duration = 540;
  PmonConfig pmon;
  std::vector<ScenarioAction> actions;
  std::vector<Cell> cells;
  int ue_count = 0;
  int ues_per_cell = 0;
};

// Two-xApp energy-saving vs mobility preset. TXP is owned by both xApps; the
// scripted power cut at t=100 pushes Throughput below its threshold, which
// the loop must classify as a direct conflict and mitigate.
Scenario es_mro_scenario();

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace rancm
