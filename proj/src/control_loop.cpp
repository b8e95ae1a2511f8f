#include "rancm/control_loop.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

namespace rancm {

LoopResult run_control_loop(const Scenario& scenario,
                            const std::vector<ScenarioAction>& extra_actions,
                            long steps, CdcClassifier classifier) {
  LoopResult result;
  result.state.cfg = scenario.pmon;
  result.state.classifier = classifier;

  std::vector<ScenarioAction> script = scenario.actions;
  script.insert(script.end(), extra_actions.begin(), extra_actions.end());
  std::stable_sort(script.begin(), script.end(),
                   [](const ScenarioAction& a, const ScenarioAction& b) {
                     return a.t < b.t;
                   });

  std::vector<double> icp = scenario.initial_icp;
  std::vector<double> kpi(scenario.model.k_count, 0.0);
  std::size_t next_action = 0;

  const long total = steps > 0 ? steps : scenario.duration;
  result.kpi_trace.reserve(total);
  result.icp_trace.reserve(total);

  for (long t = 0; t < total; ++t) {
    // Scheduled xApp actions land first.
    while (next_action < script.size() && script[next_action].t == t) {
      const ScenarioAction& a = script[next_action++];
      result.state.rcp_log.push_back(
          {t, XAppId(a.xapp), IcpId(a.icp), icp[a.icp], a.value});
      icp[a.icp] = a.value;
      result.events.push_back({t, "action",
                               scenario.xapp_names[a.xapp] + " set " +
                                   scenario.icp_names[a.icp],
                               ConflictLabel::NoConflict, a.icp, a.xapp,
                               a.value});
    }

    scenario.surrogate.eval_all(icp, kpi);

    PmonResult pmon =
        pmon_step(t, kpi, scenario.sla, result.state.pmon, result.state.cfg);
    for (KpiId k : pmon.newly_violated)
      result.events.push_back({t, "violation", scenario.kpi_names[k.v],
                               ConflictLabel::NoConflict, -1, -1, kpi[k.v]});
    for (KpiId k : pmon.recovered)
      result.events.push_back({t, "recovery", scenario.kpi_names[k.v],
                               ConflictLabel::NoConflict, -1, -1, kpi[k.v]});

    if (pmon.trigger) {
      result.events.push_back(
          {t, "trigger", "persistence window met", ConflictLabel::NoConflict,
           -1, -1, 0.0});
      CdcOutcome cdc =
          cdc_classify(result.state, scenario.model.mappings, t, icp, kpi,
                       scenario.sla, pmon.persistent);
      result.events.push_back({t, "classification", cdc.note,
                               cdc.annotation.label,
                               cdc.record.rcp ? cdc.record.rcp->icp.v : -1,
                               cdc.record.rcp ? cdc.record.rcp->xapp.v : -1,
                               0.0});
      if (cdc.deadline_exceeded)
        result.events.push_back({t, "timeout",
                                 "classification exceeded deadline",
                                 ConflictLabel::NoConflict, -1, -1,
                                 cdc.classify_ms});

      if (cdc.annotation.label != ConflictLabel::NoConflict && cdc.record.rcp) {
        MitigationResult fix =
            cmc_mitigate(cdc.annotation, result.state, scenario.surrogate,
                         scenario.sla, icp, cdc.record.rcp->icp, t);
        result.events.push_back(
            {t, "mitigation",
             scenario.icp_names[fix.icp.v] + (fix.feasible ? "" : " (best effort)"),
             cdc.annotation.label, fix.icp.v, -1, fix.new_value});
      }
    }

    result.kpi_trace.push_back(kpi);
    result.icp_trace.push_back(icp);
  }

  result.final_kpis = kpi;
  return result;
}

void write_events_jsonl(std::ostream& out, const LoopResult& result) {
  for (const LoopEvent& e : result.events) {
    nlohmann::json j;
    j["t"] = e.t;
    j["kind"] = e.kind;
    j["detail"] = e.detail;
    if (e.kind == "classification" || e.kind == "mitigation")
      j["label"] = to_string(e.label);
    if (e.icp >= 0) j["icp"] = e.icp;
    if (e.xapp >= 0) j["xapp"] = e.xapp;
    j["value"] = e.value;
    out << j.dump() << "\n";
  }
}

void write_kpi_trace_csv(std::ostream& out, const Scenario& scenario,
                         const LoopResult& result) {
  out << "t";
  for (const auto& name : scenario.kpi_names) out << "," << name;
  for (const auto& name : scenario.kpi_names) out << ",sla_" << name;
  out << ",events\n";

  std::vector<std::string> events_at(result.kpi_trace.size());
  for (const LoopEvent& e : result.events) {
    if (e.t < 0 || e.t >= static_cast<long>(events_at.size())) continue;
    if (!events_at[e.t].empty()) events_at[e.t] += ';';
    events_at[e.t] += e.kind;
  }

  char buf[32];
  for (std::size_t t = 0; t < result.kpi_trace.size(); ++t) {
    out << t;
    for (double v : result.kpi_trace[t]) {
      std::snprintf(buf, sizeof(buf), ",%.6f", v);
      out << buf;
    }
    for (double v : scenario.sla) {
      std::snprintf(buf, sizeof(buf), ",%.6f", v);
      out << buf;
    }
    out << "," << events_at[t] << "\n";
  }
}

}  // namespace rancm
