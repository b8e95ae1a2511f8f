#include "rancm/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rancm {

using nlohmann::json;

Scenario es_mro_scenario() {
  Scenario s;
  s.name = "es-mro";
  s.xapp_names = {"ES", "MRO"};
  s.icp_names = {"TXP", "TTT", "CIO", "NL", "HYS", "RET"};
  s.kpi_names = {"EnergyEfficiency", "PowerConsumption", "Throughput",
                 "HandoverRate",     "CallDropRate",     "HandoverFailureRate"};

  SystemModel& m = s.model;
  m.m = 2;
  m.p_count = 6;
  m.k_count = 6;
  // ES(0) owns TXP and RET; MRO(1) owns TXP, TTT, CIO, NL, HYS. TXP is the
  // shared surface between the two.
  m.mappings.p2x = {{XAppId(0), XAppId(1)},  // TXP
                    {XAppId(1)},             // TTT
                    {XAppId(1)},             // CIO
                    {XAppId(1)},             // NL
                    {XAppId(1)},             // HYS
                    {XAppId(0)}};            // RET
  m.mappings.k2x = {{XAppId(0)}, {XAppId(0)}, {XAppId(1)},
                    {XAppId(1)}, {XAppId(1)}, {XAppId(1)}};
  const std::vector<IcpId> es_icps = {IcpId(0), IcpId(5)};
  const std::vector<IcpId> mro_icps = {IcpId(0), IcpId(1), IcpId(2), IcpId(3),
                                       IcpId(4)};
  m.mappings.p2k = {es_icps, es_icps, mro_icps, mro_icps, mro_icps, mro_icps};
  m.mappings.unassigned = {};
  m.exclusive_icp = {IcpId(5), IcpId(1)};
  m.exclusive_kpi = {KpiId(0), KpiId(2)};

  // Energy-side KPIs peak at low transmission power, throughput at high;
  // mobility KPIs sit at their drivers' initial positions.
  s.initial_icp = {25.0, 64.0, 0.0, 8.0, 3.0, 2.0};
  s.surrogate.responses = {
      {0, 10.0, 20.0},  // EnergyEfficiency   <- TXP
      {0, 10.0, 20.0},  // PowerConsumption   <- TXP
      {0, 40.0, 20.0},  // Throughput         <- TXP
      {1, 64.0, 30.0},  // HandoverRate       <- TTT
      {2, 0.0, 10.0},   // CallDropRate       <- CIO
      {4, 3.0, 5.0},    // HandoverFailureRate <- HYS
  };
  s.sla = {0.65, 0.65, 0.65, 0.60, 0.60, 0.60};
  s.duration = 540;
  s.pmon.persistence_required = 10;
  s.pmon.control_interval = 1;

  // The energy saver cuts power at t=100; throughput dips below threshold
  // and stays there until the loop intervenes.
  s.actions = {{100, 0, 0, 5.0}};

  s.ue_count = 117;
  s.ues_per_cell = 9;
  return s;
}

namespace {

json model_to_scenario_json(const SystemModel& m) {
  json j;
  j["m"] = m.m;
  j["p_count"] = m.p_count;
  j["k_count"] = m.k_count;
  auto table = [](const auto& t) {
    json arr = json::array();
    for (const auto& set : t) {
      json ids = json::array();
      for (auto id : set) ids.push_back(id.v);
      arr.push_back(std::move(ids));
    }
    return arr;
  };
  j["p2x"] = table(m.mappings.p2x);
  j["p2k"] = table(m.mappings.p2k);
  j["k2x"] = table(m.mappings.k2x);
  json un = json::array();
  for (auto id : m.mappings.unassigned) un.push_back(id.v);
  j["unassigned"] = std::move(un);
  json ei = json::array(), ek = json::array();
  for (auto id : m.exclusive_icp) ei.push_back(id.v);
  for (auto id : m.exclusive_kpi) ek.push_back(id.v);
  j["exclusive_icp"] = std::move(ei);
  j["exclusive_kpi"] = std::move(ek);
  return j;
}

SystemModel model_from_scenario_json(const json& j) {
  SystemModel m;
  m.m = j.at("m").get<int>();
  m.p_count = j.at("p_count").get<int>();
  m.k_count = j.at("k_count").get<int>();
  auto xapp_table = [](const json& arr) {
    std::vector<std::vector<XAppId>> t;
    for (const auto& set : arr) {
      std::vector<XAppId> ids;
      for (const auto& v : set) ids.push_back(XAppId(v.get<int>()));
      t.push_back(std::move(ids));
    }
    return t;
  };
  auto icp_table = [](const json& arr) {
    std::vector<std::vector<IcpId>> t;
    for (const auto& set : arr) {
      std::vector<IcpId> ids;
      for (const auto& v : set) ids.push_back(IcpId(v.get<int>()));
      t.push_back(std::move(ids));
    }
    return t;
  };
  m.mappings.p2x = xapp_table(j.at("p2x"));
  m.mappings.p2k = icp_table(j.at("p2k"));
  m.mappings.k2x = xapp_table(j.at("k2x"));
  for (const auto& v : j.at("unassigned"))
    m.mappings.unassigned.push_back(IcpId(v.get<int>()));
  for (const auto& v : j.at("exclusive_icp"))
    m.exclusive_icp.push_back(IcpId(v.get<int>()));
  for (const auto& v : j.at("exclusive_kpi"))
    m.exclusive_kpi.push_back(KpiId(v.get<int>()));
  return m;
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["model"] = model_to_scenario_json(s.model);
  j["xapp_names"] = s.xapp_names;
  j["icp_names"] = s.icp_names;
  j["kpi_names"] = s.kpi_names;
  json responses = json::array();
  for (const KpiResponse& r : s.surrogate.responses)
    responses.push_back({{"driving_icp", r.driving_icp},
                         {"center", r.center},
                         {"sigma", r.sigma}});
  j["responses"] = std::move(responses);
  j["sla"] = s.sla;
  j["initial_icp"] = s.initial_icp;
  j["duration"] = s.duration;
  j["persistence_required"] = s.pmon.persistence_required;
  j["control_interval"] = s.pmon.control_interval;
  j["classify_deadline_ms"] = s.pmon.classify_deadline_ms;
  json actions = json::array();
  for (const ScenarioAction& a : s.actions)
    actions.push_back(
        {{"t", a.t}, {"xapp", a.xapp}, {"icp", a.icp}, {"value", a.value}});
  j["actions"] = std::move(actions);
  j["ue_count"] = s.ue_count;
  j["ues_per_cell"] = s.ues_per_cell;
  return j.dump(2);
}

Scenario scenario_from_json(const std::string& text) {
  json j = json::parse(text);
  Scenario s;
  s.name = j.value("name", "custom");
  s.model = model_from_scenario_json(j.at("model"));
  s.xapp_names = j.at("xapp_names").get<std::vector<std::string>>();
  s.icp_names = j.at("icp_names").get<std::vector<std::string>>();
  s.kpi_names = j.at("kpi_names").get<std::vector<std::string>>();
  for (const auto& r : j.at("responses"))
    s.surrogate.responses.push_back({r.at("driving_icp").get<int>(),
                                     r.at("center").get<double>(),
                                     r.at("sigma").get<double>()});
  s.sla = j.at("sla").get<std::vector<double>>();
  s.initial_icp = j.at("initial_icp").get<std::vector<double>>();
  s.duration = j.value("duration", 540L);
  s.pmon.persistence_required = j.value("persistence_required", 10);
  s.pmon.control_interval = j.value("control_interval", 1);
  s.pmon.classify_deadline_ms = j.value("classify_deadline_ms", 1000.0);
  if (j.contains("actions"))
    for (const auto& a : j.at("actions"))
      s.actions.push_back({a.at("t").get<long>(), a.at("xapp").get<int>(),
                           a.at("icp").get<int>(), a.at("value").get<double>()});
  s.ue_count = j.value("ue_count", 0);
  s.ues_per_cell = j.value("ues_per_cell", 0);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scenario " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return scenario_from_json(ss.str());
}

}  // namespace rancm
