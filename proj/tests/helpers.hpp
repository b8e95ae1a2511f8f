#pragma once

#include <vector>

#include "rancm/model.hpp"
#include "rancm/record.hpp"

namespace rancm::testing {

// Hand-built relationship tables used across the rule-engine and graph
// tests: x0 owns p0/k0, x1 owns p1/k1, x2 owns p4/k3, p2 is shared by
// {x0,x1} and sits in both of their groups, p0 is injected into k1's group,
// p1 into k3's group, k2 is co-managed by {x0,x1}, and p3 is unassigned.
inline SystemModel micro_model() {
  SystemModel m;
  m.m = 3;
  m.p_count = 5;
  m.k_count = 4;
  m.mappings.p2x = {{XAppId(0)},
                    {XAppId(1)},
                    {XAppId(0), XAppId(1)},
                    {},
                    {XAppId(2)}};
  m.mappings.p2k = {{IcpId(0), IcpId(2)},
                    {IcpId(0), IcpId(1), IcpId(2)},
                    {IcpId(0), IcpId(1), IcpId(2)},
                    {IcpId(1), IcpId(4)}};
  m.mappings.k2x = {{XAppId(0)},
                    {XAppId(1)},
                    {XAppId(0), XAppId(1)},
                    {XAppId(2)}};
  m.mappings.unassigned = {IcpId(3)};
  m.exclusive_icp = {IcpId(0), IcpId(1), IcpId(4)};
  m.exclusive_kpi = {KpiId(0), KpiId(1), KpiId(3)};
  return m;
}

// A snapshot row over the micro model with the given RCP and violations.
inline SnapshotRecord micro_record(int xapp, int icp,
                                   std::vector<int> violated) {
  SnapshotRecord rec;
  rec.t = 0;
  if (xapp >= 0) rec.rcp = Rcp{XAppId(xapp), IcpId(icp)};
  rec.icp_values.assign(5, 0.0);
  if (icp >= 0) rec.icp_values[icp] = 33.0;
  rec.kpi_values.assign(4, 0.9);
  rec.sla.assign(4, 0.8);
  for (int k : violated) {
    rec.kpi_values[k] = 0.5;
    rec.vk.push_back(KpiId(k));
  }
  return rec;
}

}  // namespace rancm::testing
