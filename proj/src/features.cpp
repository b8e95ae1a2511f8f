#include "rancm/features.hpp"

#include <algorithm>

#include "rancm/graph.hpp"

namespace rancm {

Eigen::VectorXd SkeletonCodec::flatten(const SnapshotRecord& rec) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(width());
  if (rec.rcp) {
    if (rec.rcp->xapp.v >= 0 && rec.rcp->xapp.v < m) v[rec.rcp->xapp.v] = 1.0;
    if (rec.rcp->icp.v >= 0 && rec.rcp->icp.v < p_count)
      v[m + rec.rcp->icp.v] = 1.0;
  }
  for (KpiId k : rec.vk)
    if (k.v >= 0 && k.v < k_count) v[m + p_count + k.v] = 1.0;

  const int base = m + p_count + k_count;
  if (rec.rcp && rec.rcp->icp.v >= 0 &&
      rec.rcp->icp.v < static_cast<int>(rec.icp_values.size()))
    v[base] = rec.icp_values[rec.rcp->icp.v] / kIcpValueScale;
  if (!rec.vk.empty()) {
    double sum = 0.0;
    double min_margin = 1.0;
    for (KpiId k : rec.vk) {
      if (k.v < 0 || k.v >= static_cast<int>(rec.kpi_values.size())) continue;
      sum += rec.kpi_values[k.v];
      min_margin = std::min(min_margin, rec.kpi_values[k.v] - rec.sla[k.v]);
    }
    v[base + 1] = sum / static_cast<double>(rec.vk.size());
    v[base + 2] = min_margin;
  }
  return v;
}

SnapshotRecord SkeletonCodec::rebuild(const Eigen::VectorXd& flat,
                                      const std::vector<double>& sla) const {
  SnapshotRecord rec;
  rec.icp_values.assign(p_count, 0.0);
  rec.kpi_values.assign(k_count, 1.0);
  rec.sla = sla;

  int best_x = -1, best_p = -1;
  double max_x = 0.5, max_p = 0.5;
  for (int i = 0; i < m; ++i)
    if (flat[i] > max_x) { max_x = flat[i]; best_x = i; }
  for (int i = 0; i < p_count; ++i)
    if (flat[m + i] > max_p) { max_p = flat[m + i]; best_p = i; }
  if (best_x >= 0 && best_p >= 0) rec.rcp = Rcp{XAppId(best_x), IcpId(best_p)};

  for (int i = 0; i < k_count; ++i)
    if (flat[m + p_count + i] > 0.5) rec.vk.push_back(KpiId(i));

  const int base = m + p_count + k_count;
  if (rec.rcp) rec.icp_values[rec.rcp->icp.v] = flat[base] * kIcpValueScale;
  const double kpi_mean = std::clamp(flat[base + 1], 1e-9, 1.0);
  for (KpiId k : rec.vk) rec.kpi_values[k.v] = kpi_mean;
  return rec;
}

Eigen::VectorXd tabular_features(const SnapshotRecord& rec,
                                 const MappingTables& t) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(kTabularFeatureWidth);
  const int k_count = static_cast<int>(t.p2k.size());
  const int p_count = static_cast<int>(t.p2x.size());

  if (!rec.rcp) return v;
  const XAppId xi = rec.rcp->xapp;
  const IcpId pc = rec.rcp->icp;
  const auto& xp = (pc.v >= 0 && pc.v < p_count) ? t.p2x[pc.v]
                                                 : std::vector<XAppId>{};

  v[0] = 1.0;                                     // has rcp
  v[1] = xp.size() == 2 ? 1.0 : 0.0;              // changed ICP is shared
  v[2] = t.is_unassigned(pc) ? 1.0 : 0.0;         // changed ICP is unassigned
  v[3] = static_cast<double>(xp.size()) / 2.0;    // |X_p|
  v[4] = k_count > 0 ? static_cast<double>(rec.vk.size()) / k_count : 0.0;

  if (!rec.vk.empty()) {
    double xk_sum = 0, pk_sum = 0;
    double in_group = 0, intersect = 0, xi_manages = 0, sole = 0, sole_xi = 0;
    double min_margin = 1.0, kpi_sum = 0.0;
    for (KpiId k : rec.vk) {
      if (k.v < 0 || k.v >= k_count) continue;
      const auto& xk = t.k2x[k.v];
      const auto& pk = t.p2k[k.v];
      xk_sum += static_cast<double>(xk.size());
      pk_sum += static_cast<double>(pk.size());
      const bool member = std::binary_search(pk.begin(), pk.end(), pc);
      if (member) in_group += 1.0;
      bool hit = false;
      for (XAppId x : xp)
        if (std::binary_search(xk.begin(), xk.end(), x)) hit = true;
      if (member && hit) intersect += 1.0;
      const bool manages = std::binary_search(xk.begin(), xk.end(), xi);
      if (manages) xi_manages += 1.0;
      if (xk.size() == 1) sole += 1.0;
      if (manages && xk.size() == 1) sole_xi += 1.0;
      if (k.v < static_cast<int>(rec.kpi_values.size())) {
        kpi_sum += rec.kpi_values[k.v];
        min_margin = std::min(min_margin, rec.kpi_values[k.v] - rec.sla[k.v]);
      }
    }
    const double n = static_cast<double>(rec.vk.size());
    v[5] = xk_sum / n / 2.0;                       // mean |X_k|
    v[6] = p_count > 0 ? pk_sum / n / p_count : 0; // mean |P_k|
    v[7] = in_group / n;
    v[8] = intersect / n;
    v[9] = xi_manages / n;
    v[10] = sole / n;
    v[11] = sole_xi / n;
    v[12] = kpi_sum / n;
    v[13] = min_margin;
  }
  if (pc.v >= 0 && pc.v < static_cast<int>(rec.icp_values.size()))
    v[14] = rec.icp_values[pc.v] / kIcpValueScale;
  return v;
}

}  // namespace rancm
