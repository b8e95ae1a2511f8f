#include "rancm/stress.hpp"

#include "rancm/rng.hpp"

namespace rancm {

std::vector<SnapshotRecord> make_stress_records(const SystemModel& model,
                                                int rows, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<IcpId> shared = shared_bucket(model);
  if (shared.empty()) shared.push_back(model.exclusive_icp.front());

  std::vector<KpiId> all_kpis;
  all_kpis.reserve(model.k_count);
  for (int k = 0; k < model.k_count; ++k) all_kpis.push_back(KpiId(k));

  std::vector<SnapshotRecord> out;
  out.reserve(rows);
  for (int i = 0; i < rows; ++i) {
    SnapshotRecord rec;
    rec.t = i;
    const IcpId icp = shared[uniform_index(rng, shared.size())];
    const auto& owners = model.mappings.p2x[icp.v];
    rec.rcp = Rcp{owners[uniform_index(rng, owners.size())], icp};
    rec.icp_values.assign(model.p_count, 0.0);
    rec.icp_values[icp.v] = uniform_in(rng, -70.0, 70.0);
    rec.kpi_values.assign(model.k_count, 0.5);
    rec.sla.assign(model.k_count, 0.8);
    rec.vk = all_kpis;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace rancm
