#pragma once

#include <cstdint>
#include <vector>

#include "rancm/model.hpp"
#include "rancm/record.hpp"

namespace rancm {

// Worst-case classification rows for throughput benchmarks: every KPI is
// marked violated and the changed ICP is a shared one, so the per-row work
// scales with the full KPI count and the widest owner/manager sets.
std::vector<SnapshotRecord> make_stress_records(const SystemModel& model,
                                                int rows, std::uint64_t seed);

}  // namespace rancm
