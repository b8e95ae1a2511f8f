#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rancm/ids.hpp"

namespace rancm {

// Four-way outcome of conflict classification for a snapshot row.
enum class ConflictLabel { NoConflict, Direct, Indirect, Implicit };

const char* to_string(ConflictLabel label);
std::optional<ConflictLabel> label_from_string(std::string_view text);

// Aggregation order when a row touches several violated KPIs:
// Direct > Indirect > Implicit > NoConflict.
int label_severity(ConflictLabel label);
ConflictLabel worse_label(ConflictLabel a, ConflictLabel b);

// Relationship tables shared by the generator, the rule engine and the
// control loop. All id sets are kept sorted so that serialization and
// iteration order are reproducible.
struct MappingTables {
  std::vector<std::vector<XAppId>> p2x;  // by ICP index; empty means unassigned
  std::vector<std::vector<IcpId>> p2k;   // by KPI index: its parameter group
  std::vector<std::vector<XAppId>> k2x;  // by KPI index: managing xApps
  std::vector<IcpId> unassigned;         // sorted

  bool is_unassigned(IcpId p) const;

  friend bool operator==(const MappingTables&, const MappingTables&) = default;
};

struct SystemModel {
  int m = 0;        // xApp count
  int p_count = 0;  // ICP count
  int k_count = 0;  // KPI count
  MappingTables mappings;
  std::vector<IcpId> exclusive_icp;  // by xApp index
  std::vector<KpiId> exclusive_kpi;  // by xApp index

  friend bool operator==(const SystemModel&, const SystemModel&) = default;
};

// Entity counts as a function of the xApp count. The KPI count floors the
// halved ICP count so odd totals stay integral.
int icp_count_for(int m);
int kpi_count_for(int p_count);

// Returns one message per broken structural invariant; empty means valid.
std::vector<std::string> validate_model(const SystemModel& model);

// Derived ICP buckets used by the update sampler.
std::vector<IcpId> shared_bucket(const SystemModel& model);    // two owners
std::vector<IcpId> injected_bucket(const SystemModel& model);  // sits in a group none of whose managers own it

// Generation parameters stored alongside a dataset so any consumer can
// rebuild the exact relationship context.
struct ModelMeta {
  SystemModel model;
  std::uint64_t seed = 0;
  double share_prob = 0.0;
  double sigma = 0.0;
  std::string profile;  // "low" | "medium" | "high" | free-form

  friend bool operator==(const ModelMeta&, const ModelMeta&) = default;
};

std::string model_meta_to_json(const ModelMeta& meta);
ModelMeta model_meta_from_json(const std::string& text);
void save_model_meta(const ModelMeta& meta, const std::string& path);
ModelMeta load_model_meta(const std::string& path);

// Conventional sidecar path for a dataset CSV ("data.csv" -> "data.meta.json").
std::string sidecar_path_for(const std::string& csv_path);

}  // namespace rancm
