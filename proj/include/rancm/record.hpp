#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "rancm/ids.hpp"
#include "rancm/model.hpp"

namespace rancm {

// Most recent parameter change: instructing xApp plus the ICP it touched.
struct Rcp {
  XAppId xapp;
  IcpId icp;

  friend bool operator==(const Rcp&, const Rcp&) = default;
};

// One timestamped simulation row. `vk` holds only KPIs that crossed below
// their threshold at this step; KPIs already below at t-1 are not repeated.
struct SnapshotRecord {
  long t = 0;
  std::optional<Rcp> rcp;
  std::vector<double> icp_values;
  std::vector<double> kpi_values;
  std::vector<double> sla;
  std::vector<KpiId> vk;  // sorted
  ConflictLabel label = ConflictLabel::NoConflict;

  friend bool operator==(const SnapshotRecord&, const SnapshotRecord&) = default;
};

// Dataset CSV layout:
//   t,rcp_xapp,rcp_icp,p_0..p_{P-1},k_0..k_{K-1},sla_0..sla_{K-1},vk,p_k,x_k,x_p,label
// vk/p_k/x_k/x_p are semicolon-separated index lists; empty optionals
// serialize as empty strings. Doubles are printed with 17 significant digits
// so parse(write(r)) == r.
void write_csv_header(std::ostream& out, int p_count, int k_count);
void write_csv_row(std::ostream& out, const SnapshotRecord& rec,
                   const MappingTables& mappings);

class DatasetReader {
 public:
  explicit DatasetReader(const std::string& path);

  int p_count() const { return p_count_; }
  int k_count() const { return k_count_; }

  // Returns the next record, or nullopt at end of file.
  std::optional<SnapshotRecord> next();

 private:
  std::ifstream in_;
  std::string path_;
  int p_count_ = 0;
  int k_count_ = 0;
  long row_ = 0;
};

}  // namespace rancm
