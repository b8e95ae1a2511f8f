#pragma once

#include <Eigen/Core>
#include <vector>

#include "rancm/model.hpp"
#include "rancm/record.hpp"

namespace rancm {

// Decodable flat view of a row: one-hot instructing xApp, one-hot changed
// ICP, multi-hot violated KPIs, then the changed value and a KPI summary.
// Interpolations of these vectors round back onto valid rows, which is what
// the oversampler relies on.
struct SkeletonCodec {
  int m = 0;
  int p_count = 0;
  int k_count = 0;

  int width() const { return m + p_count + k_count + 3; }

  Eigen::VectorXd flatten(const SnapshotRecord& rec) const;

  // Rounds indicators to {0,1} and rebuilds a row; absent one-hot blocks
  // (all entries < 0.5) yield an idle record.
  SnapshotRecord rebuild(const Eigen::VectorXd& flat,
                         const std::vector<double>& sla) const;
};

// Fixed-width membership flags and set sizes for the tabular baseline. Width
// is independent of the model dimensions.
constexpr int kTabularFeatureWidth = 15;
Eigen::VectorXd tabular_features(const SnapshotRecord& rec,
                                 const MappingTables& mappings);

}  // namespace rancm
