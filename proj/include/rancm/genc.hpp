#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rancm/intensity.hpp"
#include "rancm/model.hpp"
#include "rancm/record.hpp"
#include "rancm/rng.hpp"

namespace rancm {

// Builds the xApp/ICP/KPI ecosystem:
//   1. P = 2m + m/2 ICPs and K = P/2 KPIs.
//   2. Every xApp gets one exclusive ICP and one exclusive KPI.
//   3. Remaining ICPs/KPIs go to two distinct xApps with probability
//      share_prob, otherwise to a single one.
//   4. Each KPI group is the union of its managers' ICPs.
//   5. One foreign single-owner ICP is injected into every group.
//   6. The last ICP is kept unassigned.
// Throws std::invalid_argument for m < 1 or share_prob outside [0, 1).
SystemModel synthesize_entities(int m, double share_prob, std::uint64_t seed);

// Per-KPI SLA threshold, uniform over [0.9 - band, 0.9].
template <typename Urbg>
double sample_threshold(Urbg& rng, const IntensityProfile& profile) {
  return 0.9 - profile.sla_band * u01(rng);
}

// Bucket view of a model's ICPs for the update sampler.
struct IcpBuckets {
  std::vector<IcpId> shared;
  std::vector<IcpId> injected;
  std::vector<IcpId> unassigned;

  static IcpBuckets from_model(const SystemModel& model);
};

// Picks the ICP to update: bucket first (shared 0.30 / injected 0.50 /
// unassigned 0.20), then uniform within the bucket. Empty buckets are
// skipped by renormalizing over the remaining probability mass.
template <typename Urbg>
IcpId select_icp(const IcpBuckets& buckets, const IntensityProfile& profile,
                 Urbg& rng) {
  double w_shared = buckets.shared.empty() ? 0.0 : profile.shared_prob;
  double w_injected = buckets.injected.empty() ? 0.0 : profile.injected_prob;
  double w_unassigned = buckets.unassigned.empty() ? 0.0 : profile.unassigned_prob;
  const double total = w_shared + w_injected + w_unassigned;
  if (total <= 0.0) throw std::invalid_argument("all ICP buckets are empty");

  const double u = u01(rng) * total;
  const std::vector<IcpId>* bucket;
  if (u < w_shared) bucket = &buckets.shared;
  else if (u < w_shared + w_injected) bucket = &buckets.injected;
  else bucket = &buckets.unassigned;
  return (*bucket)[uniform_index(rng, bucket->size())];
}

template <typename Urbg>
IcpId select_icp(const SystemModel& model, const IntensityProfile& profile,
                 Urbg& rng) {
  return select_icp(IcpBuckets::from_model(model), profile, rng);
}

// KPI response to a parameter position: exp(-(p + xi)^2 / (2 sigma^2)).
// Always in (0, 1]; peaks when p + xi = 0. Throws for sigma <= 0.
double gaussian_response(double p_value, double xi, double sigma);

using RecordSink = std::function<void(const SnapshotRecord&)>;

// Runs the stochastic simulation for t_max steps and hands every emitted row
// to `sink` in time order. Identical arguments produce bit-identical streams.
void simulate(const SystemModel& model, const IntensityProfile& profile,
              long t_max, double sigma, std::uint64_t seed,
              const RecordSink& sink);

std::vector<SnapshotRecord> simulate_collect(const SystemModel& model,
                                             const IntensityProfile& profile,
                                             long t_max, double sigma,
                                             std::uint64_t seed);

}  // namespace rancm
