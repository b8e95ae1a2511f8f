#include "rancm/genc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rancm/rule_engine.hpp"

namespace rancm {

namespace {

template <typename T>
void insert_sorted(std::vector<T>& set, T value) {
  auto it = std::lower_bound(set.begin(), set.end(), value);
  if (it == set.end() || *it != value) set.insert(it, value);
}

// Picks two distinct xApp indices.
template <typename Urbg>
std::pair<int, int> two_distinct(Urbg& rng, int m) {
  int a = static_cast<int>(uniform_index(rng, m));
  int b = static_cast<int>(uniform_index(rng, m - 1));
  if (b >= a) ++b;
  return {a, b};
}

}  // namespace

SystemModel synthesize_entities(int m, double share_prob, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("xApp count must be at least 1");
  if (share_prob < 0.0 || share_prob >= 1.0)
    throw std::invalid_argument("share_prob must lie in [0, 1)");

  SystemModel model;
  model.m = m;
  model.p_count = icp_count_for(m);
  model.k_count = kpi_count_for(model.p_count);
  auto& t = model.mappings;
  t.p2x.assign(model.p_count, {});
  t.p2k.assign(model.k_count, {});
  t.k2x.assign(model.k_count, {});
  model.exclusive_icp.resize(m);
  model.exclusive_kpi.resize(m);

  Rng rng(seed);

  // Unique seeding: xApp i owns ICP i and manages KPI i.
  for (int i = 0; i < m; ++i) {
    t.p2x[i] = {XAppId(i)};
    model.exclusive_icp[i] = IcpId(i);
    t.k2x[i] = {XAppId(i)};
    model.exclusive_kpi[i] = KpiId(i);
  }

  // The last ICP never gets an owner; its tweaks surface as latent couplings.
  const int reserved_unassigned = model.p_count - 1;
  t.unassigned = {IcpId(reserved_unassigned)};

  // Controlled sharing over the remaining ICPs and KPIs.
  for (int p = m; p < reserved_unassigned; ++p) {
    if (m >= 2 && u01(rng) < share_prob) {
      auto [a, b] = two_distinct(rng, m);
      t.p2x[p] = {XAppId(std::min(a, b)), XAppId(std::max(a, b))};
    } else {
      t.p2x[p] = {XAppId(static_cast<int>(uniform_index(rng, m)))};
    }
  }
  for (int k = m; k < model.k_count; ++k) {
    if (m >= 2 && u01(rng) < share_prob) {
      auto [a, b] = two_distinct(rng, m);
      t.k2x[k] = {XAppId(std::min(a, b)), XAppId(std::max(a, b))};
    } else {
      t.k2x[k] = {XAppId(static_cast<int>(uniform_index(rng, m)))};
    }
  }

  // KPI groups: union of the ICPs owned by each manager.
  std::vector<std::vector<IcpId>> owned(m);
  for (int p = 0; p < model.p_count; ++p)
    for (XAppId x : t.p2x[p]) owned[x.v].push_back(IcpId(p));

  for (int k = 0; k < model.k_count; ++k) {
    for (XAppId x : t.k2x[k])
      for (IcpId p : owned[x.v]) insert_sorted(t.p2k[k], p);
  }

  // Latent-coupling injection: one single-owner ICP from a non-manager xApp
  // joins every group. Skipped when no foreign ICP exists (m == 1).
  for (int k = 0; k < model.k_count; ++k) {
    const auto& managers = t.k2x[k];
    std::vector<IcpId> eligible;
    for (int p = 0; p < model.p_count; ++p) {
      const auto& owners = t.p2x[p];
      if (owners.size() != 1) continue;
      if (std::binary_search(managers.begin(), managers.end(), owners[0])) continue;
      eligible.push_back(IcpId(p));
    }
    if (eligible.empty()) continue;
    IcpId pick = eligible[uniform_index(rng, eligible.size())];
    insert_sorted(t.p2k[k], pick);
  }

  return model;
}

IcpBuckets IcpBuckets::from_model(const SystemModel& model) {
  IcpBuckets b;
  b.shared = shared_bucket(model);
  b.injected = injected_bucket(model);
  b.unassigned = model.mappings.unassigned;
  return b;
}

double gaussian_response(double p_value, double xi, double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
  const double z = (p_value + xi) / sigma;
  return std::exp(-0.5 * z * z);
}

namespace {

constexpr double kDriftSpan = 70.0;  // parameter drift amplitude
constexpr double kNoiseSpan = 20.0;  // response noise amplitude

// Non-breach drifts keep the parameter in the outer band of the safe region,
// so values hover near their thresholds the way live alarm streams do.
constexpr double kComplementInnerFrac = 0.78;

// Simulation-internal latent couplings: each unassigned ICP silently drives a
// few KPIs through the response channel. The relationship tables never see
// these, which is exactly what makes the resulting violations implicit.
std::vector<std::vector<int>> hidden_couplings(const SystemModel& model,
                                               Rng& rng) {
  std::vector<std::vector<int>> hidden(model.p_count);
  const int k_count = model.k_count;
  const int per_icp = std::min(k_count, 4);
  for (IcpId p : model.mappings.unassigned) {
    std::vector<int> all(k_count);
    for (int k = 0; k < k_count; ++k) all[k] = k;
    for (int i = 0; i < per_icp; ++i) {
      int j = i + static_cast<int>(uniform_index(rng, all.size() - i));
      std::swap(all[i], all[j]);
    }
    hidden[p.v].assign(all.begin(), all.begin() + per_icp);
    std::sort(hidden[p.v].begin(), hidden[p.v].end());
  }
  return hidden;
}

}  // namespace

void simulate(const SystemModel& model, const IntensityProfile& profile,
              long t_max, double sigma, std::uint64_t seed,
              const RecordSink& sink) {
  if (t_max < 1) throw std::invalid_argument("t_max must be at least 1");
  if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");

  const auto& t = model.mappings;
  Rng rng(seed);

  // Fixed per-run state, drawn up front in a stable order.
  std::vector<double> sla(model.k_count);
  for (int k = 0; k < model.k_count; ++k) sla[k] = sample_threshold(rng, profile);

  const auto hidden = hidden_couplings(model, rng);

  // KPI index -> groups is inverted once into ICP -> affected KPIs.
  std::vector<std::vector<int>> affected(model.p_count);
  for (int k = 0; k < model.k_count; ++k)
    for (IcpId p : t.p2k[k]) affected[p.v].push_back(k);
  for (int p = 0; p < model.p_count; ++p)
    for (int k : hidden[p]) insert_sorted(affected[p], k);

  const IcpBuckets buckets = IcpBuckets::from_model(model);

  std::vector<double> icp_values(model.p_count, 0.0);
  std::vector<double> kpi_values(model.k_count);
  for (int k = 0; k < model.k_count; ++k)
    kpi_values[k] =
        gaussian_response(0.0, uniform_in(rng, -kNoiseSpan, kNoiseSpan), sigma);

  SnapshotRecord rec;
  rec.sla = sla;

  for (long step = 0; step < t_max; ++step) {
    rec.t = step;
    rec.rcp.reset();
    rec.vk.clear();

    if (u01(rng) < profile.update_freq) {
      const IcpId icp = select_icp(buckets, profile, rng);
      const auto& kpis = affected[icp.v];

      // Stratified drift: with probability breach_prob the new position lands
      // in the breach region of the lowest-threshold affected KPI, otherwise
      // in its complement. The region test uses its own noise draw; each KPI
      // still responds with fresh noise below.
      double tau_min = 1.0;
      for (int k : kpis) tau_min = std::min(tau_min, sla[k]);
      const double radius = sigma * std::sqrt(-2.0 * std::log(tau_min));
      const bool force_breach = u01(rng) < profile.breach_prob;
      const double xi_shape = uniform_in(rng, -kNoiseSpan, kNoiseSpan);

      const double p_old = icp_values[icp.v];
      const double inner = radius * kComplementInnerFrac;
      double p_new = p_old;
      bool accepted = false;
      for (int attempt = 0; attempt < 64 && !accepted; ++attempt) {
        const double candidate = p_old + uniform_in(rng, -kDriftSpan, kDriftSpan);
        const double displaced = std::abs(candidate + xi_shape);
        const bool ok = force_breach ? displaced > radius
                                     : displaced >= inner && displaced <= radius;
        if (ok) {
          p_new = candidate;
          accepted = true;
        }
      }
      if (!accepted) {
        // Place the value directly in the requested region.
        const double sign = u01(rng) < 0.5 ? -1.0 : 1.0;
        const double mag = force_breach
                               ? radius + uniform_in(rng, 0.5, 45.0)
                               : uniform_in(rng, inner, radius * 0.999);
        p_new = sign * mag - xi_shape;
      }
      icp_values[icp.v] = p_new;

      // Instructing xApp: a random owner, or any xApp when nobody owns it.
      const auto& owners = t.p2x[icp.v];
      XAppId instructing =
          owners.empty()
              ? XAppId(static_cast<int>(uniform_index(rng, model.m)))
              : owners[uniform_index(rng, owners.size())];
      rec.rcp = Rcp{instructing, icp};

      // The violation set records every affected KPI the update left below
      // its threshold: the alarm state attributable to this change.
      for (int k : kpis) {
        const double value =
            gaussian_response(p_new, uniform_in(rng, -kNoiseSpan, kNoiseSpan), sigma);
        kpi_values[k] = value;
        if (value < sla[k]) rec.vk.push_back(KpiId(k));
      }
      std::sort(rec.vk.begin(), rec.vk.end());
    }

    rec.icp_values = icp_values;
    rec.kpi_values = kpi_values;
    rec.label = annotate_label(rec, t);
    sink(rec);
  }
}

std::vector<SnapshotRecord> simulate_collect(const SystemModel& model,
                                             const IntensityProfile& profile,
                                             long t_max, double sigma,
                                             std::uint64_t seed) {
  std::vector<SnapshotRecord> out;
  out.reserve(static_cast<std::size_t>(t_max));
  simulate(model, profile, t_max, sigma, seed,
           [&out](const SnapshotRecord& rec) { out.push_back(rec); });
  return out;
}

}  // namespace rancm
