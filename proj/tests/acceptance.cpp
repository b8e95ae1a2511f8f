// Acceptance suite: one pass/fail line per criterion, non-zero exit when any
// criterion fails. Heavy training cells run in two worker threads.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <future>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "rancm/bench.hpp"
#include "rancm/control_loop.hpp"
#include "rancm/features.hpp"
#include "rancm/genc.hpp"
#include "rancm/graph.hpp"
#include "rancm/metrics.hpp"
#include "rancm/nn.hpp"
#include "rancm/opencellid.hpp"
#include "rancm/rng.hpp"
#include "rancm/rule_engine.hpp"
#include "rancm/scenario.hpp"
#include "rancm/stress.hpp"

using namespace rancm;
using rancm::testing::micro_model;
using rancm::testing::micro_record;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------------
// Criterion 1: rule-engine correctness.

Outcome criterion_rule_engine() {
  Outcome out;
  const SystemModel micro = micro_model();
  auto check = [&](int xapp, int icp, std::vector<int> vk,
                   ConflictLabel expected, const char* name) {
    const ConflictLabel got =
        annotate(micro_record(xapp, icp, std::move(vk)), micro.mappings).label;
    out.require(got == expected, std::string("micro case ") + name);
  };
  // Hand-traced suite, three or more cases per label.
  check(0, 2, {}, ConflictLabel::NoConflict, "empty vk");
  check(-1, -1, {0}, ConflictLabel::NoConflict, "missing rcp");
  check(0, 0, {0}, ConflictLabel::NoConflict, "sole manager exit");
  check(1, 1, {0}, ConflictLabel::NoConflict, "owned icp outside group");
  check(0, 2, {1}, ConflictLabel::Direct, "shared icp hits foreign kpi");
  check(1, 2, {0}, ConflictLabel::Direct, "shared icp other side");
  check(0, 2, {0, 1}, ConflictLabel::Direct, "severity over sole exit");
  check(0, 2, {2}, ConflictLabel::Direct, "co-managed kpi");
  check(0, 0, {1}, ConflictLabel::Indirect, "injected exclusive icp");
  check(1, 1, {3}, ConflictLabel::Indirect, "injected into third xapp");
  check(0, 0, {0, 1}, ConflictLabel::Indirect, "severity indirect");
  check(0, 3, {1}, ConflictLabel::Implicit, "unassigned icp a");
  check(1, 3, {0}, ConflictLabel::Implicit, "unassigned icp b");
  check(2, 3, {2}, ConflictLabel::Implicit, "unassigned icp c");

  // Re-annotating a generated dataset reproduces its stored labels.
  SystemModel model = synthesize_entities(5, 0.3, 1);
  auto profile = *IntensityProfile::by_name("medium");
  auto records = simulate_collect(model, profile, 200000, 50.0, 1);

  const auto start = std::chrono::steady_clock::now();
  std::size_t mismatches = 0;
  for (const auto& rec : records)
    if (annotate(rec, model.mappings).label != rec.label) ++mismatches;
  const double elapsed = seconds_since(start);

  out.require(mismatches == 0,
              fmt("%zu label mismatches on 200k rows", mismatches));
  out.require(elapsed < 1.0, fmt("re-annotation took %.2fs (budget 1s)", elapsed));
  out.note(fmt("14/14 micro cases, 200k rows re-annotated in %.3fs", elapsed));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 2: generator realism.

Outcome criterion_genc_realism() {
  Outcome out;
  SystemModel model = synthesize_entities(5, 0.3, 1);
  for (const char* name : {"low", "medium", "high"}) {
    auto profile = *IntensityProfile::by_name(name);
    const auto start = std::chrono::steady_clock::now();
    ConflictStats stats;
    simulate(model, profile, 1000000, 50.0, 1,
             [&](const SnapshotRecord& rec) { stats.add(rec.label, 0); });
    const double elapsed = seconds_since(start);

    const double ratio = stats.ratio();
    out.require(ratio >= profile.ratio_min && ratio <= profile.ratio_max,
                fmt("%s ratio %.4f outside [%.2f, %.2f]", name, ratio,
                    profile.ratio_min, profile.ratio_max));
    out.require(ratio < 0.10, fmt("%s ratio %.4f >= 10%%", name, ratio));
    out.require(elapsed < 300.0, fmt("%s took %.1fs (budget 300s)", name, elapsed));
    out.note(fmt("%s ratio %.4f in %.1fs", name, ratio, elapsed));

    if (std::strcmp(name, "medium") == 0) {
      const double conflicts = static_cast<double>(stats.conflict_rows());
      const double shares[3] = {stats.counts[1] / conflicts,
                                stats.counts[2] / conflicts,
                                stats.counts[3] / conflicts};
      const double targets[3] = {0.3, 0.5, 0.2};
      const char* names[3] = {"direct", "indirect", "implicit"};
      for (int i = 0; i < 3; ++i) {
        out.require(shares[i] >= targets[i] / 2.0 &&
                        shares[i] <= targets[i] * 2.0,
                    fmt("medium %s share %.3f not within 2x of %.1f", names[i],
                        shares[i], targets[i]));
      }
      out.note(fmt("medium mix %.3f/%.3f/%.3f", shares[0], shares[1], shares[2]));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 3: classifier fidelity.

EvalReport run_cell(const std::vector<SnapshotRecord>& records,
                    const std::vector<int>& labels, const SystemModel& model,
                    Architecture arch, std::vector<std::uint64_t> seeds) {
  EvalProtocol protocol;
  protocol.train.epochs = 12;
  protocol.train.batch = 64;
  protocol.train.lr = 0.08;
  protocol.train.hidden = 64;
  protocol.seeds = std::move(seeds);
  protocol.train_cap = 12000;
  protocol.test_cap = 25000;
  protocol.smote_target = 3500;
  protocol.with_latency = false;
  return evaluate(records, labels, arch, model, protocol);
}

// Splits the seed list across two workers and merges the per-run metrics.
EvalReport run_cell_parallel(const std::vector<SnapshotRecord>& records,
                             const std::vector<int>& labels,
                             const SystemModel& model, Architecture arch,
                             const std::vector<std::uint64_t>& seeds) {
  if (seeds.size() < 2)
    return run_cell(records, labels, model, arch, seeds);
  const std::size_t half = seeds.size() / 2;
  std::vector<std::uint64_t> first(seeds.begin(), seeds.begin() + half);
  std::vector<std::uint64_t> second(seeds.begin() + half, seeds.end());
  auto task = std::async(std::launch::async, [&] {
    return run_cell(records, labels, model, arch, first);
  });
  EvalReport b = run_cell(records, labels, model, arch, second);
  EvalReport a = task.get();

  EvalReport merged = a;
  merged.accuracy_runs.insert(merged.accuracy_runs.end(),
                              b.accuracy_runs.begin(), b.accuracy_runs.end());
  merged.macro_f1_runs.insert(merged.macro_f1_runs.end(),
                              b.macro_f1_runs.begin(), b.macro_f1_runs.end());
  merged.runs = static_cast<int>(merged.accuracy_runs.size());
  double acc_sum = 0, f1_sum = 0;
  for (double v : merged.accuracy_runs) acc_sum += v;
  for (double v : merged.macro_f1_runs) f1_sum += v;
  merged.accuracy_mean = acc_sum / merged.runs;
  merged.macro_f1_mean = f1_sum / merged.runs;
  merged.last_run = b.last_run;
  return merged;
}

Outcome criterion_classifiers() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::uint64_t> short_seeds = {1, 2};
  const std::vector<std::uint64_t> ordering_seeds = {1, 2, 3, 4, 5,
                                                     6, 7, 8, 9, 10};

  for (int m : {5, 10}) {
    SystemModel model = synthesize_entities(m, 0.3, 1);
    for (const char* intensity : {"low", "medium", "high"}) {
      auto profile = *IntensityProfile::by_name(intensity);
      auto records = simulate_collect(model, profile, 200000, 50.0, 1);
      std::vector<int> labels;
      labels.reserve(records.size());
      for (const auto& rec : records)
        labels.push_back(static_cast<int>(rec.label));

      const bool is_high = std::strcmp(intensity, "high") == 0;
      const bool ordering_cell = is_high && m == 5;

      // Plain message-passing model: gate at high intensity only.
      if (is_high) {
        EvalReport plain = run_cell_parallel(
            records, labels, model, Architecture::GraphMP,
            ordering_cell ? ordering_seeds : short_seeds);
        out.require(plain.accuracy_mean >= 97.0,
                    fmt("graphmp m=%d high accuracy %.2f < 97", m,
                        plain.accuracy_mean));
        out.note(fmt("graphmp m=%d high acc %.2f", m, plain.accuracy_mean));

        EvalReport balanced = run_cell_parallel(
            records, labels, model, Architecture::GraphMPSmote,
            ordering_cell ? ordering_seeds : short_seeds);
        out.require(balanced.accuracy_mean >= 99.5,
                    fmt("graphmp-smote m=%d high accuracy %.2f < 99.5", m,
                        balanced.accuracy_mean));
        out.require(balanced.macro_f1_mean >= 99.0,
                    fmt("graphmp-smote m=%d high macro-f1 %.2f < 99", m,
                        balanced.macro_f1_mean));
        out.note(fmt("graphmp-smote m=%d high acc %.2f f1 %.2f", m,
                     balanced.accuracy_mean, balanced.macro_f1_mean));

        if (ordering_cell) {
          int wins = 0;
          for (std::size_t i = 0; i < ordering_seeds.size(); ++i)
            if (balanced.macro_f1_runs[i] >= plain.macro_f1_runs[i]) ++wins;
          out.require(wins >= 8,
                      fmt("smote macro-f1 ordering holds in %d/10 seeds", wins));
          out.note(fmt("smote ordering %d/10", wins));
        }
      } else {
        EvalReport balanced = run_cell_parallel(
            records, labels, model, Architecture::GraphMPSmote, short_seeds);
        out.require(balanced.accuracy_mean >= 99.5,
                    fmt("graphmp-smote m=%d %s accuracy %.2f < 99.5", m,
                        intensity, balanced.accuracy_mean));
        out.require(balanced.macro_f1_mean >= 99.0,
                    fmt("graphmp-smote m=%d %s macro-f1 %.2f < 99", m,
                        intensity, balanced.macro_f1_mean));
        out.note(fmt("graphmp-smote m=%d %s acc %.2f f1 %.2f", m, intensity,
                     balanced.accuracy_mean, balanced.macro_f1_mean));
      }
    }
  }

  const double elapsed = seconds_since(start);
  out.require(elapsed < 1800.0, fmt("training took %.0fs (budget 1800s)", elapsed));
  out.note(fmt("total %.0fs", elapsed));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 4: numerical soundness.

Outcome criterion_numerics() {
  Outcome out;

  // Gradient checks on 20 random small models across both input kinds.
  const SystemModel micro = micro_model();
  std::vector<HeteroGraph> graphs = {
      encode_record(micro_record(0, 2, {1}), micro.mappings),
      encode_record(micro_record(0, 0, {1}), micro.mappings),
      encode_record(micro_record(1, 3, {0, 2}), micro.mappings),
      encode_record(micro_record(-1, -1, {}), micro.mappings)};
  double worst_grad = 0.0;
  for (int i = 0; i < 12; ++i) {
    ClassifierModel model =
        init_model(Architecture::GraphMP, kGraphFeatureWidth, 8, 1000 + i);
    worst_grad = std::max(
        worst_grad, gradient_check(model, graphs[i % graphs.size()], i % 4));
  }
  Eigen::VectorXd flat =
      tabular_features(micro_record(0, 2, {1}), micro.mappings);
  for (int i = 0; i < 8; ++i) {
    ClassifierModel model = init_model(Architecture::TabularBaseline,
                                       kTabularFeatureWidth, 8, 2000 + i);
    worst_grad = std::max(worst_grad, gradient_check(model, flat, i % 4));
  }
  out.require(worst_grad < 1e-4,
              fmt("gradient check max rel error %.2e >= 1e-4", worst_grad));
  out.note(fmt("gradcheck max %.2e over 20 models", worst_grad));

  // Softmax normalization over 10k random forwards.
  SystemModel model = synthesize_entities(5, 0.3, 2);
  auto profile = *IntensityProfile::by_name("medium");
  auto records = simulate_collect(model, profile, 10000, 50.0, 2);
  ClassifierModel net =
      init_model(Architecture::GraphMP, kGraphFeatureWidth, 64, 7);
  double worst_sum = 0.0;
  for (const auto& rec : records) {
    Eigen::VectorXd p = forward(net, encode_record(rec, model.mappings));
    worst_sum = std::max(worst_sum, std::abs(p.sum() - 1.0));
  }
  out.require(worst_sum < 1e-9,
              fmt("softmax deviation %.2e >= 1e-9 over 10k forwards", worst_sum));
  out.note(fmt("softmax max deviation %.2e", worst_sum));

  // Permutation invariance within 1e-12.
  Rng rng(3);
  double worst_perm = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto& rec = records[uniform_index(rng, records.size())];
    HeteroGraph g = encode_record(rec, model.mappings);
    const Eigen::VectorXd base = forward(net, g);

    const int n = g.node_count();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n; i > 1; --i)
      std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
    HeteroGraph shuffled;
    shuffled.kinds.resize(n);
    shuffled.features.resize(g.features.size());
    for (int i = 0; i < n; ++i) {
      shuffled.kinds[perm[i]] = g.kinds[i];
      std::copy(g.node_features(i), g.node_features(i) + kGraphFeatureWidth,
                shuffled.features.begin() +
                    static_cast<std::size_t>(perm[i]) * kGraphFeatureWidth);
    }
    for (auto [a, b] : g.edges)
      shuffled.edges.emplace_back(std::min(perm[a], perm[b]),
                                  std::max(perm[a], perm[b]));
    worst_perm = std::max(
        worst_perm, (base - forward(net, shuffled)).cwiseAbs().maxCoeff());
  }
  out.require(worst_perm < 1e-12,
              fmt("permutation deviation %.2e >= 1e-12", worst_perm));
  out.note(fmt("permutation max deviation %.2e", worst_perm));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 5: latency scaling.

std::vector<SnapshotRecord> scenario_rows(const Scenario& scenario, int n,
                                          std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SnapshotRecord> out;
  std::vector<double> icp = scenario.initial_icp;
  for (int i = 0; i < n; ++i) {
    SnapshotRecord rec;
    rec.t = i;
    const int p = static_cast<int>(uniform_index(rng, icp.size()));
    const auto& owners = scenario.model.mappings.p2x[p];
    icp[p] = uniform_in(rng, -60.0, 60.0);
    rec.rcp = Rcp{owners[uniform_index(rng, owners.size())], IcpId(p)};
    rec.icp_values = icp;
    rec.kpi_values.resize(scenario.model.k_count);
    scenario.surrogate.eval_all(rec.icp_values, rec.kpi_values);
    rec.sla = scenario.sla;
    for (int k = 0; k < scenario.model.k_count; ++k)
      if (rec.kpi_values[k] < rec.sla[k]) rec.vk.push_back(KpiId(k));
    rec.label = annotate(rec, scenario.model.mappings).label;
    out.push_back(std::move(rec));
  }
  return out;
}

Outcome criterion_latency() {
  Outcome out;

  // Rule engine on stress rows must slow down monotonically with m.
  std::vector<int> ms = {5, 10, 20, 30, 50};
  std::vector<double> rule_us;
  for (int m : ms) {
    SystemModel model = synthesize_entities(m, 0.3, 1);
    auto stress = make_stress_records(model, 20000, 2);
    BenchStats stats = bench_per_item(
        [&] {
          std::uint64_t acc = 0;
          for (const auto& rec : stress)
            acc += static_cast<std::uint64_t>(
                annotate(rec, model.mappings).label);
          do_not_optimize(acc);
        },
        stress.size(), 5);
    rule_us.push_back(stats.median_ns / 1000.0);
  }
  for (std::size_t i = 1; i < rule_us.size(); ++i)
    out.require(rule_us[i] > rule_us[i - 1],
                fmt("rule per-row time not monotone at m=%d (%.3f <= %.3f us)",
                    ms[i], rule_us[i], rule_us[i - 1]));
  out.note(fmt("rule us/row: %.2f %.2f %.2f %.2f %.2f", rule_us[0], rule_us[1],
               rule_us[2], rule_us[3], rule_us[4]));

  // Batched message-passing inference stays flat in m.
  auto profile = *IntensityProfile::by_name("medium");
  double graph_us_m5 = 0.0, graph_us_m50 = 0.0;
  for (int m : {5, 50}) {
    SystemModel model = synthesize_entities(m, 0.3, 1);
    auto records = simulate_collect(model, profile, 20000, 50.0, 3);
    TrainData samples;
    for (const auto& rec : records) {
      samples.graphs.push_back(encode_record(rec, model.mappings));
      samples.labels.push_back(0);
    }
    ClassifierModel net =
        init_model(Architecture::GraphMP, kGraphFeatureWidth, 64, 5);
    LatencyStats lat = measure_latency(net, samples, 512, 5, 20, 2);
    (m == 5 ? graph_us_m5 : graph_us_m50) = lat.median_us;
  }
  out.require(graph_us_m50 <= 1.5 * graph_us_m5,
              fmt("graphmp per-row at m=50 (%.2fus) > 1.5x m=5 (%.2fus)",
                  graph_us_m50, graph_us_m5));
  out.note(fmt("graphmp us/row m5 %.2f m50 %.2f", graph_us_m5, graph_us_m50));

  // ES/MRO rows: batched learned inference at or below the rule-engine loop.
  // Only rows with violations reach stage-2 classification, so those are the
  // rows both sides are timed on.
  Scenario scenario = es_mro_scenario();
  auto all_rows = scenario_rows(scenario, 60000, 4);
  std::vector<SnapshotRecord> rows;
  for (auto& rec : all_rows)
    if (!rec.vk.empty()) rows.push_back(std::move(rec));
  out.require(rows.size() > 5000, "too few classification-candidate rows");
  TrainData data;
  for (const auto& rec : rows) {
    data.flats.push_back(tabular_features(rec, scenario.model.mappings));
    data.labels.push_back(static_cast<int>(rec.label));
  }
  TrainConfig cfg;
  cfg.epochs = 10;
  cfg.hidden = 16;
  cfg.seed = 2;
  TrainOutcome trained = train(data, Architecture::TabularBaseline, cfg);
  out.require(trained.train_accuracy > 0.98,
              fmt("es/mro tabular train accuracy %.3f too low",
                  trained.train_accuracy));

  BenchStats rule_stats = bench_per_item(
      [&] {
        std::uint64_t acc = 0;
        for (const auto& rec : rows)
          acc += static_cast<std::uint64_t>(
              annotate(rec, scenario.model.mappings).label);
        do_not_optimize(acc);
      },
      rows.size(), 5);
  LatencyStats learned =
      measure_latency(trained.model, data, 1024, 5, 50, 2);
  const double rule_row_us = rule_stats.median_ns / 1000.0;
  out.require(learned.median_us <= rule_row_us,
              fmt("learned %.3fus/row > rule %.3fus/row on es/mro",
                  learned.median_us, rule_row_us));
  out.note(fmt("es/mro rule %.3fus vs learned %.3fus per row", rule_row_us,
               learned.median_us));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 6: closed loop.

Outcome criterion_closed_loop() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();

  Scenario scenario = es_mro_scenario();
  LoopResult result = run_control_loop(scenario, {}, 540);
  LoopResult again = run_control_loop(scenario, {}, 540);

  long violation_t = -1, trigger_t = -1, classification_t = -1,
       mitigation_t = -1;
  ConflictLabel label = ConflictLabel::NoConflict;
  for (const auto& e : result.events) {
    if (e.kind == "violation" && violation_t < 0) violation_t = e.t;
    if (e.kind == "trigger" && trigger_t < 0) trigger_t = e.t;
    if (e.kind == "classification" && classification_t < 0) {
      classification_t = e.t;
      label = e.label;
    }
    if (e.kind == "mitigation" && mitigation_t < 0) mitigation_t = e.t;
  }
  out.require(violation_t == 100, fmt("breach begins at t=%ld, expected 100", violation_t));
  out.require(trigger_t == violation_t + 10,
              fmt("trigger at t=%ld, expected %ld", trigger_t, violation_t + 10));
  out.require(classification_t == trigger_t && label == ConflictLabel::Direct,
              fmt("classification at t=%ld label %s", classification_t,
                  to_string(label)));
  out.require(mitigation_t == trigger_t, "mitigation did not follow the trigger");

  bool recovered = false;
  for (long t = mitigation_t; t > 0 && t <= mitigation_t + 5 &&
                              t < static_cast<long>(result.kpi_trace.size());
       ++t) {
    if (result.kpi_trace[t][0] >= scenario.sla[0] &&
        result.kpi_trace[t][1] >= scenario.sla[1] &&
        result.kpi_trace[t][2] >= scenario.sla[2]) {
      recovered = true;
      break;
    }
  }
  out.require(recovered, "TXP-coupled KPIs not above threshold within 5 steps");

  bool identical = result.events.size() == again.events.size();
  for (std::size_t i = 0; identical && i < result.events.size(); ++i)
    identical = result.events[i].t == again.events[i].t &&
                result.events[i].kind == again.events[i].kind &&
                result.events[i].value == again.events[i].value;
  out.require(identical, "event log is not deterministic across runs");

  const double elapsed = seconds_since(start);
  out.require(elapsed < 10.0, fmt("scenario took %.1fs (budget 10s)", elapsed));
  out.note(fmt("breach 100, trigger/classify/mitigate 110, direct, %.2fs",
               elapsed));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 7: topology ingestion.

Outcome criterion_ingestion() {
  Outcome out;
  const std::string fixture =
      std::string(RANCM_TEST_DATA_DIR) + "/opencellid_dublin.csv";
  CellFilter filter;
  filter.radio = "LTE";
  filter.mcc = 272;
  filter.net = 1;
  GeoBox bbox{53.320, 53.356, -6.305, -6.187};
  GeoWindow window{53.343, -6.262, 400.0, 500.0};
  IngestResult result = ingest_opencellid(fixture, filter, bbox, window);

  out.require(result.rows_seen == 20, fmt("fixture has %ld rows, expected 20",
                                          result.rows_seen));
  out.require(result.cells.size() == 13,
              fmt("%zu cells survived, expected 13", result.cells.size()));
  for (const Cell& c : result.cells) {
    out.require(std::abs(c.x) <= 200.0 && std::abs(c.y) <= 250.0,
                fmt("cell %lld projected outside the 400x500m window", c.id));
    out.require(c.radius > 0.0, fmt("cell %lld has no coverage radius", c.id));
  }
  out.note(fmt("13/20 rows inside the window, %ld malformed skipped",
               result.rows_malformed));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
      only = std::atoi(argv[i + 1]);

  struct Entry {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {1, "rule-engine correctness", criterion_rule_engine},
      {2, "generator realism", criterion_genc_realism},
      {3, "classifier fidelity", criterion_classifiers},
      {4, "numerical soundness", criterion_numerics},
      {5, "latency scaling", criterion_latency},
      {6, "closed loop", criterion_closed_loop},
      {7, "topology ingestion", criterion_ingestion},
  };

  bool all_pass = true;
  for (const Entry& entry : entries) {
    if (only != 0 && entry.id != only) continue;
    Outcome outcome = entry.run();
    std::printf("[%s] criterion %d: %s%s%s\n",
                outcome.pass ? "PASS" : "FAIL", entry.id, entry.name,
                outcome.detail.empty() ? "" : " — ",
                outcome.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
