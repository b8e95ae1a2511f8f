#include "rancm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "rancm/features.hpp"
#include "rancm/rng.hpp"
#include "rancm/smote.hpp"

namespace rancm {

ClassScores score(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size() || labels.empty())
    throw std::invalid_argument("predictions/labels size mismatch or empty");

  ClassScores s;
  std::uint64_t correct = 0;
  std::array<std::uint64_t, 4> predicted{};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int t = labels[i];
    const int p = predictions[i];
    ++s.confusion[t][p];
    ++s.support[t];
    ++predicted[p];
    if (t == p) ++correct;
  }
  s.accuracy = 100.0 * static_cast<double>(correct) /
               static_cast<double>(labels.size());

  double f1_sum = 0.0;
  int f1_classes = 0;
  for (int c = 0; c < 4; ++c) {
    const double tp = static_cast<double>(s.confusion[c][c]);
    s.precision[c] = predicted[c] ? tp / static_cast<double>(predicted[c]) : 0.0;
    s.recall[c] = s.support[c] ? tp / static_cast<double>(s.support[c]) : 0.0;
    const double pr = s.precision[c] + s.recall[c];
    s.f1[c] = pr > 0.0 ? 2.0 * s.precision[c] * s.recall[c] / pr : 0.0;
    if (s.support[c] > 0 || predicted[c] > 0) {
      f1_sum += s.f1[c];
      ++f1_classes;
    }
  }
  s.macro_f1 = f1_classes ? 100.0 * f1_sum / f1_classes : 0.0;
  return s;
}

Split split_stratified(std::span<const int> labels, double test_frac,
                       std::uint64_t seed) {
  std::array<std::vector<std::size_t>, 4> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i)
    by_class[labels[i]].push_back(i);

  Split split;
  Rng rng(seed ^ 0xd1b54a32d192ed03ull);
  for (auto& members : by_class) {
    for (std::size_t i = members.size(); i > 1; --i)
      std::swap(members[i - 1], members[uniform_index(rng, i)]);
    const std::size_t n_test =
        static_cast<std::size_t>(std::round(test_frac * members.size()));
    for (std::size_t i = 0; i < members.size(); ++i)
      (i < n_test ? split.test : split.train).push_back(members[i]);
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

namespace {

// Uniform down-sample that keeps the original mix; no-op when cap is 0.
std::vector<std::size_t> capped(std::vector<std::size_t> idx, std::size_t cap,
                                Rng& rng) {
  if (cap == 0 || idx.size() <= cap) return idx;
  for (std::size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[uniform_index(rng, i)]);
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  return idx;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double se_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return std::sqrt(var / static_cast<double>(v.size() - 1) /
                   static_cast<double>(v.size()));
}

}  // namespace

EvalReport evaluate(const std::vector<SnapshotRecord>& records,
                    const std::vector<int>& labels, Architecture arch,
                    const SystemModel& model, const EvalProtocol& protocol) {
  if (records.size() != labels.size() || records.empty())
    throw std::invalid_argument("records/labels size mismatch or empty test data");

  const MappingTables& mappings = model.mappings;
  const bool graph_mode = arch != Architecture::TabularBaseline;
  const SkeletonCodec codec{model.m, model.p_count, model.k_count};
  const std::vector<double> sla =
      records.front().sla;  // thresholds are fixed per dataset

  EvalReport report;
  report.method = to_string(arch);
  TrainData last_test;

  for (std::uint64_t seed : protocol.seeds) {
    Rng cap_rng(seed ^ 0xa0761d6478bd642full);
    Split split = split_stratified(labels, protocol.test_frac, seed);
    split.train = capped(std::move(split.train), protocol.train_cap, cap_rng);
    split.test = capped(std::move(split.test), protocol.test_cap, cap_rng);
    if (split.test.empty()) throw std::invalid_argument("empty test split");

    TrainData train_data;
    if (arch == Architecture::GraphMPSmote) {
      // Balance in flat space, then re-encode the rounded rows as graphs.
      std::vector<Eigen::VectorXd> flats;
      std::vector<int> flat_labels;
      flats.reserve(split.train.size());
      for (std::size_t idx : split.train) {
        flats.push_back(codec.flatten(records[idx]));
        flat_labels.push_back(labels[idx]);
      }
      SmoteResult balanced = smote(flats, flat_labels, protocol.smote_k,
                                   protocol.smote_target, seed);
      train_data.graphs.reserve(balanced.rows.size());
      for (std::size_t i = 0; i < balanced.rows.size(); ++i) {
        if (i < balanced.original_count) {
          train_data.graphs.push_back(
              encode_record(records[split.train[i]], mappings));
        } else {
          SnapshotRecord synthetic = codec.rebuild(balanced.rows[i], sla);
          train_data.graphs.push_back(encode_record(synthetic, mappings));
        }
        train_data.labels.push_back(balanced.labels[i]);
      }
    } else if (graph_mode) {
      train_data.graphs.reserve(split.train.size());
      for (std::size_t idx : split.train) {
        train_data.graphs.push_back(encode_record(records[idx], mappings));
        train_data.labels.push_back(labels[idx]);
      }
    } else {
      train_data.flats.reserve(split.train.size());
      for (std::size_t idx : split.train) {
        train_data.flats.push_back(tabular_features(records[idx], mappings));
        train_data.labels.push_back(labels[idx]);
      }
    }

    TrainConfig cfg = protocol.train;
    cfg.seed = seed;
    TrainOutcome outcome = train(train_data, arch, cfg);

    TrainData test_data;
    std::vector<int> truth;
    truth.reserve(split.test.size());
    for (std::size_t idx : split.test) {
      if (graph_mode)
        test_data.graphs.push_back(encode_record(records[idx], mappings));
      else
        test_data.flats.push_back(tabular_features(records[idx], mappings));
      test_data.labels.push_back(labels[idx]);
      truth.push_back(labels[idx]);
    }

    std::vector<int> preds;
    preds.reserve(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i)
      preds.push_back(graph_mode ? predict(outcome.model, test_data.graphs[i])
                                 : predict(outcome.model, test_data.flats[i]));

    ClassScores scores = score(preds, truth);
    report.accuracy_runs.push_back(scores.accuracy);
    report.macro_f1_runs.push_back(scores.macro_f1);
    report.last_run = scores;

    if (seed == protocol.seeds.back() && protocol.with_latency) {
      last_test = std::move(test_data);
      report.latency = measure_latency(outcome.model, last_test,
                                       protocol.latency_batch,
                                       protocol.latency_trials, 100,
                                       protocol.latency_threads);
    }
  }

  report.runs = static_cast<int>(protocol.seeds.size());
  report.accuracy_mean = mean_of(report.accuracy_runs);
  report.accuracy_se = se_of(report.accuracy_runs, report.accuracy_mean);
  report.macro_f1_mean = mean_of(report.macro_f1_runs);
  report.macro_f1_se = se_of(report.macro_f1_runs, report.macro_f1_mean);
  return report;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["method"] = report.method;
  j["runs"] = report.runs;
  j["accuracy"] = {{"mean", report.accuracy_mean}, {"se", report.accuracy_se}};
  j["macro_f1"] = {{"mean", report.macro_f1_mean}, {"se", report.macro_f1_se}};
  j["accuracy_runs"] = report.accuracy_runs;
  j["macro_f1_runs"] = report.macro_f1_runs;
  j["latency_us"] = {{"mean", report.latency.mean_us},
                     {"se", report.latency.se_us},
                     {"median", report.latency.median_us}};
  nlohmann::json per_class = nlohmann::json::array();
  for (int c = 0; c < 4; ++c)
    per_class.push_back(
        {{"label", to_string(static_cast<ConflictLabel>(c))},
         {"precision", report.last_run.precision[c]},
         {"recall", report.last_run.recall[c]},
         {"f1", report.last_run.f1[c]},
         {"support", report.last_run.support[c]}});
  j["per_class_last_run"] = std::move(per_class);
  nlohmann::json confusion = nlohmann::json::array();
  for (int t = 0; t < 4; ++t) {
    nlohmann::json row = nlohmann::json::array();
    for (int p = 0; p < 4; ++p) row.push_back(report.last_run.confusion[t][p]);
    confusion.push_back(std::move(row));
  }
  j["confusion_last_run"] = std::move(confusion);
  return j.dump(2);
}

}  // namespace rancm
