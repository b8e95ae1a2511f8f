#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rancm/nn.hpp"
#include "rancm/record.hpp"

namespace rancm {

// Per-class precision/recall/F1 plus the 4x4 confusion matrix for one
// prediction set. Macro-F1 averages the classes that occur in the truth or
// the predictions; a class absent from both does not dilute the mean.
struct ClassScores {
  double accuracy = 0.0;  // percent
  double macro_f1 = 0.0;  // percent
  std::array<double, 4> precision{};
  std::array<double, 4> recall{};
  std::array<double, 4> f1{};
  std::array<std::uint64_t, 4> support{};
  std::array<std::array<std::uint64_t, 4>, 4> confusion{};  // [truth][pred]
};

ClassScores score(std::span<const int> predictions, std::span<const int> labels);

// Aggregate over repeated train/evaluate runs.
struct EvalReport {
  std::string method;
  double accuracy_mean = 0.0, accuracy_se = 0.0;
  double macro_f1_mean = 0.0, macro_f1_se = 0.0;
  int runs = 0;
  std::vector<double> accuracy_runs;
  std::vector<double> macro_f1_runs;
  ClassScores last_run;
  LatencyStats latency;
};

std::string report_to_json(const EvalReport& report);

// Deterministic stratified split: within every class the seeded shuffle
// sends ~test_frac of the rows to the test side.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
Split split_stratified(std::span<const int> labels, double test_frac,
                       std::uint64_t seed);

struct EvalProtocol {
  TrainConfig train;
  double test_frac = 0.2;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  // Uniform cap on training rows per run (0 = no cap); preserves the class
  // mix of the pool.
  std::size_t train_cap = 0;
  // Uniform cap on test rows per run (0 = no cap).
  std::size_t test_cap = 0;
  // For the SMOTE variant: per-class target after balancing (0 = majority).
  int smote_target = 0;
  int smote_k = 5;
  int latency_batch = 512;
  int latency_trials = 5;
  int latency_threads = 1;
  bool with_latency = true;
};

// Full protocol for one (dataset, architecture) cell: per seed, stratified
// 80/20 split, optional SMOTE rebalancing of the training side (the
// GraphMPSmote variant interpolates flattened rows, rounds them back onto
// valid rows and re-encodes them as graphs), training, scoring on the
// held-out side. Latency comes from batched inference on the last run's
// test samples.
EvalReport evaluate(const std::vector<SnapshotRecord>& records,
                    const std::vector<int>& labels, Architecture arch,
                    const SystemModel& model, const EvalProtocol& protocol);

}  // namespace rancm
