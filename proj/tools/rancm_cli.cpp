// Command-line workbench: dataset generation, rule/learned classification,
// evaluation, latency benchmarks, and the closed-loop scenario runner.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rancm/bench.hpp"
#include "rancm/control_loop.hpp"
#include "rancm/features.hpp"
#include "rancm/genc.hpp"
#include "rancm/graph.hpp"
#include "rancm/metrics.hpp"
#include "rancm/nn.hpp"
#include "rancm/opencellid.hpp"
#include "rancm/record.hpp"
#include "rancm/rule_engine.hpp"
#include "rancm/scenario.hpp"
#include "rancm/smote.hpp"
#include "rancm/stress.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rancm;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string output_root() {
  const char* root = std::getenv("RANCM_OUT");
  return root && *root ? root : ".";
}

fs::path resolve_out(const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return p;
  return fs::path(output_root()) / p;
}

// Values from --config take precedence over command-line flags.
json load_config_overrides(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  json j;
  in >> j;
  return j;
}

template <typename T>
void override_from(const json& cfg, const char* key, T& value) {
  if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

struct Manifest {
  std::string command;
  json config;
  std::vector<std::string> artifacts;
  std::chrono::steady_clock::time_point started =
      std::chrono::steady_clock::now();

  void write(const fs::path& path) {
    json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["config"] = config;
    j["artifacts"] = artifacts;
    j["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started)
            .count();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
  }
};

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

struct LoadedDataset {
  ModelMeta meta;
  std::vector<SnapshotRecord> records;
  std::vector<int> labels;
};

LoadedDataset load_dataset(const std::string& csv_path,
                           const std::string& meta_path, long max_rows) {
  LoadedDataset data;
  const std::string sidecar =
      meta_path.empty() ? sidecar_path_for(csv_path) : meta_path;
  data.meta = load_model_meta(sidecar);
  DatasetReader reader(csv_path);
  while (auto rec = reader.next()) {
    data.labels.push_back(static_cast<int>(rec->label));
    data.records.push_back(std::move(*rec));
    if (max_rows > 0 && static_cast<long>(data.records.size()) >= max_rows)
      break;
  }
  if (data.records.empty())
    throw std::runtime_error("dataset " + csv_path + " has no rows");
  return data;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dash = item.find("..");
    if (dash != std::string::npos) {
      const std::uint64_t lo = std::stoull(item.substr(0, dash));
      const std::uint64_t hi = std::stoull(item.substr(dash + 2));
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else if (!item.empty()) {
      seeds.push_back(std::stoull(item));
    }
  }
  return seeds;
}

// ---------------------------------------------------------------------------
// generate

int cmd_generate(int m, const std::string& intensity, long steps, double sigma,
                 std::uint64_t seed, double share_prob,
                 const std::string& out_arg) {
  auto profile = IntensityProfile::by_name(intensity);
  if (!profile) throw std::runtime_error("unknown intensity " + intensity);

  const fs::path out = resolve_out(out_arg);
  ensure_parent(out);

  Manifest manifest;
  manifest.command = "generate";
  manifest.config = {{"m", m},       {"intensity", intensity},
                     {"steps", steps}, {"sigma", sigma},
                     {"seed", seed},   {"share_prob", share_prob},
                     {"out", out.string()}};

  SystemModel model = synthesize_entities(m, share_prob, seed);
  auto violations = validate_model(model);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid model: " << v << "\n";
    return 1;
  }

  std::ofstream csv(out, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + out.string());
  write_csv_header(csv, model.p_count, model.k_count);

  ConflictStats stats;
  simulate(model, *profile, steps, sigma, seed,
           [&](const SnapshotRecord& rec) {
             write_csv_row(csv, rec, model.mappings);
             stats.add(rec.label, 0);
           });
  csv.close();

  ModelMeta meta{model, seed, share_prob, sigma, profile->name};
  const std::string sidecar = sidecar_path_for(out.string());
  save_model_meta(meta, sidecar);

  std::printf("rows: %llu\n", static_cast<unsigned long long>(stats.rows));
  std::printf("conflict ratio: %.4f%%\n", 100.0 * stats.ratio());
  for (int c = 0; c < 4; ++c)
    std::printf("  %-12s %llu\n", to_string(static_cast<ConflictLabel>(c)),
                static_cast<unsigned long long>(stats.counts[c]));

  manifest.artifacts = {out.string(), sidecar};
  manifest.write(out.parent_path() / (out.stem().string() + ".manifest.json"));
  return 0;
}

// ---------------------------------------------------------------------------
// annotate

int cmd_annotate(const std::string& data_path, const std::string& meta_path,
                 const std::string& out_arg, long max_rows) {
  const std::string sidecar =
      meta_path.empty() ? sidecar_path_for(data_path) : meta_path;
  ModelMeta meta = load_model_meta(sidecar);

  DatasetReader reader(data_path);
  ConflictStats stats;
  std::uint64_t mismatches = 0;
  long row = 0;
  using clock = std::chrono::steady_clock;
  while (auto rec = reader.next()) {
    const auto before = clock::now();
    const ConflictLabel label = annotate(*rec, meta.model.mappings).label;
    const auto after = clock::now();
    stats.add(label, std::chrono::duration_cast<std::chrono::nanoseconds>(
                         after - before)
                         .count());
    if (label != rec->label) ++mismatches;
    ++row;
    if (max_rows > 0 && row >= max_rows) break;
  }

  json j = json::parse(stats_to_json(stats));
  j["stored_label_mismatches"] = mismatches;
  j["agreement"] =
      stats.rows ? 1.0 - static_cast<double>(mismatches) / stats.rows : 1.0;
  j["config"] = {{"data", data_path}, {"meta", sidecar}};

  if (!out_arg.empty()) {
    const fs::path out = resolve_out(out_arg);
    ensure_parent(out);
    std::ofstream f(out);
    f << j.dump(2) << "\n";
    Manifest manifest;
    manifest.command = "annotate";
    manifest.config = j["config"];
    manifest.artifacts = {out.string()};
    manifest.write(out.parent_path() / (out.stem().string() + ".manifest.json"));
  }
  std::cout << j.dump(2) << "\n";
  return mismatches == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// train

int cmd_train(const std::string& data_path, const std::string& meta_path,
              const std::string& arch_name, TrainConfig cfg, long max_rows,
              std::size_t train_cap, int smote_target,
              const std::string& out_arg) {
  auto arch = architecture_from_string(arch_name);
  if (!arch) throw std::runtime_error("unknown architecture " + arch_name);

  LoadedDataset data = load_dataset(data_path, meta_path, max_rows);
  const SystemModel& model = data.meta.model;

  // Uniform cap keeps the class mix; minorities are not dropped selectively.
  std::vector<std::size_t> idx(data.records.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (train_cap > 0 && idx.size() > train_cap) {
    Rng rng(cfg.seed ^ 0x2545f4914f6cdd1dull);
    for (std::size_t i = idx.size(); i > 1; --i)
      std::swap(idx[i - 1], idx[uniform_index(rng, i)]);
    idx.resize(train_cap);
    std::sort(idx.begin(), idx.end());
  }

  TrainData train_data;
  if (*arch == Architecture::GraphMPSmote) {
    SkeletonCodec codec{model.m, model.p_count, model.k_count};
    std::vector<Eigen::VectorXd> flats;
    std::vector<int> labels;
    for (std::size_t i : idx) {
      flats.push_back(codec.flatten(data.records[i]));
      labels.push_back(data.labels[i]);
    }
    SmoteResult balanced = smote(flats, labels, 5, smote_target, cfg.seed);
    const std::vector<double>& sla = data.records.front().sla;
    for (std::size_t i = 0; i < balanced.rows.size(); ++i) {
      if (i < balanced.original_count)
        train_data.graphs.push_back(
            encode_record(data.records[idx[i]], model.mappings));
      else
        train_data.graphs.push_back(encode_record(
            codec.rebuild(balanced.rows[i], sla), model.mappings));
      train_data.labels.push_back(balanced.labels[i]);
    }
  } else if (*arch == Architecture::GraphMP) {
    for (std::size_t i : idx) {
      train_data.graphs.push_back(
          encode_record(data.records[i], model.mappings));
      train_data.labels.push_back(data.labels[i]);
    }
  } else {
    for (std::size_t i : idx) {
      train_data.flats.push_back(
          tabular_features(data.records[i], model.mappings));
      train_data.labels.push_back(data.labels[i]);
    }
  }

  Manifest manifest;
  manifest.command = "train";
  manifest.config = {{"data", data_path},     {"arch", arch_name},
                     {"epochs", cfg.epochs},  {"batch", cfg.batch},
                     {"lr", cfg.lr},          {"hidden", cfg.hidden},
                     {"seed", cfg.seed},      {"train_cap", train_cap},
                     {"smote_target", smote_target}};

  TrainOutcome outcome = train(train_data, *arch, cfg);
  std::printf("trained %s on %zu rows: loss %.5f, train accuracy %.2f%%\n",
              arch_name.c_str(), train_data.size(), outcome.final_loss,
              100.0 * outcome.train_accuracy);

  const fs::path out = resolve_out(out_arg);
  ensure_parent(out);
  save_model(outcome.model, out.string());
  manifest.artifacts = {out.string()};
  manifest.write(out.parent_path() / (out.stem().string() + ".manifest.json"));
  return 0;
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const std::string& data_path, const std::string& meta_path,
             const std::string& arch_csv, const std::string& seed_list,
             TrainConfig base_cfg, long max_rows, std::size_t train_cap,
             std::size_t test_cap, int smote_target, int threads,
             const std::string& out_arg) {
  LoadedDataset data = load_dataset(data_path, meta_path, max_rows);

  EvalProtocol protocol;
  protocol.train = base_cfg;
  protocol.seeds = parse_seed_list(seed_list);
  if (protocol.seeds.empty()) throw std::runtime_error("no seeds given");
  protocol.train_cap = train_cap;
  protocol.test_cap = test_cap;
  protocol.smote_target = smote_target;
  protocol.latency_threads = threads;

  const fs::path out_dir = resolve_out(out_arg);
  fs::create_directories(out_dir);

  Manifest manifest;
  manifest.command = "eval";
  manifest.config = {{"data", data_path},
                     {"archs", arch_csv},
                     {"seeds", seed_list},
                     {"epochs", base_cfg.epochs},
                     {"batch", base_cfg.batch},
                     {"lr", base_cfg.lr},
                     {"hidden", base_cfg.hidden},
                     {"train_cap", train_cap},
                     {"test_cap", test_cap},
                     {"smote_target", smote_target}};

  std::ofstream table(out_dir / "eval_table.csv");
  table << "# config: " << manifest.config.dump() << "\n";
  table << "method,m,intensity,accuracy_mean,accuracy_se,macro_f1_mean,"
           "macro_f1_se,latency_us_mean,latency_us_se,runs\n";

  std::stringstream archs(arch_csv);
  std::string arch_name;
  while (std::getline(archs, arch_name, ',')) {
    auto arch = architecture_from_string(arch_name);
    if (!arch) throw std::runtime_error("unknown architecture " + arch_name);
    EvalReport report =
        evaluate(data.records, data.labels, *arch, data.meta.model, protocol);

    json rj = json::parse(report_to_json(report));
    rj["config"] = manifest.config;
    rj["m"] = data.meta.model.m;
    rj["intensity"] = data.meta.profile;
    const fs::path report_path = out_dir / ("report_" + arch_name + ".json");
    std::ofstream rf(report_path);
    rf << rj.dump(2) << "\n";
    manifest.artifacts.push_back(report_path.string());

    char line[256];
    std::snprintf(line, sizeof(line),
                  "%s,%d,%s,%.4f,%.4f,%.4f,%.4f,%.3f,%.3f,%d\n",
                  arch_name.c_str(), data.meta.model.m,
                  data.meta.profile.c_str(), report.accuracy_mean,
                  report.accuracy_se, report.macro_f1_mean, report.macro_f1_se,
                  report.latency.mean_us, report.latency.se_us, report.runs);
    table << line;
    std::printf("%s", line);
  }
  table.close();
  manifest.artifacts.push_back((out_dir / "eval_table.csv").string());
  manifest.write(out_dir / "manifest.json");
  return 0;
}

// ---------------------------------------------------------------------------
// bench

int cmd_bench(const std::string& m_list, const std::string& intensity,
              int stress_rows, int infer_rows, int trials, std::uint64_t seed,
              const std::string& model_dir_arg, bool train_missing,
              int threads, const std::string& out_arg) {
  auto profile = IntensityProfile::by_name(intensity);
  if (!profile) throw std::runtime_error("unknown intensity " + intensity);

  std::vector<int> ms;
  {
    std::stringstream ss(m_list);
    std::string item;
    while (std::getline(ss, item, ',')) ms.push_back(std::stoi(item));
  }
  if (ms.empty()) throw std::runtime_error("empty m list");

  const fs::path out_dir = resolve_out(out_arg);
  fs::create_directories(out_dir);
  const fs::path model_dir =
      model_dir_arg.empty() ? out_dir / "models" : resolve_out(model_dir_arg);

  Manifest manifest;
  manifest.command = "bench";
  manifest.config = {{"m_list", m_list},         {"intensity", intensity},
                     {"stress_rows", stress_rows}, {"infer_rows", infer_rows},
                     {"trials", trials},          {"seed", seed},
                     {"threads", threads},        {"train_missing", train_missing}};

  // Trained models per (arch, m); instruct-and-exit when absent.
  const std::vector<Architecture> archs = {Architecture::GraphMP,
                                           Architecture::TabularBaseline};
  std::map<std::pair<std::string, int>, ClassifierModel> models;
  std::vector<std::string> missing;
  for (int m : ms) {
    SystemModel model = synthesize_entities(m, 0.3, seed);
    auto records = simulate_collect(model, *profile,
                                    std::max(infer_rows * 4, 20000), 50.0, seed);
    std::vector<int> labels;
    labels.reserve(records.size());
    for (const auto& r : records) labels.push_back(static_cast<int>(r.label));

    for (Architecture arch : archs) {
      const std::string arch_name = to_string(arch);
      const fs::path path =
          model_dir / ("model_" + arch_name + "_m" + std::to_string(m) + ".json");
      if (fs::exists(path)) {
        models[{arch_name, m}] = load_model(path.string());
        continue;
      }
      if (!train_missing) {
        missing.push_back("rancm train --data <dataset for m=" +
                          std::to_string(m) + "> --arch " + arch_name +
                          " --out " + path.string());
        continue;
      }
      TrainData data;
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (arch == Architecture::GraphMP)
          data.graphs.push_back(encode_record(records[i], model.mappings));
        else
          data.flats.push_back(tabular_features(records[i], model.mappings));
        data.labels.push_back(labels[i]);
      }
      TrainConfig cfg;
      cfg.epochs = 8;
      cfg.seed = seed;
      TrainOutcome outcome = train(data, arch, cfg);
      fs::create_directories(model_dir);
      save_model(outcome.model, path.string());
      models[{arch_name, m}] = std::move(outcome.model);
    }
  }
  if (!missing.empty()) {
    std::cerr << "missing trained models; run:\n";
    for (const auto& cmd : missing) std::cerr << "  " << cmd << "\n";
    return 2;
  }

  std::ofstream csv(out_dir / "bench.csv");
  csv << "# config: " << manifest.config.dump() << "\n";
  csv << "method,m,per_row_us_mean,per_row_us_se,per_row_us_median,trials\n";
  json results = json::array();

  for (int m : ms) {
    SystemModel model = synthesize_entities(m, 0.3, seed);

    // Rule engine on stress rows: inflated violation lists, row-sequential.
    auto stress = make_stress_records(model, stress_rows, seed + 1);
    BenchStats rule_stats = bench_per_item(
        [&] {
          std::uint64_t acc = 0;
          for (const auto& rec : stress)
            acc += static_cast<std::uint64_t>(
                annotate(rec, model.mappings).label);
          do_not_optimize(acc);
        },
        stress.size(), trials);

    auto emit = [&](const std::string& method, const BenchStats& stats) {
      char line[192];
      std::snprintf(line, sizeof(line), "%s,%d,%.4f,%.4f,%.4f,%d\n",
                    method.c_str(), m, stats.mean_ns / 1000.0,
                    stats.se_ns / 1000.0, stats.median_ns / 1000.0,
                    stats.trials);
      csv << line;
      std::printf("%s", line);
      results.push_back({{"method", method},
                         {"m", m},
                         {"per_row_us_mean", stats.mean_ns / 1000.0},
                         {"per_row_us_se", stats.se_ns / 1000.0},
                         {"per_row_us_median", stats.median_ns / 1000.0}});
    };
    emit("rule", rule_stats);

    // Learned models on ordinary rows, batched.
    auto records =
        simulate_collect(model, *profile, infer_rows, 50.0, seed + 2);
    for (Architecture arch : archs) {
      const std::string arch_name = to_string(arch);
      const ClassifierModel& trained = models[{arch_name, m}];
      TrainData samples;
      for (const auto& rec : records) {
        if (arch == Architecture::GraphMP)
          samples.graphs.push_back(encode_record(rec, model.mappings));
        else
          samples.flats.push_back(tabular_features(rec, model.mappings));
        samples.labels.push_back(0);
      }
      LatencyStats lat =
          measure_latency(trained, samples, 512, trials, 20, threads);
      BenchStats stats;
      stats.mean_ns = lat.mean_us * 1000.0;
      stats.se_ns = lat.se_us * 1000.0;
      stats.median_ns = lat.median_us * 1000.0;
      stats.trials = trials;
      emit(arch_name, stats);
    }
  }
  csv.close();

  json j;
  j["config"] = manifest.config;
  j["results"] = results;
  std::ofstream jf(out_dir / "bench.json");
  jf << j.dump(2) << "\n";

  manifest.artifacts = {(out_dir / "bench.csv").string(),
                        (out_dir / "bench.json").string()};
  manifest.write(out_dir / "manifest.json");
  return 0;
}

// ---------------------------------------------------------------------------
// scenario

int cmd_scenario(const std::string& preset, const std::string& config_path,
                 long steps, const std::string& classifier_arg,
                 const std::string& topology_path, const std::string& radio,
                 int mcc, int net, const std::string& out_arg) {
  Scenario scenario;
  if (!config_path.empty())
    scenario = load_scenario(config_path);
  else if (preset == "es-mro")
    scenario = es_mro_scenario();
  else
    throw std::runtime_error("unknown preset " + preset);

  const fs::path out_dir = resolve_out(out_arg);
  fs::create_directories(out_dir);

  Manifest manifest;
  manifest.command = "scenario";
  manifest.config = {{"preset", preset},
                     {"config", config_path},
                     {"steps", steps},
                     {"classifier", classifier_arg},
                     {"topology", topology_path}};

  if (!topology_path.empty()) {
    CellFilter filter;
    filter.radio = radio;
    filter.mcc = mcc;
    filter.net = net;
    GeoBox bbox{53.320, 53.356, -6.305, -6.187};
    GeoWindow window{53.343, -6.262, 400.0, 500.0};
    IngestResult ingest =
        ingest_opencellid(topology_path, filter, bbox, window);
    for (const auto& w : ingest.warnings) std::cerr << "warning: " << w << "\n";
    scenario.cells = ingest.cells;
    std::ofstream cells_csv(out_dir / "cells.csv");
    write_positions_csv(cells_csv, scenario.cells);
    manifest.artifacts.push_back((out_dir / "cells.csv").string());
    std::printf("topology: %zu cells\n", scenario.cells.size());
  }

  CdcClassifier classifier;
  ClassifierModel learned;
  if (!classifier_arg.empty() && classifier_arg != "rule") {
    learned = load_model(classifier_arg);
    classifier.kind = CdcClassifier::Kind::Learned;
    classifier.model = &learned;
  }

  LoopResult result = run_control_loop(scenario, {}, steps, classifier);

  std::ofstream events(out_dir / "events.jsonl");
  write_events_jsonl(events, result);
  std::ofstream traces(out_dir / "traces.csv");
  traces << "# config: " << manifest.config.dump() << "\n";
  write_kpi_trace_csv(traces, scenario, result);
  std::ofstream scn(out_dir / "scenario.json");
  scn << scenario_to_json(scenario) << "\n";

  int classifications = 0, mitigations = 0;
  for (const auto& e : result.events) {
    if (e.kind == "classification") ++classifications;
    if (e.kind == "mitigation") ++mitigations;
  }
  std::printf("events: %zu (classifications %d, mitigations %d)\n",
              result.events.size(), classifications, mitigations);

  manifest.artifacts.push_back((out_dir / "events.jsonl").string());
  manifest.artifacts.push_back((out_dir / "traces.csv").string());
  manifest.artifacts.push_back((out_dir / "scenario.json").string());
  manifest.write(out_dir / "manifest.json");
  return 0;
}

// ---------------------------------------------------------------------------
// report

int cmd_report(const std::string& in_dirs, const std::string& out_arg) {
  const fs::path out = resolve_out(out_arg);
  ensure_parent(out);

  std::vector<json> reports;
  std::stringstream ss(in_dirs);
  std::string dir;
  while (std::getline(ss, dir, ',')) {
    for (const auto& entry : fs::directory_iterator(resolve_out(dir))) {
      const std::string name = entry.path().filename().string();
      if (name.rfind("report_", 0) == 0 && entry.path().extension() == ".json") {
        std::ifstream f(entry.path());
        json j;
        f >> j;
        reports.push_back(std::move(j));
      }
    }
  }
  if (reports.empty()) throw std::runtime_error("no report_*.json found");

  std::sort(reports.begin(), reports.end(), [](const json& a, const json& b) {
    auto key = [](const json& j) {
      return std::make_tuple(j.value("method", ""), j.value("intensity", ""),
                             j.value("m", 0));
    };
    return key(a) < key(b);
  });

  std::ofstream table(out);
  table << "method,m,intensity,accuracy_mean,accuracy_se,macro_f1_mean,"
           "macro_f1_se,latency_us_mean,runs\n";
  for (const json& r : reports) {
    char line[256];
    std::snprintf(line, sizeof(line), "%s,%d,%s,%.4f,%.4f,%.4f,%.4f,%.3f,%d\n",
                  r.value("method", "?").c_str(), r.value("m", 0),
                  r.value("intensity", "?").c_str(),
                  r.at("accuracy").value("mean", 0.0),
                  r.at("accuracy").value("se", 0.0),
                  r.at("macro_f1").value("mean", 0.0),
                  r.at("macro_f1").value("se", 0.0),
                  r.at("latency_us").value("mean", 0.0), r.value("runs", 0));
    table << line;
  }

  Manifest manifest;
  manifest.command = "report";
  manifest.config = {{"in", in_dirs}, {"out", out.string()}};
  manifest.artifacts = {out.string()};
  manifest.write(out.parent_path() / (out.stem().string() + ".manifest.json"));
  std::printf("wrote %s (%zu rows)\n", out.string().c_str(), reports.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conflict-management workbench for multi-xApp RAN control"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file; values override flags");

  // generate
  auto* gen = app.add_subcommand("generate", "Synthesize a labeled dataset");
  int gen_m = 5;
  std::string gen_intensity = "low";
  long gen_steps = 100000;
  double gen_sigma = 50.0, gen_share = 0.3;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "data.csv";
  gen->add_option("--m", gen_m, "xApp count")->check(CLI::Range(1, 1000));
  gen->add_option("--intensity", gen_intensity)
      ->check(CLI::IsMember({"low", "medium", "high"}));
  gen->add_option("--steps", gen_steps)->check(CLI::PositiveNumber);
  gen->add_option("--sigma", gen_sigma);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--share-prob", gen_share);
  gen->add_option("--out", gen_out);

  // annotate
  auto* ann = app.add_subcommand("annotate", "Re-classify a dataset and report stats");
  std::string ann_data, ann_meta, ann_out;
  long ann_rows = 0;
  ann->add_option("--data", ann_data)->required();
  ann->add_option("--meta", ann_meta);
  ann->add_option("--out", ann_out);
  ann->add_option("--rows", ann_rows, "limit rows (0 = all)");

  // train
  auto* trn = app.add_subcommand("train", "Train a classifier");
  std::string trn_data, trn_meta, trn_arch = "graphmp", trn_out = "model.json";
  TrainConfig trn_cfg;
  long trn_rows = 0;
  std::size_t trn_cap = 0;
  int trn_smote_target = 0;
  trn->add_option("--data", trn_data)->required();
  trn->add_option("--meta", trn_meta);
  trn->add_option("--arch", trn_arch)
      ->check(CLI::IsMember({"tabular", "graphmp", "graphmp-smote"}));
  trn->add_option("--epochs", trn_cfg.epochs);
  trn->add_option("--batch", trn_cfg.batch);
  trn->add_option("--lr", trn_cfg.lr);
  trn->add_option("--hidden", trn_cfg.hidden);
  trn->add_option("--seed", trn_cfg.seed);
  trn->add_option("--rows", trn_rows, "limit rows read (0 = all)");
  trn->add_option("--train-cap", trn_cap, "uniform training-row cap (0 = all)");
  trn->add_option("--smote-target", trn_smote_target,
                  "per-class target for SMOTE (0 = majority)");
  trn->add_option("--out", trn_out);

  // eval
  auto* evl = app.add_subcommand("eval", "Evaluate architectures over seeds");
  std::string evl_data, evl_meta, evl_archs = "graphmp,graphmp-smote,tabular";
  std::string evl_seeds = "1..10", evl_out = "eval";
  TrainConfig evl_cfg;
  long evl_rows = 0;
  std::size_t evl_train_cap = 0, evl_test_cap = 0;
  int evl_smote_target = 0, evl_threads = 2;
  evl->add_option("--data", evl_data)->required();
  evl->add_option("--meta", evl_meta);
  evl->add_option("--arch", evl_archs, "comma-separated list");
  evl->add_option("--seeds", evl_seeds, "e.g. 1..10 or 1,2,3");
  evl->add_option("--epochs", evl_cfg.epochs);
  evl->add_option("--batch", evl_cfg.batch);
  evl->add_option("--lr", evl_cfg.lr);
  evl->add_option("--hidden", evl_cfg.hidden);
  evl->add_option("--rows", evl_rows);
  evl->add_option("--train-cap", evl_train_cap);
  evl->add_option("--test-cap", evl_test_cap);
  evl->add_option("--smote-target", evl_smote_target);
  evl->add_option("--threads", evl_threads);
  evl->add_option("--out", evl_out);

  // bench
  auto* bch = app.add_subcommand("bench", "Latency scaling benchmark");
  std::string bch_ms = "5,10,20,30,50", bch_intensity = "medium";
  std::string bch_model_dir, bch_out = "bench";
  int bch_stress_rows = 20000, bch_infer_rows = 20000, bch_trials = 5,
      bch_threads = 2;
  std::uint64_t bch_seed = 1;
  bool bch_train_missing = false;
  bch->add_option("--m-list", bch_ms);
  bch->add_option("--intensity", bch_intensity);
  bch->add_option("--stress-rows", bch_stress_rows);
  bch->add_option("--infer-rows", bch_infer_rows);
  bch->add_option("--trials", bch_trials);
  bch->add_option("--seed", bch_seed);
  bch->add_option("--model-dir", bch_model_dir);
  bch->add_flag("--train-missing", bch_train_missing,
                "train quick models when absent");
  bch->add_option("--threads", bch_threads);
  bch->add_option("--out", bch_out);

  // scenario
  auto* scn = app.add_subcommand("scenario", "Run the closed control loop");
  std::string scn_preset = "es-mro", scn_config, scn_classifier = "rule";
  std::string scn_topology, scn_radio = "LTE", scn_out = "scenario";
  long scn_steps = 0;
  int scn_mcc = 272, scn_net = 1;
  scn->add_option("--preset", scn_preset);
  scn->add_option("--scenario-config", scn_config, "scenario JSON file");
  scn->add_option("--steps", scn_steps, "0 = scenario duration");
  scn->add_option("--classifier", scn_classifier, "'rule' or a model.json path");
  scn->add_option("--topology", scn_topology, "OpenCellID CSV");
  scn->add_option("--radio", scn_radio);
  scn->add_option("--mcc", scn_mcc);
  scn->add_option("--net", scn_net);
  scn->add_option("--out", scn_out);

  // report
  auto* rpt = app.add_subcommand("report", "Merge eval reports into one table");
  std::string rpt_in, rpt_out = "table.csv";
  rpt->add_option("--in", rpt_in, "comma-separated eval output dirs")->required();
  rpt->add_option("--out", rpt_out);

  CLI11_PARSE(app, argc, argv);

  try {
    const json cfg = load_config_overrides(config_path);

    if (gen->parsed()) {
      override_from(cfg, "m", gen_m);
      override_from(cfg, "intensity", gen_intensity);
      override_from(cfg, "steps", gen_steps);
      override_from(cfg, "sigma", gen_sigma);
      override_from(cfg, "seed", gen_seed);
      override_from(cfg, "share_prob", gen_share);
      override_from(cfg, "out", gen_out);
      return cmd_generate(gen_m, gen_intensity, gen_steps, gen_sigma, gen_seed,
                          gen_share, gen_out);
    }
    if (ann->parsed()) {
      override_from(cfg, "data", ann_data);
      override_from(cfg, "out", ann_out);
      return cmd_annotate(ann_data, ann_meta, ann_out, ann_rows);
    }
    if (trn->parsed()) {
      override_from(cfg, "arch", trn_arch);
      override_from(cfg, "epochs", trn_cfg.epochs);
      override_from(cfg, "lr", trn_cfg.lr);
      override_from(cfg, "seed", trn_cfg.seed);
      override_from(cfg, "out", trn_out);
      return cmd_train(trn_data, trn_meta, trn_arch, trn_cfg, trn_rows, trn_cap,
                       trn_smote_target, trn_out);
    }
    if (evl->parsed()) {
      override_from(cfg, "arch", evl_archs);
      override_from(cfg, "seeds", evl_seeds);
      override_from(cfg, "out", evl_out);
      return cmd_eval(evl_data, evl_meta, evl_archs, evl_seeds, evl_cfg,
                      evl_rows, evl_train_cap, evl_test_cap, evl_smote_target,
                      evl_threads, evl_out);
    }
    if (bch->parsed()) {
      override_from(cfg, "m_list", bch_ms);
      override_from(cfg, "out", bch_out);
      return cmd_bench(bch_ms, bch_intensity, bch_stress_rows, bch_infer_rows,
                       bch_trials, bch_seed, bch_model_dir, bch_train_missing,
                       bch_threads, bch_out);
    }
    if (scn->parsed()) {
      override_from(cfg, "preset", scn_preset);
      override_from(cfg, "steps", scn_steps);
      override_from(cfg, "out", scn_out);
      return cmd_scenario(scn_preset, scn_config, scn_steps, scn_classifier,
                          scn_topology, scn_radio, scn_mcc, scn_net, scn_out);
    }
    if (rpt->parsed()) {
      override_from(cfg, "out", rpt_out);
      return cmd_report(rpt_in, rpt_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
