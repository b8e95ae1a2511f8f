#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "rancm/control_loop.hpp"
#include "rancm/features.hpp"
#include "rancm/golden.hpp"
#include "rancm/graph.hpp"
#include "rancm/nn.hpp"
#include "rancm/opencellid.hpp"
#include "rancm/rng.hpp"
#include "rancm/scenario.hpp"

using namespace rancm;

TEST_CASE("golden-section search finds interior maxima") {
  auto peak = [](double x) { return -(x - 2.0) * (x - 2.0); };
  CHECK(golden_section_max(peak, 0.0, 5.0, 1e-10) ==
        doctest::Approx(2.0).epsilon(1e-7));
  auto cosine = [](double x) { return std::cos(x); };
  CHECK(golden_section_max(cosine, -1.0, 1.5, 1e-10) ==
        doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("pmon persistence arithmetic") {
  PmonConfig cfg;
  PmonState state;
  std::vector<double> sla = {0.7};

  SUBCASE("no breach means no trigger") {
    std::vector<double> good = {0.9};
    for (long t = 0; t < 50; ++t) {
      PmonResult r = pmon_step(t, good, sla, state, cfg);
      CHECK(!r.trigger);
      CHECK(r.newly_violated.empty());
    }
    CHECK(state.breach_start.empty());
  }

  SUBCASE("trigger fires once the breach has lasted ten steps") {
    std::vector<double> bad = {0.5};
    // Breach starts at t=0; elapsed 9 at t=9 -> no trigger yet.
    for (long t = 0; t <= 9; ++t) {
      PmonResult r = pmon_step(t, bad, sla, state, cfg);
      CHECK(!r.trigger);
      if (t == 0) CHECK(r.newly_violated == std::vector<KpiId>{KpiId(0)});
    }
    PmonResult r10 = pmon_step(10, bad, sla, state, cfg);
    CHECK(r10.trigger);
    CHECK(r10.persistent == std::vector<KpiId>{KpiId(0)});
    // Single shot: the same episode does not re-trigger.
    PmonResult r11 = pmon_step(11, bad, sla, state, cfg);
    CHECK(!r11.trigger);
    CHECK(r11.persistent == std::vector<KpiId>{KpiId(0)});
  }

  SUBCASE("a dip that recovers never triggers") {
    std::vector<double> bad = {0.5};
    std::vector<double> good = {0.9};
    PmonResult r0 = pmon_step(0, bad, sla, state, cfg);
    CHECK(r0.newly_violated.size() == 1);
    CHECK(!state.breach_start.empty());
    PmonResult r1 = pmon_step(1, good, sla, state, cfg);
    CHECK(r1.recovered == std::vector<KpiId>{KpiId(0)});
    CHECK(state.breach_start.empty());
    for (long t = 2; t < 30; ++t)
      CHECK(!pmon_step(t, good, sla, state, cfg).trigger);
  }
}

TEST_CASE("compromise search maximizes the minimum margin") {
  CmsState state;
  AnnotationResult conflict;
  conflict.label = ConflictLabel::Direct;

  SUBCASE("symmetric responses meet in the middle") {
    Surrogate s;
    s.responses = {{0, -15.0, 20.0}, {0, 15.0, 20.0}};
    std::vector<double> sla = {0.6, 0.6};
    std::vector<double> icp = {-40.0};
    MitigationResult fix =
        cmc_mitigate(conflict, state, s, sla, icp, IcpId(0), 0);
    CHECK(std::abs(fix.new_value) < 1e-3);
    CHECK(fix.feasible);
    CHECK(fix.margin_after >= fix.margin_before);
    CHECK(icp[0] == fix.new_value);
  }

  SUBCASE("single response peaks at its center") {
    Surrogate s;
    s.responses = {{0, 12.0, 20.0}};
    std::vector<double> sla = {0.7};
    std::vector<double> icp = {55.0};
    MitigationResult fix =
        cmc_mitigate(conflict, state, s, sla, icp, IcpId(0), 3);
    CHECK(fix.new_value == doctest::Approx(12.0).epsilon(1e-4));
    CHECK(fix.margin_after == doctest::Approx(1.0 - 0.7).epsilon(1e-6));
  }

  SUBCASE("disjoint feasible sets come back flagged infeasible") {
    Surrogate s;
    s.responses = {{0, -50.0, 10.0}, {0, 50.0, 10.0}};
    std::vector<double> sla = {0.95, 0.95};
    std::vector<double> icp = {0.0};
    MitigationResult fix =
        cmc_mitigate(conflict, state, s, sla, icp, IcpId(0), 0);
    CHECK(!fix.feasible);
    CHECK(fix.margin_after >= fix.margin_before);
  }

  SUBCASE("the change lands in the log without an actor") {
    Surrogate s;
    s.responses = {{0, 0.0, 20.0}};
    std::vector<double> sla = {0.7};
    std::vector<double> icp = {30.0};
    cmc_mitigate(conflict, state, s, sla, icp, IcpId(0), 42);
    REQUIRE(state.rcp_log.size() == 1);
    CHECK(state.rcp_log.back().t == 42);
    CHECK(!state.rcp_log.back().actor.has_value());
    CHECK(state.rcp_log.back().old_value == 30.0);
  }
}

TEST_CASE("cdc stage one and stage two") {
  Scenario scenario = es_mro_scenario();
  const auto& mappings = scenario.model.mappings;
  CmsState state;
  state.cfg = scenario.pmon;
  std::vector<double> icp = scenario.initial_icp;
  std::vector<double> kpi(6, 0.9);
  kpi[2] = 0.2;  // Throughput deep below threshold

  SUBCASE("alarm with an empty change log stays unclassified") {
    CdcOutcome out = cdc_classify(state, mappings, 5, icp, kpi, scenario.sla,
                                  {KpiId(2)});
    CHECK(!out.alarm);
    CHECK(out.annotation.label == ConflictLabel::NoConflict);
    CHECK(out.note == "alarm with empty change log");
  }

  SUBCASE("es power cut on the shared icp classifies direct") {
    state.rcp_log.push_back({0, XAppId(0), IcpId(0), 25.0, 5.0});
    CdcOutcome out = cdc_classify(state, mappings, 10, icp, kpi, scenario.sla,
                                  {KpiId(2)});
    CHECK(out.alarm);
    CHECK(out.annotation.label == ConflictLabel::Direct);
    CHECK(out.record.rcp->xapp == XAppId(0));
  }

  SUBCASE("no persistent violation cancels the alarm") {
    state.rcp_log.push_back({0, XAppId(0), IcpId(0), 25.0, 5.0});
    CdcOutcome out =
        cdc_classify(state, mappings, 10, icp, kpi, scenario.sla, {});
    CHECK(!out.alarm);
    CHECK(out.annotation.label == ConflictLabel::NoConflict);
  }
}

namespace {

// Labeled rows for the scenario tables: random single-ICP actions with the
// surrogate supplying KPI values.
std::vector<SnapshotRecord> scenario_records(const Scenario& scenario, int n,
                                             std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SnapshotRecord> out;
  std::vector<double> icp = scenario.initial_icp;
  for (int i = 0; i < n; ++i) {
    SnapshotRecord rec;
    rec.t = i;
    const int p = static_cast<int>(uniform_index(rng, icp.size()));
    const auto& owners = scenario.model.mappings.p2x[p];
    const XAppId actor = owners[uniform_index(rng, owners.size())];
    icp[p] = uniform_in(rng, -60.0, 60.0);
    rec.rcp = Rcp{actor, IcpId(p)};
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

}  // namespace

TEST_CASE("learned classifier agrees with the rule engine on the trigger row") {
  Scenario scenario = es_mro_scenario();
  auto records = scenario_records(scenario, 4000, 11);

  TrainData data;
  for (const auto& rec : records) {
    data.flats.push_back(tabular_features(rec, scenario.model.mappings));
    data.labels.push_back(static_cast<int>(rec.label));
  }
  TrainConfig cfg;
  cfg.epochs = 25;
  cfg.hidden = 32;
  cfg.seed = 2;
  TrainOutcome outcome = train(data, Architecture::TabularBaseline, cfg);
  REQUIRE(outcome.train_accuracy > 0.98);

  CmsState rule_state, learned_state;
  rule_state.cfg = learned_state.cfg = scenario.pmon;
  learned_state.classifier.kind = CdcClassifier::Kind::Learned;
  learned_state.classifier.model = &outcome.model;
  rule_state.rcp_log.push_back({0, XAppId(0), IcpId(0), 25.0, 5.0});
  learned_state.rcp_log = rule_state.rcp_log;

  std::vector<double> icp = scenario.initial_icp;
  icp[0] = 5.0;
  std::vector<double> kpi(6);
  scenario.surrogate.eval_all(icp, kpi);

  CdcOutcome rule_out = cdc_classify(rule_state, scenario.model.mappings, 10,
                                     icp, kpi, scenario.sla, {KpiId(2)});
  CdcOutcome learned_out =
      cdc_classify(learned_state, scenario.model.mappings, 10, icp, kpi,
                   scenario.sla, {KpiId(2)});
  CHECK(rule_out.annotation.label == ConflictLabel::Direct);
  CHECK(learned_out.annotation.label == rule_out.annotation.label);
}

TEST_CASE("closed loop reproduces the breach, classification and recovery") {
  Scenario scenario = es_mro_scenario();

  SUBCASE("no actions means no triggers") {
    Scenario quiet = scenario;
    quiet.actions.clear();
    LoopResult result = run_control_loop(quiet, {}, 540);
    for (const auto& e : result.events) {
      CHECK(e.kind != "trigger");
      CHECK(e.kind != "violation");
    }
  }

  SUBCASE("scripted power cut is detected at t=110 and mitigated") {
    LoopResult result = run_control_loop(scenario, {}, 540);

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
    CHECK(violation_t == 100);
    CHECK(trigger_t == 110);  // exactly ten steps after the breach begins
    CHECK(classification_t == 110);
    CHECK(label == ConflictLabel::Direct);
    CHECK(mitigation_t == 110);

    // Both TXP-coupled KPIs are back above threshold within five steps.
    bool recovered = false;
    for (long t = mitigation_t; t <= mitigation_t + 5; ++t) {
      if (result.kpi_trace[t][0] >= scenario.sla[0] &&
          result.kpi_trace[t][2] >= scenario.sla[2]) {
        recovered = true;
        break;
      }
    }
    CHECK(recovered);

    // Every mitigation has a matching CMS-attributed log entry.
    int cms_entries = 0;
    for (const auto& entry : result.state.rcp_log)
      if (!entry.actor) ++cms_entries;
    CHECK(cms_entries == 1);

    // Determinism: a second run produces the identical event sequence.
    LoopResult again = run_control_loop(scenario, {}, 540);
    REQUIRE(again.events.size() == result.events.size());
    for (std::size_t i = 0; i < again.events.size(); ++i) {
      CHECK(again.events[i].t == result.events[i].t);
      CHECK(again.events[i].kind == result.events[i].kind);
      CHECK(again.events[i].value == result.events[i].value);
    }
  }

  SUBCASE("event log is well-ordered: trigger then classification then fix") {
    LoopResult result = run_control_loop(scenario, {}, 540);
    long last_trigger = -1, last_classification = -1;
    for (const auto& e : result.events) {
      if (e.kind == "trigger") last_trigger = e.t;
      if (e.kind == "classification") {
        CHECK(last_trigger == e.t);
        last_classification = e.t;
      }
      if (e.kind == "mitigation") CHECK(last_classification == e.t);
    }
  }
}

TEST_CASE("opencellid ingestion filters, projects and counts") {
  const std::string fixture =
      std::string(RANCM_TEST_DATA_DIR) + "/opencellid_dublin.csv";
  CellFilter filter;
  filter.radio = "LTE";
  filter.mcc = 272;
  filter.net = 1;
  GeoBox bbox{53.320, 53.356, -6.305, -6.187};
  GeoWindow window{53.343, -6.262, 400.0, 500.0};

  IngestResult result = ingest_opencellid(fixture, filter, bbox, window);
  CHECK(result.rows_seen == 20);
  CHECK(result.cells.size() == 13);
  CHECK(result.rows_malformed == 1);
  for (const Cell& c : result.cells) {
    CHECK(std::abs(c.x) <= 200.0);
    CHECK(std::abs(c.y) <= 250.0);
    CHECK(c.radius > 0.0);
  }
  for (std::size_t i = 1; i < result.cells.size(); ++i)
    CHECK(result.cells[i - 1].id < result.cells[i].id);

  SUBCASE("gsm rows are excluded even inside the window") {
    // The fixture carries GSM/UMTS rows at valid coordinates; none survive.
    for (const Cell& c : result.cells) CHECK(c.id != 90001);
  }

  SUBCASE("empty file yields a warning and no cells") {
    const std::string empty_path = "/tmp/rancm_empty_cells.csv";
    std::ofstream(empty_path) << "";
    IngestResult empty = ingest_opencellid(empty_path, filter, bbox, window);
    CHECK(empty.cells.empty());
    REQUIRE(!empty.warnings.empty());
  }

  SUBCASE("missing columns are named") {
    const std::string bad_path = "/tmp/rancm_bad_cells.csv";
    std::ofstream(bad_path) << "radio,mcc,net,area\n";
    CHECK_THROWS_WITH(ingest_opencellid(bad_path, filter, bbox, window),
                      doctest::Contains("cell"));
  }

  SUBCASE("position export has one line per cell") {
    std::stringstream out;
    write_positions_csv(out, result.cells);
    std::string line;
    int lines = 0;
    while (std::getline(out, line)) ++lines;
    CHECK(lines == 14);  // header + 13 cells
  }
}
