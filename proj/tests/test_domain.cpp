#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "rancm/genc.hpp"
#include "rancm/model.hpp"

using namespace rancm;

TEST_CASE("entity counts follow 2m + m/2 with floored halving") {
  CHECK(icp_count_for(5) == 12);
  CHECK(icp_count_for(20) == 50);
  CHECK(icp_count_for(50) == 125);
  CHECK(kpi_count_for(12) == 6);
  CHECK(kpi_count_for(25) == 12);
  for (int m = 1; m <= 64; ++m) {
    CHECK(icp_count_for(m) == 2 * m + m / 2);
    CHECK(kpi_count_for(icp_count_for(m)) == icp_count_for(m) / 2);
  }
}

TEST_CASE("display names derive from the index") {
  CHECK(XAppId(3).name() == "x3");
  CHECK(IcpId(7).name() == "p7");
  CHECK(KpiId(2).name() == "k2");
}

TEST_CASE("label severity orders direct > indirect > implicit > none") {
  CHECK(worse_label(ConflictLabel::Indirect, ConflictLabel::Direct) ==
        ConflictLabel::Direct);
  CHECK(worse_label(ConflictLabel::Implicit, ConflictLabel::Indirect) ==
        ConflictLabel::Indirect);
  CHECK(worse_label(ConflictLabel::NoConflict, ConflictLabel::Implicit) ==
        ConflictLabel::Implicit);
  for (int c = 0; c < 4; ++c) {
    auto label = static_cast<ConflictLabel>(c);
    CHECK(label_from_string(to_string(label)) == label);
  }
}

TEST_CASE("validator accepts a synthesized model") {
  SystemModel model = synthesize_entities(5, 0.3, 1);
  CHECK(validate_model(model).empty());
}

TEST_CASE("validator names the broken rule") {
  SystemModel model = synthesize_entities(5, 0.3, 1);

  SUBCASE("empty unassigned set") {
    model.mappings.unassigned.clear();
    auto violations = validate_model(model);
    REQUIRE(!violations.empty());
    bool found = std::any_of(violations.begin(), violations.end(),
                             [](const std::string& v) {
                               return v.find("unassigned") != std::string::npos;
                             });
    CHECK(found);
  }

  SUBCASE("icp both owned and unassigned") {
    IcpId owned = model.exclusive_icp[0];
    model.mappings.unassigned.insert(model.mappings.unassigned.begin(), owned);
    std::sort(model.mappings.unassigned.begin(),
              model.mappings.unassigned.end());
    auto violations = validate_model(model);
    bool found = std::any_of(violations.begin(), violations.end(),
                             [&](const std::string& v) {
                               return v.find("both owned and unassigned") !=
                                      std::string::npos;
                             });
    CHECK(found);
  }

  SUBCASE("three owners rejected") {
    model.mappings.p2x[model.exclusive_icp[0].v] = {XAppId(0), XAppId(1),
                                                    XAppId(2)};
    CHECK(!validate_model(model).empty());
  }
}

TEST_CASE("sidecar metadata round-trips bit for bit") {
  ModelMeta meta;
  meta.model = synthesize_entities(7, 0.3, 9);
  meta.seed = 9;
  meta.share_prob = 0.3;
  meta.sigma = 50.0;
  meta.profile = "medium";

  ModelMeta parsed = model_meta_from_json(model_meta_to_json(meta));
  CHECK(parsed == meta);

  ModelMeta micro;
  micro.model = testing::micro_model();
  micro.profile = "custom";
  CHECK(model_meta_from_json(model_meta_to_json(micro)) == micro);
}

TEST_CASE("derived buckets split shared, injected and unassigned") {
  SystemModel model = testing::micro_model();
  auto shared = shared_bucket(model);
  REQUIRE(shared.size() == 1);
  CHECK(shared[0] == IcpId(2));

  auto injected = injected_bucket(model);
  // p0 injected into k1's group, p1 into k3's group.
  REQUIRE(injected.size() == 2);
  CHECK(injected[0] == IcpId(0));
  CHECK(injected[1] == IcpId(1));
}
