#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bhe.h"

using nlohmann::json;

namespace {

const char* kEngine = R"({
  "engine": {"n": 1, "m": 1, "omega_a": 1.0, "omega_b": 0.5,
             "beta_a": 0.1, "beta_b": 10.0},
  "coupling": {"mode": "alpha", "value": 0.25, "order": 2}
})";

struct Handle {
  bhe_engine* e = nullptr;
  ~Handle() { bhe_engine_destroy(e); }
};

json take(char* out) {
  REQUIRE(out != nullptr);
  json doc = json::parse(out);
  bhe_string_free(out);
  return doc;
}

}  // namespace

TEST_CASE("lifecycle and version") {
  CHECK(std::strlen(bhe_version()) > 0);
  Handle h;
  CHECK(bhe_engine_create(kEngine, &h.e) == BHE_OK);
  CHECK(h.e != nullptr);
  bhe_engine_destroy(nullptr);  // must be a harmless no-op
}

TEST_CASE("error reporting") {
  bhe_engine* e = nullptr;
  CHECK(bhe_engine_create("{oops", &e) == BHE_ERR_CONFIG);
  CHECK(e == nullptr);
  CHECK(std::strlen(bhe_last_error()) > 0);

  const char* bad_physics = R"({
    "engine": {"n": 1, "m": 1, "omega_a": 1.0, "omega_b": 0.5,
               "beta_a": 0.1, "beta_b": 10.0},
    "coupling": {"mode": "alpha", "value": 1.5}
  })";
  CHECK(bhe_engine_create(bad_physics, &e) == BHE_ERR_CONFIG);

  Handle h;
  REQUIRE(bhe_engine_create(kEngine, &h.e) == BHE_OK);
  char* out = nullptr;
  CHECK(bhe_simulate(h.e, "pert7", &out) == BHE_ERR_CONFIG);
  CHECK(out == nullptr);
  CHECK(std::string(bhe_last_error()).find("pert7") != std::string::npos);
  CHECK(bhe_simulate(nullptr, "pert2", &out) == BHE_ERR_CONFIG);
}

TEST_CASE("simulate") {
  Handle h;
  REQUIRE(bhe_engine_create(kEngine, &h.e) == BHE_OK);
  char* out = nullptr;
  REQUIRE(bhe_simulate(h.e, "pert2", &out) == BHE_OK);
  const json doc = take(out);
  CHECK(doc.at("method") == "pert2");
  CHECK(doc.at("regime") == "heat_engine");
  CHECK(doc.at("quantum_w").get<double>() == doctest::Approx(0.5));
  // p(0) = 1 - alpha under the alpha coupling convention
  bool found = false;
  for (const auto& pt : doc.at("points"))
    if (pt.at("k") == 0) {
      found = true;
      CHECK(pt.at("probability").get<double>() ==
            doctest::Approx(0.75).epsilon(1e-14));
    }
  CHECK(found);
  CHECK(doc.at("theta_bar_2").get<double>() > 0.0);

  // oracle and pert2 agree on the mean at this small alpha
  char* out2 = nullptr;
  REQUIRE(bhe_simulate(h.e, "oracle", &out2) == BHE_OK);
  const json doc2 = take(out2);
  CHECK(doc2.at("moments").at("mean_w").get<double>() ==
        doctest::Approx(doc.at("moments").at("mean_w").get<double>())
            .epsilon(0.05));
  CHECK(doc2.at("off_line_mass").get<double>() < 1e-8);
}

TEST_CASE("tur") {
  Handle h;
  REQUIRE(bhe_engine_create(kEngine, &h.e) == BHE_OK);
  char* out = nullptr;
  REQUIRE(bhe_tur_json(h.e, "pert2", &out) == BHE_OK);
  const json doc = take(out);
  CHECK(doc.at("rf").get<double>() >= doc.at("standard_bound").get<double>());
  CHECK(doc.at("violates_standard") == false);
  CHECK(doc.at("fourth_bound").is_null());  // pert4-only field
  CHECK(doc.at("alpha").get<double>() == doctest::Approx(0.25));
}

TEST_CASE("validate") {
  Handle h;
  REQUIRE(bhe_engine_create(kEngine, &h.e) == BHE_OK);
  char* out = nullptr;
  REQUIRE(bhe_validate_json(h.e, 0.02, 3, &out) == BHE_OK);
  const json doc = take(out);
  CHECK(doc.at("theta_grid").size() == 3);
  CHECK(doc.at("fitted_order_pert2").get<double>() ==
        doctest::Approx(4.0).epsilon(0.15));
  CHECK(doc.at("fitted_order_pert4").is_null());

  CHECK(bhe_validate_json(h.e, 0.02, 2, &out) == BHE_ERR_CONFIG);
  CHECK(bhe_validate_json(h.e, 10.0, 3, &out) == BHE_ERR_PHYSICS);
}

TEST_CASE("optimize") {
  char* out = nullptr;
  const char* req = R"({"family": "xmax", "x": 0.2, "y": 20.0,
                        "beta_a_omega_a": 0.1, "alpha": 0.5})";
  REQUIRE(bhe_optimize_json(req, &out) == BHE_OK);
  const json doc = take(out);
  CHECK(doc.at("argmax").at("x_max").get<double>() ==
        doctest::Approx(2.1).epsilon(0.02));
  CHECK(doc.at("value").get<double>() > 0.0);

  CHECK(bhe_optimize_json(R"({"family": "warp"})", &out) == BHE_ERR_CONFIG);
  CHECK(bhe_optimize_json("nonsense", &out) == BHE_ERR_CONFIG);
}

TEST_CASE("sweep to file") {
  json cfg = json::parse(kEngine);
  cfg["axes"] = json::array(
      {{{"parameter", "alpha"}, {"min", 0.1}, {"max", 0.5}, {"points", 5}}});
  cfg["methods"] = {"pert2", "oracle"};
  const std::string text = cfg.dump();

  auto slurp = [](const char* path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  REQUIRE(bhe_sweep_run(text.c_str(), "/tmp/bhe_capi_1.csv", 1) == BHE_OK);
  REQUIRE(bhe_sweep_run(text.c_str(), "/tmp/bhe_capi_8.csv", 8) == BHE_OK);
  const std::string a = slurp("/tmp/bhe_capi_1.csv");
  CHECK(a == slurp("/tmp/bhe_capi_8.csv"));
  CHECK(a.substr(0, 6) == "alpha,");
  CHECK(std::count(a.begin(), a.end(), '\n') == 11);  // header + 5*2 rows
  CHECK(a.find("\r") == std::string::npos);
  std::remove("/tmp/bhe_capi_1.csv");
  std::remove("/tmp/bhe_capi_8.csv");

  CHECK(bhe_sweep_run(text.c_str(), "/no/such/dir/x.csv", 1) == BHE_ERR_IO);
  CHECK(bhe_sweep_run("{", "/tmp/bhe_capi_bad.csv", 1) == BHE_ERR_CONFIG);
}
