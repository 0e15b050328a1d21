#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "fvs/fvs.h"

namespace {

struct TempPath {
  std::string path;
  explicit TempPath(const std::string& name) {
    path = std::string("capi_test_") + name;
  }
  ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("design lifecycle through the C API") {
  fvs_design* d = nullptr;
  REQUIRE(fvs_design_build(3, 4, 1, &d) == FVS_OK);

  fvs_design_info info{};
  REQUIRE(fvs_design_get_info(d, &info) == FVS_OK);
  CHECK(info.p == 3);
  CHECK(info.r == 4);
  CHECK(info.t == 1);
  CHECK(info.h == 2);
  CHECK(info.m == 2);
  CHECK(info.n == 5);
  CHECK(info.q == 9);
  CHECK(info.exponent_count == 2);  // K = {0, 1} for p = 3

  uint64_t g1 = 0, g2 = 0;
  CHECK(fvs_design_point_count(d, FVS_GAMMA1, &g1) == FVS_OK);
  CHECK(fvs_design_point_count(d, FVS_GAMMA2, &g2) == FVS_OK);
  CHECK(g1 >= 9);
  CHECK(g1 <= 45);
  CHECK(g2 >= g1);

  int m_gen = 0, bounds = 0, coherence = 0;
  CHECK(fvs_design_verify(d, &m_gen, &bounds, &coherence) == FVS_OK);
  CHECK(m_gen == 1);
  CHECK(bounds == 1);
  CHECK(coherence == 1);

  TempPath file("design.txt");
  CHECK(fvs_design_save(d, file.path.c_str()) == FVS_OK);
  fvs_design* loaded = nullptr;
  REQUIRE(fvs_design_load(file.path.c_str(), &loaded) == FVS_OK);
  fvs_design_info info2{};
  CHECK(fvs_design_get_info(loaded, &info2) == FVS_OK);
  CHECK(info2.n == info.n);
  fvs_design_free(loaded);
  fvs_design_free(d);
}

TEST_CASE("invalid arguments surface as status codes with messages") {
  fvs_design* d = nullptr;
  CHECK(fvs_design_build(4, 2, 1, &d) == FVS_ERR_INVALID_ARGUMENT);
  CHECK(std::string(fvs_last_error()).find("prime") != std::string::npos);
  CHECK(fvs_design_build(5, 2, 1, nullptr) == FVS_ERR_INVALID_ARGUMENT);
  CHECK(fvs_design_load("does_not_exist.fvs", &d) == FVS_ERR_IO);

  fvs_spectrum* s = nullptr;
  CHECK(fvs_spectrum_create(9, 2, &s) == FVS_ERR_INVALID_ARGUMENT);
  CHECK(std::string(fvs_status_str(FVS_ERR_MISSING_SAMPLES)) == "missing samples");
}

TEST_CASE("spectrum construction, terms and files") {
  fvs_spectrum* s = nullptr;
  REQUIRE(fvs_spectrum_create(5, 2, &s) == FVS_OK);
  uint32_t label_a[2] = {1, 2};
  uint32_t label_b[2] = {0, 4};
  CHECK(fvs_spectrum_set(s, label_a, 1.5, -0.5) == FVS_OK);
  CHECK(fvs_spectrum_set(s, label_b, 0.0, 2.0) == FVS_OK);

  uint64_t count = 0;
  CHECK(fvs_spectrum_term_count(s, &count) == FVS_OK);
  CHECK(count == 2);
  uint32_t label[2];
  double re = 0, im = 0;
  REQUIRE(fvs_spectrum_term(s, 0, label, &re, &im) == FVS_OK);  // lexicographic order
  CHECK(label[0] == 0);
  CHECK(label[1] == 4);
  CHECK(re == 0.0);
  CHECK(im == 2.0);
  CHECK(fvs_spectrum_term(s, 2, label, &re, &im) == FVS_ERR_INVALID_ARGUMENT);

  double norm = 0;
  CHECK(fvs_spectrum_l1_norm(s, &norm) == FVS_OK);
  CHECK(norm == doctest::Approx(2.0 + std::hypot(1.5, 0.5)));

  TempPath file("spectrum.txt");
  CHECK(fvs_spectrum_save(s, file.path.c_str()) == FVS_OK);
  fvs_spectrum* back = nullptr;
  REQUIRE(fvs_spectrum_load(file.path.c_str(), 5, 2, &back) == FVS_OK);
  double dist = 1;
  CHECK(fvs_spectrum_l1_distance(s, back, &dist) == FVS_OK);
  CHECK(dist == 0.0);
  fvs_spectrum_free(back);
  fvs_spectrum_free(s);
}

TEST_CASE("end-to-end recovery through the C API") {
  fvs_design* d = nullptr;
  REQUIRE(fvs_design_build(5, 3, 2, &d) == FVS_OK);
  fvs_spectrum* truth = nullptr;
  REQUIRE(fvs_spectrum_random(5, 3, 2, 424242, &truth) == FVS_OK);

  for (fvs_variant variant : {FVS_GAMMA1, FVS_GAMMA2}) {
    fvs_samples* samples = nullptr;
    REQUIRE(fvs_samples_synthesize(d, truth, variant, &samples) == FVS_OK);
    uint64_t n = 0;
    CHECK(fvs_samples_count(samples, &n) == FVS_OK);
    CHECK(n > 0);

    TempPath report("report.txt");
    fvs_spectrum* rec = nullptr;
    REQUIRE(fvs_reconstruct(d, samples, variant, report.path.c_str(), &rec) == FVS_OK);
    double err = 1;
    CHECK(fvs_spectrum_l1_distance(truth, rec, &err) == FVS_OK);
    CHECK(err < 1e-8);
    std::FILE* f = std::fopen(report.path.c_str(), "r");
    REQUIRE(f != nullptr);
    std::fclose(f);
    fvs_spectrum_free(rec);
    fvs_samples_free(samples);
  }
  fvs_spectrum_free(truth);
  fvs_design_free(d);
}

TEST_CASE("noise injection keeps the budget and the disjoint support") {
  fvs_spectrum* s = nullptr;
  REQUIRE(fvs_spectrum_random(5, 3, 2, 7, &s) == FVS_OK);
  double before = 0;
  CHECK(fvs_spectrum_l1_norm(s, &before) == FVS_OK);
  fvs_spectrum* eps = nullptr;
  REQUIRE(fvs_spectrum_add_noise(s, 0.25, 99, &eps) == FVS_OK);
  double eps_norm = 0, after = 0;
  CHECK(fvs_spectrum_l1_norm(eps, &eps_norm) == FVS_OK);
  CHECK(fvs_spectrum_l1_norm(s, &after) == FVS_OK);
  CHECK(eps_norm == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(after == doctest::Approx(before + 0.25).epsilon(1e-9));  // disjoint support
  fvs_spectrum_free(eps);
  fvs_spectrum_free(s);
}

TEST_CASE("missing samples are reported with the offending point") {
  fvs_design* d = nullptr;
  REQUIRE(fvs_design_build(5, 3, 1, &d) == FVS_OK);
  fvs_spectrum* truth = nullptr;
  REQUIRE(fvs_spectrum_random(5, 3, 1, 5, &truth) == FVS_OK);
  fvs_samples* g1 = nullptr;
  REQUIRE(fvs_samples_synthesize(d, truth, FVS_GAMMA1, &g1) == FVS_OK);
  fvs_spectrum* rec = nullptr;
  CHECK(fvs_reconstruct(d, g1, FVS_GAMMA2, nullptr, &rec) == FVS_ERR_MISSING_SAMPLES);
  CHECK(std::string(fvs_last_error()).find("missing sample at point") !=
        std::string::npos);
  fvs_samples_free(g1);
  fvs_spectrum_free(truth);
  fvs_design_free(d);
}

TEST_CASE("full transform on a complete table") {
  fvs_spectrum* truth = nullptr;
  REQUIRE(fvs_spectrum_random(3, 3, 2, 12, &truth) == FVS_OK);
  fvs_samples* table = nullptr;
  REQUIRE(fvs_samples_full(truth, &table) == FVS_OK);
  uint64_t count = 0;
  CHECK(fvs_samples_count(table, &count) == FVS_OK);
  CHECK(count == 27);
  fvs_spectrum* hat = nullptr;
  REQUIRE(fvs_full_dft(table, &hat) == FVS_OK);
  double err = 1;
  CHECK(fvs_spectrum_l1_distance(truth, hat, &err) == FVS_OK);
  CHECK(err < 1e-9);
  fvs_spectrum_free(hat);
  fvs_samples_free(table);
  fvs_spectrum_free(truth);
}

TEST_CASE("synthesize rejects mismatched groups") {
  fvs_design* d = nullptr;
  REQUIRE(fvs_design_build(5, 3, 1, &d) == FVS_OK);
  fvs_spectrum* wrong = nullptr;
  REQUIRE(fvs_spectrum_random(3, 3, 1, 1, &wrong) == FVS_OK);
  fvs_samples* out = nullptr;
  CHECK(fvs_samples_synthesize(d, wrong, FVS_GAMMA1, &out) ==
        FVS_ERR_DIMENSION_MISMATCH);
  fvs_spectrum_free(wrong);
  fvs_design_free(d);
}
