#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "hexcassi/aperture.hpp"
#include "hexcassi/forward_model.hpp"
#include "hexcassi/rip.hpp"

using namespace hexcassi;

namespace {

GreyAperture constant_plane(std::size_t n, std::size_t m, double v) {
  GreyAperture g(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) g(i, j) = v;
  }
  return g;
}

}  // namespace

TEST_CASE("SR mean r matches K g^2") {
  for (auto [k, g] : {std::pair<std::size_t, double>{2, 0.5}, {4, 0.25}}) {
    // A large mask keeps the realization's own deviation below the sampling error.
    const auto set = gen_complementary_set(ApertureFamily::RandomSquare, 512, 512, k, 3);
    const auto rep = r_statistic(set, 0.0, {5}, 100'000, 9);
    CHECK(rep.samples == 100'000);
    CHECK(std::abs(rep.mean_r - static_cast<double>(k) * g * g) <= 3.0 * rep.stderr_r);
    CHECK(rep.mean_by_shift.size() == 5);
  }
}

TEST_CASE("all-ones planes give r = K exactly") {
  for (std::size_t k : {1u, 3u}) {
    const std::vector<GreyAperture> codes(k, constant_plane(16, 16, 1.0));
    for (std::size_t shift : {1u, 4u}) {
      const auto rep = r_statistic(codes, {shift}, 500, 1);
      CHECK(rep.mean_r == static_cast<double>(k));
      CHECK(rep.stderr_r == 0.0);
    }
  }
}

TEST_CASE("r statistic preconditions and determinism") {
  const std::vector<GreyAperture> codes(2, constant_plane(8, 8, 0.5));
  CHECK_THROWS_AS(r_statistic(codes, {3}, kMinRSamples - 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(r_statistic(codes, {8}, 1000, 1), std::invalid_argument);
  const auto set = gen_complementary_set(ApertureFamily::BlueNoiseHex, 32, 32, 2, 5);
  const auto a = r_statistic(set, 0.2, {5}, 5000, 11);
  const auto b = r_statistic(set, 0.2, {5}, 5000, 11);
  CHECK(a.mean_r == b.mean_r);
  CHECK(a.family == RFamily::HB);
}

TEST_CASE("SB zero-product rate at unit shift is reported") {
  const auto set = gen_complementary_set(ApertureFamily::BlueNoiseSquare, 64, 64, 2, 1);
  const auto rep = r_statistic(set, 0.0, {5}, 20'000, 2);
  CHECK(rep.zero_product_rate_d1 >= 0.0);
  CHECK(rep.zero_product_rate_d1 <= 1.0);
  MESSAGE("SB K=2 zero-product rate at d=1: " << rep.zero_product_rate_d1);
}

TEST_CASE("control run of one family against itself") {
  OrderingOptions opt;
  opt.n_samples = 20'000;
  const auto rep = compare_families(opt, RFamily::SR, RFamily::SR);
  CHECK_FALSE(rep.verdict);
  REQUIRE(rep.reports.size() == 2);
}

TEST_CASE("binary complementary sets have C = 1 everywhere") {
  for (auto family : {ApertureFamily::RandomSquare, ApertureFamily::BlueNoiseSquare}) {
    const auto set = gen_complementary_set(family, 32, 32, 4, 2);
    const auto rep = complementarity_constant(set);
    CHECK(rep.all_one);
    CHECK(rep.min == 1.0);
    CHECK(rep.max == 1.0);
    CHECK_FALSE(rep.hex_elements_checked);
  }
  const auto hex = gen_complementary_set(ApertureFamily::BlueNoiseHex, 32, 32, 4, 2);
  const auto rep = complementarity_constant(hex, 0.0);
  CHECK(rep.hex_elements_checked);
  CHECK(rep.hex_elements_all_one);
  // Grey values square to less than their sum, so the grey C drops below 1.
  CHECK(rep.max <= 1.0 + 1e-12);
  CHECK(rep.mean < 1.0);

  const std::vector<GreyAperture> single{constant_plane(4, 4, 1.0)};
  CHECK(complementarity_constant(single).all_one);
}

TEST_CASE("independent random masks: C averages K g but varies") {
  const auto set = gen_aperture_set(ApertureFamily::RandomSquare, 64, 64, 2, 0.5, false, 8);
  const auto rep = complementarity_constant(set);
  CHECK(std::abs(rep.mean - 1.0) <= 0.05);
  CHECK(rep.variance > 0.0);
  CHECK(rep.min == 0.0);
  CHECK(rep.max == 2.0);
}

TEST_CASE("complementarity constant ignores shot order") {
  const auto set = gen_complementary_set(ApertureFamily::RandomHex, 16, 16, 3, 4);
  auto planes = code_planes(set, 0.4);
  const auto a = complementarity_constant(planes);
  std::swap(planes[0], planes[2]);
  const auto b = complementarity_constant(planes);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t q = 0; q < a.values.size(); ++q) CHECK(std::abs(a.values[q] - b.values[q]) <= 1e-15);
}

TEST_CASE("delta_s sanity cases") {
  std::mt19937_64 eng(1);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd g(20, 8);
  for (Eigen::Index q = 0; q < g.size(); ++q) g.data()[q] = nd(eng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ() * Eigen::MatrixXd::Identity(20, 8);
  for (std::size_t s = 1; s <= 3; ++s) CHECK(brute_force_delta_s(q, s).delta_s <= 1e-10);

  Eigen::MatrixXd dup = q;
  dup.col(5) = dup.col(2);
  const auto r = brute_force_delta_s(dup, 2);
  CHECK(std::abs(r.delta_s - 1.0) <= 1e-10);
  CHECK(std::abs(r.alpha - 1.0) <= 1e-10);
  CHECK(r.exhaustive);
  CHECK(r.subsets == 28);  // only |tau| = S is visited
}

TEST_CASE("delta_s grows with S") {
  std::mt19937_64 eng(2);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd a(12, 30);
  for (Eigen::Index q = 0; q < a.size(); ++q) a.data()[q] = nd(eng);
  double prev = 0.0;
  for (std::size_t s = 1; s <= 3; ++s) {
    const double d = brute_force_delta_s(a, s).delta_s;
    CHECK(d >= prev);
    prev = d;
  }
  const auto sampled = brute_force_delta_s(a, 5, SubsetPolicy::random(200, 3));
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.delta_s >= 0.0);
}

TEST_CASE("delta_s guards") {
  CHECK_THROWS_AS(brute_force_delta_s(Eigen::MatrixXd::Identity(4, kMaxExhaustiveColumns + 1), 2),
                  std::length_error);
  CHECK_THROWS_AS(brute_force_delta_s(Eigen::MatrixXd::Identity(4, 10), kMaxExhaustiveS + 1),
                  std::length_error);
  CHECK_THROWS_AS(brute_force_delta_s(Eigen::MatrixXd::Identity(4, 4), 0), std::invalid_argument);
}

TEST_CASE("tiny CASSI dense matrix is accepted by the probe") {
  const auto set = gen_aperture_set(ApertureFamily::BlueNoiseHex, 6, 6, 2, 0.5, true, 1);
  const auto h = materialize_H(ForwardOperator({6, 6, 3}, code_planes(set, 0.0)));
  const auto r = brute_force_delta_s(h, 2);
  CHECK(r.exhaustive);
  CHECK(r.c > 0.0);
  CHECK(r.subsets == 108 * 107 / 2);
}

TEST_CASE("ordering report exports") {
  OrderingOptions opt;
  opt.n = opt.m = 32;
  opt.n_seeds = 2;
  opt.n_samples = 2000;
  const auto rep = verify_ordering(opt);
  REQUIRE(rep.reports.size() == 3);
  std::ostringstream csv;
  write_ordering_csv(csv, rep);
  CHECK(csv.str().rfind("family,K,g,samples,mean_r,stderr\n", 0) == 0);
  const auto j = nlohmann::json::parse(ordering_json(rep));
  CHECK(j.contains("verdict"));
  REQUIRE(j["families"].size() == 3);
  for (const auto& r : j["families"]) {
    for (const char* key : {"family", "K", "g", "mean_r", "stderr"}) CHECK(r.contains(key));
  }
}
