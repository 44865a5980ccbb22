#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hexcassi/aperture.hpp"
#include "hexcassi/forward_model.hpp"
#include "hexcassi/hex_grey.hpp"

using namespace hexcassi;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& eng) {
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (double& x : v) x = nd(eng);
  return v;
}

std::vector<GreyAperture> random_codes(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed) {
  const auto set = gen_aperture_set(ApertureFamily::RandomSquare, n, m, k, 0.5, false, seed);
  return code_planes(set, 0.0);
}

GreyAperture ones(std::size_t n, std::size_t m) {
  GreyAperture g(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) g(i, j) = 1.0;
  }
  return g;
}

}  // namespace

TEST_CASE("single band is an elementwise product") {
  const auto codes = random_codes(5, 4, 1, 3);
  SpectralCube f({5, 4, 1});
  std::mt19937_64 eng(1);
  std::uniform_real_distribution<double> u;
  for (double& v : f.data()) v = u(eng);
  const auto y = measure(f, codes, NoiseModel::none());
  REQUIRE(y.detector_cols == 4);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(y.at(0, i, j) == f(i, j, 0) * codes[0](i, j));
  }
}

TEST_CASE("two by two by two hand example") {
  SpectralCube f({2, 2, 2});
  f(0, 0, 0) = 1.0;
  f(1, 1, 1) = 1.0;
  const std::vector<GreyAperture> codes{ones(2, 2)};
  const auto y = measure(f, codes, NoiseModel::none());
  REQUIRE(y.detector_cols == 3);
  const double row0[] = {1, 0, 0};
  const double row1[] = {0, 0, 1};
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(y.at(0, 0, j) == row0[j]);
    CHECK(y.at(0, 1, j) == row1[j]);
  }
  const ForwardOperator op({2, 2, 2}, codes);
  const auto dense = materialize_H(op);
  const Eigen::VectorXd yd = dense * Eigen::Map<const Eigen::VectorXd>(f.data().data(), 8);
  for (std::size_t q = 0; q < 6; ++q) CHECK(yd(static_cast<Eigen::Index>(q)) == y.values[q]);
}

TEST_CASE("gaussian noise is reproducible with the requested variance") {
  const CubeDims d{64, 64, 3};
  SpectralCube f(d);
  for (double& v : f.data()) v = 0.5;
  const auto codes = random_codes(64, 64, 3, 5);
  const auto clean = measure(f, codes, NoiseModel::none());
  const auto a = measure(f, codes, NoiseModel::gaussian(0.01, 42));
  const auto b = measure(f, codes, NoiseModel::gaussian(0.01, 42));
  CHECK(a.values == b.values);
  CHECK(a.noise_sigma == 0.01);
  REQUIRE(clean.values.size() >= 10'000);
  double sum = 0.0, sq = 0.0;
  for (std::size_t q = 0; q < clean.values.size(); ++q) {
    const double e = a.values[q] - clean.values[q];
    sum += e;
    sq += e * e;
  }
  const double n = static_cast<double>(clean.values.size());
  const double var = sq / n - (sum / n) * (sum / n);
  CHECK(var >= 0.8 * 1e-4);
  CHECK(var <= 1.2 * 1e-4);
  // No noise means no dependence on the seed.
  CHECK(measure(f, codes, {NoiseModel::Kind::None, 0.0, 1}).values ==
        measure(f, codes, {NoiseModel::Kind::None, 0.0, 2}).values);
}

TEST_CASE("adjoint identity on random pairs") {
  const ForwardOperator op({8, 8, 3}, random_codes(8, 8, 2, 9));
  std::mt19937_64 eng(7);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_vector(op.cols(), eng);
    const auto y = random_vector(op.rows(), eng);
    const double lhs = dot(op(f), y);
    const double rhs = dot(f, op.adjoint(y));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("hex grey codes also satisfy the adjoint identity") {
  const auto set = gen_aperture_set(ApertureFamily::BlueNoiseHex, 8, 8, 2, 0.5, true, 4);
  const ForwardOperator op({8, 8, 3}, code_planes(set, 0.3));
  std::mt19937_64 eng(8);
  for (int t = 0; t < 5; ++t) {
    const auto f = random_vector(op.cols(), eng);
    const auto y = random_vector(op.rows(), eng);
    CHECK(std::abs(dot(op(f), y) - dot(f, op.adjoint(y))) <= 1e-10 * std::abs(dot(op(f), y)));
  }
}

TEST_CASE("all-ones single band single shot is the identity") {
  const std::vector<GreyAperture> codes{ones(4, 5)};
  const ForwardOperator op({4, 5, 1}, codes);
  CHECK(to_dense(op).isIdentity(0.0));
}

TEST_CASE("linearity and zero input") {
  const ForwardOperator op({6, 6, 4}, random_codes(6, 6, 3, 1));
  std::mt19937_64 eng(2);
  const auto f1 = random_vector(op.cols(), eng);
  const auto f2 = random_vector(op.cols(), eng);
  std::vector<double> mix(op.cols());
  for (std::size_t q = 0; q < mix.size(); ++q) mix[q] = 2.5 * f1[q] - 0.75 * f2[q];
  const auto y1 = op(f1), y2 = op(f2), ym = op(mix);
  for (std::size_t p = 0; p < ym.size(); ++p) {
    CHECK(std::abs(ym[p] - (2.5 * y1[p] - 0.75 * y2[p])) <= 1e-12 * (1.0 + std::abs(ym[p])));
  }
  const auto zero = op(std::vector<double>(op.cols(), 0.0));
  for (double v : zero) CHECK(v == 0.0);
}

TEST_CASE("length and dimension errors") {
  const ForwardOperator op({4, 4, 2}, random_codes(4, 4, 1, 1));
  std::vector<double> y(op.rows());
  CHECK_THROWS_AS(op.apply(std::vector<double>(3), y), std::invalid_argument);
  CHECK_THROWS_AS(ForwardOperator({5, 4, 2}, random_codes(4, 4, 1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(ForwardOperator({4, 4, 2}, std::vector<GreyAperture>{}), std::invalid_argument);
  SpectralCube wrong({4, 5, 2});
  CHECK_THROWS_AS(measure(op, wrong, NoiseModel::none()), std::invalid_argument);
}

TEST_CASE("dense H: row sparsity, nonzero count and matvec agreement") {
  const std::size_t n = 6, m = 6, l = 3, k = 2;
  const auto codes = random_codes(n, m, k, 11);
  const ForwardOperator op({n, m, l}, codes);
  const auto h = materialize_H(op);
  REQUIRE(h.rows() == static_cast<Eigen::Index>(k * n * (m + l - 1)));
  REQUIRE(h.cols() == static_cast<Eigen::Index>(n * m * l));

  std::size_t nnz = 0;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    std::size_t row = 0;
    for (Eigen::Index c = 0; c < h.cols(); ++c) row += h(r, c) != 0.0;
    CHECK(row <= l);
    nnz += row;
  }
  // Every open code cell appears once per band.
  std::size_t ones_total = 0;
  for (const auto& c : codes) {
    for (double v : c.values()) ones_total += v != 0.0;
  }
  CHECK(nnz == l * ones_total);

  std::mt19937_64 eng(3);
  for (int t = 0; t < 50; ++t) {
    const auto f = random_vector(op.cols(), eng);
    const Eigen::VectorXd ref = h * Eigen::Map<const Eigen::VectorXd>(f.data(), static_cast<Eigen::Index>(f.size()));
    const auto y = op(f);
    const Eigen::VectorXd got = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
    CHECK((got - ref).norm() <= 1e-12 * ref.norm());
  }
}

TEST_CASE("dense H from hex codes stays in [0, 1]") {
  const auto set = gen_aperture_set(ApertureFamily::BlueNoiseHex, 6, 6, 2, 0.5, true, 2);
  const auto h = materialize_H(ForwardOperator({6, 6, 3}, code_planes(set, 0.0)));
  CHECK(h.minCoeff() >= 0.0);
  CHECK(h.maxCoeff() <= 1.0);
  bool fractional = false;
  for (Eigen::Index q = 0; q < h.size(); ++q) {
    const double v = h.data()[q];
    fractional = fractional || (v > 0.0 && v < 1.0);
  }
  CHECK(fractional);
}

TEST_CASE("materialize_H refuses large operators") {
  const ForwardOperator op({64, 64, 6}, random_codes(64, 64, 2, 1));
  CHECK_THROWS_AS(materialize_H(op), std::length_error);
}

TEST_CASE("detector values bounded by L times the cube maximum") {
  SpectralCube f({8, 8, 4});
  for (double& v : f.data()) v = 1.0;
  const auto y = measure(f, std::vector<GreyAperture>{ones(8, 8)}, NoiseModel::none());
  for (double v : y.values) CHECK(v <= 4.0);
  CHECK(*std::max_element(y.values.begin(), y.values.end()) == 4.0);
}
