#include "hexcassi/linear_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hexcassi {

std::vector<double> LinearMap::operator()(std::span<const double> x) const {
  std::vector<double> y(rows());
  apply(x, y);
  return y;
}

std::vector<double> LinearMap::adjoint(std::span<const double> y) const {
  std::vector<double> x(cols());
  apply_adjoint(y, x);
  return x;
}

void LinearMap::check_apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols() || y.size() != rows()) {
    throw std::invalid_argument("apply: expected input " + std::to_string(cols()) + " / output " +
                                std::to_string(rows()) + ", got " + std::to_string(x.size()) +
                                " / " + std::to_string(y.size()));
  }
}

void LinearMap::check_adjoint(std::span<const double> y, std::span<double> x) const {
  if (y.size() != rows() || x.size() != cols()) {
    throw std::invalid_argument("apply_adjoint: expected input " + std::to_string(rows()) +
                                " / output " + std::to_string(cols()) + ", got " +
                                std::to_string(y.size()) + " / " + std::to_string(x.size()));
  }
}

void IdentityMap::apply(std::span<const double> x, std::span<double> y) const {
  check_apply(x, y);
  std::copy(x.begin(), x.end(), y.begin());
}

void IdentityMap::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  check_adjoint(y, x);
  std::copy(y.begin(), y.end(), x.begin());
}

void DenseMap::apply(std::span<const double> x, std::span<double> y) const {
  check_apply(x, y);
  Eigen::Map<Eigen::VectorXd>(y.data(), matrix_.rows()) =
      matrix_ * Eigen::Map<const Eigen::VectorXd>(x.data(), matrix_.cols());
}

void DenseMap::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  check_adjoint(y, x);
  Eigen::Map<Eigen::VectorXd>(x.data(), matrix_.cols()) =
      matrix_.transpose() * Eigen::Map<const Eigen::VectorXd>(y.data(), matrix_.rows());
}

ComposedMap::ComposedMap(const LinearMap& outer, const LinearMap& inner)
    : outer_(outer), inner_(inner) {
  if (outer_.cols() != inner_.rows()) {
    throw std::invalid_argument("ComposedMap: inner output size does not match outer input size");
  }
}

void ComposedMap::apply(std::span<const double> x, std::span<double> y) const {
  check_apply(x, y);
  scratch_.resize(inner_.rows());
  inner_.apply(x, scratch_);
  outer_.apply(scratch_, y);
}

void ComposedMap::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  check_adjoint(y, x);
  scratch_.resize(inner_.rows());
  outer_.apply_adjoint(y, scratch_);
  inner_.apply_adjoint(scratch_, x);
}

Eigen::MatrixXd to_dense(const LinearMap& op) {
  Eigen::MatrixXd out(op.rows(), op.cols());
  std::vector<double> e(op.cols(), 0.0);
  std::vector<double> col(op.rows());
  for (std::size_t c = 0; c < op.cols(); ++c) {
    e[c] = 1.0;
    op.apply(e, col);
    out.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Eigen::VectorXd>(col.data(), op.rows());
    e[c] = 0.0;
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace hexcassi
