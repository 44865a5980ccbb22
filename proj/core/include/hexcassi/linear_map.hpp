#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hexcassi {

// Matrix-free linear operator R^cols -> R^rows with its exact adjoint.
// Implementations overwrite the output span; sizes are checked.
class LinearMap {
 public:
  virtual ~LinearMap() = default;

  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
  virtual void apply_adjoint(std::span<const double> y, std::span<double> x) const = 0;

  std::vector<double> operator()(std::span<const double> x) const;
  std::vector<double> adjoint(std::span<const double> y) const;

 protected:
  void check_apply(std::span<const double> x, std::span<double> y) const;
  void check_adjoint(std::span<const double> y, std::span<double> x) const;
};

class IdentityMap final : public LinearMap {
 public:
  explicit IdentityMap(std::size_t n) : n_(n) {}
  std::size_t rows() const override { return n_; }
  std::size_t cols() const override { return n_; }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;

 private:
  std::size_t n_;
};

class DenseMap final : public LinearMap {
 public:
  explicit DenseMap(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {}
  std::size_t rows() const override { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t cols() const override { return static_cast<std::size_t>(matrix_.cols()); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

 private:
  Eigen::MatrixXd matrix_;
};

// outer * inner; both operands must outlive the composition.
class ComposedMap final : public LinearMap {
 public:
  ComposedMap(const LinearMap& outer, const LinearMap& inner);
  std::size_t rows() const override { return outer_.rows(); }
  std::size_t cols() const override { return inner_.cols(); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const override;

 private:
  const LinearMap& outer_;
  const LinearMap& inner_;
  mutable std::vector<double> scratch_;
};

// Column-by-column materialization through apply(); for small operators.
Eigen::MatrixXd to_dense(const LinearMap& op);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace hexcassi
