#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "hexcassi/error.hpp"
#include "hexcassi/linear_map.hpp"
#include "hexcassi/spectral_cube.hpp"

namespace hexcassi {

struct SolverConfig {
  double tau = 1e-4;
  std::size_t max_iters = 500;
  double tol = 1e-5;  // relative objective change
  double alpha_min = 1e-30;
  double alpha_max = 1e30;
  // Warm-start through a geometric tau schedule ending at `tau`.
  bool continuation = false;
  std::size_t continuation_stages = 5;

  void validate() const;
};

struct TraceEntry {
  std::size_t iteration = 0;
  double objective = 0.0;
  double step = 0.0;  // length of the accepted step in (u, v)
  std::size_t nnz = 0;
  double tau = 0.0;
};

struct SolverResult {
  std::vector<double> theta;
  std::vector<TraceEntry> trace;
  std::size_t iterations = 0;
  bool converged = false;
  double objective = 0.0;
};

class SolverDivergence : public Error {
 public:
  SolverDivergence(const std::string& what, std::vector<TraceEntry> trace)
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<TraceEntry>& trace() const noexcept { return trace_; }

 private:
  std::vector<TraceEntry> trace_;
};

// GPSR-BB, monotone variant: minimizes 0.5 ||y - A theta||^2 + tau ||theta||_1
// over the split theta = u - v with u, v >= 0. Starts from A^T y and returns
// zero right away when tau >= ||A^T y||_inf.
SolverResult solve(std::span<const double> y, const LinearMap& A, const SolverConfig& config);
// A = H Psi.
SolverResult solve(std::span<const double> y, const LinearMap& forward, const LinearMap& basis,
                   const SolverConfig& config);

double objective(std::span<const double> y, const LinearMap& A, std::span<const double> theta,
                 double tau);

struct TauPoint {
  double tau = 0.0;
  double mean_psnr_db = 0.0;
  std::size_t iterations = 0;
};

struct TauSearch {
  double best_tau = 0.0;
  std::vector<TauPoint> curve;  // grid order
  SpectralCube best_estimate;
};

// One solve per grid value; the best mean PSNR against `truth` wins, ties go
// to the earlier grid entry.
TauSearch line_search_tau(std::span<const double> y, const LinearMap& forward,
                          const LinearMap& basis, std::span<const double> tau_grid,
                          const SpectralCube& truth, const SolverConfig& base = {});

// CSV: iteration,objective,step,nnz,tau
void write_trace_csv(std::ostream& out, std::span<const TraceEntry> trace);

}  // namespace hexcassi
