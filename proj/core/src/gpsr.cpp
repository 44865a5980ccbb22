#include "hexcassi/gpsr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "hexcassi/format.hpp"
#include "hexcassi/metrics.hpp"

namespace hexcassi {

namespace {

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double l1_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

std::size_t count_nonzero(std::span<const double> v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double x) { return x != 0.0; }));
}

double half_residual_sq(std::span<const double> a_theta, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t r = 0; r < y.size(); ++r) {
    const double d = a_theta[r] - y[r];
    s += d * d;
  }
  return 0.5 * s;
}

class Gpsr {
 public:
  Gpsr(std::span<const double> y, const LinearMap& A, const SolverConfig& cfg)
      : y_(y), A_(A), cfg_(cfg), theta_(A.cols()), a_theta_(A.rows()), grad_(A.cols()),
        resid_(A.rows()), dtheta_(A.cols()), a_dtheta_(A.rows()), next_(A.cols()),
        a_next_(A.rows()) {}

  SolverResult run() {
    SolverResult out;
    A_.apply_adjoint(y_, theta_);
    const double aty_max = inf_norm(theta_);
    if (cfg_.tau >= aty_max) {
      std::fill(theta_.begin(), theta_.end(), 0.0);
      out.objective = half_residual_sq(std::vector<double>(A_.rows(), 0.0), y_);
      out.trace.push_back({0, out.objective, 0.0, 0, cfg_.tau});
      out.theta = theta_;
      out.converged = true;
      return out;
    }

    std::vector<double> taus;
    const double tau_start = 0.5 * aty_max;
    if (cfg_.continuation && cfg_.continuation_stages > 1 && tau_start > cfg_.tau) {
      const std::size_t stages = cfg_.continuation_stages;
      for (std::size_t s = 0; s < stages; ++s) {
        const double frac = static_cast<double>(stages - 1 - s) / static_cast<double>(stages - 1);
        taus.push_back(cfg_.tau * std::pow(tau_start / cfg_.tau, frac));
      }
      taus.back() = cfg_.tau;
    } else {
      taus.push_back(cfg_.tau);
    }

    A_.apply(theta_, a_theta_);
    refresh_gradient();
    std::size_t iter = 0;
    bool converged = false;
    for (std::size_t s = 0; s < taus.size(); ++s) {
      const double tau = taus[s];
      double phi = half_residual_sq(a_theta_, y_) + tau * l1_norm(theta_);
      out.trace.push_back({iter, phi, 0.0, count_nonzero(theta_), tau});
      double alpha = initial_alpha(tau);
      std::size_t calm = 0;
      converged = false;
      while (iter < cfg_.max_iters) {
        ++iter;
        // delta = (z - alpha grad F)_+ - z for z = (theta_+, theta_-).
        double gd = 0.0;
        double dd = 0.0;
        for (std::size_t q = 0; q < theta_.size(); ++q) {
          const double u = std::max(theta_[q], 0.0);
          const double v = std::max(-theta_[q], 0.0);
          const double gu = tau + grad_[q];
          const double gv = tau - grad_[q];
          const double du = std::max(u - alpha * gu, 0.0) - u;
          const double dv = std::max(v - alpha * gv, 0.0) - v;
          gd += du * gu + dv * gv;
          dd += du * du + dv * dv;
          dtheta_[q] = du - dv;
        }
        if (dd == 0.0 || gd >= 0.0) {
          converged = true;
          out.trace.push_back({iter, phi, 0.0, count_nonzero(theta_), tau});
          break;
        }
        A_.apply(dtheta_, a_dtheta_);
        double curv = 0.0;
        for (double x : a_dtheta_) curv += x * x;
        const double lambda = curv > 0.0 ? std::clamp(-gd / curv, 0.0, 1.0) : 1.0;

        for (std::size_t q = 0; q < theta_.size(); ++q) next_[q] = theta_[q] + lambda * dtheta_[q];
        for (std::size_t r = 0; r < a_theta_.size(); ++r) a_next_[r] = a_theta_[r] + lambda * a_dtheta_[r];
        const double phi_next = half_residual_sq(a_next_, y_) + tau * l1_norm(next_);
        if (!std::isfinite(phi_next)) {
          throw SolverDivergence("gpsr: non-finite objective at iteration " + std::to_string(iter),
                                 out.trace);
        }
        if (phi_next > phi) {
          // Only rounding can get here; the step is rejected and the stage ends.
          converged = true;
          out.trace.push_back({iter, phi, 0.0, count_nonzero(theta_), tau});
          break;
        }
        theta_.swap(next_);
        a_theta_.swap(a_next_);
        refresh_gradient();

        const double rel = std::abs(phi - phi_next) / std::max(phi, std::numeric_limits<double>::min());
        phi = phi_next;
        out.trace.push_back({iter, phi, lambda * std::sqrt(dd), count_nonzero(theta_), tau});
        alpha = curv > 0.0 ? std::clamp(dd / curv, cfg_.alpha_min, cfg_.alpha_max) : cfg_.alpha_max;

        calm = rel < cfg_.tol ? calm + 1 : 0;
        if (calm >= 3) {
          converged = true;
          break;
        }
      }
      out.objective = phi;
    }

    out.theta = theta_;
    out.iterations = iter;
    out.converged = converged;
    return out;
  }

 private:
  void refresh_gradient() {
    for (std::size_t r = 0; r < resid_.size(); ++r) resid_[r] = a_theta_[r] - y_[r];
    A_.apply_adjoint(resid_, grad_);
  }

  // BB-style first step from the gradient components that are free to move.
  double initial_alpha(double tau) {
    double gg = 0.0;
    for (std::size_t q = 0; q < theta_.size(); ++q) {
      const double u = std::max(theta_[q], 0.0);
      const double v = std::max(-theta_[q], 0.0);
      const double gu = tau + grad_[q];
      const double gv = tau - grad_[q];
      const double pu = (u > 0.0 || gu < 0.0) ? gu : 0.0;
      const double pv = (v > 0.0 || gv < 0.0) ? gv : 0.0;
      gg += pu * pu + pv * pv;
      dtheta_[q] = pu - pv;
    }
    A_.apply(dtheta_, a_dtheta_);
    double curv = 0.0;
    for (double x : a_dtheta_) curv += x * x;
    if (!(curv > 0.0) || gg == 0.0) return 1.0;
    return std::clamp(gg / curv, cfg_.alpha_min, cfg_.alpha_max);
  }

  std::span<const double> y_;
  const LinearMap& A_;
  const SolverConfig& cfg_;
  std::vector<double> theta_;
  std::vector<double> a_theta_;
  std::vector<double> grad_;
  std::vector<double> resid_;
  std::vector<double> dtheta_;
  std::vector<double> a_dtheta_;
  std::vector<double> next_;
  std::vector<double> a_next_;
};

}  // namespace

void SolverConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("solver: tau must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("solver: tol must be > 0");
  if (!(alpha_min > 0.0 && alpha_min < alpha_max)) {
    throw std::invalid_argument("solver: need 0 < alpha_min < alpha_max");
  }
  if (max_iters == 0) throw std::invalid_argument("solver: max_iters must be >= 1");
}

SolverResult solve(std::span<const double> y, const LinearMap& A, const SolverConfig& config) {
  config.validate();
  if (y.size() != A.rows()) {
    throw std::invalid_argument("solve: measurement length " + std::to_string(y.size()) +
                                " does not match operator rows " + std::to_string(A.rows()));
  }
  return Gpsr(y, A, config).run();
}

SolverResult solve(std::span<const double> y, const LinearMap& forward, const LinearMap& basis,
                   const SolverConfig& config) {
  const ComposedMap A(forward, basis);
  return solve(y, A, config);
}

double objective(std::span<const double> y, const LinearMap& A, std::span<const double> theta,
                 double tau) {
  const auto a_theta = A(theta);
  return half_residual_sq(a_theta, y) + tau * l1_norm(theta);
}

TauSearch line_search_tau(std::span<const double> y, const LinearMap& forward,
                          const LinearMap& basis, std::span<const double> tau_grid,
                          const SpectralCube& truth, const SolverConfig& base) {
  if (tau_grid.empty()) throw std::invalid_argument("line_search_tau: empty tau grid");
  if (basis.rows() != truth.dims().voxels()) {
    throw std::invalid_argument("line_search_tau: basis size does not match the reference cube");
  }
  TauSearch out;
  double best = -std::numeric_limits<double>::infinity();
  for (double tau : tau_grid) {
    SolverConfig cfg = base;
    cfg.tau = tau;
    const SolverResult res = solve(y, forward, basis, cfg);
    SpectralCube est = devectorize(truth.dims(), basis(res.theta));
    const Psnr p = mean_psnr(band_psnr(truth, est));
    const double score = p.infinite ? std::numeric_limits<double>::infinity() : p.db;
    out.curve.push_back({tau, score, res.iterations});
    if (score > best) {
      best = score;
      out.best_tau = tau;
      out.best_estimate = std::move(est);
    }
  }
  return out;
}

void write_trace_csv(std::ostream& out, std::span<const TraceEntry> trace) {
  out << "iteration,objective,step,nnz,tau\n";
  for (const auto& e : trace) {
    out << e.iteration << ',' << format_double(e.objective) << ',' << format_double(e.step) << ','
        << e.nnz << ',' << format_double(e.tau) << '\n';
  }
}

}  // namespace hexcassi
