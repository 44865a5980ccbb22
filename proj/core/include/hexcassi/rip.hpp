#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hexcassi/aperture.hpp"
#include "hexcassi/hex_grey.hpp"

namespace hexcassi {

// Same-row pixel pairs (i, j) and (i, j + d) with d uniform in
// {1, ..., max_shift}; these are the code products that meet inside one
// Gram entry when bands r and u = r + d overlap on the detector.
struct PairSampler {
  std::size_t max_shift = 5;  // L - 1
};

enum class RFamily { SR, SB, HB };
std::string_view rfamily_name(RFamily f) noexcept;

struct RStatReport {
  RFamily family = RFamily::SR;
  std::size_t k = 0;
  double g = 0.0;
  std::size_t samples = 0;
  double mean_r = 0.0;
  double stderr_r = 0.0;
  // Mean r per shift d = 1..max_shift (index d - 1).
  std::vector<double> mean_by_shift;
  // Fraction of samples with every per-shot product t_m t_n equal to 0 at d = 1.
  double zero_product_rate_d1 = 0.0;
};

inline constexpr std::size_t kMinRSamples = 100;

// r = sum_k t^k_m t^k_n over `n_samples` uniformly drawn pairs of the code
// planes (binary for square families, grey for hex).
RStatReport r_statistic(std::span<const GreyAperture> codes, const PairSampler& sampler,
                        std::size_t n_samples, std::uint64_t seed);
RStatReport r_statistic(const ApertureSet& set, double offset_a, const PairSampler& sampler,
                        std::size_t n_samples, std::uint64_t seed);

struct OrderingOptions {
  std::size_t n = 64;
  std::size_t m = 64;
  double g = 0.5;
  std::size_t k = 2;
  std::size_t n_seeds = 5;
  std::size_t n_samples = 100'000;
  std::size_t bands = 6;
  double offset_a = 0.0;
  std::uint64_t seed = 1;
  double gate_sigmas = 2.0;
};

struct OrderingReport {
  std::vector<RStatReport> reports;  // SR, SB, HB (or the two compared families)
  bool verdict = false;
  std::vector<double> gaps;          // consecutive mean differences
  std::vector<double> gap_stderrs;   // combined standard error per gap
  double sr_closed_form = 0.0;       // K g^2
  bool sr_matches_closed_form = false;  // within 3 standard errors
};

// Complementary SR (i.i.d. shot labels), SB and HB sets pooled over seeds.
// verdict: mean SR > mean SB > mean HB, each gap above gate_sigmas combined
// standard errors.
OrderingReport verify_ordering(const OrderingOptions& opt);
// The same gate applied to two independently seeded draws of one family
// (control run).
OrderingReport compare_families(const OrderingOptions& opt, RFamily first, RFamily second);

struct ComplementarityReport {
  std::vector<double> values;  // C_n per valid code position, row-major order
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double variance = 0.0;
  bool all_one = false;  // exact
  // Hex sets only: sum_k (T^k element)^2 == 1 at every valid hex cell.
  bool hex_elements_checked = false;
  bool hex_elements_all_one = false;
};

// C_n = sum_k (t^k_n)^2 over the code planes. For hex sets the grey planes
// at `offset_a` are used and the binary element check is added.
ComplementarityReport complementarity_constant(const ApertureSet& set, double offset_a = 0.0);
ComplementarityReport complementarity_constant(std::span<const GreyAperture> codes);

struct SubsetPolicy {
  enum class Kind { Exhaustive, Random };
  Kind kind = Kind::Exhaustive;
  std::size_t count = 0;  // random subsets per size
  std::uint64_t seed = 0;

  static SubsetPolicy exhaustive() { return {}; }
  static SubsetPolicy random(std::size_t count, std::uint64_t seed) {
    return {Kind::Random, count, seed};
  }
};

inline constexpr std::size_t kMaxExhaustiveColumns = 128;
inline constexpr std::size_t kMaxExhaustiveS = 3;
inline constexpr std::size_t kMaxProbeColumns = 4096;

struct RipProbeResult {
  std::size_t s = 0;
  bool exhaustive = true;
  std::size_t subsets = 0;
  double delta_s = 0.0;
  double c = 0.0;      // mean Gram diagonal used for normalization
  double alpha = 0.0;  // max |off-diagonal| of the normalized Gram
};

// delta_s = max over column subsets with |tau| <= S of the largest |eig| of
// A_tau^T A_tau / C - I.
RipProbeResult brute_force_delta_s(const Eigen::MatrixXd& a, std::size_t s,
                                   const SubsetPolicy& policy = SubsetPolicy::exhaustive());

// CSV header family,K,g,samples,mean_r,stderr; JSON with the same keys plus verdict.
void write_ordering_csv(std::ostream& out, const OrderingReport& report);
std::string ordering_json(const OrderingReport& report, int indent = 2);

}  // namespace hexcassi
