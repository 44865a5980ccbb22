#include "hexcassi/rip.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "hexcassi/format.hpp"
#include "hexcassi/rng.hpp"

namespace hexcassi {

namespace {

constexpr std::string_view kRFamilyNames[] = {"SR", "SB", "HB"};

ApertureFamily family_of(RFamily f) {
  switch (f) {
    case RFamily::SR: return ApertureFamily::RandomSquare;
    case RFamily::SB: return ApertureFamily::BlueNoiseSquare;
    case RFamily::HB: return ApertureFamily::BlueNoiseHex;
  }
  return ApertureFamily::RandomSquare;
}

// Running sums for mean and standard error.
struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double stderr_mean() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
    return std::sqrt(var / static_cast<double>(n));
  }
};

struct PooledSample {
  Moments all;
  std::vector<Moments> by_shift;
  std::size_t zero_d1 = 0;
  std::size_t count_d1 = 0;
};

void sample_pairs(std::span<const GreyAperture> codes, const PairSampler& sampler,
                  std::size_t n_samples, std::uint64_t seed, PooledSample& acc) {
  const std::size_t rows = codes.front().rows();
  const std::size_t cols = codes.front().cols();
  acc.by_shift.resize(sampler.max_shift);
  Rng rng(mix_seed(seed));
  for (std::size_t s = 0; s < n_samples; ++s) {
    const std::size_t d = 1 + rng.below(sampler.max_shift);
    const std::size_t i = rng.below(rows);
    const std::size_t j = rng.below(cols - d);
    double r = 0.0;
    bool all_zero = true;
    for (const auto& t : codes) {
      const double p = t(i, j) * t(i, j + d);
      if (p != 0.0) all_zero = false;
      r += p;
    }
    acc.all.add(r);
    acc.by_shift[d - 1].add(r);
    if (d == 1) {
      ++acc.count_d1;
      if (all_zero) ++acc.zero_d1;
    }
  }
}

void check_sampler(std::span<const GreyAperture> codes, const PairSampler& sampler, std::size_t n_samples) {
  if (n_samples < kMinRSamples) {
    throw std::invalid_argument("r_statistic: need at least " + std::to_string(kMinRSamples) + " samples");
  }
  if (codes.empty()) throw std::invalid_argument("r_statistic: no code planes");
  if (sampler.max_shift == 0) throw std::invalid_argument("r_statistic: max_shift must be >= 1");
  for (const auto& c : codes) {
    if (c.rows() != codes.front().rows() || c.cols() != codes.front().cols()) {
      throw std::invalid_argument("r_statistic: code planes differ in size");
    }
  }
  if (codes.front().cols() <= sampler.max_shift || codes.front().rows() == 0) {
    throw std::invalid_argument("r_statistic: code narrower than the largest shift");
  }
}

RStatReport finish(const PooledSample& acc, RFamily family, std::size_t k, double g) {
  RStatReport rep;
  rep.family = family;
  rep.k = k;
  rep.g = g;
  rep.samples = acc.all.n;
  rep.mean_r = acc.all.mean();
  rep.stderr_r = acc.all.stderr_mean();
  for (const auto& m : acc.by_shift) rep.mean_by_shift.push_back(m.mean());
  rep.zero_product_rate_d1 =
      acc.count_d1 ? static_cast<double>(acc.zero_d1) / static_cast<double>(acc.count_d1) : 0.0;
  return rep;
}

RStatReport pooled_family(const OrderingOptions& opt, RFamily family, std::uint64_t salt) {
  PooledSample acc;
  const PairSampler sampler{opt.bands - 1};
  for (std::size_t s = 0; s < opt.n_seeds; ++s) {
    const std::uint64_t seed = stream_seed(opt.seed + s, salt);
    const ApertureSet set = gen_aperture_set(family_of(family), opt.n, opt.m, opt.k, opt.g, true, seed);
    const auto codes = code_planes(set, opt.offset_a);
    check_sampler(codes, sampler, opt.n_samples);
    sample_pairs(codes, sampler, opt.n_samples, stream_seed(seed, 0x5A4D), acc);
  }
  return finish(acc, family, opt.k, opt.g);
}

void check_ordering_options(const OrderingOptions& opt) {
  if (opt.n_seeds == 0) throw std::invalid_argument("verify_ordering: need at least one seed");
  if (opt.bands < 2) throw std::invalid_argument("verify_ordering: need L >= 2");
  if (std::abs(static_cast<double>(opt.k) * opt.g - 1.0) > 1e-9) {
    throw std::invalid_argument("verify_ordering: complementary sets need K*g == 1");
  }
}

OrderingReport gate(std::vector<RStatReport> reports, const OrderingOptions& opt) {
  OrderingReport out;
  out.verdict = true;
  for (std::size_t a = 0; a + 1 < reports.size(); ++a) {
    const double gap = reports[a].mean_r - reports[a + 1].mean_r;
    const double se = std::hypot(reports[a].stderr_r, reports[a + 1].stderr_r);
    out.gaps.push_back(gap);
    out.gap_stderrs.push_back(se);
    if (!(gap > opt.gate_sigmas * se)) out.verdict = false;
  }
  out.sr_closed_form = static_cast<double>(opt.k) * opt.g * opt.g;
  const auto sr = std::find_if(reports.begin(), reports.end(),
                               [](const RStatReport& r) { return r.family == RFamily::SR; });
  if (sr != reports.end()) {
    out.sr_matches_closed_form = std::abs(sr->mean_r - out.sr_closed_form) <= 3.0 * sr->stderr_r;
  }
  out.reports = std::move(reports);
  return out;
}

void accumulate(ComplementarityReport& rep) {
  if (rep.values.empty()) throw std::invalid_argument("complementarity_constant: no positions");
  const auto [lo, hi] = std::minmax_element(rep.values.begin(), rep.values.end());
  rep.min = *lo;
  rep.max = *hi;
  const double n = static_cast<double>(rep.values.size());
  rep.mean = std::accumulate(rep.values.begin(), rep.values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : rep.values) ss += (v - rep.mean) * (v - rep.mean);
  rep.variance = ss / n;
  rep.all_one = std::all_of(rep.values.begin(), rep.values.end(), [](double v) { return v == 1.0; });
}

double max_abs_eig_shifted(const Eigen::MatrixXd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev.minCoeff() - 1.0), std::abs(ev.maxCoeff() - 1.0));
}

}  // namespace

std::string_view rfamily_name(RFamily f) noexcept { return kRFamilyNames[static_cast<std::size_t>(f)]; }

RStatReport r_statistic(std::span<const GreyAperture> codes, const PairSampler& sampler,
                        std::size_t n_samples, std::uint64_t seed) {
  check_sampler(codes, sampler, n_samples);
  PooledSample acc;
  sample_pairs(codes, sampler, n_samples, seed, acc);
  double g = 0.0;
  for (const auto& c : codes) g += c.mean();
  return finish(acc, RFamily::SR, codes.size(), g / static_cast<double>(codes.size()));
}

RStatReport r_statistic(const ApertureSet& set, double offset_a, const PairSampler& sampler,
                        std::size_t n_samples, std::uint64_t seed) {
  const auto codes = code_planes(set, offset_a);
  RStatReport rep = r_statistic(codes, sampler, n_samples, seed);
  rep.family = is_hex(set.family) ? RFamily::HB
               : is_blue_noise(set.family) ? RFamily::SB
                                           : RFamily::SR;
  rep.g = set.g;
  return rep;
}

OrderingReport verify_ordering(const OrderingOptions& opt) {
  check_ordering_options(opt);
  std::vector<RStatReport> reps;
  for (RFamily f : {RFamily::SR, RFamily::SB, RFamily::HB}) {
    reps.push_back(pooled_family(opt, f, static_cast<std::uint64_t>(f)));
  }
  return gate(std::move(reps), opt);
}

OrderingReport compare_families(const OrderingOptions& opt, RFamily first, RFamily second) {
  check_ordering_options(opt);
  std::vector<RStatReport> reps;
  reps.push_back(pooled_family(opt, first, 100));
  reps.push_back(pooled_family(opt, second, 200));
  return gate(std::move(reps), opt);
}

ComplementarityReport complementarity_constant(std::span<const GreyAperture> codes) {
  if (codes.empty()) throw std::invalid_argument("complementarity_constant: no code planes");
  ComplementarityReport rep;
  const std::size_t rows = codes.front().rows();
  const std::size_t cols = codes.front().cols();
  for (const auto& c : codes) {
    if (c.rows() != rows || c.cols() != cols) {
      throw std::invalid_argument("complementarity_constant: code planes differ in size");
    }
  }
  rep.values.assign(rows * cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      double c = 0.0;
      for (const auto& t : codes) c += t(i, j) * t(i, j);
      rep.values[i * cols + j] = c;
    }
  }
  accumulate(rep);
  return rep;
}

ComplementarityReport complementarity_constant(const ApertureSet& set, double offset_a) {
  ComplementarityReport rep = complementarity_constant(code_planes(set, offset_a));
  if (is_hex(set.family)) {
    rep.hex_elements_checked = true;
    rep.hex_elements_all_one = true;
    for (std::size_t i = 0; i < set.grid_rows(); ++i) {
      for (std::size_t j = 0; j < set.grid_cols(); ++j) {
        if (!set.valid(i, j)) continue;
        unsigned c = 0;
        for (const auto& mask : set.masks) c += mask(i, j) * mask(i, j);
        if (c != 1) rep.hex_elements_all_one = false;
      }
    }
  }
  return rep;
}

RipProbeResult brute_force_delta_s(const Eigen::MatrixXd& a, std::size_t s, const SubsetPolicy& policy) {
  const auto q2 = static_cast<std::size_t>(a.cols());
  if (q2 == 0 || s == 0) throw std::invalid_argument("brute_force_delta_s: need S >= 1 and columns");
  const bool exhaustive = policy.kind == SubsetPolicy::Kind::Exhaustive;
  if (exhaustive && (q2 > kMaxExhaustiveColumns || s > kMaxExhaustiveS)) {
    throw std::length_error("brute_force_delta_s: exhaustive enumeration limited to " +
                            std::to_string(kMaxExhaustiveColumns) + " columns and S <= " +
                            std::to_string(kMaxExhaustiveS));
  }
  if (!exhaustive && (q2 > kMaxProbeColumns || policy.count == 0)) {
    throw std::length_error("brute_force_delta_s: random policy needs a count and <= " +
                            std::to_string(kMaxProbeColumns) + " columns");
  }

  RipProbeResult out;
  out.s = s;
  out.exhaustive = exhaustive;
  const Eigen::MatrixXd gram = a.transpose() * a;
  out.c = gram.diagonal().mean();
  if (!(out.c > 0.0)) throw std::invalid_argument("brute_force_delta_s: zero Gram diagonal");
  const Eigen::MatrixXd b = gram / out.c;
  for (std::size_t i = 0; i < q2; ++i) {
    for (std::size_t j = 0; j < q2; ++j) {
      if (i != j) out.alpha = std::max(out.alpha, std::abs(b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    }
  }

  // Interlacing: a superset never has a smaller extreme deviation, so only
  // subsets of the full size are visited.
  const std::size_t size = std::min(s, q2);
  std::vector<std::size_t> idx(size);
  Eigen::MatrixXd sub(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  auto visit = [&]() {
    for (std::size_t r = 0; r < size; ++r) {
      for (std::size_t c = 0; c < size; ++c) {
        sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            b(static_cast<Eigen::Index>(idx[r]), static_cast<Eigen::Index>(idx[c]));
      }
    }
    out.delta_s = std::max(out.delta_s, max_abs_eig_shifted(sub));
    ++out.subsets;
  };

  if (exhaustive) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
      visit();
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == q2 - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t t = pos; t < size; ++t) idx[t] = idx[t - 1] + 1;
    }
  } else {
    Rng rng(mix_seed(policy.seed));
    std::vector<std::size_t> pool(q2);
    for (std::size_t n = 0; n < policy.count; ++n) {
      std::iota(pool.begin(), pool.end(), std::size_t{0});
      for (std::size_t t = 0; t < size; ++t) {
        std::swap(pool[t], pool[t + rng.below(q2 - t)]);
        idx[t] = pool[t];
      }
      visit();
    }
  }
  return out;
}

void write_ordering_csv(std::ostream& out, const OrderingReport& report) {
  out << "family,K,g,samples,mean_r,stderr\n";
  for (const auto& r : report.reports) {
    out << rfamily_name(r.family) << ',' << r.k << ',' << format_double(r.g) << ',' << r.samples << ','
        << format_double(r.mean_r) << ',' << format_double(r.stderr_r) << '\n';
  }
}

std::string ordering_json(const OrderingReport& report, int indent) {
  nlohmann::ordered_json j;
  j["verdict"] = report.verdict;
  j["sr_closed_form"] = report.sr_closed_form;
  j["sr_matches_closed_form"] = report.sr_matches_closed_form;
  j["gaps"] = report.gaps;
  j["gap_stderrs"] = report.gap_stderrs;
  auto& fams = j["families"] = nlohmann::ordered_json::array();
  for (const auto& r : report.reports) {
    fams.push_back({{"family", rfamily_name(r.family)},
                    {"K", r.k},
                    {"g", r.g},
                    {"samples", r.samples},
                    {"mean_r", r.mean_r},
                    {"stderr", r.stderr_r},
                    {"mean_r_by_shift", r.mean_by_shift},
                    {"verdict", report.verdict}});
  }
  return j.dump(indent);
}

}  // namespace hexcassi
