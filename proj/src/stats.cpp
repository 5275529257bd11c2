#include "carriersig/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <boost/math/special_functions/binomial.hpp>
#include <fmt/format.h>

#include "carriersig/error.hpp"

namespace carriersig {

namespace {

void check_probability(double p, std::string_view name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter,
                fmt::format("{} = {} is not a probability", name, p));
  }
}

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  std::size_t used = 0;
  try {
    value = std::stoi(std::string(text), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::MalformedInput,
                fmt::format("bad census '{}': expected k:n pairs", whole));
  }
  return value;
}

}  // namespace

AntennaCensus::AntennaCensus(std::map<int, int> antennas_by_carrier_count)
    : counts_(std::move(antennas_by_carrier_count)) {
  for (auto it = counts_.begin(); it != counts_.end();) {
    if (it->first < 1 || it->second < 0) {
      throw Error(ErrorCode::InvalidParameter,
                  fmt::format("invalid census entry {}:{}", it->first,
                              it->second));
    }
    it = it->second == 0 ? counts_.erase(it) : std::next(it);
  }
  if (counts_.empty()) {
    throw Error(ErrorCode::InvalidParameter, "census has no antennas");
  }
}

int AntennaCensus::antennas() const {
  int total = 0;
  for (const auto& [k, n] : counts_) total += n;
  return total;
}

int AntennaCensus::carriers() const {
  int total = 0;
  for (const auto& [k, n] : counts_) total += k * n;
  return total;
}

double AntennaCensus::mean_carriers() const {
  return static_cast<double>(carriers()) / static_cast<double>(antennas());
}

AntennaCensus parse_census(std::string_view text) {
  std::map<int, int> counts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::MalformedInput,
                  fmt::format("bad census '{}': expected k:n pairs", text));
    }
    const int k = parse_int(item.substr(0, colon), text);
    counts[k] += parse_int(item.substr(colon + 1), text);
    pos = comma + 1;
  }
  return AntennaCensus(std::move(counts));
}

std::string format_census(const AntennaCensus& census) {
  std::string out;
  for (const auto& [k, n] : census.by_carrier_count()) {
    if (!out.empty()) out += ',';
    out += fmt::format("{}:{}", k, n);
  }
  return out;
}

AntennaCensus census_from_directory(const CarrierDirectory& directory,
                                    std::span<const std::string> restrict_to) {
  const std::set<std::string, std::less<>> allowed(restrict_to.begin(),
                                                   restrict_to.end());
  std::map<std::string, int> per_antenna;
  for (const auto& [carrier, info] : directory) {
    if (!info.antenna_id) continue;
    if (!allowed.empty() && !allowed.contains(carrier)) continue;
    ++per_antenna[*info.antenna_id];
  }
  std::map<int, int> counts;
  for (const auto& [antenna, k] : per_antenna) ++counts[k];
  return AntennaCensus(std::move(counts));
}

PairCounts count_pairs(const AntennaCensus& census) {
  PairCounts out;
  for (const auto& [k, n] : census.by_carrier_count()) {
    out.same += static_cast<std::uint64_t>(n) * k * (k - 1) / 2;
  }
  const auto ns = static_cast<std::uint64_t>(census.carriers());
  out.total = ns * (ns - 1) / 2;
  out.different = out.total - out.same;
  return out;
}

double Histogram::bin_lo(std::size_t i) const {
  return static_cast<double>(i) * bin_width;
}

double Histogram::bin_hi(std::size_t i) const {
  return i + 1 == counts.size() ? 1.0
                                : static_cast<double>(i + 1) * bin_width;
}

std::size_t Histogram::total() const {
  std::size_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

Histogram make_histogram(std::span<const double> distances, double bin_width) {
  if (!(bin_width > 0.0 && bin_width <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter,
                fmt::format("bin width {} outside (0, 1]", bin_width));
  }
  const auto bins =
      static_cast<std::size_t>(std::ceil(1.0 / bin_width - 1e-9));
  Histogram h{bin_width, std::vector<std::size_t>(bins, 0)};
  for (double d : distances) {
    if (!(d >= 0.0 && d <= 1.0)) {
      throw Error(ErrorCode::InvalidParameter,
                  fmt::format("distance {} outside [0, 1]", d));
    }
    const auto i = std::min(bins - 1, static_cast<std::size_t>(d / bin_width));
    ++h.counts[i];
  }
  return h;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : sorted_(std::move(samples)) {
  if (sorted_.empty()) {
    throw Error(ErrorCode::InsufficientData, "empirical CDF of no samples");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto upto = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(upto - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

DistanceDistributions build_distributions(std::span<const DistanceRecord> records,
                                          double bin_width) {
  std::vector<double> same;
  std::vector<double> different;
  for (const auto& r : records) {
    if (!r.same_antenna) {
      throw Error(ErrorCode::MalformedInput,
                  fmt::format("pair {}/{} has no same_antenna flag", r.carrier_a,
                              r.carrier_b));
    }
    (*r.same_antenna ? same : different).push_back(r.distance);
  }
  if (same.empty()) {
    throw Error(ErrorCode::InsufficientData,
                "no same-antenna pairs; F_s is undefined");
  }
  if (different.empty()) {
    throw Error(ErrorCode::InsufficientData,
                "no different-antenna pairs; F_d is undefined");
  }
  auto f_s = make_histogram(same, bin_width);
  auto f_d = make_histogram(different, bin_width);
  return {std::move(f_s), std::move(f_d), EmpiricalCdf(std::move(same)),
          EmpiricalCdf(std::move(different))};
}

double prob_identification(const AntennaCensus& census, double fs_at_threshold) {
  check_probability(fs_at_threshold, "F_s(D_t)");
  const double miss = 1.0 - fs_at_threshold;
  double none = 0.0;
  for (const auto& [k, n] : census.by_carrier_count()) {
    none += n * std::pow(miss, k);
  }
  return 1.0 - none / census.antennas();
}

double expected_positives(double mean_carriers, double fs_at_threshold) {
  check_probability(fs_at_threshold, "F_s(D_t)");
  return mean_carriers * fs_at_threshold;
}

double binomial_positives(int trials, int successes, double p) {
  check_probability(p, "p");
  if (trials < 0 || successes < 0 || successes > trials) {
    throw Error(ErrorCode::InvalidParameter,
                fmt::format("binomial P({}) with K = {}", successes, trials));
  }
  const double coeff = boost::math::binomial_coefficient<double>(
      static_cast<unsigned>(trials), static_cast<unsigned>(successes));
  return coeff * std::pow(p, successes) * std::pow(1.0 - p, trials - successes);
}

double binomial_mean(int trials, double p) {
  double mean = 0.0;
  for (int k = 1; k <= trials; ++k) mean += k * binomial_positives(trials, k, p);
  return mean;
}

double census_binomial_mean(const AntennaCensus& census, double p) {
  double sum = 0.0;
  for (const auto& [k, n] : census.by_carrier_count()) {
    sum += n * binomial_mean(k, p);
  }
  return sum / census.antennas();
}

double expected_false_positives(double total_carriers, double mean_carriers,
                                double fd_at_threshold) {
  check_probability(fd_at_threshold, "F_d(D_t)");
  return (total_carriers - mean_carriers) * fd_at_threshold;
}

double prob_false_positive(int total_carriers, int antenna_carriers, double p,
                           FalsePositiveMode mode) {
  check_probability(p, "F_d(D_t)");
  if (mode == FalsePositiveMode::Approximate) return total_carriers * p;
  if (antenna_carriers < 0 || antenna_carriers > total_carriers) {
    throw Error(ErrorCode::InvalidParameter,
                fmt::format("K = {} outside [0, N_s = {}]", antenna_carriers,
                            total_carriers));
  }
  return 1.0 - std::pow(1.0 - p, total_carriers - antenna_carriers);
}

double census_false_positive_exact(const AntennaCensus& census, double p) {
  const int ns = census.carriers();
  double sum = 0.0;
  for (const auto& [k, n] : census.by_carrier_count()) {
    sum += n * prob_false_positive(ns, k, p, FalsePositiveMode::Exact);
  }
  return sum / census.antennas();
}

EvaluationReport evaluate(const AntennaCensus& census, double threshold,
                          double fs_at_threshold, double fd_at_threshold) {
  EvaluationReport r;
  r.threshold = threshold;
  r.fs_at_threshold = fs_at_threshold;
  r.fd_at_threshold = fd_at_threshold;
  r.census = census;
  r.census_pairs = count_pairs(census);
  r.p_id = prob_identification(census, fs_at_threshold);
  r.n_i = expected_positives(census.mean_carriers(), fs_at_threshold);
  r.n_f = expected_false_positives(census.carriers(), census.mean_carriers(),
                                   fd_at_threshold);
  r.p_f = prob_false_positive(census.carriers(), 0, fd_at_threshold,
                              FalsePositiveMode::Approximate);
  r.p_f_exact = census_false_positive_exact(census, fd_at_threshold);
  return r;
}

EvaluationReport evaluate(std::span<const DistanceRecord> records,
                          const AntennaCensus& census, double threshold) {
  const auto dist = build_distributions(records);
  auto r = evaluate(census, threshold, dist.same_cdf(threshold),
                    dist.different_cdf(threshold));
  r.same_records = dist.same_cdf.size();
  r.different_records = dist.different_cdf.size();
  return r;
}

}  // namespace carriersig
