#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carriersig/signature.hpp"

namespace carriersig {

inline constexpr double kDefaultThreshold = 0.4;

/// Ground truth known about a carrier; both fields may be missing.
struct CarrierInfo {
  std::optional<std::string> antenna_id;
  std::optional<std::string> satellite_id;
};

using CarrierDirectory = std::map<std::string, CarrierInfo, std::less<>>;

struct DistanceRecord {
  std::string carrier_a;  // carrier_a < carrier_b
  std::string carrier_b;
  double distance = 0.0;
  std::optional<bool> same_antenna;
};

struct Candidate {
  std::string carrier_id;
  double distance = 0.0;
};

/// Known carriers ranked by distance to an interferer.
struct Identification {
  std::string interferer_id;
  double threshold = kDefaultThreshold;
  std::vector<Candidate> ranking;  // ascending distance, ties by id
  std::size_t result_set_size = 0; // leading entries with distance < threshold

  std::span<const Candidate> result_set() const {
    return {ranking.data(), result_set_size};
  }
};

/// D(r, s) = sqrt(1 - (r.s)^2), clamped to [0, 1]. Inputs are assumed to be
/// unit vectors; throws Shape on a length mismatch.
double distance(std::span<const double> r, std::span<const double> s);
double distance(const Signature& r, const Signature& s);

/// Throws Shape if any known signature has a different period_samples.
Identification rank_candidates(const Signature& interferer,
                               std::span<const Signature> known,
                               double threshold = kDefaultThreshold);

/// True when both carriers have a satellite on record and they differ.
bool on_different_satellites(const CarrierDirectory& directory,
                             std::string_view a, std::string_view b);

/// Every unordered pair, sorted by (carrier_a, carrier_b). Pairs on
/// different satellites are skipped unless include_other_satellites is set.
/// same_antenna is filled when both antenna ids are known.
std::vector<DistanceRecord> all_pair_distances(
    std::span<const Signature> signatures, const CarrierDirectory& directory,
    bool include_other_satellites = false);

}  // namespace carriersig
