#include "carriersig/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "carriersig/error.hpp"
#include "carriersig/parallel.hpp"

namespace carriersig {

double distance(std::span<const double> r, std::span<const double> s) {
  if (r.size() != s.size()) {
    throw Error(ErrorCode::Shape,
                fmt::format("signature lengths differ ({} vs {})", r.size(),
                            s.size()));
  }
  const double overlap = std::inner_product(r.begin(), r.end(), s.begin(), 0.0);
  const double d2 = 1.0 - overlap * overlap;
  return std::clamp(std::sqrt(std::max(d2, 0.0)), 0.0, 1.0);
}

double distance(const Signature& r, const Signature& s) {
  return distance(r.vector, s.vector);
}

Identification rank_candidates(const Signature& interferer,
                               std::span<const Signature> known,
                               double threshold) {
  Identification out;
  out.interferer_id = interferer.carrier_id;
  out.threshold = threshold;
  out.ranking.reserve(known.size());
  for (const auto& k : known) {
    if (k.period_samples != interferer.period_samples) {
      throw Error(ErrorCode::Shape,
                  fmt::format("carrier '{}' has {} samples per period, "
                              "interferer '{}' has {}",
                              k.carrier_id, k.period_samples,
                              interferer.carrier_id, interferer.period_samples));
    }
    out.ranking.push_back({k.carrier_id, distance(interferer, k)});
  }
  std::sort(out.ranking.begin(), out.ranking.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.distance != b.distance) return a.distance < b.distance;
              return a.carrier_id < b.carrier_id;
            });
  out.result_set_size = static_cast<std::size_t>(
      std::find_if(out.ranking.begin(), out.ranking.end(),
                   [threshold](const Candidate& c) {
                     return !(c.distance < threshold);
                   }) -
      out.ranking.begin());
  return out;
}

bool on_different_satellites(const CarrierDirectory& directory,
                             std::string_view a, std::string_view b) {
  const auto ia = directory.find(a);
  const auto ib = directory.find(b);
  if (ia == directory.end() || ib == directory.end()) return false;
  const auto& sa = ia->second.satellite_id;
  const auto& sb = ib->second.satellite_id;
  return sa && sb && *sa != *sb;
}

std::vector<DistanceRecord> all_pair_distances(
    std::span<const Signature> signatures, const CarrierDirectory& directory,
    bool include_other_satellites) {
  std::vector<const Signature*> sorted;
  sorted.reserve(signatures.size());
  for (const auto& s : signatures) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(),
            [](const Signature* a, const Signature* b) {
              return a->carrier_id < b->carrier_id;
            });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->carrier_id == sorted[i - 1]->carrier_id) {
      throw Error(ErrorCode::MalformedInput,
                  fmt::format("duplicate signature for carrier '{}'",
                              sorted[i]->carrier_id));
    }
  }

  struct Pair {
    std::size_t a, b;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (!include_other_satellites &&
          on_different_satellites(directory, sorted[i]->carrier_id,
                                  sorted[j]->carrier_id)) {
        continue;
      }
      pairs.push_back({i, j});
    }
  }

  std::vector<DistanceRecord> records(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t p) {
    const Signature& a = *sorted[pairs[p].a];
    const Signature& b = *sorted[pairs[p].b];
    DistanceRecord& rec = records[p];
    rec.carrier_a = a.carrier_id;
    rec.carrier_b = b.carrier_id;
    rec.distance = distance(a, b);
    const auto ia = directory.find(a.carrier_id);
    const auto ib = directory.find(b.carrier_id);
    if (ia != directory.end() && ib != directory.end() &&
        ia->second.antenna_id && ib->second.antenna_id) {
      rec.same_antenna = *ia->second.antenna_id == *ib->second.antenna_id;
    }
  });
  return records;
}

}  // namespace carriersig
