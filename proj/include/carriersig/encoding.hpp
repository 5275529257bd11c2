#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "carriersig/timeseries.hpp"

namespace carriersig {

enum class EncodingKind { Amplitude, L2 };

std::string_view to_string(EncodingKind kind) noexcept;
/// Parses "amplitude" or "l2"; throws InvalidParameter otherwise.
EncodingKind parse_encoding(std::string_view name);

/// Unit-norm real amplitude vector.
struct StateVector {
  std::vector<double> values;
  EncodingKind kind = EncodingKind::Amplitude;
};

/// Maps each E_i into [0, 1] via e_i = (E_i + E_max) / (2 E_max), where
/// E_max = max |E_i|. A flat series (E_max = 0) maps to e_i = 1/2.
std::vector<double> unit_interval_map(std::span<const double> fluctuations);

/// Amplitude encoding: p_i = e_i / sum(e) is a probability distribution and
/// q_i = sqrt(p_i), so sum(q_i^2) = 1 and every q_i lies in [0, 1]. Throws
/// DegenerateInput when e is the zero vector.
StateVector encode_amplitude(std::span<const double> fluctuations);
StateVector encode_amplitude(const FluctuationSeries& series);

/// Direct normalisation r = e / ||e||. Throws DegenerateInput when e is the
/// zero vector.
StateVector encode_l2(std::span<const double> fluctuations);
StateVector encode_l2(const FluctuationSeries& series);

StateVector encode(std::span<const double> fluctuations, EncodingKind kind);

}  // namespace carriersig
