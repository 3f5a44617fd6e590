#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nestkit/group.hpp"

namespace nestkit {

enum class SeriesKind { K, U, Delta, Epsilon, UpperCentral, ChainOfCenters, LowerCentral };

std::string_view to_string(SeriesKind kind);

/// A chain of subgroups of one group. Ascending kinds (K, U, upper central)
/// start at the trivial subgroup; descending kinds start at the whole group.
/// Computation stops after the first term that equals its predecessor or
/// reaches the end of the chain (G for ascending kinds, 1 for descending);
/// every later term would repeat it.
struct SeriesReport {
  SeriesKind kind = SeriesKind::K;
  std::vector<Subgroup> terms;
  /// Index of the first occurrence of the terminal value.
  std::size_t stabilized_at = 0;
  std::vector<std::string> notes;

  const Subgroup& terminal() const { return terms.back(); }
  /// Term i, where indices past the end return the terminal value.
  const Subgroup& at(std::size_t i) const { return i < terms.size() ? terms[i] : terms.back(); }
};

/// Appends `next` unless the series has already stopped; returns true while
/// the series is still moving.
bool extend_series(SeriesReport& series, Subgroup next);

}  // namespace nestkit
