#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace brw {

/// Exact edge rate k_xy. Kept rational so that projection identities can be
/// checked without rounding.
using Rate = boost::rational<std::int64_t>;

inline double to_double(const Rate& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Boost 1.74 rational == int recurses under the C++20 rewritten-comparison
/// rules, so zero tests go through the numerator.
inline bool is_zero(const Rate& r) { return r.numerator() == 0; }

/// Best rational approximation of a double with bounded denominator.
Rate rate_from_double(double value, std::int64_t max_denominator = 1'000'000);

/// Canonical vertex label. The meaning of the fields is owned by the graph
/// family (see RateGraph::format). Ordering is lexicographic on
/// (major, minor, word) and is the deterministic iteration order everywhere.
struct VertexId {
  std::int64_t major = 0;
  std::int64_t minor = 0;
  std::vector<std::uint8_t> word;

  auto operator<=>(const VertexId&) const = default;
  bool operator==(const VertexId&) const = default;
};

struct VertexIdHash {
  std::size_t operator()(const VertexId& v) const noexcept;
};

struct RateEdge {
  VertexId to;
  Rate rate;
};

/// One offspring configuration f: sorted (vertex, count) pairs, counts >= 1.
/// An empty entry list is the "no children" configuration.
struct OffspringConfig {
  std::vector<std::pair<VertexId, std::int64_t>> entries;

  std::int64_t total() const;
  /// Sorts by vertex and merges duplicates.
  void normalize();
  auto operator<=>(const OffspringConfig&) const = default;
  bool operator==(const OffspringConfig&) const = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidLaw : public Error {
 public:
  using Error::Error;
};

/// A law or map referenced a vertex that is neither in the truncation nor in
/// its declared boundary layer.
class TruncationIncomplete : public Error {
 public:
  using Error::Error;
};

class ReducibleSystem : public Error {
 public:
  using Error::Error;
};

}  // namespace brw
