#include "brw/types.hpp"

#include <algorithm>
#include <cmath>

namespace brw {

Rate rate_from_double(double value, std::int64_t max_denominator) {
  if (!std::isfinite(value)) throw InvalidArgument("rate must be finite");
  const bool negative = value < 0;
  double x = std::abs(value);
  // Continued-fraction convergents.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int i = 0; i < 64; ++i) {
    const double a_d = std::floor(frac);
    if (a_d > 9.0e15) break;
    const auto a = static_cast<std::int64_t>(a_d);
    const std::int64_t q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    const std::int64_t p2 = p0 + a * p1;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double rem = frac - a_d;
    const double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (rem < 1e-15 || std::abs(approx - x) < 1e-15 * std::max(1.0, x)) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) throw InvalidArgument("rate out of representable range");
  Rate r(p1, q1);
  return negative ? -r : r;
}

std::size_t VertexIdHash::operator()(const VertexId& v) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(v.major));
  mix(static_cast<std::uint64_t>(v.minor));
  for (auto c : v.word) mix(c);
  mix(v.word.size());
  return static_cast<std::size_t>(h);
}

std::int64_t OffspringConfig::total() const {
  std::int64_t n = 0;
  for (const auto& e : entries) n += e.second;
  return n;
}

void OffspringConfig::normalize() {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<VertexId, std::int64_t>> merged;
  for (auto& e : entries) {
    if (e.second < 0) throw InvalidLaw("negative child count");
    if (e.second == 0) continue;
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second += e.second;
    } else {
      merged.push_back(std::move(e));
    }
  }
  entries = std::move(merged);
}

}  // namespace brw
