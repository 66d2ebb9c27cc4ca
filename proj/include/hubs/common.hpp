#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hubs {

using VertexId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ErrorCode {
  kModeViolation,
  kUnknownEdge,
  kSelfLoop,
  kVertexOutOfRange,
  kInvalidWeight,
  kNotARoot,
  kSameTree,
  kIsRoot,
  kWeightedGraph,
  kDepthExceeded,
  kOddD,
  kBadD,
  kTrialCapExceeded,
  kConfigError,
  kStreamParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// All randomness flows through this generator. mt19937_64 is fully specified
// by the standard, so seeded streams are identical across platforms; the
// helpers below avoid the implementation-defined std distributions.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// Uniform real in [0, 1).
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<VertexId> random_permutation(std::size_t n, Rng& rng);

// Subset of a fixed universe [0, n) with O(1) membership and stable
// insertion-ordered member list.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : mask_(universe, 0) {}
  VertexSet(std::size_t universe, std::span<const VertexId> members);

  static VertexSet all(std::size_t universe);

  bool contains(VertexId v) const { return v < mask_.size() && mask_[v]; }
  bool insert(VertexId v);
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::size_t universe() const { return mask_.size(); }
  std::span<const VertexId> members() const { return members_; }

  VertexSet united(const VertexSet& other) const;
  bool is_subset_of(const VertexSet& other) const;

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.mask_ == b.mask_;
  }

 private:
  std::vector<char> mask_;
  std::vector<VertexId> members_;
};

// Relative slack used when floating sums computed along different routes are
// compared; all bounds in this library are multiplicative.
inline constexpr double kRelSlack = 1e-9;

inline bool leq_slack(double a, double b) {
  if (a == kInf) return b == kInf;
  if (b == kInf) return true;
  return a <= b * (1.0 + kRelSlack) + kRelSlack;
}

}  // namespace hubs
