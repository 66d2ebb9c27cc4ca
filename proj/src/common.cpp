#include "hubs/common.hpp"

#include <algorithm>
#include <numeric>

namespace hubs {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kModeViolation: return "ModeViolation";
    case ErrorCode::kUnknownEdge: return "UnknownEdge";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kVertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::kInvalidWeight: return "InvalidWeight";
    case ErrorCode::kNotARoot: return "NotARoot";
    case ErrorCode::kSameTree: return "SameTree";
    case ErrorCode::kIsRoot: return "IsRoot";
    case ErrorCode::kWeightedGraph: return "WeightedGraph";
    case ErrorCode::kDepthExceeded: return "DepthExceeded";
    case ErrorCode::kOddD: return "OddD";
    case ErrorCode::kBadD: return "BadD";
    case ErrorCode::kTrialCapExceeded: return "TrialCapExceeded";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kStreamParseError: return "StreamParseError";
  }
  return "Unknown";
}

std::vector<VertexId> random_permutation(std::size_t n, Rng& rng) {
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
  }
  return perm;
}

VertexSet::VertexSet(std::size_t universe, std::span<const VertexId> members)
    : mask_(universe, 0) {
  for (VertexId v : members) insert(v);
}

VertexSet VertexSet::all(std::size_t universe) {
  VertexSet s(universe);
  for (VertexId v = 0; v < universe; ++v) s.insert(v);
  return s;
}

bool VertexSet::insert(VertexId v) {
  if (v >= mask_.size()) {
    throw Error(ErrorCode::kVertexOutOfRange, "vertex set member out of range");
  }
  if (mask_[v]) return false;
  mask_[v] = 1;
  members_.push_back(v);
  return true;
}

VertexSet VertexSet::united(const VertexSet& other) const {
  VertexSet out = *this;
  for (VertexId v : other.members()) out.insert(v);
  return out;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::all_of(members_.begin(), members_.end(),
                     [&](VertexId v) { return other.contains(v); });
}

}  // namespace hubs
