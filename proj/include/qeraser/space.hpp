// Copyright 2026 The qeraser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qeraser {

using Index = Eigen::Index;

/// A set of subsystem names. Order is irrelevant wherever a set is expected;
/// operations that produce a space always keep the original subsystem order.
using LabelSet = std::vector<std::string>;

struct SubsystemLabel {
  std::string name;
  Index dim = 1;

  friend bool operator==(const SubsystemLabel&, const SubsystemLabel&) = default;
};

/// Ordered list of labeled tensor factors. The first subsystem is the most
/// significant digit of the flat basis index (Kronecker order).
class CompositeSpace {
 public:
  CompositeSpace() = default;

  explicit CompositeSpace(std::vector<SubsystemLabel> subsystems)
      : subsystems_(std::move(subsystems)) {
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
      const auto& s = subsystems_[i];
      if (s.name.empty()) throw std::invalid_argument("subsystem label must be non-empty");
      if (s.dim < 1) {
        throw std::invalid_argument("subsystem '" + s.name + "' has dimension < 1");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (subsystems_[j].name == s.name) {
          throw std::invalid_argument("duplicate subsystem label '" + s.name + "'");
        }
      }
    }
  }

  CompositeSpace(std::initializer_list<SubsystemLabel> subsystems)
      : CompositeSpace(std::vector<SubsystemLabel>(subsystems)) {}

  const std::vector<SubsystemLabel>& subsystems() const { return subsystems_; }
  std::size_t size() const { return subsystems_.size(); }
  bool empty() const { return subsystems_.empty(); }

  Index dim() const {
    Index d = 1;
    for (const auto& s : subsystems_) d *= s.dim;
    return d;
  }

  bool contains(std::string_view name) const {
    return std::any_of(subsystems_.begin(), subsystems_.end(),
                       [&](const SubsystemLabel& s) { return s.name == name; });
  }

  std::size_t position(std::string_view name) const {
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
      if (subsystems_[i].name == name) return i;
    }
    throw std::invalid_argument("unknown subsystem label '" + std::string(name) + "'");
  }

  Index dim(std::string_view name) const { return subsystems_[position(name)].dim; }

  LabelSet labels() const {
    LabelSet out;
    out.reserve(subsystems_.size());
    for (const auto& s : subsystems_) out.push_back(s.name);
    return out;
  }

  /// Concatenation `this ⊗ other`; rejects shared labels.
  CompositeSpace concat(const CompositeSpace& other) const {
    for (const auto& s : other.subsystems_) {
      if (contains(s.name)) {
        throw std::invalid_argument("duplicate subsystem label '" + s.name + "' in tensor product");
      }
    }
    std::vector<SubsystemLabel> all = subsystems_;
    all.insert(all.end(), other.subsystems_.begin(), other.subsystems_.end());
    return CompositeSpace(std::move(all));
  }

  /// Positions of `names` in this space, sorted into construction order.
  std::vector<std::size_t> positions_of(const LabelSet& names) const {
    std::vector<std::size_t> pos;
    pos.reserve(names.size());
    for (const auto& n : names) {
      const std::size_t p = position(n);
      if (std::find(pos.begin(), pos.end(), p) != pos.end()) {
        throw std::invalid_argument("label '" + n + "' listed twice");
      }
      pos.push_back(p);
    }
    std::sort(pos.begin(), pos.end());
    return pos;
  }

  /// Subspace on `names`, in the original relative order.
  CompositeSpace subspace(const LabelSet& names) const {
    std::vector<SubsystemLabel> kept;
    for (std::size_t p : positions_of(names)) kept.push_back(subsystems_[p]);
    return CompositeSpace(std::move(kept));
  }

  friend bool operator==(const CompositeSpace&, const CompositeSpace&) = default;

 private:
  std::vector<SubsystemLabel> subsystems_;
};

/// Flat-index bookkeeping for an operation that singles out some factors.
/// full_index = rest_offsets[r] + target_offsets[t], where t enumerates the
/// target factors in the order given (first = most significant) and r
/// enumerates the remaining factors in construction order.
struct IndexSplit {
  std::vector<Index> target_offsets;
  std::vector<Index> rest_offsets;
};

namespace detail {

inline std::vector<Index> offsets_for(const CompositeSpace& space,
                                      std::span<const std::size_t> positions,
                                      std::span<const Index> strides) {
  Index count = 1;
  for (std::size_t p : positions) count *= space.subsystems()[p].dim;
  std::vector<Index> offsets(static_cast<std::size_t>(count), 0);
  for (Index flat = 0; flat < count; ++flat) {
    Index rem = flat;
    Index off = 0;
    for (std::size_t i = positions.size(); i-- > 0;) {
      const Index d = space.subsystems()[positions[i]].dim;
      off += (rem % d) * strides[positions[i]];
      rem /= d;
    }
    offsets[static_cast<std::size_t>(flat)] = off;
  }
  return offsets;
}

}  // namespace detail

inline IndexSplit split_indices(const CompositeSpace& space,
                                std::span<const std::size_t> target_positions) {
  const std::size_t n = space.size();
  std::vector<Index> strides(n, 1);
  for (std::size_t i = n; i-- > 1;) strides[i - 1] = strides[i] * space.subsystems()[i].dim;

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(target_positions.begin(), target_positions.end(), i) == target_positions.end()) {
      rest.push_back(i);
    }
  }
  return IndexSplit{detail::offsets_for(space, target_positions, strides),
                    detail::offsets_for(space, rest, strides)};
}

}  // namespace qeraser
