// Copyright 2026 The Dichotomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DICHOTOMY_SUBSET_HPP
#define DICHOTOMY_SUBSET_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dichotomy {

/// Zero-based player index.
using Player = std::uint32_t;

/// A coalition T ⊆ {0, …, n−1}.
///
/// For universes of at most kMaskLimit players the set is a bitmask (the
/// enumeration regime); above that it is a sorted index list.
class Subset {
 public:
  static constexpr std::size_t kMaskLimit = 30;

  explicit Subset(std::size_t universe) : universe_(universe) {}

  Subset(std::size_t universe, std::initializer_list<Player> members)
      : Subset(universe, std::span<const Player>(members.begin(), members.size())) {}

  Subset(std::size_t universe, std::span<const Player> members) : universe_(universe) {
    for (Player p : members) insert(p);
  }

  static Subset from_mask(std::size_t universe, std::uint32_t mask) {
    if (universe > kMaskLimit) {
      throw std::length_error("Subset::from_mask: universe exceeds the bitmask regime");
    }
    if (universe < 32 && (mask >> universe) != 0) {
      throw std::out_of_range("Subset::from_mask: mask has bits beyond the universe");
    }
    Subset s(universe);
    s.mask_ = mask;
    return s;
  }

  static Subset full(std::size_t universe) {
    Subset s(universe);
    if (s.uses_mask()) {
      s.mask_ = universe == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << universe) - 1);
    } else {
      s.list_.resize(universe);
      for (std::size_t i = 0; i < universe; ++i) s.list_[i] = static_cast<Player>(i);
    }
    return s;
  }

  std::size_t universe() const { return universe_; }
  bool uses_mask() const { return universe_ <= kMaskLimit; }

  std::uint32_t mask() const {
    if (!uses_mask()) throw std::logic_error("Subset::mask: list-backed subset");
    return mask_;
  }

  std::size_t size() const {
    return uses_mask() ? static_cast<std::size_t>(std::popcount(mask_)) : list_.size();
  }
  bool empty() const { return size() == 0; }

  bool contains(Player p) const {
    if (p >= universe_) return false;
    if (uses_mask()) return (mask_ >> p) & 1u;
    return std::binary_search(list_.begin(), list_.end(), p);
  }

  void insert(Player p) {
    check(p);
    if (uses_mask()) {
      mask_ |= (1u << p);
      return;
    }
    auto it = std::lower_bound(list_.begin(), list_.end(), p);
    if (it == list_.end() || *it != p) list_.insert(it, p);
  }

  void erase(Player p) {
    check(p);
    if (uses_mask()) {
      mask_ &= ~(1u << p);
      return;
    }
    auto it = std::lower_bound(list_.begin(), list_.end(), p);
    if (it != list_.end() && *it == p) list_.erase(it);
  }

  [[nodiscard]] Subset with(Player p) const {
    Subset s = *this;
    s.insert(p);
    return s;
  }

  [[nodiscard]] Subset without(Player p) const {
    Subset s = *this;
    s.erase(p);
    return s;
  }

  /// Members in increasing order.
  std::vector<Player> members() const {
    if (!uses_mask()) return list_;
    std::vector<Player> out;
    out.reserve(size());
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
      out.push_back(static_cast<Player>(std::countr_zero(m)));
    }
    return out;
  }

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.universe_ == b.universe_ && a.mask_ == b.mask_ && a.list_ == b.list_;
  }

 private:
  void check(Player p) const {
    if (p >= universe_) {
      throw std::out_of_range("Subset: player " + std::to_string(p) +
                              " outside universe of size " + std::to_string(universe_));
    }
  }

  std::size_t universe_;
  std::uint32_t mask_ = 0;
  std::vector<Player> list_;
};

}  // namespace dichotomy

#endif  // DICHOTOMY_SUBSET_HPP
