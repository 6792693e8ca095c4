#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ctrace/error.hpp"

namespace ctrace {

/// An ordered composition (n_1, ..., n_k) of n. Compositions of n are in
/// bijection with the standard (block upper triangular) parabolic subgroups
/// of GL_n; the parts are the block sizes of the Levi factor.
class Composition {
 public:
  Composition() = default;

  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw invalid_argument("composition must have at least one part");
    for (int p : parts_)
      if (p < 1) throw invalid_argument("composition parts must be positive");
  }

  /// The one-block composition (n), i.e. P = G.
  static Composition whole(int n) { return Composition({n}); }

  /// The composition (1, ..., 1), i.e. the Borel subgroup.
  static Composition borel(int n) {
    if (n < 1) throw invalid_argument("rank must be positive");
    return Composition(std::vector<int>(static_cast<std::size_t>(n), 1));
  }

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  int part(std::size_t a) const { return parts_[a]; }
  int total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  /// First slot index of block a; offset(length()) == total().
  int offset(std::size_t a) const {
    return std::accumulate(parts_.begin(), parts_.begin() + static_cast<std::ptrdiff_t>(a), 0);
  }

  /// True if every block of *this is a union of consecutive blocks of
  /// `finer`, i.e. `finer` is a refinement (the parabolic of `finer` sits
  /// inside the parabolic of *this).
  bool is_refined_by(const Composition& finer) const {
    if (finer.total() != total()) return false;
    std::size_t j = 0;
    for (int p : parts_) {
      int acc = 0;
      while (acc < p && j < finer.length()) acc += finer.part(j++);
      if (acc != p) return false;
    }
    return j == finer.length();
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t a = 0; a < parts_.size(); ++a) {
      if (a) s += ",";
      s += std::to_string(parts_[a]);
    }
    return s + ")";
  }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
};

/// An extended composition (s_1, ..., s_k): nonnegative parts, possibly zero.
class ExtendedComposition {
 public:
  ExtendedComposition() = default;

  explicit ExtendedComposition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p < 0) throw invalid_argument("extended composition parts must be nonnegative");
  }

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  int part(std::size_t a) const { return parts_[a]; }
  int total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t a = 0; a < parts_.size(); ++a) {
      if (a) s += ",";
      s += std::to_string(parts_[a]);
    }
    return s + ")";
  }

  friend bool operator==(const ExtendedComposition&, const ExtendedComposition&) = default;
  friend auto operator<=>(const ExtendedComposition&, const ExtendedComposition&) = default;

 private:
  std::vector<int> parts_;
};

/// All 2^{n-1} compositions of n, coarsest first within each leading part.
inline std::vector<Composition> enumerate_compositions(int n) {
  if (n < 1) throw invalid_argument("enumerate_compositions: n must be positive");
  std::vector<Composition> out;
  // Bit i of mask set <=> a block boundary after slot i.
  const unsigned count = 1u << (n - 1);
  out.reserve(count);
  for (unsigned mask = 0; mask < count; ++mask) {
    std::vector<int> parts;
    int run = 1;
    for (int i = 0; i < n - 1; ++i) {
      if (mask & (1u << i)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    out.emplace_back(std::move(parts));
  }
  return out;
}

namespace detail {
inline void extend_rec(int remaining, std::size_t slot, std::vector<int>& cur,
                       std::span<const int> caps, std::vector<ExtendedComposition>& out) {
  const std::size_t k = cur.size();
  if (slot + 1 == k) {
    if (!caps.empty() && remaining > caps[slot]) return;
    cur[slot] = remaining;
    out.emplace_back(cur);
    return;
  }
  int hi = remaining;
  if (!caps.empty()) hi = std::min(hi, caps[slot]);
  for (int v = hi; v >= 0; --v) {
    cur[slot] = v;
    extend_rec(remaining - v, slot + 1, cur, caps, out);
  }
}
}  // namespace detail

/// Extended compositions of s with k slots, optionally capped per slot.
/// Listed in reverse lexicographic order: (s,0,...), ..., (0,...,s).
inline std::vector<ExtendedComposition> enumerate_extended(int s, int k,
                                                           std::span<const int> caps = {}) {
  if (s < 0) throw invalid_argument("enumerate_extended: s must be nonnegative");
  if (k < 1) throw invalid_argument("enumerate_extended: k must be positive");
  if (!caps.empty() && caps.size() != static_cast<std::size_t>(k))
    throw invalid_argument("enumerate_extended: caps must have k entries");
  std::vector<ExtendedComposition> out;
  std::vector<int> cur(static_cast<std::size_t>(k), 0);
  detail::extend_rec(s, 0, cur, caps, out);
  return out;
}

/// eps_P = (-1)^{dim A_P/A_G} = (-1)^{k-1}.
inline int eps_parabolic(const Composition& c) { return (c.length() % 2 == 1) ? 1 : -1; }

}  // namespace ctrace
