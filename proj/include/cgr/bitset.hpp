// Fixed-width dynamic bitset; the workhorse behind adjacency rows and
// vertex sets. Unused high bits are kept zero at all times.
#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cgr {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static Bitset full(std::size_t n) {
    Bitset b(n);
    for (auto& w : b.w_) w = ~0ull;
    b.trim();
    return b;
  }

  static Bitset single(std::size_t n, std::size_t i) {
    Bitset b(n);
    b.set(i);
    return b;
  }

  std::size_t size() const { return n_; }

  void set(std::size_t i) { w_[i >> 6] |= 1ull << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(1ull << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  void clear() {
    for (auto& w : w_) w = 0;
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bitset& operator-=(const Bitset& o) {  // set difference
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  friend bool operator==(const Bitset& a, const Bitset& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

  // |this AND o| without materializing the intersection.
  std::size_t and_count(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
    return c;
  }

  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  bool subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  // First set bit at position >= from, or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t next(std::size_t from = 0) const {
    if (from >= n_) return npos;
    std::size_t wi = from >> 6;
    std::uint64_t w = w_[wi] & (~0ull << (from & 63));
    while (true) {
      if (w) return (wi << 6) + std::countr_zero(w);
      if (++wi == w_.size()) return npos;
      w = w_[wi];
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint64_t w = w_[wi];
      while (w) {
        f((wi << 6) + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> v;
    v.reserve(count());
    for_each([&](std::size_t i) { v.push_back(static_cast<int>(i)); });
    return v;
  }

  // The n lowest members of this set (all of them if fewer than n).
  Bitset lowest(std::size_t n) const {
    Bitset r(n_);
    std::size_t taken = 0;
    for (std::size_t i = next(); i != npos && taken < n; i = next(i + 1)) {
      r.set(i);
      ++taken;
    }
    return r;
  }

 private:
  void trim() {
    if (n_ & 63) w_.back() &= ~0ull >> (64 - (n_ & 63));
    if (n_ == 0 && !w_.empty()) w_.back() = 0;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace cgr
