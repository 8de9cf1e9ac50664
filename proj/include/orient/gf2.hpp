#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace orient {

// Fixed-length vector over GF(2), used for edge-incidence vectors of cycles.
class Gf2Vector {
 public:
  Gf2Vector() = default;
  explicit Gf2Vector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  Gf2Vector& operator^=(const Gf2Vector& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  friend Gf2Vector operator^(Gf2Vector lhs, const Gf2Vector& rhs) { return lhs ^= rhs; }

  std::size_t count() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }
  bool any() const {
    for (auto w : words_)
      if (w != 0) return true;
    return false;
  }

  // Inner product over GF(2): parity of the intersection.
  bool dot(const Gf2Vector& other) const {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return (std::popcount(acc) & 1) != 0;
  }

  // Index of the lowest set bit, or size() if zero.
  std::size_t lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return size_;
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits != 0) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;
  friend auto operator<=>(const Gf2Vector& a, const Gf2Vector& b) { return a.words_ <=> b.words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Rank of a family of vectors by Gaussian elimination.
std::size_t gf2_rank(std::vector<Gf2Vector> rows);

// Incremental row-echelon basis; insert() reports whether the vector was independent.
class Gf2Eliminator {
 public:
  bool insert(Gf2Vector v);
  bool in_span(Gf2Vector v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  Gf2Vector reduce(Gf2Vector v) const;
  std::vector<Gf2Vector> rows_;  // each with a distinct pivot (lowest set bit)
  std::vector<std::size_t> pivots_;
};

}  // namespace orient
