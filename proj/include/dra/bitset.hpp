#ifndef DRA_BITSET_HPP
#define DRA_BITSET_HPP

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dra {

/// Fixed-width dynamic bit set over indices [0, size).
///
/// Used for element subsets of an algebra (filters) and point subsets of a
/// space (opens, sections). Ordering compares the sets as unsigned integers
/// with bit i worth 2^i, which gives the canonical "ascending bit-set value"
/// order used for points and sections.
class BitSet
{
public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  BitSet() = default;
  explicit BitSet(std::size_t size)
    : size_(size), words_((size + word_bits - 1) / word_bits, 0)
  {}

  static BitSet full(std::size_t size)
  {
    BitSet b(size);
    for (std::size_t i = 0; i < size; ++i)
      b.set(i);
    return b;
  }

  static BitSet single(std::size_t size, std::size_t i)
  {
    BitSet b(size);
    b.set(i);
    return b;
  }

  /// Bits of `mask` (low `size` bits) as a set; size must be <= 64.
  static BitSet from_mask(std::size_t size, std::uint64_t mask)
  {
    if (size > word_bits)
      throw std::invalid_argument("BitSet::from_mask: size exceeds 64");
    BitSet b(size);
    if (size > 0)
      b.words_[0] = size == word_bits ? mask : (mask & ((word_type{1} << size) - 1));
    return b;
  }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const
  { return (words_[i / word_bits] >> (i % word_bits)) & 1u; }

  void set(std::size_t i) { words_[i / word_bits] |= word_type{1} << (i % word_bits); }
  void reset(std::size_t i) { words_[i / word_bits] &= ~(word_type{1} << (i % word_bits)); }

  std::size_t count() const
  {
    std::size_t n = 0;
    for (auto w : words_)
      n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool none() const
  { return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; }); }
  bool any() const { return !none(); }

  bool is_subset_of(const BitSet &other) const
  {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~other.words_[k])
        return false;
    return true;
  }

  bool intersects(const BitSet &other) const
  {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & other.words_[k])
        return true;
    return false;
  }

  BitSet &operator|=(const BitSet &o)
  {
    for (std::size_t k = 0; k < words_.size(); ++k)
      words_[k] |= o.words_[k];
    return *this;
  }
  BitSet &operator&=(const BitSet &o)
  {
    for (std::size_t k = 0; k < words_.size(); ++k)
      words_[k] &= o.words_[k];
    return *this;
  }
  /// Set difference.
  BitSet &operator-=(const BitSet &o)
  {
    for (std::size_t k = 0; k < words_.size(); ++k)
      words_[k] &= ~o.words_[k];
    return *this;
  }

  friend BitSet operator|(BitSet a, const BitSet &b) { return a |= b; }
  friend BitSet operator&(BitSet a, const BitSet &b) { return a &= b; }
  friend BitSet operator-(BitSet a, const BitSet &b) { return a -= b; }

  friend bool operator==(const BitSet &a, const BitSet &b)
  { return a.size_ == b.size_ && a.words_ == b.words_; }

  friend std::strong_ordering operator<=>(const BitSet &a, const BitSet &b)
  {
    if (a.size_ != b.size_)
      return a.size_ <=> b.size_;
    for (std::size_t k = a.words_.size(); k-- > 0;)
      if (a.words_[k] != b.words_[k])
        return a.words_[k] <=> b.words_[k];
    return std::strong_ordering::equal;
  }

  /// Indices of set bits, ascending.
  std::vector<std::size_t> indices() const
  {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      word_type w = words_[k];
      while (w) {
        out.push_back(k * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  template <class F>
  void for_each(F &&f) const
  {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      word_type w = words_[k];
      while (w) {
        f(k * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::size_t hash() const
  {
    std::size_t h = size_;
    for (auto w : words_)
      h ^= std::hash<word_type>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }

  /// "0101..." with index 0 first.
  std::string to_string() const
  {
    std::string s(size_, '0');
    for_each([&](std::size_t i) { s[i] = '1'; });
    return s;
  }

private:
  std::size_t size_ = 0;
  std::vector<word_type> words_;
};

struct BitSetHash
{
  std::size_t operator()(const BitSet &b) const { return b.hash(); }
};

} // namespace dra

#endif // DRA_BITSET_HPP
