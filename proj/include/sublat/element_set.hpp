#ifndef SUBLAT_ELEMENT_SET_HPP
#define SUBLAT_ELEMENT_SET_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace sublat
{

/// Fixed-universe bitset. Used both for element-id sets of a group and for
/// zuppo signatures.
class BitSet
{
public:
  BitSet() = default;
  explicit BitSet(std::size_t universe) : size_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return size_; }

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  std::size_t count() const
  {
    std::size_t n = 0;
    for (auto w : words_)
      n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool none() const
  {
    for (auto w : words_)
      if (w)
        return false;
    return true;
  }

  bool is_subset_of(const BitSet &other) const
  {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i])
        return false;
    return true;
  }

  BitSet &operator&=(const BitSet &other)
  {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= other.words_[i];
    return *this;
  }

  BitSet &operator|=(const BitSet &other)
  {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] |= other.words_[i];
    return *this;
  }

  friend BitSet operator&(BitSet a, const BitSet &b) { return a &= b; }
  friend BitSet operator|(BitSet a, const BitSet &b) { return a |= b; }

  template <typename F> void for_each(F &&f) const
  {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        f(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::uint32_t> members() const
  {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::uint32_t i) { out.push_back(i); });
    return out;
  }

  /// Lexicographic comparison of the bit list read from index 0 upward,
  /// with an unset bit ordered before a set bit.
  friend std::strong_ordering lex_compare(const BitSet &a, const BitSet &b)
  {
    for (std::size_t w = 0; w < a.words_.size() && w < b.words_.size(); ++w) {
      std::uint64_t diff = a.words_[w] ^ b.words_[w];
      if (diff) {
        int bit = std::countr_zero(diff);
        return ((a.words_[w] >> bit) & 1u) ? std::strong_ordering::greater
                                            : std::strong_ordering::less;
      }
    }
    return a.size_ <=> b.size_;
  }

  friend bool operator<(const BitSet &a, const BitSet &b) { return lex_compare(a, b) < 0; }

  friend bool operator==(const BitSet &, const BitSet &) = default;

  std::size_t hash() const
  {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ size_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 12) + (h >> 4);
    }
    return static_cast<std::size_t>(h);
  }

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A set of element ids of an indexed group.
using ElementSet = BitSet;

struct BitSetHash
{
  std::size_t operator()(const BitSet &b) const noexcept { return b.hash(); }
};

} // namespace sublat

#endif
