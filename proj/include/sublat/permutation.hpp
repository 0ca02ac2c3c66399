#ifndef SUBLAT_PERMUTATION_HPP
#define SUBLAT_PERMUTATION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sublat
{

using Point = std::uint32_t;

/// Thrown for malformed permutations, degree mismatches and other input errors.
class InputError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation would exceed a configured size limit.
class CapacityError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/**
 * A permutation of the points {1, ..., degree}.
 *
 * Points are 1-based at the interface and stored 0-based internally. Products
 * follow the right-action convention: `(p * q)` maps `i` to `q(p(i))`, so
 * `p * q` means "apply p, then q". Conjugation `p ^ x` is `x^-1 * p * x`.
 */
class Permutation
{
public:
  Permutation() = default;

  /// Identity on `degree` points.
  explicit Permutation(std::size_t degree);

  /// From 1-based images; throws InputError unless `images` is a bijection.
  static Permutation from_images(std::span<const Point> images);

  /// From 0-based images without validation.
  static Permutation from_zero_based(std::vector<std::uint16_t> images);

  /// From disjoint cycles of 1-based points.
  static Permutation from_cycles(std::size_t degree,
                                 std::span<const std::vector<Point>> cycles);

  std::size_t degree() const { return images_.size(); }

  /// Image of the 1-based point `p`.
  Point operator()(Point p) const { return images_[p - 1] + 1u; }

  /// Image of the 0-based point `p`.
  std::uint16_t image0(std::size_t p) const { return images_[p]; }

  std::span<const std::uint16_t> images0() const { return images_; }
  std::vector<Point> images() const;

  bool is_identity() const;
  Permutation inverse() const;
  Permutation pow(long long e) const;
  std::uint64_t order() const;

  /// Smallest moved 1-based point, or 0 for the identity.
  Point smallest_moved_point() const;

  /// Extends to a larger degree by fixing the new points.
  Permutation extended(std::size_t degree) const;

  /// Disjoint cycle notation, "()" for the identity.
  std::string to_cycle_string() const;

  friend Permutation operator*(const Permutation &lhs, const Permutation &rhs);
  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &, const Permutation &) = default;

  /// Conjugate `x^-1 * (*this) * x`.
  Permutation operator^(const Permutation &x) const;

  std::size_t hash() const;

private:
  std::vector<std::uint16_t> images_;
};

Permutation commutator(const Permutation &a, const Permutation &b);

} // namespace sublat

template <> struct std::hash<sublat::Permutation>
{
  std::size_t operator()(const sublat::Permutation &p) const noexcept { return p.hash(); }
};

#endif
