#include "sublat/permutation.hpp"

#include <numeric>
#include <sstream>

namespace sublat
{

namespace
{

constexpr std::size_t max_degree = 0xffff;

void check_degree(std::size_t degree)
{
  if (degree > max_degree)
    throw InputError("degree " + std::to_string(degree) + " exceeds " +
                     std::to_string(max_degree));
}

} // namespace

Permutation::Permutation(std::size_t degree)
{
  check_degree(degree);
  images_.resize(degree);
  std::iota(images_.begin(), images_.end(), std::uint16_t{0});
}

Permutation Permutation::from_images(std::span<const Point> images)
{
  check_degree(images.size());
  std::vector<bool> seen(images.size(), false);
  std::vector<std::uint16_t> zero_based(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    Point p = images[i];
    if (p < 1 || p > images.size())
      throw InputError("image " + std::to_string(p) + " out of range 1.." +
                       std::to_string(images.size()));
    if (seen[p - 1])
      throw InputError("image " + std::to_string(p) + " repeated");
    seen[p - 1] = true;
    zero_based[i] = static_cast<std::uint16_t>(p - 1);
  }
  return from_zero_based(std::move(zero_based));
}

Permutation Permutation::from_zero_based(std::vector<std::uint16_t> images)
{
  Permutation result;
  result.images_ = std::move(images);
  return result;
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     std::span<const std::vector<Point>> cycles)
{
  Permutation result(degree);
  std::vector<bool> used(degree, false);
  for (const auto &cycle : cycles) {
    for (Point p : cycle) {
      if (p < 1 || p > degree)
        throw InputError("point " + std::to_string(p) + " out of range 1.." +
                         std::to_string(degree));
      if (used[p - 1])
        throw InputError("point " + std::to_string(p) + " repeated in cycles");
      used[p - 1] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point from = cycle[i];
      Point to = cycle[(i + 1) % cycle.size()];
      result.images_[from - 1] = static_cast<std::uint16_t>(to - 1);
    }
  }
  return result;
}

std::vector<Point> Permutation::images() const
{
  std::vector<Point> result(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    result[i] = images_[i] + 1u;
  return result;
}

bool Permutation::is_identity() const
{
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return false;
  return true;
}

Permutation Permutation::inverse() const
{
  Permutation result;
  result.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    result.images_[images_[i]] = static_cast<std::uint16_t>(i);
  return result;
}

Permutation Permutation::pow(long long e) const
{
  Permutation base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e)
                               : static_cast<unsigned long long>(e);
  Permutation result(degree());
  while (n) {
    if (n & 1u)
      result = result * base;
    base = base * base;
    n >>= 1u;
  }
  return result;
}

std::uint64_t Permutation::order() const
{
  std::uint64_t result = 1;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i])
      continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Point Permutation::smallest_moved_point() const
{
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return static_cast<Point>(i + 1);
  return 0;
}

Permutation Permutation::extended(std::size_t degree) const
{
  if (degree < images_.size())
    throw InputError("cannot shrink a permutation");
  check_degree(degree);
  Permutation result(degree);
  std::copy(images_.begin(), images_.end(), result.images_.begin());
  return result;
}

std::string Permutation::to_cycle_string() const
{
  std::ostringstream out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i)
      continue;
    out << '(';
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (j != i)
        out << ',';
      out << j + 1;
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

Permutation operator*(const Permutation &lhs, const Permutation &rhs)
{
  if (lhs.degree() != rhs.degree())
    throw InputError("degree mismatch in permutation product");
  Permutation result;
  result.images_.resize(lhs.images_.size());
  for (std::size_t i = 0; i < lhs.images_.size(); ++i)
    result.images_[i] = rhs.images_[lhs.images_[i]];
  return result;
}

Permutation Permutation::operator^(const Permutation &x) const
{
  if (degree() != x.degree())
    throw InputError("degree mismatch in conjugation");
  // x^-1 * p * x maps x(i) to x(p(i))
  Permutation result;
  result.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    result.images_[x.images_[i]] = x.images_[images_[i]];
  return result;
}

std::size_t Permutation::hash() const
{
  std::uint64_t h = 1469598103934665603ull;
  for (auto v : images_) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

Permutation commutator(const Permutation &a, const Permutation &b)
{
  return a.inverse() * b.inverse() * a * b;
}

} // namespace sublat
