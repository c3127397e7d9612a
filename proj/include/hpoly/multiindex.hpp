#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hpoly {

/// Exponent vector alpha over n variables. The degree |alpha| is the sum of
/// the exponents and is fixed at construction.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents)
      : MultiIndex(std::vector<int>(exponents)) {}

  int degree() const noexcept { return degree_; }
  int variables() const noexcept { return static_cast<int>(exponents_.size()); }
  std::span<const int> exponents() const noexcept { return exponents_; }
  int operator[](int j) const { return exponents_[static_cast<std::size_t>(j)]; }

  // Every exponent is 0 or 1.
  bool is_multilinear() const noexcept;

  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Canonical order: lexicographically descending on the exponent vector, so
/// (2,0) < (1,1) < (0,2). enumerate() returns indices in this order.
struct CanonicalOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const noexcept;
};

/// All alpha with |alpha| = m over n variables, in canonical order.
/// Throws DomainError if m < 1 or n < 1.
std::vector<MultiIndex> enumerate(int m, int n);

/// C(n+m-1, m), computed in closed form. Throws OverflowError when the
/// result does not fit in 64 bits.
std::uint64_t count(int m, int n);

/// Exact binomial coefficient C(n, k) with overflow detection; 0 when k > n.
std::uint64_t binomial(int n, int k);

struct CountDecomposition {
  std::uint64_t lower_term;  // C(n, m) = (1/m!) prod_{k<m} (n-k)
  std::uint64_t remainder;   // count(m, n) - C(n, m), a degree m-1 polynomial in n
};

/// Splits count(m, n) into the multilinear part C(n, m) and the rest.
/// Requires n > m >= 1.
CountDecomposition count_decomposition(int m, int n);

}  // namespace hpoly
