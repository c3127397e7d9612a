#include "hpoly/multiindex.hpp"

#include <algorithm>
#include <limits>

#include "hpoly/errors.hpp"

namespace hpoly {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw DomainError("multi-index needs at least one variable");
  for (int e : exponents_) {
    if (e < 0) throw DomainError("multi-index exponents must be non-negative");
    degree_ += e;
  }
}

bool MultiIndex::is_multilinear() const noexcept {
  return std::all_of(exponents_.begin(), exponents_.end(), [](int e) { return e <= 1; });
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    if (j) s += ',';
    s += std::to_string(exponents_[j]);
  }
  return s + ")";
}

bool CanonicalOrder::operator()(const MultiIndex& a, const MultiIndex& b) const noexcept {
  auto ea = a.exponents();
  auto eb = b.exponents();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end(),
                                      [](int x, int y) { return x > y; });
}

namespace {

void require_positive(int m, int n) {
  if (m < 1) throw DomainError("degree m must be >= 1");
  if (n < 1) throw DomainError("variable count n must be >= 1");
}

void enumerate_into(std::vector<int>& current, int position, int remaining,
                    std::vector<MultiIndex>& out) {
  const int last = static_cast<int>(current.size()) - 1;
  if (position == last) {
    current[static_cast<std::size_t>(position)] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[static_cast<std::size_t>(position)] = e;
    enumerate_into(current, position + 1, remaining - e, out);
  }
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0) throw DomainError("binomial arguments must be non-negative");
  if (k > n) return 0;
  k = std::min(k, n - k);
  // Every partial product is itself a binomial C(n-k+i, i) <= C(n, k), so a
  // 128-bit intermediate cannot overflow while the result still fits.
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      throw OverflowError("binomial C(" + std::to_string(n) + "," + std::to_string(k) +
                          ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t count(int m, int n) {
  require_positive(m, n);
  if (n > std::numeric_limits<int>::max() - m) throw OverflowError("n + m overflows int");
  return binomial(n + m - 1, m);
}

std::vector<MultiIndex> enumerate(int m, int n) {
  const std::uint64_t total = count(m, n);
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  enumerate_into(current, 0, m, out);
  return out;
}

CountDecomposition count_decomposition(int m, int n) {
  require_positive(m, n);
  if (n <= m) throw DomainError("count_decomposition requires n > m");
  const std::uint64_t total = count(m, n);
  const std::uint64_t lower = binomial(n, m);
  return {lower, total - lower};
}

}  // namespace hpoly
