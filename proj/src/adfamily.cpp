#include "davies/adfamily.hpp"

#include <cmath>
#include <stdexcept>

namespace davies {

namespace {

constexpr std::uint64_t kMaxArg = std::uint64_t(1) << 30;

std::uint64_t isqrt(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

std::uint64_t cantor_pair(std::uint64_t n, std::uint64_t k) {
  if (n > kMaxArg || k > kMaxArg) throw std::invalid_argument("cantor_pair argument too large");
  const std::uint64_t w = n + k;
  return w * (w + 1) / 2 + k;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t m) {
  if (m > kMaxArg * kMaxArg) throw std::invalid_argument("cantor_unpair argument too large");
  const std::uint64_t w = (isqrt(8 * m + 1) - 1) / 2;
  const std::uint64_t t = w * (w + 1) / 2;
  const std::uint64_t k = m - t;
  return {w - k, k};
}

bool ad_member(std::uint64_t n, std::uint64_t m) { return cantor_unpair(m).first == n; }

std::vector<std::uint64_t> ad_enumerate(std::uint64_t n, std::size_t count) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(cantor_pair(n, k));
  return out;
}

}  // namespace davies
