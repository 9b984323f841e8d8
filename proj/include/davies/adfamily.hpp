#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace davies {

/// Cantor pairing <n,k> = (n+k)(n+k+1)/2 + k. The columns
/// x_n = { <n,k> : k in omega } partition omega, so the family
/// { x_n } is pairwise disjoint (in particular almost disjoint) and
/// each x_n is infinite and strictly increasing in k.
std::uint64_t cantor_pair(std::uint64_t n, std::uint64_t k);

/// Inverse of cantor_pair; every m has exactly one preimage.
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t m);

/// Whether m lies in x_n.
bool ad_member(std::uint64_t n, std::uint64_t m);

/// The first count elements of x_n in increasing order.
std::vector<std::uint64_t> ad_enumerate(std::uint64_t n, std::size_t count);

}  // namespace davies
