#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace moritakit {

// Permutations of {0..n-1} stored as the image vector p[i].
using Perm = std::vector<int>;

Perm identity_perm(int n);
bool is_perm(const Perm& p);
Perm inverse(const Perm& p);

/// (p * q)(i) = p(q(i)).
Perm compose(const Perm& p, const Perm& q);

/// All permutations of {0..n-1} in lexicographic order.
std::vector<Perm> all_perms(int n);

/// Position of p in the lexicographic order of all_perms(n).
std::uint64_t perm_rank(const Perm& p);

/// Block sum: p on the first |p| points, q shifted on the rest.
Perm block_sum(const Perm& p, const Perm& q);

std::string perm_to_string(const Perm& p);

}  // namespace moritakit
