#include "moritakit/perm.hpp"

#include <algorithm>
#include <numeric>

namespace moritakit {

Perm identity_perm(int n) {
  Perm p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_perm(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || static_cast<size_t>(v) >= p.size() || seen[static_cast<size_t>(v)]) return false;
    seen[static_cast<size_t>(v)] = 1;
  }
  return true;
}

Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[static_cast<size_t>(p[i])] = static_cast<int>(i);
  return q;
}

Perm compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (size_t i = 0; i < q.size(); ++i) r[i] = p[static_cast<size_t>(q[i])];
  return r;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::uint64_t perm_rank(const Perm& p) {
  std::uint64_t rank = 0;
  const size_t n = p.size();
  for (size_t i = 0; i < n; ++i) {
    std::uint64_t smaller = 0;
    for (size_t j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller;
    std::uint64_t fact = 1;
    for (size_t k = 2; k <= n - 1 - i; ++k) fact *= k;
    rank += smaller * fact;
  }
  return rank;
}

Perm block_sum(const Perm& p, const Perm& q) {
  Perm r = p;
  const int shift = static_cast<int>(p.size());
  for (int v : q) r.push_back(v + shift);
  return r;
}

std::string perm_to_string(const Perm& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

}  // namespace moritakit
