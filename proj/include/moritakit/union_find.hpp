#pragma once

#include <numeric>
#include <vector>

namespace moritakit {

class UnionFind {
 public:
  explicit UnionFind(size_t n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  size_t find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root becomes the representative.
  bool unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  size_t size() const { return parent_.size(); }

  size_t count_classes() {
    size_t n = 0;
    for (size_t k = 0; k < parent_.size(); ++k) n += find(k) == k;
    return n;
  }

 private:
  std::vector<size_t> parent_;
};

}  // namespace moritakit
