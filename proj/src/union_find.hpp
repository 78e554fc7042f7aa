#ifndef KCOVER_SRC_UNION_FIND_HPP_
#define KCOVER_SRC_UNION_FIND_HPP_

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace kcover::detail {

  class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : _parent(n) {
      std::iota(_parent.begin(), _parent.end(), std::size_t(0));
    }

    std::size_t find(std::size_t x) {
      while (_parent[x] != x) {
        _parent[x] = _parent[_parent[x]];
        x          = _parent[x];
      }
      return x;
    }

    // The smaller root survives.
    bool unite(std::size_t a, std::size_t b) {
      a = find(a);
      b = find(b);
      if (a == b) {
        return false;
      }
      if (b < a) {
        std::swap(a, b);
      }
      _parent[b] = a;
      return true;
    }

   private:
    std::vector<std::size_t> _parent;
  };

}  // namespace kcover::detail

#endif  // KCOVER_SRC_UNION_FIND_HPP_
