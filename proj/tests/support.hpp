// Shared helpers for the unit tests: fixture loading and small oracles.

#ifndef KCOVER_TESTS_SUPPORT_HPP_
#define KCOVER_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "kcover/error.hpp"
#include "kcover/io.hpp"
#include "kcover/kgraph.hpp"

namespace kcover::test {

  inline std::filesystem::path fixture(std::string const& name) {
    return std::filesystem::path(KCOVER_FIXTURES) / name;
  }

  inline std::shared_ptr<KGraph const> load(std::string const& name) {
    return load_kgraph(fixture(name));
  }

  inline std::shared_ptr<KGraph const> graph(std::string const& text) {
    return std::make_shared<KGraph const>(read_kgraph(text));
  }

  // Runs f and returns the error code it throws, or nothing if it returns.
  template <typename F>
  std::optional<ErrorCode> error_of(F&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.code();
    }
    return std::nullopt;
  }

  // The cycle graph with n vertices v0..v(n-1) and edges ei: vi -> v(i+1).
  inline std::string cycle_text(std::size_t n) {
    std::string s = "kgraph 1\n";
    for (std::size_t i = 0; i < n; ++i) {
      s += "vertex v" + std::to_string(i) + "\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
      s += "edge e" + std::to_string(i) + " 1 v" + std::to_string(i) + " v"
           + std::to_string((i + 1) % n) + "\n";
    }
    return s;
  }

  using Perm = std::vector<std::size_t>;

  inline std::vector<Perm> all_perms(std::size_t n) {
    std::vector<Perm> out;
    Perm              p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }

  inline bool transitive(std::vector<Perm> const& gens, std::size_t n) {
    std::vector<bool>        seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      for (auto const& p : gens) {
        // the orbit of a finite permutation group is closed under p alone
        if (!seen[p[i]]) {
          seen[p[i]] = true;
          stack.push_back(p[i]);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  // Transitive actions of a free group of rank r on n points, counted up to
  // relabelling of the points.  Brute force over all generator tuples.
  inline std::size_t transitive_actions_up_to_iso(std::size_t r, std::size_t n) {
    auto                         perms = all_perms(n);
    std::set<std::vector<Perm>>  classes;
    std::vector<std::size_t>     idx(r, 0);
    while (true) {
      std::vector<Perm> gens;
      for (auto i : idx) {
        gens.push_back(perms[i]);
      }
      if (transitive(gens, n)) {
        std::vector<Perm> best;
        for (auto const& s : perms) {
          // conjugate by s: i -> s(p(s^-1(i)))
          Perm sinv(n);
          for (std::size_t i = 0; i < n; ++i) {
            sinv[s[i]] = i;
          }
          std::vector<Perm> conj;
          for (auto const& p : gens) {
            Perm q(n);
            for (std::size_t i = 0; i < n; ++i) {
              q[i] = s[p[sinv[i]]];
            }
            conj.push_back(q);
          }
          if (best.empty() || conj < best) {
            best = conj;
          }
        }
        classes.insert(best);
      }
      std::size_t pos = 0;
      while (pos < r && ++idx[pos] == perms.size()) {
        idx[pos++] = 0;
      }
      if (pos == r) {
        break;
      }
    }
    return classes.size();
  }

}  // namespace kcover::test

#endif  // KCOVER_TESTS_SUPPORT_HPP_
