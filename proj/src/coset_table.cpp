#include "kcover/coset_table.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "kcover/error.hpp"

namespace kcover {

  namespace {
    constexpr std::size_t U = CosetTable::undefined;

    std::size_t inverse_column(std::size_t c) {
      return c ^ 1U;
    }
  }  // namespace

  CosetTable::CosetTable(std::size_t              num_generators,
                         std::size_t              num_cosets,
                         std::vector<std::size_t> entries)
      : _num_generators(num_generators),
        _num_cosets(num_cosets),
        _entries(std::move(entries)) {
    if (_entries.size() != _num_cosets * num_columns()) {
      fail(ErrorCode::invalid_argument, "coset table has wrong shape");
    }
  }

  bool CosetTable::is_complete() const noexcept {
    return std::none_of(_entries.begin(), _entries.end(), [this](auto x) {
      return x == U || x >= _num_cosets;
    });
  }

  bool CosetTable::is_standardized() const {
    return is_complete() && rebased(0) == *this;
  }

  std::size_t CosetTable::act(std::size_t coset, GroupWord const& w) const {
    for (auto const& l : w) {
      coset = act(coset, l);
      if (coset == U) {
        return U;
      }
    }
    return coset;
  }

  CosetTable CosetTable::rebased(std::size_t start) const {
    if (!is_complete()) {
      fail(ErrorCode::invalid_argument, "rebasing an incomplete coset table");
    }
    std::size_t const        cols = num_columns();
    std::vector<std::size_t> relabel(_num_cosets, U);
    std::vector<std::size_t> order;
    relabel[start] = 0;
    order.push_back(start);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t c = 0; c < cols; ++c) {
        std::size_t const next = at(order[i], c);
        if (relabel[next] == U) {
          relabel[next] = order.size();
          order.push_back(next);
        }
      }
    }
    std::vector<std::size_t> entries(order.size() * cols);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t c = 0; c < cols; ++c) {
        entries[i * cols + c] = relabel[at(order[i], c)];
      }
    }
    return CosetTable(_num_generators, order.size(), std::move(entries));
  }

  std::vector<GroupWord> CosetTable::transversal() const {
    std::vector<GroupWord>   words(_num_cosets);
    std::vector<bool>        seen(_num_cosets, false);
    std::vector<std::size_t> order{0};
    seen[0] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t c = 0; c < num_columns(); ++c) {
        std::size_t const next = at(order[i], c);
        if (next != U && !seen[next]) {
          seen[next]  = true;
          words[next] = words[order[i]];
          words[next].push_back(Letter::from_column(c));
          order.push_back(next);
        }
      }
    }
    return words;
  }

  std::vector<GroupWord> CosetTable::subgroup_generators() const {
    auto                   words = transversal();
    std::vector<GroupWord> out;
    std::set<GroupWord>    seen;
    for (std::size_t i = 0; i < _num_cosets; ++i) {
      for (std::size_t g = 0; g < _num_generators; ++g) {
        std::size_t const j = at(i, 2 * g);
        GroupWord w = multiply(multiply(words[i], generator_word(g)),
                               inverse(words[j]));
        if (!w.empty() && seen.insert(w).second) {
          out.push_back(std::move(w));
        }
      }
    }
    return out;
  }

  bool CosetTable::is_consistent_with(
      GroupPresentation const&      p,
      std::vector<GroupWord> const& subgroup) const {
    if (!is_complete() || p.num_generators() != _num_generators) {
      return false;
    }
    for (std::size_t i = 0; i < _num_cosets; ++i) {
      for (std::size_t c = 0; c < num_columns(); ++c) {
        if (at(at(i, c), inverse_column(c)) != i) {
          return false;
        }
      }
      for (auto const& r : p.relators) {
        if (act(i, r) != i) {
          return false;
        }
      }
    }
    return std::all_of(subgroup.begin(), subgroup.end(), [this](auto const& h) {
      return act(0, h) == 0;
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Todd-Coxeter (HLT + lookahead)
  ////////////////////////////////////////////////////////////////////////

  namespace {

    class Enumerator {
     public:
      Enumerator(GroupPresentation const& p, std::size_t max_cosets)
          : _p(p), _cols(2 * p.num_generators()), _max(max_cosets) {
        new_row();
      }

      CosetTable run(std::vector<GroupWord> const& subgroup) {
        for (auto const& h : subgroup) {
          while (!scan_and_fill(0, h)) {
            make_room();
          }
        }
        for (std::size_t c = 0; c < _parent.size(); ++c) {
          for (auto const& r : _p.relators) {
            if (!alive(c)) {
              break;
            }
            while (!scan_and_fill(c, r)) {
              make_room();
              if (!alive(c)) {
                break;
              }
            }
          }
          for (std::size_t x = 0; x < _cols && alive(c); ++x) {
            if (entry(c, x) != U) {
              continue;
            }
            if (_live >= _max) {
              make_room();
              if (!alive(c) || entry(c, x) != U) {
                continue;
              }
            }
            define(c, x);
          }
        }
        return extract();
      }

     private:
      std::size_t& entry(std::size_t c, std::size_t x) {
        return _table[c * _cols + x];
      }

      bool alive(std::size_t c) const {
        return _parent[c] == c;
      }

      void new_row() {
        _table.insert(_table.end(), _cols, U);
        _parent.push_back(_parent.size());
        ++_live;
      }

      void define(std::size_t c, std::size_t x) {
        std::size_t const d = _parent.size();
        new_row();
        entry(c, x)                 = d;
        entry(d, inverse_column(x)) = c;
      }

      std::size_t rep(std::size_t c) {
        std::size_t r = c;
        while (_parent[r] != r) {
          r = _parent[r];
        }
        while (_parent[c] != r) {
          std::size_t const next = _parent[c];
          _parent[c]             = r;
          c                      = next;
        }
        return r;
      }

      void merge(std::size_t a, std::size_t b, std::vector<std::size_t>& q) {
        a = rep(a);
        b = rep(b);
        if (a == b) {
          return;
        }
        if (b < a) {
          std::swap(a, b);
        }
        _parent[b] = a;
        --_live;
        q.push_back(b);
      }

      void coincidence(std::size_t a, std::size_t b) {
        if (a == b) {
          return;
        }
        std::vector<std::size_t> q;
        merge(a, b, q);
        for (std::size_t i = 0; i < q.size(); ++i) {
          std::size_t const g = q[i];
          for (std::size_t x = 0; x < _cols; ++x) {
            std::size_t const d = entry(g, x);
            if (d == U) {
              continue;
            }
            entry(d, inverse_column(x)) = U;
            std::size_t const mu = rep(g), nu = rep(d);
            if (entry(mu, x) != U) {
              merge(nu, entry(mu, x), q);
            } else if (entry(nu, inverse_column(x)) != U) {
              merge(mu, entry(nu, inverse_column(x)), q);
            } else {
              entry(mu, x)                  = nu;
              entry(nu, inverse_column(x)) = mu;
            }
          }
        }
      }

      // Returns false when a definition is needed but the budget is spent.
      bool scan_and_fill(std::size_t c, GroupWord const& w) {
        if (w.empty()) {
          return true;
        }
        std::size_t f = c, b = c;
        std::size_t i = 0, j = w.size() - 1;
        while (true) {
          while (i <= j && entry(f, w[i].column()) != U) {
            f = entry(f, w[i].column());
            ++i;
          }
          if (i > j) {
            coincidence(f, b);
            return true;
          }
          while (j >= i && entry(b, w[j].inverted().column()) != U) {
            b = entry(b, w[j].inverted().column());
            if (j == 0) {
              // Whole word scanned backwards; i == 0 as well here.
              coincidence(f, b);
              return true;
            }
            --j;
          }
          if (j < i) {
            coincidence(f, b);
            return true;
          }
          if (i == j) {
            entry(f, w[i].column())             = b;
            entry(b, w[i].inverted().column()) = f;
            return true;
          }
          if (_live >= _max) {
            return false;
          }
          define(f, w[i].column());
        }
      }

      // Scan without defining; deduce and process coincidences.
      void scan(std::size_t c, GroupWord const& w) {
        if (w.empty()) {
          return;
        }
        std::size_t f = c, b = c;
        std::size_t i = 0, j = w.size() - 1;
        while (i <= j && entry(f, w[i].column()) != U) {
          f = entry(f, w[i].column());
          ++i;
        }
        if (i > j) {
          coincidence(f, b);
          return;
        }
        while (j >= i && entry(b, w[j].inverted().column()) != U) {
          b = entry(b, w[j].inverted().column());
          if (j == 0) {
            coincidence(f, b);
            return;
          }
          --j;
        }
        if (j < i) {
          coincidence(f, b);
        } else if (i == j) {
          entry(f, w[i].column())             = b;
          entry(b, w[i].inverted().column()) = f;
        }
      }

      void lookahead() {
        for (std::size_t c = 0; c < _parent.size(); ++c) {
          for (auto const& r : _p.relators) {
            if (!alive(c)) {
              break;
            }
            scan(c, r);
          }
        }
      }

      void make_room() {
        lookahead();
        if (_live >= _max) {
          fail(ErrorCode::coset_overflow,
               "more than " + std::to_string(_max)
                   + " live cosets needed (group may be infinite)");
        }
      }

      CosetTable extract() {
        std::vector<std::size_t> relabel(_parent.size(), U);
        std::size_t              n = 0;
        for (std::size_t c = 0; c < _parent.size(); ++c) {
          if (alive(c)) {
            relabel[c] = n++;
          }
        }
        std::vector<std::size_t> entries(n * _cols);
        for (std::size_t c = 0; c < _parent.size(); ++c) {
          if (!alive(c)) {
            continue;
          }
          for (std::size_t x = 0; x < _cols; ++x) {
            std::size_t const d = entry(c, x);
            if (d == U || !alive(d)) {
              fail(ErrorCode::internal_error,
                   "coset enumeration finished with an undefined entry");
            }
            entries[relabel[c] * _cols + x] = relabel[d];
          }
        }
        return CosetTable(_p.num_generators(), n, std::move(entries))
            .standardized();
      }

      GroupPresentation const& _p;
      std::size_t              _cols;
      std::size_t              _max;
      std::size_t              _live = 0;
      std::vector<std::size_t> _table;
      std::vector<std::size_t> _parent;
    };

  }  // namespace

  CosetTable todd_coxeter(GroupPresentation const&      p,
                          std::vector<GroupWord> const& subgroup,
                          std::size_t                   max_cosets) {
    if (max_cosets == 0) {
      fail(ErrorCode::invalid_argument, "max_cosets must be positive");
    }
    for (auto const& w : p.relators) {
      for (auto const& l : w) {
        if (l.generator >= p.num_generators()) {
          fail(ErrorCode::invalid_argument, "relator uses unknown generator");
        }
      }
    }
    GroupPresentation      q = p;
    for (auto& r : q.relators) {
      r = free_reduce(r);
    }
    std::vector<GroupWord> h;
    for (auto const& w : subgroup) {
      for (auto const& l : w) {
        if (l.generator >= p.num_generators()) {
          fail(ErrorCode::invalid_argument,
               "subgroup generator uses unknown generator");
        }
      }
      h.push_back(free_reduce(w));
    }
    CosetTable t = Enumerator(q, max_cosets).run(h);
    if (!t.is_consistent_with(q, h)) {
      fail(ErrorCode::internal_error, "coset enumeration produced a bad table");
    }
    return t;
  }

  ////////////////////////////////////////////////////////////////////////
  // Low-index subgroups
  ////////////////////////////////////////////////////////////////////////

  namespace {

    class LowIndexSearch {
     public:
      LowIndexSearch(GroupPresentation const& p, std::size_t n)
          : _p(p), _cols(2 * p.num_generators()), _n(n) {}

      std::vector<CosetTable> run() {
        State s;
        s.num   = 1;
        s.table = std::vector<std::size_t>(_n * _cols, U);
        if (propagate(s)) {
          search(s);
        }
        return std::move(_found);
      }

     private:
      struct State {
        std::size_t              num = 0;
        std::vector<std::size_t> table;
      };

      void search(State const& s) {
        std::size_t pos = s.num * _cols;
        for (std::size_t k = 0; k < s.num * _cols; ++k) {
          if (s.table[k] == U) {
            pos = k;
            break;
          }
        }
        if (pos == s.num * _cols) {
          _found.emplace_back(
              _p.num_generators(),
              s.num,
              std::vector<std::size_t>(s.table.begin(),
                                       s.table.begin() + s.num * _cols));
          return;
        }
        std::size_t const row = pos / _cols, col = pos % _cols;
        std::size_t const inv = inverse_column(col);
        std::size_t const top = std::min(s.num + 1, _n);
        for (std::size_t d = 0; d < top; ++d) {
          if (d < s.num && s.table[d * _cols + inv] != U) {
            continue;
          }
          State next = s;
          if (d == s.num) {
            ++next.num;
          }
          next.table[row * _cols + col] = d;
          next.table[d * _cols + inv]   = row;
          if (propagate(next)) {
            search(next);
          }
        }
      }

      // Relator scans at every coset until nothing new is deduced.
      bool propagate(State& s) {
        bool changed = true;
        while (changed) {
          changed = false;
          for (std::size_t c = 0; c < s.num; ++c) {
            for (auto const& r : _p.relators) {
              int const result = scan(s, c, r);
              if (result < 0) {
                return false;
              }
              changed = changed || result > 0;
            }
          }
        }
        return true;
      }

      // -1: contradiction, 0: nothing deduced, 1: one entry deduced.
      int scan(State& s, std::size_t c, GroupWord const& w) {
        if (w.empty()) {
          return 0;
        }
        auto at = [&](std::size_t coset, std::size_t col) -> std::size_t& {
          return s.table[coset * _cols + col];
        };
        std::size_t f = c, b = c;
        std::size_t i = 0, j = w.size();  // unscanned letters are [i, j)
        while (i < j && at(f, w[i].column()) != U) {
          f = at(f, w[i].column());
          ++i;
        }
        while (j > i && at(b, w[j - 1].inverted().column()) != U) {
          b = at(b, w[j - 1].inverted().column());
          --j;
        }
        if (i == j) {
          return f == b ? 0 : -1;
        }
        if (j == i + 1) {
          std::size_t const x = w[i].column();
          if (at(b, inverse_column(x)) != U) {
            return -1;
          }
          at(f, x)                 = b;
          at(b, inverse_column(x)) = f;
          return 1;
        }
        return 0;
      }

      GroupPresentation const& _p;
      std::size_t              _cols;
      std::size_t              _n;
      std::vector<CosetTable>  _found;
    };

  }  // namespace

  std::vector<CosetTable> low_index_subgroups(GroupPresentation const& p,
                                              std::size_t max_index,
                                              LowIndexMode mode) {
    if (max_index == 0) {
      fail(ErrorCode::invalid_argument, "max_index must be at least 1");
    }
    GroupPresentation q = p;
    for (auto& r : q.relators) {
      r = free_reduce(r);
    }
    auto                    tables = LowIndexSearch(q, max_index).run();
    std::vector<CosetTable> out;
    for (auto& t : tables) {
      if (mode == LowIndexMode::conjugacy_classes) {
        bool least = true;
        for (std::size_t c = 1; c < t.size() && least; ++c) {
          least = !(t.rebased(c) < t);
        }
        if (!least) {
          continue;
        }
      }
      out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t normalizer_quotient_order(CosetTable const& t) {
    std::size_t count = 0;
    for (std::size_t c = 0; c < t.size(); ++c) {
      if (t.rebased(c) == t) {
        ++count;
      }
    }
    return count;
  }

  bool is_normal_subgroup(CosetTable const& t) {
    return normalizer_quotient_order(t) == t.size();
  }

  std::size_t conjugacy_class_size(CosetTable const& t) {
    std::set<CosetTable> conjugates;
    for (std::size_t c = 0; c < t.size(); ++c) {
      conjugates.insert(t.rebased(c));
    }
    return conjugates.size();
  }

}  // namespace kcover
