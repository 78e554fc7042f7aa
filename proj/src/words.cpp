#include "kcover/words.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "kcover/error.hpp"

namespace kcover {

  GroupWord free_reduce(GroupWord const& w) {
    GroupWord out;
    out.reserve(w.size());
    for (auto const& l : w) {
      if (!out.empty() && out.back() == l.inverted()) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    return out;
  }

  GroupWord inverse(GroupWord const& w) {
    GroupWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      out.push_back(it->inverted());
    }
    return out;
  }

  GroupWord multiply(GroupWord const& a, GroupWord const& b) {
    GroupWord out = a;
    out.insert(out.end(), b.begin(), b.end());
    return free_reduce(out);
  }

  GroupWord generator_word(std::size_t generator, bool inverse) {
    return GroupWord{Letter{generator, inverse}};
  }

  std::optional<std::size_t>
  GroupPresentation::generator_index(std::string_view name) const {
    auto it = std::find(generators.begin(), generators.end(), name);
    if (it == generators.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - generators.begin());
  }

  std::string format_word(GroupWord const&                w,
                          std::vector<std::string> const& names) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += ' ';
      }
      out += names.at(w[i].generator);
      if (w[i].inverse) {
        out += "^-1";
      }
    }
    return out;
  }

  GroupWord parse_word(std::string_view                text,
                       std::vector<std::string> const& names) {
    std::istringstream in{std::string(text)};
    std::string        token;
    GroupWord          out;
    bool               seen_one = false;
    while (in >> token) {
      if (token == "1") {
        seen_one = true;
        continue;
      }
      std::string  name = token;
      long long    exp  = 1;
      if (auto caret = token.find('^'); caret != std::string::npos) {
        name             = token.substr(0, caret);
        auto const* first = token.data() + caret + 1;
        auto const* last  = token.data() + token.size();
        auto [ptr, ec]    = std::from_chars(first, last, exp);
        if (ec != std::errc() || ptr != last || first == last) {
          fail(ErrorCode::parse_error, "bad exponent in '" + token + "'");
        }
      }
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) {
        fail(ErrorCode::parse_error, "unknown generator '" + name + "'");
      }
      Letter const l{static_cast<std::size_t>(it - names.begin()), exp < 0};
      out.insert(out.end(), static_cast<std::size_t>(std::llabs(exp)), l);
    }
    if (seen_one && !out.empty()) {
      fail(ErrorCode::parse_error,
           "'1' denotes the empty word and cannot be mixed with letters");
    }
    return free_reduce(out);
  }

  std::string format_presentation(GroupPresentation const& p) {
    std::string out = "< ";
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      out += (i == 0 ? "" : ", ") + p.generators[i];
    }
    out += " | ";
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      out += (i == 0 ? "" : ", ") + format_word(p.relators[i], p.generators);
    }
    return out + " >";
  }

  namespace detail {
    std::vector<std::int64_t>
    smith_diagonal(std::vector<std::vector<std::int64_t>> a, std::size_t n) {
      std::size_t const         m = a.size();
      std::vector<std::int64_t> diag;
      for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // Pivot: smallest non-zero absolute value in the trailing block.
        auto find_pivot = [&](std::size_t& pi, std::size_t& pj) {
          bool found = false;
          for (std::size_t i = t; i < m; ++i) {
            for (std::size_t j = t; j < n; ++j) {
              if (a[i][j] != 0
                  && (!found || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) {
                pi    = i;
                pj    = j;
                found = true;
              }
            }
          }
          return found;
        };
        std::size_t pi = t, pj = t;
        if (!find_pivot(pi, pj)) {
          break;
        }
        while (true) {
          std::swap(a[t], a[pi]);
          for (auto& row : a) {
            std::swap(row[t], row[pj]);
          }
          bool clean = true;
          for (std::size_t i = t + 1; i < m; ++i) {
            std::int64_t const q = a[i][t] / a[t][t];
            for (std::size_t j = t; j < n; ++j) {
              a[i][j] -= q * a[t][j];
            }
            clean = clean && a[i][t] == 0;
          }
          for (std::size_t j = t + 1; j < n; ++j) {
            std::int64_t const q = a[t][j] / a[t][t];
            for (std::size_t i = t; i < m; ++i) {
              a[i][j] -= q * a[i][t];
            }
            clean = clean && a[t][j] == 0;
          }
          if (clean) {
            // Enforce divisibility of the remaining block by the pivot.
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i) {
              for (std::size_t j = t + 1; j < n; ++j) {
                if (a[i][j] % a[t][t] != 0) {
                  bad = i;
                  break;
                }
              }
            }
            if (bad == m) {
              break;
            }
            for (std::size_t j = t; j < n; ++j) {
              a[t][j] += a[bad][j];
            }
          }
          pi = t;
          pj = t;
          // Restrict the pivot search to row t and column t.
          for (std::size_t i = t; i < m; ++i) {
            if (a[i][t] != 0 && std::llabs(a[i][t]) < std::llabs(a[pi][pj])) {
              pi = i;
              pj = t;
            }
          }
          for (std::size_t j = t; j < n; ++j) {
            if (a[t][j] != 0 && std::llabs(a[t][j]) < std::llabs(a[pi][pj])) {
              pi = t;
              pj = j;
            }
          }
        }
        diag.push_back(std::llabs(a[t][t]));
      }
      return diag;
    }
  }  // namespace detail

  std::vector<std::int64_t> abelian_invariants(GroupPresentation const& p) {
    std::size_t const                      n = p.num_generators();
    std::vector<std::vector<std::int64_t>> matrix;
    for (auto const& r : p.relators) {
      std::vector<std::int64_t> row(n, 0);
      for (auto const& l : r) {
        row[l.generator] += l.inverse ? -1 : 1;
      }
      matrix.push_back(std::move(row));
    }
    auto                      diag = detail::smith_diagonal(matrix, n);
    std::vector<std::int64_t> out;
    for (auto d : diag) {
      if (d > 1) {
        out.push_back(d);
      }
    }
    out.insert(out.end(), n - diag.size(), 0);
    return out;
  }

  std::string format_abelian(std::vector<std::int64_t> const& invariants) {
    std::size_t free_rank = 0;
    std::string out;
    for (auto d : invariants) {
      if (d == 0) {
        ++free_rank;
      } else {
        out += (out.empty() ? "" : " x ") + ("Z/" + std::to_string(d));
      }
    }
    if (free_rank > 0) {
      std::string z = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
      out           = out.empty() ? z : z + " x " + out;
    }
    return out.empty() ? "trivial" : out;
  }

}  // namespace kcover
