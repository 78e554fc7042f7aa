#include "kcover/kgraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "kcover/error.hpp"
#include "union_find.hpp"

namespace kcover {

  Degree Degree::basis(std::size_t k, std::size_t color) {
    Degree d(k);
    d[color - 1] = 1;
    return d;
  }

  std::size_t Degree::total() const noexcept {
    return std::accumulate(_entries.begin(), _entries.end(), std::size_t(0));
  }

  std::vector<std::size_t> Degree::sorted_colors() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < _entries.size(); ++c) {
      out.insert(out.end(), _entries[c], c + 1);
    }
    return out;
  }

  Degree operator+(Degree const& a, Degree const& b) {
    if (a.rank() != b.rank()) {
      fail(ErrorCode::degree_mismatch, "adding degrees of different rank");
    }
    Degree out(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) {
      out[i] = a[i] + b[i];
    }
    return out;
  }

  std::string to_string(Degree const& d) {
    std::string out = "(";
    for (std::size_t i = 0; i < d.rank(); ++i) {
      out += (i == 0 ? "" : ",") + std::to_string(d[i]);
    }
    return out + ")";
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  KGraph KGraph::validate(Skeleton const&    skeleton,
                          SquareTable const& squares,
                          ValidateOptions    options) {
    if (skeleton.k == 0) {
      fail(ErrorCode::invalid_argument, "k must be positive");
    }
    KGraph g;
    g._k        = skeleton.k;
    g._vertices = skeleton.vertices;
    std::sort(g._vertices.begin(), g._vertices.end());
    if (auto it = std::adjacent_find(g._vertices.begin(), g._vertices.end());
        it != g._vertices.end()) {
      fail(ErrorCode::invalid_argument, "duplicate vertex id " + *it);
    }

    std::vector<EdgeSpec> specs = skeleton.edges;
    std::sort(specs.begin(), specs.end(), [](auto const& a, auto const& b) {
      return a.id < b.id;
    });
    for (std::size_t i = 0; i + 1 < specs.size(); ++i) {
      if (specs[i].id == specs[i + 1].id) {
        fail(ErrorCode::invalid_argument, "duplicate edge id " + specs[i].id);
      }
    }
    g._out.assign(g._vertices.size(), {});
    g._in.assign(g._vertices.size(), {});
    for (auto const& s : specs) {
      if (s.color < 1 || s.color > g._k) {
        fail(ErrorCode::invalid_argument,
             "edge " + s.id + " has colour " + std::to_string(s.color)
                 + " outside 1.." + std::to_string(g._k));
      }
      auto src = g.find_vertex(s.source);
      auto rng = g.find_vertex(s.range);
      if (!src || !rng) {
        fail(ErrorCode::invalid_argument,
             "edge " + s.id + " uses an undeclared vertex");
      }
      g._out[*src].push_back(g._edges.size());
      g._in[*rng].push_back(g._edges.size());
      g._edges.push_back(Edge{s.id, s.color, *src, *rng});
    }

    // (a) endpoint and colour constraints of each square.
    for (auto const& s : squares) {
      auto e = g.find_edge(s.e), f = g.find_edge(s.f), gg = g.find_edge(s.g),
           h = g.find_edge(s.h);
      std::string const name
          = "(" + s.e + "," + s.f + "," + s.g + "," + s.h + ")";
      if (!e || !f || !gg || !h) {
        fail(ErrorCode::invalid_argument,
             "square " + name + " names an undeclared edge");
      }
      Edge const &E = g._edges[*e], &F = g._edges[*f], &G = g._edges[*gg],
                 &H = g._edges[*h];
      if (!(E.color < F.color) || G.color != F.color || H.color != E.color) {
        fail(ErrorCode::bad_square,
             "square " + name + " has colours (" + std::to_string(E.color)
                 + "," + std::to_string(F.color) + ","
                 + std::to_string(G.color) + "," + std::to_string(H.color)
                 + "), expected (i,j,j,i) with i<j");
      }
      auto const& V = g._vertices;
      if (E.source != F.range) {
        fail(ErrorCode::bad_square,
             "square " + name + ": s(" + s.e + ")=" + V[E.source] + " but r("
                 + s.f + ")=" + V[F.range]);
      }
      if (G.source != H.range) {
        fail(ErrorCode::bad_square,
             "square " + name + ": s(" + s.g + ")=" + V[G.source] + " but r("
                 + s.h + ")=" + V[H.range]);
      }
      if (F.source != H.source) {
        fail(ErrorCode::bad_square,
             "square " + name + ": s(" + s.f + ")=" + V[F.source] + " but s("
                 + s.h + ")=" + V[H.source]);
      }
      if (E.range != G.range) {
        fail(ErrorCode::bad_square,
             "square " + name + ": r(" + s.e + ")=" + V[E.range] + " but r("
                 + s.g + ")=" + V[G.range]);
      }
      g._squares.push_back(Square{*e, *f, *gg, *h});
    }
    std::sort(g._squares.begin(), g._squares.end());

    // (b) the squares biject sorted and unsorted composable pairs.
    std::map<std::pair<EdgeIndex, EdgeIndex>, std::size_t> seen;
    for (auto const& s : g._squares) {
      ++seen[{s.e, s.f}];
      ++seen[{s.g, s.h}];
    }
    for (EdgeIndex y = 0; y < g._edges.size(); ++y) {
      for (EdgeIndex x : g._out[g._edges[y].range]) {
        if (g._edges[x].color == g._edges[y].color) {
          continue;
        }
        auto        it    = seen.find({x, y});
        std::size_t count = it == seen.end() ? 0 : it->second;
        if (count != 1) {
          fail(ErrorCode::not_bijective,
               "composable pair (" + g._edges[x].id + "," + g._edges[y].id
                   + ") is "
                   + (count == 0 ? std::string("unmatched")
                                 : "matched " + std::to_string(count)
                                       + " times"));
        }
      }
    }
    for (auto const& s : g._squares) {
      g._swap[{s.e, s.f}] = {s.g, s.h};
      g._swap[{s.g, s.h}] = {s.e, s.f};
    }

    // (c) unique factorisation on short paths.
    g.check_factorization(std::max<std::size_t>(options.max_check_degree, 2));
    return g;
  }

  void KGraph::check_factorization(std::size_t max_degree) const {
    if (_k < 2) {
      return;
    }
    std::set<std::vector<EdgeIndex>> visited;
    std::vector<EdgeIndex>           path;

    auto check_class = [&](std::vector<EdgeIndex> const& start) {
      // Breadth-first over all rewrites by a single square; the class may
      // contain at most one path per colour word.
      std::map<std::vector<std::size_t>, std::vector<EdgeIndex>> by_word;
      std::vector<std::vector<EdgeIndex>>                        queue{start};
      visited.insert(start);
      for (std::size_t q = 0; q < queue.size(); ++q) {
        auto const               p = queue[q];
        std::vector<std::size_t> word;
        for (auto e : p) {
          word.push_back(_edges[e].color);
        }
        auto [it, fresh] = by_word.emplace(word, p);
        if (!fresh && it->second != p) {
          fail(ErrorCode::factorization_failure,
               "path " + describe(start) + " rewrites to both "
                   + describe(it->second) + " and " + describe(p));
        }
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
          if (_edges[p[i]].color == _edges[p[i + 1]].color) {
            continue;
          }
          auto next                     = p;
          std::tie(next[i], next[i + 1]) = swap(p[i], p[i + 1]);
          if (visited.insert(next).second) {
            queue.push_back(next);
          }
        }
      }
    };

    // Depth-first enumeration of raw paths, extending on the source side.
    auto extend = [&](auto& self, std::size_t length) -> void {
      if (path.size() == length) {
        std::set<std::size_t> colors;
        for (auto e : path) {
          colors.insert(_edges[e].color);
        }
        if (colors.size() >= 2 && !visited.contains(path)) {
          check_class(path);
        }
        return;
      }
      VertexIndex const at = _edges[path.back()].source;
      for (EdgeIndex e : _in[at]) {
        path.push_back(e);
        self(self, length);
        path.pop_back();
      }
    };
    for (std::size_t length = 3; length <= max_degree; ++length) {
      for (EdgeIndex e = 0; e < _edges.size(); ++e) {
        path.assign(1, e);
        extend(extend, length);
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Lookup
  ////////////////////////////////////////////////////////////////////////

  std::optional<VertexIndex> KGraph::find_vertex(std::string_view id) const {
    auto it = std::lower_bound(_vertices.begin(), _vertices.end(), id);
    if (it == _vertices.end() || *it != id) {
      return std::nullopt;
    }
    return static_cast<VertexIndex>(it - _vertices.begin());
  }

  std::optional<EdgeIndex> KGraph::find_edge(std::string_view id) const {
    auto it = std::lower_bound(
        _edges.begin(), _edges.end(), id, [](Edge const& e, std::string_view x) {
          return e.id < x;
        });
    if (it == _edges.end() || it->id != id) {
      return std::nullopt;
    }
    return static_cast<EdgeIndex>(it - _edges.begin());
  }

  VertexIndex KGraph::vertex_index(std::string_view id) const {
    if (auto v = find_vertex(id)) {
      return *v;
    }
    fail(ErrorCode::invalid_argument, "unknown vertex " + std::string(id));
  }

  EdgeIndex KGraph::edge_index(std::string_view id) const {
    if (auto e = find_edge(id)) {
      return *e;
    }
    fail(ErrorCode::invalid_argument, "unknown edge " + std::string(id));
  }

  std::pair<EdgeIndex, EdgeIndex> KGraph::swap(EdgeIndex x, EdgeIndex y) const {
    auto it = _swap.find({x, y});
    if (it == _swap.end()) {
      fail(ErrorCode::internal_error,
           "no square for (" + _edges.at(x).id + "," + _edges.at(y).id + ")");
    }
    return it->second;
  }

  Skeleton KGraph::skeleton() const {
    Skeleton s;
    s.k        = _k;
    s.vertices = _vertices;
    for (auto const& e : _edges) {
      s.edges.push_back(
          EdgeSpec{e.id, e.color, _vertices[e.source], _vertices[e.range]});
    }
    return s;
  }

  SquareTable KGraph::square_table() const {
    SquareTable t;
    for (auto const& s : _squares) {
      t.push_back(SquareSpec{
          _edges[s.e].id, _edges[s.f].id, _edges[s.g].id, _edges[s.h].id});
    }
    return t;
  }

  ////////////////////////////////////////////////////////////////////////
  // Path arithmetic
  ////////////////////////////////////////////////////////////////////////

  Degree KGraph::edge_degree(EdgeIndex e) const {
    return Degree::basis(_k, _edges.at(e).color);
  }

  Morphism KGraph::identity(VertexIndex v) const {
    if (v >= _vertices.size()) {
      fail(ErrorCode::invalid_argument, "vertex index out of range");
    }
    return Morphism(v, v, {}, Degree(_k));
  }

  // Bubble the path into the order given by `keys` using square rewrites.
  // Edges of equal colour keep their relative order, so keys must be
  // increasing along each colour.
  std::vector<EdgeIndex> KGraph::rearrange(std::vector<EdgeIndex>   path,
                                           std::vector<std::size_t> keys) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (keys[i] > keys[i + 1]) {
          std::tie(path[i], path[i + 1]) = swap(path[i], path[i + 1]);
          std::swap(keys[i], keys[i + 1]);
          changed = true;
        }
      }
    }
    return path;
  }

  Morphism KGraph::normal_form(std::span<EdgeIndex const> path) const {
    if (path.empty()) {
      fail(ErrorCode::invalid_argument,
           "empty path has no endpoint; use identity(v)");
    }
    for (auto e : path) {
      if (e >= _edges.size()) {
        fail(ErrorCode::invalid_argument, "edge index out of range");
      }
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (_edges[path[i]].source != _edges[path[i + 1]].range) {
        fail(ErrorCode::not_composable,
             "junction " + std::to_string(i) + ": s(" + _edges[path[i]].id
                 + ") != r(" + _edges[path[i + 1]].id + ")");
      }
    }
    Degree                   degree(_k);
    std::vector<std::size_t> keys;
    for (auto e : path) {
      ++degree[_edges[e].color - 1];
      keys.push_back(_edges[e].color);
    }
    std::vector<EdgeIndex> edges
        = rearrange(std::vector<EdgeIndex>(path.begin(), path.end()), keys);
    return Morphism(_edges[path.front()].range,
                    _edges[path.back()].source,
                    std::move(edges),
                    std::move(degree));
  }

  Morphism KGraph::compose(Morphism const& left, Morphism const& right) const {
    if (left.source() != right.range()) {
      fail(ErrorCode::not_composable,
           "s(" + describe(left) + ")=" + _vertices.at(left.source()) + " but r("
               + describe(right) + ")=" + _vertices.at(right.range()));
    }
    if (left.is_identity()) {
      return right;
    }
    if (right.is_identity()) {
      return left;
    }
    std::vector<EdgeIndex> path = left.edges();
    path.insert(path.end(), right.edges().begin(), right.edges().end());
    return normal_form(path);
  }

  std::pair<Morphism, Morphism> KGraph::factor(Morphism const& m,
                                               Degree const&   n,
                                               Degree const&   l) const {
    if (n.rank() != _k || l.rank() != _k || n + l != m.degree()) {
      fail(ErrorCode::degree_mismatch,
           to_string(n) + " + " + to_string(l) + " != " + to_string(m.degree()));
    }
    // Target colour word: sorted colours of n followed by sorted colours of l;
    // the j-th edge of colour c moves to the j-th slot of colour c.
    std::vector<std::size_t> target = n.sorted_colors();
    std::size_t const        split  = target.size();
    for (auto c : l.sorted_colors()) {
      target.push_back(c);
    }
    std::vector<std::size_t> keys;
    std::vector<std::size_t> used(_k + 1, 0);
    for (auto e : m.edges()) {
      std::size_t const c    = _edges[e].color;
      std::size_t       seen = 0, slot = 0;
      for (; slot < target.size(); ++slot) {
        if (target[slot] == c && seen++ == used[c]) {
          break;
        }
      }
      ++used[c];
      keys.push_back(slot);
    }
    auto path = rearrange(m.edges(), keys);
    std::vector<EdgeIndex> left(path.begin(), path.begin() + split);
    std::vector<EdgeIndex> right(path.begin() + split, path.end());
    VertexIndex const      middle
        = left.empty() ? m.range() : _edges[left.back()].source;
    Morphism beta  = left.empty() ? identity(middle) : normal_form(left);
    Morphism gamma = right.empty() ? identity(middle) : normal_form(right);
    return {std::move(beta), std::move(gamma)};
  }

  std::vector<Morphism> KGraph::morphisms_of_degree(VertexIndex   v,
                                                    Degree const& n,
                                                    Direction direction) const {
    if (n.rank() != _k) {
      fail(ErrorCode::degree_mismatch,
           "degree " + to_string(n) + " has rank != " + std::to_string(_k));
    }
    if (v >= _vertices.size()) {
      fail(ErrorCode::invalid_argument, "vertex index out of range");
    }
    std::vector<std::size_t> const colors = n.sorted_colors();
    std::vector<Morphism>          out;
    if (colors.empty()) {
      out.push_back(identity(v));
      return out;
    }
    std::size_t const      length = colors.size();
    std::vector<EdgeIndex> path(length);
    // Fill positions from the fixed end inwards.
    auto fill = [&](auto& self, std::size_t filled, VertexIndex at) -> void {
      if (filled == length) {
        out.push_back(Morphism(_edges[path.front()].range,
                               _edges[path.back()].source,
                               path,
                               n));
        return;
      }
      if (direction == Direction::range) {
        std::size_t const pos = filled;
        for (EdgeIndex e : _in[at]) {
          if (_edges[e].color == colors[pos]) {
            path[pos] = e;
            self(self, filled + 1, _edges[e].source);
          }
        }
      } else {
        std::size_t const pos = length - 1 - filled;
        for (EdgeIndex e : _out[at]) {
          if (_edges[e].color == colors[pos]) {
            path[pos] = e;
            self(self, filled + 1, _edges[e].range);
          }
        }
      }
    };
    fill(fill, 0, v);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::size_t> KGraph::components() const {
    detail::UnionFind uf(_vertices.size());
    for (auto const& e : _edges) {
      uf.unite(e.source, e.range);
    }
    std::vector<std::size_t> label(_vertices.size());
    std::map<std::size_t, std::size_t> numbering;
    for (VertexIndex v = 0; v < _vertices.size(); ++v) {
      auto [it, fresh] = numbering.emplace(uf.find(v), numbering.size());
      label[v]         = it->second;
    }
    return label;
  }

  bool KGraph::is_connected() const {
    if (_vertices.empty()) {
      return false;
    }
    auto label = components();
    return std::all_of(
        label.begin(), label.end(), [](std::size_t c) { return c == 0; });
  }

  std::string KGraph::describe(std::span<EdgeIndex const> path) const {
    std::string out = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
      out += (i == 0 ? "" : ",") + _edges.at(path[i]).id;
    }
    return out + "]";
  }

  std::string KGraph::describe(Morphism const& m) const {
    if (m.is_identity()) {
      return "id(" + _vertices.at(m.range()) + ")";
    }
    return describe(m.edges());
  }

}  // namespace kcover
