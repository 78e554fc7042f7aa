#include "kcover/coverings.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "kcover/error.hpp"

namespace kcover {

  namespace {
    constexpr std::size_t unset = SIZE_MAX;

    std::string color_name(std::size_t c) {
      return "colour " + std::to_string(c);
    }

    std::string square_name(KGraph const& g, Square const& s) {
      return "(" + g.edge(s.e).id + "," + g.edge(s.f).id + ","
             + g.edge(s.g).id + "," + g.edge(s.h).id + ")";
    }

    bool same_graph(KGraph const& a, KGraph const& b) {
      if (&a == &b) {
        return true;
      }
      if (a.rank() != b.rank() || a.vertex_ids() != b.vertex_ids()
          || a.squares() != b.squares() || a.num_edges() != b.num_edges()) {
        return false;
      }
      for (EdgeIndex e = 0; e < a.num_edges(); ++e) {
        Edge const& x = a.edge(e);
        Edge const& y = b.edge(e);
        if (x.id != y.id || x.color != y.color || x.source != y.source
            || x.range != y.range) {
          return false;
        }
      }
      return true;
    }

    bool maps_square_to_square(KGraph const& to, GraphMap const& m, Square const& s) {
      return to.swap(m.edges[s.e], m.edges[s.f])
             == std::pair(m.edges[s.g], m.edges[s.h]);
    }

    // Edges at v (range side if `in`) grouped by colour, checked to map
    // bijectively onto the edges of the same colour at the image vertex.
    void check_local(KGraph const&   dom,
                     KGraph const&   cod,
                     GraphMap const& m,
                     VertexIndex     v,
                     bool            in) {
      auto const here  = in ? dom.edges_in(v) : dom.edges_out(v);
      auto const there = in ? cod.edges_in(m.vertices[v])
                            : cod.edges_out(m.vertices[v]);
      std::map<EdgeIndex, EdgeIndex> preimage;
      for (EdgeIndex b : here) {
        auto [it, fresh] = preimage.emplace(m.edges[b], b);
        if (!fresh) {
          fail(ErrorCode::not_locally_injective,
               "vertex " + dom.vertex_id(v) + ", "
                   + color_name(dom.edge(b).color) + ": edges "
                   + dom.edge(it->second).id + " and " + dom.edge(b).id
                   + " both map to " + cod.edge(m.edges[b]).id);
        }
      }
      for (EdgeIndex a : there) {
        if (!preimage.contains(a)) {
          fail(ErrorCode::not_locally_surjective,
               "vertex " + dom.vertex_id(v) + ", "
                   + color_name(cod.edge(a).color) + ": edge " + cod.edge(a).id
                   + (in ? " into " : " out of ")
                   + cod.vertex_id(m.vertices[v]) + " has no lift");
        }
      }
    }

    // Redundant check of path-level bijectivity in total degree 2.
    void spot_check_degree_two(KGraph const&   dom,
                               KGraph const&   cod,
                               GraphMap const& m) {
      std::size_t const k = dom.rank();
      for (VertexIndex v = 0; v < dom.num_vertices(); ++v) {
        for (std::size_t c1 = 1; c1 <= k; ++c1) {
          for (std::size_t c2 = c1; c2 <= k; ++c2) {
            Degree const n = Degree::basis(k, c1) + Degree::basis(k, c2);
            for (Direction dir : {Direction::source, Direction::range}) {
              auto const up   = dom.morphisms_of_degree(v, n, dir);
              auto const down = cod.morphisms_of_degree(m.vertices[v], n, dir);
              std::set<std::vector<EdgeIndex>> images;
              for (auto const& mu : up) {
                std::vector<EdgeIndex> path;
                for (auto e : mu.edges()) {
                  path.push_back(m.edges[e]);
                }
                images.insert(std::move(path));
              }
              if (images.size() != up.size() || images.size() != down.size()) {
                fail(ErrorCode::internal_error,
                     "degree " + to_string(n) + " paths at "
                         + dom.vertex_id(v) + " do not lift bijectively");
              }
            }
          }
        }
      }
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // GraphMap
  ////////////////////////////////////////////////////////////////////////

  GraphMap identity_map(KGraph const& g) {
    GraphMap m;
    m.vertices.resize(g.num_vertices());
    m.edges.resize(g.num_edges());
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
      m.vertices[i] = i;
    }
    for (std::size_t i = 0; i < m.edges.size(); ++i) {
      m.edges[i] = i;
    }
    return m;
  }

  GraphMap compose(GraphMap const& a, GraphMap const& b) {
    GraphMap m;
    for (auto v : b.vertices) {
      m.vertices.push_back(a.vertices.at(v));
    }
    for (auto e : b.edges) {
      m.edges.push_back(a.edges.at(e));
    }
    return m;
  }

  namespace {
    bool is_permutation_of_range(std::vector<std::size_t> const& v) {
      std::vector<bool> seen(v.size(), false);
      for (auto x : v) {
        if (x >= v.size() || seen[x]) {
          return false;
        }
        seen[x] = true;
      }
      return true;
    }
  }  // namespace

  bool is_bijective(GraphMap const& m) {
    return is_permutation_of_range(m.vertices)
           && is_permutation_of_range(m.edges);
  }

  GraphMap inverse(GraphMap const& m) {
    if (!is_bijective(m)) {
      fail(ErrorCode::invalid_argument, "map is not invertible");
    }
    GraphMap r;
    r.vertices.resize(m.vertices.size());
    r.edges.resize(m.edges.size());
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
      r.vertices[m.vertices[i]] = i;
    }
    for (std::size_t i = 0; i < m.edges.size(); ++i) {
      r.edges[m.edges[i]] = i;
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // CoveringMap
  ////////////////////////////////////////////////////////////////////////

  CoveringMap check_covering(std::shared_ptr<KGraph const> domain,
                             std::shared_ptr<KGraph const> codomain,
                             GraphMap                      map) {
    if (!domain || !codomain) {
      fail(ErrorCode::invalid_argument, "null k-graph");
    }
    KGraph const& dom = *domain;
    KGraph const& cod = *codomain;
    if (dom.rank() != cod.rank()) {
      fail(ErrorCode::invalid_argument,
           "domain has rank " + std::to_string(dom.rank()) + ", codomain "
               + std::to_string(cod.rank()));
    }
    if (map.vertices.size() != dom.num_vertices()
        || map.edges.size() != dom.num_edges()) {
      fail(ErrorCode::invalid_argument, "map is not total on the domain");
    }
    for (VertexIndex v = 0; v < dom.num_vertices(); ++v) {
      if (map.vertices[v] >= cod.num_vertices()) {
        fail(ErrorCode::invalid_argument,
             "vertex " + dom.vertex_id(v) + " maps outside the codomain");
      }
    }
    for (EdgeIndex b = 0; b < dom.num_edges(); ++b) {
      if (map.edges[b] >= cod.num_edges()) {
        fail(ErrorCode::invalid_argument,
             "edge " + dom.edge(b).id + " maps outside the codomain");
      }
      Edge const& x = dom.edge(b);
      Edge const& y = cod.edge(map.edges[b]);
      if (x.color != y.color) {
        fail(ErrorCode::not_functorial,
             "edge " + x.id + " has " + color_name(x.color) + " but its image "
                 + y.id + " has " + color_name(y.color));
      }
      if (map.vertices[x.source] != y.source) {
        fail(ErrorCode::not_functorial,
             "source of " + x.id + " maps to " + cod.vertex_id(map.vertices[x.source])
                 + ", not to the source " + cod.vertex_id(y.source) + " of " + y.id);
      }
      if (map.vertices[x.range] != y.range) {
        fail(ErrorCode::not_functorial,
             "range of " + x.id + " maps to " + cod.vertex_id(map.vertices[x.range])
                 + ", not to the range " + cod.vertex_id(y.range) + " of " + y.id);
      }
    }
    for (VertexIndex v = 0; v < dom.num_vertices(); ++v) {
      check_local(dom, cod, map, v, true);
      check_local(dom, cod, map, v, false);
    }
    std::vector<std::vector<VertexIndex>> fibers(cod.num_vertices());
    for (VertexIndex v = 0; v < dom.num_vertices(); ++v) {
      fibers[map.vertices[v]].push_back(v);
    }
    for (VertexIndex x = 0; x < cod.num_vertices(); ++x) {
      if (fibers[x].empty()) {
        fail(ErrorCode::not_surjective,
             "vertex " + cod.vertex_id(x) + " has no preimage");
      }
    }
    std::vector<bool> hit(cod.num_edges(), false);
    for (auto a : map.edges) {
      hit[a] = true;
    }
    for (EdgeIndex a = 0; a < cod.num_edges(); ++a) {
      if (!hit[a]) {
        fail(ErrorCode::not_surjective, "edge " + cod.edge(a).id + " has no preimage");
      }
    }
    for (auto const& s : dom.squares()) {
      if (!maps_square_to_square(cod, map, s)) {
        fail(ErrorCode::square_broken,
             "square " + square_name(dom, s) + " does not map to a square");
      }
    }
    spot_check_degree_two(dom, cod, map);

    CoveringMap p;
    p._domain   = std::move(domain);
    p._codomain = std::move(codomain);
    p._map      = std::move(map);
    p._fibers   = std::move(fibers);
    return p;
  }

  EdgeIndex CoveringMap::lift(EdgeIndex a, VertexIndex v, Direction at) const {
    auto const candidates
        = at == Direction::source ? _domain->edges_out(v) : _domain->edges_in(v);
    for (EdgeIndex b : candidates) {
      if (_map.edges[b] == a) {
        return b;
      }
    }
    fail(ErrorCode::invalid_argument,
         "edge " + _codomain->edge(a).id + " has no lift at "
             + _domain->vertex_id(v));
  }

  ////////////////////////////////////////////////////////////////////////
  // GroupoidAction
  ////////////////////////////////////////////////////////////////////////

  GroupoidAction::GroupoidAction(std::shared_ptr<KGraph const>         base,
                                 std::vector<std::vector<std::string>> fibers,
                                 std::vector<std::vector<std::size_t>> perms)
      : _base(std::move(base)), _fibers(std::move(fibers)), _perms(std::move(perms)) {
    if (!_base) {
      fail(ErrorCode::invalid_argument, "null k-graph");
    }
    KGraph const& g = *_base;
    if (_fibers.size() != g.num_vertices() || _perms.size() != g.num_edges()) {
      fail(ErrorCode::invalid_argument,
           "action needs one fibre per vertex and one bijection per edge");
    }
    for (VertexIndex x = 0; x < g.num_vertices(); ++x) {
      std::set<std::string> labels(_fibers[x].begin(), _fibers[x].end());
      if (labels.size() != _fibers[x].size()) {
        fail(ErrorCode::invalid_argument,
             "fibre over " + g.vertex_id(x) + " repeats a label");
      }
    }
    _inverse.resize(g.num_edges());
    for (EdgeIndex a = 0; a < g.num_edges(); ++a) {
      Edge const& e = g.edge(a);
      std::size_t const n = _fibers[e.source].size();
      if (_perms[a].size() != n || _fibers[e.range].size() != n
          || !is_permutation_of_range(_perms[a])) {
        fail(ErrorCode::invalid_argument,
             "edge " + e.id + " does not act as a bijection between fibres");
      }
      _inverse[a].resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        _inverse[a][_perms[a][i]] = i;
      }
    }
    for (auto const& s : g.squares()) {
      for (std::size_t i = 0; i < _fibers[g.edge(s.f).source].size(); ++i) {
        if (act(s.e, act(s.f, i)) != act(s.g, act(s.h, i))) {
          fail(ErrorCode::square_broken,
               "square " + square_name(g, s) + " acts inconsistently on "
                   + _fibers[g.edge(s.f).source][i]);
        }
      }
    }
  }

  std::size_t GroupoidAction::act(GroupWord const& path, std::size_t i) const {
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      i = it->inverse ? act_inverse(it->generator, i) : act(it->generator, i);
    }
    return i;
  }

  GroupoidAction covering_to_action(CoveringMap const& p) {
    KGraph const& dom = p.domain();
    KGraph const& cod = p.codomain();
    std::vector<std::size_t>              position(dom.num_vertices());
    std::vector<std::vector<std::string>> fibers(cod.num_vertices());
    for (VertexIndex x = 0; x < cod.num_vertices(); ++x) {
      auto const& f = p.fiber(x);
      for (std::size_t i = 0; i < f.size(); ++i) {
        position[f[i]] = i;
        fibers[x].push_back(dom.vertex_id(f[i]));
      }
    }
    std::vector<std::vector<std::size_t>> perms(cod.num_edges());
    for (EdgeIndex a = 0; a < cod.num_edges(); ++a) {
      for (VertexIndex w : p.fiber(cod.edge(a).source)) {
        EdgeIndex const b = p.lift(a, w, Direction::source);
        perms[a].push_back(position[dom.edge(b).range]);
      }
    }
    return GroupoidAction(p.codomain_ptr(), std::move(fibers), std::move(perms));
  }

  CoveringMap action_to_covering(GroupoidAction const& a) {
    KGraph const& g = a.base();
    auto vertex_name = [&](VertexIndex x, std::size_t i) {
      return g.vertex_id(x) + "@" + a.fiber(x)[i];
    };
    Skeleton sk;
    sk.k = g.rank();
    for (VertexIndex x = 0; x < g.num_vertices(); ++x) {
      for (std::size_t i = 0; i < a.fiber(x).size(); ++i) {
        sk.vertices.push_back(vertex_name(x, i));
      }
    }
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      Edge const& edge = g.edge(e);
      for (std::size_t i = 0; i < a.fiber(edge.source).size(); ++i) {
        sk.edges.push_back(EdgeSpec{edge.id + "@" + a.fiber(edge.source)[i],
                                    edge.color,
                                    vertex_name(edge.source, i),
                                    vertex_name(edge.range, a.act(e, i))});
      }
    }
    SquareTable squares;
    for (auto const& s : g.squares()) {
      VertexIndex const y = g.edge(s.f).source;
      for (std::size_t i = 0; i < a.fiber(y).size(); ++i) {
        auto name = [&](EdgeIndex e, std::size_t j) {
          return g.edge(e).id + "@" + a.fiber(g.edge(e).source)[j];
        };
        squares.push_back(SquareSpec{name(s.e, a.act(s.f, i)),
                                     name(s.f, i),
                                     name(s.g, a.act(s.h, i)),
                                     name(s.h, i)});
      }
    }
    auto omega = std::make_shared<KGraph const>(KGraph::validate(sk, squares));
    GraphMap m;
    m.vertices.resize(omega->num_vertices());
    m.edges.resize(omega->num_edges());
    for (VertexIndex x = 0; x < g.num_vertices(); ++x) {
      for (std::size_t i = 0; i < a.fiber(x).size(); ++i) {
        m.vertices[omega->vertex_index(vertex_name(x, i))] = x;
      }
    }
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      Edge const& edge = g.edge(e);
      for (auto const& label : a.fiber(edge.source)) {
        m.edges[omega->edge_index(edge.id + "@" + label)] = e;
      }
    }
    return check_covering(std::move(omega), a.base_ptr(), std::move(m));
  }

  bool is_transitive(GroupoidAction const& a) {
    KGraph const& g = a.base();
    std::vector<std::size_t> offset(g.num_vertices() + 1, 0);
    for (VertexIndex x = 0; x < g.num_vertices(); ++x) {
      offset[x + 1] = offset[x] + a.fiber(x).size();
    }
    std::size_t const total = offset.back();
    if (total == 0) {
      return false;
    }
    std::vector<bool>                                  seen(total, false);
    std::vector<std::pair<VertexIndex, std::size_t>>   queue;
    for (VertexIndex x = 0; x < g.num_vertices(); ++x) {
      if (!a.fiber(x).empty()) {
        queue.emplace_back(x, 0);
        seen[offset[x]] = true;
        break;
      }
    }
    auto visit = [&](VertexIndex x, std::size_t i) {
      if (!seen[offset[x] + i]) {
        seen[offset[x] + i] = true;
        queue.emplace_back(x, i);
      }
    };
    for (std::size_t q = 0; q < queue.size(); ++q) {
      auto const [y, i] = queue[q];
      for (EdgeIndex e : g.edges_out(y)) {
        visit(g.edge(e).range, a.act(e, i));
      }
      for (EdgeIndex e : g.edges_in(y)) {
        visit(g.edge(e).source, a.act_inverse(e, i));
      }
    }
    return queue.size() == total;
  }

  ////////////////////////////////////////////////////////////////////////
  // Stabilisers
  ////////////////////////////////////////////////////////////////////////

  Stabilizer stabilizer_subgroup(CoveringMap const& p, VertexIndex v) {
    if (v >= p.domain().num_vertices()) {
      fail(ErrorCode::invalid_argument, "vertex out of range");
    }
    if (!p.domain().is_connected()) {
      fail(ErrorCode::not_connected, "the covering space is disconnected");
    }
    KGraph const&     g = p.codomain();
    VertexIndex const x = p.vertex_image(v);
    Stabilizer        st{fundamental_group(g, x), {}, {}};
    GroupoidAction const action = covering_to_action(p);
    auto const&          fiber  = p.fiber(x);
    std::size_t const    n      = fiber.size();
    std::size_t const    ngens  = st.pi.presentation.num_generators();
    // pi acts on the left of the fibre; the table records the right action
    // u.s = s^-1 u, whose stabilisers are the same.
    std::vector<std::size_t> entries(n * 2 * ngens);
    for (std::size_t j = 0; j < ngens; ++j) {
      EdgeIndex const a    = st.pi.generator_edges[j];
      Edge const&     e    = g.edge(a);
      GroupWord const loop = multiply(
          multiply(inverse(st.pi.tree.paths[e.range]), GroupWord{Letter{a}}),
          st.pi.tree.paths[e.source]);
      for (std::size_t u = 0; u < n; ++u) {
        std::size_t const su                 = action.act(loop, u);
        entries[su * 2 * ngens + 2 * j]      = u;
        entries[u * 2 * ngens + 2 * j + 1]   = su;
      }
    }
    CosetTable const  fiber_table(ngens, n, std::move(entries));
    std::size_t const start
        = static_cast<std::size_t>(std::find(fiber.begin(), fiber.end(), v) - fiber.begin());
    CosetTable table = fiber_table.rebased(start);
    if (table.size() != n) {
      fail(ErrorCode::internal_error,
           "fundamental group does not act transitively on the fibre");
    }
    for (auto const& w : table.transversal()) {
      st.fiber_of_coset.push_back(fiber[fiber_table.act(start, w)]);
    }
    st.subgroup.ambient    = st.pi.presentation;
    st.subgroup.generators = table.subgroup_generators();
    st.subgroup.table      = std::move(table);
    return st;
  }

  ////////////////////////////////////////////////////////////////////////
  // Morphisms of coverings
  ////////////////////////////////////////////////////////////////////////

  std::optional<GraphMap> covering_morphism(CoveringMap const& p,
                                            CoveringMap const& q,
                                            VertexIndex        v,
                                            VertexIndex        u) {
    if (!same_graph(p.codomain(), q.codomain())) {
      fail(ErrorCode::invalid_argument, "coverings have different bases");
    }
    if (v >= p.domain().num_vertices() || u >= q.domain().num_vertices()) {
      fail(ErrorCode::invalid_argument, "vertex out of range");
    }
    if (p.vertex_image(v) != q.vertex_image(u)) {
      fail(ErrorCode::basepoint_mismatch,
           p.domain().vertex_id(v) + " lies over "
               + p.codomain().vertex_id(p.vertex_image(v)) + " but "
               + q.domain().vertex_id(u) + " lies over "
               + q.codomain().vertex_id(q.vertex_image(u)));
    }
    KGraph const& dom = p.domain();
    if (!dom.is_connected()) {
      fail(ErrorCode::not_connected, "the covering space is disconnected");
    }
    GraphMap f;
    f.vertices.assign(dom.num_vertices(), unset);
    f.edges.assign(dom.num_edges(), unset);
    f.vertices[v] = u;
    std::vector<VertexIndex> queue{v};
    auto assign = [&](std::vector<std::size_t>& image, std::size_t i, std::size_t to) {
      if (image[i] == unset) {
        image[i] = to;
        return true;
      }
      return image[i] == to;
    };
    for (std::size_t i = 0; i < queue.size(); ++i) {
      VertexIndex const w = queue[i];
      for (Direction dir : {Direction::source, Direction::range}) {
        auto const edges = dir == Direction::source ? dom.edges_out(w) : dom.edges_in(w);
        for (EdgeIndex b : edges) {
          EdgeIndex const b2 = q.lift(p.edge_image(b), f.vertices[w], dir);
          if (!assign(f.edges, b, b2)) {
            return std::nullopt;
          }
          VertexIndex const next
              = dir == Direction::source ? dom.edge(b).range : dom.edge(b).source;
          VertexIndex const image = dir == Direction::source
                                        ? q.domain().edge(b2).range
                                        : q.domain().edge(b2).source;
          bool const fresh = f.vertices[next] == unset;
          if (!assign(f.vertices, next, image)) {
            return std::nullopt;
          }
          if (fresh) {
            queue.push_back(next);
          }
        }
      }
    }
    return f;
  }

  std::optional<GraphMap> are_isomorphic_coverings(CoveringMap const& p,
                                                    CoveringMap const& q) {
    if (!same_graph(p.codomain(), q.codomain())) {
      fail(ErrorCode::invalid_argument, "coverings have different bases");
    }
    if (p.domain().num_vertices() != q.domain().num_vertices()
        || p.domain().num_edges() != q.domain().num_edges()
        || p.domain().num_vertices() == 0) {
      return std::nullopt;
    }
    for (VertexIndex u : q.fiber(p.vertex_image(0))) {
      auto f = covering_morphism(p, q, 0, u);
      if (f && is_bijective(*f)) {
        return f;
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Automorphism groups, deck groups, quotients
  ////////////////////////////////////////////////////////////////////////

  AutomorphismGroup close_group(KGraph const& g, std::vector<GraphMap> maps) {
    GraphMap const id = identity_map(g);
    if (maps.empty() || maps[0] != id) {
      if (std::find(maps.begin(), maps.end(), id) == maps.end()) {
        fail(ErrorCode::not_closed, "the identity is missing");
      }
      fail(ErrorCode::invalid_argument, "the identity must come first");
    }
    std::map<GraphMap, std::size_t> index;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      GraphMap const& m = maps[i];
      std::string const name = "map " + std::to_string(i);
      if (m.vertices.size() != g.num_vertices() || m.edges.size() != g.num_edges()
          || !is_bijective(m)) {
        fail(ErrorCode::invalid_argument, name + " is not a bijection");
      }
      for (EdgeIndex b = 0; b < g.num_edges(); ++b) {
        Edge const& x = g.edge(b);
        Edge const& y = g.edge(m.edges[b]);
        if (x.color != y.color || m.vertices[x.source] != y.source
            || m.vertices[x.range] != y.range) {
          fail(ErrorCode::invalid_argument,
               name + " does not preserve edge " + x.id);
        }
      }
      for (auto const& s : g.squares()) {
        if (!maps_square_to_square(g, m, s)) {
          fail(ErrorCode::invalid_argument,
               name + " does not preserve square " + square_name(g, s));
        }
      }
      if (!index.emplace(m, i).second) {
        fail(ErrorCode::invalid_argument,
             name + " repeats map " + std::to_string(index[m]));
      }
    }
    AutomorphismGroup G;
    G.product.assign(maps.size(), std::vector<std::size_t>(maps.size()));
    for (std::size_t a = 0; a < maps.size(); ++a) {
      for (std::size_t b = 0; b < maps.size(); ++b) {
        auto it = index.find(compose(maps[b], maps[a]));
        if (it == index.end()) {
          fail(ErrorCode::not_closed,
               "product of maps " + std::to_string(a) + " and "
                   + std::to_string(b) + " is not in the list");
        }
        G.product[a][b] = it->second;
      }
    }
    G.maps = std::move(maps);
    return G;
  }

  DeckGroup deck_group(CoveringMap const& p) {
    if (p.domain().num_vertices() == 0) {
      fail(ErrorCode::not_connected, "the covering space is empty");
    }
    std::vector<GraphMap> maps;
    for (VertexIndex u : p.fiber(p.vertex_image(0))) {
      auto f = covering_morphism(p, p, 0, u);
      if (f && is_bijective(*f)) {
        maps.push_back(std::move(*f));
      }
    }
    DeckGroup d;
    d.group      = close_group(p.domain(), std::move(maps));
    d.transitive = d.group.order() == p.sheets();
    return d;
  }

  QuotientResult quotient(std::shared_ptr<KGraph const> omega,
                          AutomorphismGroup const&      group) {
    KGraph const& g = *omega;
    AutomorphismGroup const checked = close_group(g, group.maps);
    for (std::size_t i = 1; i < checked.order(); ++i) {
      for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
        if (checked.maps[i].vertices[v] == v) {
          fail(ErrorCode::not_free,
               "map " + std::to_string(i) + " fixes vertex " + g.vertex_id(v));
        }
      }
    }
    std::vector<VertexIndex> vrep(g.num_vertices());
    std::vector<EdgeIndex>   erep(g.num_edges());
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
      vrep[v] = v;
      for (auto const& m : checked.maps) {
        vrep[v] = std::min(vrep[v], m.vertices[v]);
      }
    }
    for (EdgeIndex b = 0; b < g.num_edges(); ++b) {
      erep[b] = b;
      for (auto const& m : checked.maps) {
        erep[b] = std::min(erep[b], m.edges[b]);
      }
    }
    Skeleton sk;
    sk.k = g.rank();
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
      if (vrep[v] == v) {
        sk.vertices.push_back(g.vertex_id(v));
      }
    }
    for (EdgeIndex b = 0; b < g.num_edges(); ++b) {
      if (erep[b] == b) {
        Edge const& e = g.edge(b);
        sk.edges.push_back(EdgeSpec{
            e.id, e.color, g.vertex_id(vrep[e.source]), g.vertex_id(vrep[e.range])});
      }
    }
    std::set<SquareSpec> squares;
    for (auto const& s : g.squares()) {
      squares.insert(SquareSpec{g.edge(erep[s.e]).id,
                                g.edge(erep[s.f]).id,
                                g.edge(erep[s.g]).id,
                                g.edge(erep[s.h]).id});
    }
    auto q = std::make_shared<KGraph const>(
        KGraph::validate(sk, SquareTable(squares.begin(), squares.end())));
    GraphMap m;
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
      m.vertices.push_back(q->vertex_index(g.vertex_id(vrep[v])));
    }
    for (EdgeIndex b = 0; b < g.num_edges(); ++b) {
      m.edges.push_back(q->edge_index(g.edge(erep[b]).id));
    }
    CoveringMap orbit = check_covering(omega, q, std::move(m));
    return QuotientResult{std::move(q), std::move(orbit), std::nullopt};
  }

  QuotientResult quotient(CoveringMap const& p, AutomorphismGroup const& group) {
    for (std::size_t i = 0; i < group.maps.size(); ++i) {
      GraphMap const& m = group.maps[i];
      if (m.vertices.size() != p.domain().num_vertices()
          || m.edges.size() != p.domain().num_edges()) {
        fail(ErrorCode::invalid_argument,
             "map " + std::to_string(i) + " is not total on the domain");
      }
      if (compose(p.map(), m) != p.map()) {
        fail(ErrorCode::invalid_argument,
             "map " + std::to_string(i) + " does not commute with the covering");
      }
    }
    QuotientResult r = quotient(p.domain_ptr(), group);
    KGraph const&  q = *r.quotient;
    GraphMap       induced;
    for (VertexIndex v = 0; v < q.num_vertices(); ++v) {
      induced.vertices.push_back(
          p.vertex_image(p.domain().vertex_index(q.vertex_id(v))));
    }
    for (EdgeIndex b = 0; b < q.num_edges(); ++b) {
      induced.edges.push_back(p.edge_image(p.domain().edge_index(q.edge(b).id)));
    }
    r.induced = check_covering(r.quotient, p.codomain_ptr(), std::move(induced));
    return r;
  }

}  // namespace kcover
