#include "kcover/skew.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "kcover/error.hpp"

namespace kcover {

  namespace {
    std::string square_name(KGraph const& g, Square const& s) {
      return "(" + g.edge(s.e).id + "," + g.edge(s.f).id + ","
             + g.edge(s.g).id + "," + g.edge(s.h).id + ")";
    }

    // The action with n-point fibres labelled 0..n-1 and edge permutations
    // perms, after checking that squares act consistently.
    GroupoidAction make_action(std::shared_ptr<KGraph const>         g,
                               std::size_t                           n,
                               std::vector<std::vector<std::size_t>> perms) {
      for (auto const& s : g->squares()) {
        for (std::size_t i = 0; i < n; ++i) {
          if (perms[s.e][perms[s.f][i]] != perms[s.g][perms[s.h][i]]) {
            fail(ErrorCode::cocycle_invalid,
                 "square " + square_name(*g, s) + " is not respected on sheet "
                     + std::to_string(i));
          }
        }
      }
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
      }
      std::vector<std::vector<std::string>> fibers(g->num_vertices(), labels);
      return GroupoidAction(std::move(g), std::move(fibers), std::move(perms));
    }

    // Right translation of the fibre labels by each group element, where
    // translate(i, h) is the label of (label i) h.
    template <typename Translate>
    AutomorphismGroup right_action(KGraph const&      base,
                                   CoveringMap const& p,
                                   std::size_t        order,
                                   Translate&&        translate) {
      KGraph const&         omega = p.domain();
      std::vector<GraphMap> maps;
      for (std::size_t h = 0; h < order; ++h) {
        GraphMap m;
        for (VertexIndex v = 0; v < omega.num_vertices(); ++v) {
          VertexIndex const x = p.vertex_image(v);
          std::size_t const i = std::stoul(omega.vertex_id(v).substr(
              base.vertex_id(x).size() + 1));
          m.vertices.push_back(omega.vertex_index(
              base.vertex_id(x) + "@" + std::to_string(translate(i, h))));
        }
        for (EdgeIndex b = 0; b < omega.num_edges(); ++b) {
          EdgeIndex const   a = p.edge_image(b);
          std::size_t const i = std::stoul(
              omega.edge(b).id.substr(base.edge(a).id.size() + 1));
          m.edges.push_back(omega.edge_index(
              base.edge(a).id + "@" + std::to_string(translate(i, h))));
        }
        maps.push_back(std::move(m));
      }
      return close_group(omega, std::move(maps));
    }
  }  // namespace

  SkewProductResult skew_product(std::shared_ptr<KGraph const> g,
                                 Cocycle const&                c,
                                 FiniteGroupRealization const& r) {
    c.check_functorial(r);
    std::size_t const                     n = r.order();
    std::vector<std::vector<std::size_t>> perms(g->num_edges());
    for (EdgeIndex a = 0; a < g->num_edges(); ++a) {
      for (GroupElement k = 0; k < n; ++k) {
        perms[a].push_back(r.left_multiply(c.value(a), k));
      }
    }
    CoveringMap p = action_to_covering(make_action(g, n, std::move(perms)));
    AutomorphismGroup action = right_action(
        *g, p, n, [&](std::size_t k, std::size_t h) { return r.multiply(k, h); });
    for (GroupElement a = 0; a < n; ++a) {
      for (GroupElement b = 0; b < n; ++b) {
        if (action.product[a][b] != r.multiply(a, b)) {
          fail(ErrorCode::internal_error,
               "right translation does not follow the group law");
        }
      }
    }
    auto product = p.domain_ptr();
    return SkewProductResult{
        std::move(product), std::move(p), r.table(), std::move(action), r};
  }

  SkewProductResult relative_skew_product(std::shared_ptr<KGraph const> g,
                                          Cocycle const&                c,
                                          SubgroupData const&           h,
                                          std::size_t                   max_cosets) {
    GroupPresentation const& G = c.target();
    if (!(h.ambient == G)) {
      fail(ErrorCode::target_mismatch,
           "subgroup lives in a different group than the cocycle target");
    }
    CosetTable table;
    if (h.table) {
      if (!h.table->is_consistent_with(G, h.generators)) {
        fail(ErrorCode::invalid_argument,
             "subgroup table is not a complete coset table of the generators");
      }
      table = h.table->standardized();
    } else {
      table = todd_coxeter(G, h.generators, max_cosets);
    }
    std::size_t const                     n = table.size();
    std::vector<std::vector<std::size_t>> perms(g->num_edges());
    for (EdgeIndex a = 0; a < g->num_edges(); ++a) {
      // Left multiplication of k H by eta(a) is right multiplication of the
      // right coset H k^-1 by eta(a)^-1.
      GroupWord const w = inverse(c.value(a));
      for (std::size_t i = 0; i < n; ++i) {
        perms[a].push_back(table.act(i, w));
      }
    }
    CoveringMap p = action_to_covering(make_action(g, n, std::move(perms)));
    auto        product = p.domain_ptr();
    SkewProductResult result{std::move(product), std::move(p), table, {}, {}};
    if (is_normal_subgroup(table)) {
      FiniteGroupRealization q(G, table);
      // Coset i is the element w_i^-1 of G/H; (w_i^-1) h = (h^-1 w_i)^-1.
      result.action = right_action(
          *g, result.covering, n, [&](std::size_t i, std::size_t x) {
            return q.multiply(q.inverse(x), i);
          });
      result.group = std::move(q);
    }
    return result;
  }

  SkewProductResult universal_cover(std::shared_ptr<KGraph const> g,
                                    VertexIndex                   x,
                                    std::size_t                   max_cosets) {
    Cocycle const eta = canonical_cocycle(g, x);
    SubgroupData  trivial{eta.target(), {}, std::nullopt};
    SkewProductResult u = relative_skew_product(g, eta, trivial, max_cosets);
    // Stabilisers are trivial iff every Schreier generator is the identity
    // of pi at its base vertex.
    std::map<VertexIndex, FiniteGroupRealization> pi;
    for (VertexIndex v = 0; v < u.product->num_vertices(); ++v) {
      Stabilizer const  st = stabilizer_subgroup(u.covering, v);
      VertexIndex const y  = u.covering.vertex_image(v);
      auto it = pi.find(y);
      if (it == pi.end()) {
        it = pi.emplace(y, FiniteGroupRealization(st.pi.presentation, max_cosets))
                 .first;
      }
      for (auto const& w : st.subgroup.generators) {
        if (it->second.element(w) != 0) {
          fail(ErrorCode::internal_error,
               "stabiliser of " + u.product->vertex_id(v) + " is not trivial");
        }
      }
    }
    return u;
  }

  GroupPresentation cayley_presentation(AutomorphismGroup const& group) {
    std::size_t const        n = group.order();
    std::vector<std::size_t> gens;
    std::vector<bool>        reached(n, false);
    reached[0] = true;
    // Grow a generating set greedily, closing under right multiplication.
    for (std::size_t g = 1; g < n; ++g) {
      if (reached[g]) {
        continue;
      }
      gens.push_back(g);
      std::vector<std::size_t> queue;
      for (std::size_t i = 0; i < n; ++i) {
        if (reached[i]) {
          queue.push_back(i);
        }
      }
      for (std::size_t q = 0; q < queue.size(); ++q) {
        for (auto s : gens) {
          std::size_t const t = group.product[queue[q]][s];
          if (!reached[t]) {
            reached[t] = true;
            queue.push_back(t);
          }
        }
      }
    }
    GroupPresentation p;
    for (auto s : gens) {
      p.generators.push_back("g" + std::to_string(s));
    }
    std::vector<GroupWord> word(n);
    std::vector<bool>      seen(n, false);
    std::vector<std::size_t> queue{0};
    seen[0] = true;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (std::size_t j = 0; j < gens.size(); ++j) {
        std::size_t const t = group.product[queue[q]][gens[j]];
        if (!seen[t]) {
          seen[t] = true;
          word[t] = multiply(word[queue[q]], generator_word(j));
          queue.push_back(t);
        }
      }
    }
    std::set<GroupWord> relators;
    for (std::size_t e = 0; e < n; ++e) {
      for (std::size_t j = 0; j < gens.size(); ++j) {
        GroupWord r = multiply(multiply(word[e], generator_word(j)),
                               inverse(word[group.product[e][gens[j]]]));
        if (!r.empty()) {
          relators.insert(std::move(r));
        }
      }
    }
    p.relators.assign(relators.begin(), relators.end());
    return p;
  }

  GrossTuckerResult gross_tucker(std::shared_ptr<KGraph const>        sigma,
                                 AutomorphismGroup const&             group,
                                 std::optional<FiniteGroupRealization> r,
                                 std::size_t                          max_cosets) {
    QuotientResult    q = quotient(sigma, group);
    std::size_t const n = group.order();
    AutomorphismGroup const checked = close_group(*sigma, group.maps);

    std::vector<GroupElement> element_of_map(n);
    if (r) {
      if (r->order() != n) {
        fail(ErrorCode::invalid_argument,
             "realisation has order " + std::to_string(r->order())
                 + " but the group has " + std::to_string(n) + " elements");
      }
      for (std::size_t i = 0; i < n; ++i) {
        element_of_map[i] = i;
        for (std::size_t j = 0; j < n; ++j) {
          if (checked.product[i][j] != r->multiply(i, j)) {
            fail(ErrorCode::invalid_argument,
                 "the automorphisms do not multiply like the realisation");
          }
        }
      }
    } else {
      r.emplace(cayley_presentation(checked), max_cosets);
      if (r->order() != n) {
        fail(ErrorCode::internal_error, "Cayley presentation has the wrong order");
      }
      // Read each map as a word in the generators g<i>.
      std::vector<std::size_t> gens;
      for (auto const& name : r->presentation().generators) {
        gens.push_back(std::stoul(name.substr(1)));
      }
      // Walk the Cayley graph of the maps, multiplying in the realisation.
      std::vector<bool>        seen(n, false);
      std::vector<std::size_t> queue{0};
      seen[0]           = true;
      element_of_map[0] = r->identity();
      for (std::size_t k = 0; k < queue.size(); ++k) {
        for (std::size_t j = 0; j < gens.size(); ++j) {
          std::size_t const t = checked.product[queue[k]][gens[j]];
          if (!seen[t]) {
            seen[t]           = true;
            element_of_map[t] = r->multiply(element_of_map[queue[k]],
                                            r->element(generator_word(j)));
            queue.push_back(t);
          }
        }
      }
      std::set<GroupElement> distinct(element_of_map.begin(), element_of_map.end());
      if (queue.size() != n || distinct.size() != n) {
        fail(ErrorCode::internal_error, "group elements collide");
      }
    }
    std::vector<std::size_t> map_of_element(n);
    for (std::size_t i = 0; i < n; ++i) {
      map_of_element[element_of_map[i]] = i;
    }

    KGraph const& lambda = *q.quotient;
    // Cross-section: each quotient vertex is named after its least preimage.
    std::vector<VertexIndex> section;
    for (VertexIndex x = 0; x < lambda.num_vertices(); ++x) {
      section.push_back(sigma->vertex_index(lambda.vertex_id(x)));
    }
    std::vector<EdgeIndex> lifted;
    std::vector<GroupWord> values;
    for (EdgeIndex a = 0; a < lambda.num_edges(); ++a) {
      Edge const&       e = lambda.edge(a);
      EdgeIndex const   b = q.orbit_map.lift(a, section[e.source], Direction::source);
      VertexIndex const target = sigma->edge(b).range;
      // v_x eta(a) = a v_y
      std::size_t m = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (checked.maps[i].vertices[section[e.range]] == target) {
          m = i;
          break;
        }
      }
      if (m == n) {
        fail(ErrorCode::internal_error, "edge lift leaves its orbit");
      }
      lifted.push_back(b);
      values.push_back(r->word(element_of_map[m]));
    }
    Cocycle eta = Cocycle::from_words(q.quotient, r->presentation(), values);
    SkewProductResult skew = skew_product(q.quotient, eta, *r);

    // (x, g) goes to v_x g, and (a, g) to the lift of a at v_{s(a)} moved by g.
    KGraph const& omega = *skew.product;
    GraphMap      iso;
    for (VertexIndex v = 0; v < omega.num_vertices(); ++v) {
      VertexIndex const  x = skew.covering.vertex_image(v);
      GroupElement const g = std::stoul(
          omega.vertex_id(v).substr(lambda.vertex_id(x).size() + 1));
      iso.vertices.push_back(checked.maps[map_of_element[g]].vertices[section[x]]);
    }
    for (EdgeIndex b = 0; b < omega.num_edges(); ++b) {
      EdgeIndex const    a = skew.covering.edge_image(b);
      GroupElement const g = std::stoul(
          omega.edge(b).id.substr(lambda.edge(a).id.size() + 1));
      iso.edges.push_back(checked.maps[map_of_element[g]].edges[lifted[a]]);
    }
    if (!is_bijective(iso) || compose(q.orbit_map.map(), iso) != skew.covering.map()) {
      fail(ErrorCode::internal_error, "skew product does not match the quotient");
    }
    for (EdgeIndex b = 0; b < omega.num_edges(); ++b) {
      Edge const& x = omega.edge(b);
      Edge const& y = sigma->edge(iso.edges[b]);
      if (iso.vertices[x.source] != y.source || iso.vertices[x.range] != y.range) {
        fail(ErrorCode::internal_error,
             "edge " + x.id + " is not carried to a matching edge");
      }
    }
    FiniteGroupRealization realization = *r;
    return GrossTuckerResult{std::move(q),
                             std::move(realization),
                             std::move(element_of_map),
                             std::move(eta),
                             std::move(skew),
                             std::move(iso)};
  }

  KTreeAnswer is_ktree(KGraph const& g, std::size_t max_cosets) {
    if (g.num_vertices() == 0 || !g.is_connected()) {
      fail(ErrorCode::not_connected, "a k-tree must be connected");
    }
    FundamentalGroup const fg = fundamental_group(g, 0);
    if (!abelian_invariants(fg.presentation).empty()) {
      return KTreeAnswer::no;
    }
    try {
      return todd_coxeter(fg.presentation, {}, max_cosets).size() == 1
                 ? KTreeAnswer::yes
                 : KTreeAnswer::no;
    } catch (Error const& e) {
      if (e.code() != ErrorCode::coset_overflow) {
        throw;
      }
      return KTreeAnswer::unknown;
    }
  }

  Cocycle degree_cocycle(std::shared_ptr<KGraph const>            g,
                         std::optional<std::vector<std::int64_t>> moduli) {
    std::size_t const k = g->rank();
    AbelianTarget     target{moduli ? *moduli : std::vector<std::int64_t>(k, 0)};
    if (target.moduli.size() != k) {
      fail(ErrorCode::invalid_argument,
           "need " + std::to_string(k) + " moduli, got "
               + std::to_string(target.moduli.size()));
    }
    std::vector<ZVector> values;
    for (EdgeIndex a = 0; a < g->num_edges(); ++a) {
      ZVector v(k, 0);
      v[g->edge(a).color - 1] = 1;
      values.push_back(std::move(v));
    }
    return Cocycle::from_vectors(std::move(g), std::move(target), std::move(values));
  }

}  // namespace kcover
