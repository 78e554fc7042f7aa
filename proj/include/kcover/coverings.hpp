// Covering maps of k-graphs, groupoid actions on fibres, stabilisers, deck
// groups and quotients by free actions.

#ifndef KCOVER_COVERINGS_HPP_
#define KCOVER_COVERINGS_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kcover/coset_table.hpp"
#include "kcover/fundamental.hpp"
#include "kcover/kgraph.hpp"
#include "kcover/words.hpp"

namespace kcover {

  // A map of skeletons given by vertex and edge images.
  struct GraphMap {
    std::vector<VertexIndex> vertices;
    std::vector<EdgeIndex>   edges;

    friend auto operator<=>(GraphMap const&, GraphMap const&) = default;
  };

  GraphMap identity_map(KGraph const& g);
  // (a * b)(x) = a(b(x)).
  GraphMap compose(GraphMap const& a, GraphMap const& b);
  bool     is_bijective(GraphMap const& m);
  GraphMap inverse(GraphMap const& m);

  class CoveringMap {
   public:
    std::shared_ptr<KGraph const> const& domain_ptr() const noexcept {
      return _domain;
    }
    std::shared_ptr<KGraph const> const& codomain_ptr() const noexcept {
      return _codomain;
    }
    KGraph const& domain() const noexcept {
      return *_domain;
    }
    KGraph const& codomain() const noexcept {
      return *_codomain;
    }
    GraphMap const& map() const noexcept {
      return _map;
    }
    VertexIndex vertex_image(VertexIndex v) const {
      return _map.vertices.at(v);
    }
    EdgeIndex edge_image(EdgeIndex e) const {
      return _map.edges.at(e);
    }
    // Domain vertices over x, ascending.
    std::vector<VertexIndex> const& fiber(VertexIndex x) const {
      return _fibers.at(x);
    }
    std::size_t sheets() const {
      return _fibers.empty() ? 0 : _fibers[0].size();
    }
    // The unique edge over a whose source (resp. range) is v.
    EdgeIndex lift(EdgeIndex a, VertexIndex v, Direction at) const;

   private:
    friend CoveringMap check_covering(std::shared_ptr<KGraph const>,
                                      std::shared_ptr<KGraph const>,
                                      GraphMap);

    std::shared_ptr<KGraph const>         _domain;
    std::shared_ptr<KGraph const>         _codomain;
    GraphMap                              _map;
    std::vector<std::vector<VertexIndex>> _fibers;
  };

  // Throws NotFunctorial, NotLocallyInjective, NotLocallySurjective,
  // NotSurjective or SquareBroken.
  CoveringMap check_covering(std::shared_ptr<KGraph const> domain,
                             std::shared_ptr<KGraph const> codomain,
                             GraphMap                      map);

  // Left action of the skeleton on fibres: edge a sends the fibre over s(a)
  // bijectively onto the fibre over r(a).
  class GroupoidAction {
   public:
    // perms[a][i] is the index in fibers[r(a)] of a acting on fibers[s(a)][i].
    // Throws InvalidArgument for non-bijections and SquareBroken when a
    // square of the base acts inconsistently.
    GroupoidAction(std::shared_ptr<KGraph const>         base,
                   std::vector<std::vector<std::string>> fibers,
                   std::vector<std::vector<std::size_t>> perms);

    KGraph const& base() const noexcept {
      return *_base;
    }
    std::shared_ptr<KGraph const> const& base_ptr() const noexcept {
      return _base;
    }
    std::vector<std::string> const& fiber(VertexIndex x) const {
      return _fibers.at(x);
    }
    std::vector<std::size_t> const& permutation(EdgeIndex a) const {
      return _perms.at(a);
    }
    std::size_t act(EdgeIndex a, std::size_t i) const {
      return _perms.at(a).at(i);
    }
    std::size_t act_inverse(EdgeIndex a, std::size_t i) const {
      return _inverse.at(a).at(i);
    }
    // Path words over edge indices act right to left (the last letter first).
    std::size_t act(GroupWord const& path, std::size_t i) const;

   private:
    std::shared_ptr<KGraph const>         _base;
    std::vector<std::vector<std::string>> _fibers;
    std::vector<std::vector<std::size_t>> _perms;
    std::vector<std::vector<std::size_t>> _inverse;
  };

  GroupoidAction covering_to_action(CoveringMap const& p);
  // Vertices of the domain are "x@v" and edges "a@v" for v in the fibre over
  // the source.
  CoveringMap action_to_covering(GroupoidAction const& a);
  bool        is_transitive(GroupoidAction const& a);

  struct SubgroupData {
    GroupPresentation         ambient;
    std::vector<GroupWord>    generators;
    std::optional<CosetTable> table;
  };

  struct Stabilizer {
    FundamentalGroup pi;
    // Generators are Schreier words; the table is the right action of pi
    // on the fibre, standardised so that row 0 is the chosen vertex.
    SubgroupData subgroup;
    // fiber_of_coset[i] is the domain vertex matching coset i.
    std::vector<VertexIndex> fiber_of_coset;
  };

  // Throws NotConnected when the domain is disconnected.
  Stabilizer stabilizer_subgroup(CoveringMap const& p, VertexIndex v);

  // The covering morphism f with f(v) = u and q f = p, if any.  Throws
  // BasepointMismatch when p(v) != q(u) and NotConnected when the domain of
  // p is disconnected.
  std::optional<GraphMap> covering_morphism(CoveringMap const& p,
                                            CoveringMap const& q,
                                            VertexIndex        v,
                                            VertexIndex        u);

  std::optional<GraphMap> are_isomorphic_coverings(CoveringMap const& p,
                                                    CoveringMap const& q);

  // Automorphisms acting on the right: (v.g).h = v.(g h), so the map of
  // g h is maps[h] * maps[g].  Element 0 is the identity.
  struct AutomorphismGroup {
    std::vector<GraphMap>                 maps;
    std::vector<std::vector<std::size_t>> product;

    std::size_t order() const noexcept {
      return maps.size();
    }
  };

  // Checks that the maps are distinct automorphisms of g, closed under
  // composition with the identity first, and fills the product table.
  // Throws NotClosed or InvalidArgument.
  AutomorphismGroup close_group(KGraph const& g, std::vector<GraphMap> maps);

  struct DeckGroup {
    AutomorphismGroup group;
    bool              transitive = false;  // on every fibre
  };

  DeckGroup deck_group(CoveringMap const& p);

  struct QuotientResult {
    std::shared_ptr<KGraph const> quotient;
    CoveringMap                   orbit_map;
    std::optional<CoveringMap>    induced;  // Omega/G -> Lambda
  };

  // Orbits are named after their least element.  Throws NotFree.
  QuotientResult quotient(std::shared_ptr<KGraph const> omega,
                          AutomorphismGroup const&      group);
  // Also produces the induced covering of the base of p; the group must
  // commute with p.
  QuotientResult quotient(CoveringMap const& p, AutomorphismGroup const& group);

}  // namespace kcover

#endif  // KCOVER_COVERINGS_HPP_
