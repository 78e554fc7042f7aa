#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "support.hpp"

#include "kcover/coverings.hpp"
#include "kcover/io.hpp"

using namespace kcover;
using kcover::test::error_of;
using kcover::test::fixture;
using kcover::test::graph;
using kcover::test::load;

namespace {

  // Fibre labels "0".."n-1" over every vertex.
  std::vector<std::vector<std::string>> labels(KGraph const& g, std::size_t n) {
    std::vector<std::string> one;
    for (std::size_t i = 0; i < n; ++i) {
      one.push_back(std::to_string(i));
    }
    return std::vector<std::vector<std::string>>(g.num_vertices(), one);
  }

  // The n-cycle covering L1 built from the rotation action.
  CoveringMap cycle_over_l1(std::size_t n) {
    auto                     l1 = load("l1.kg");
    std::vector<std::size_t> rot(n);
    for (std::size_t i = 0; i < n; ++i) {
      rot[i] = (i + 1) % n;
    }
    return action_to_covering(GroupoidAction(l1, labels(*l1, n), {rot}));
  }

  std::string const kBouquet = "kgraph 1\nvertex v\nedge a 1 v v\nedge b 1 v v\n";

  // Three sheets over a bouquet of two loops, a = (0 1), b = (1 2): the
  // monodromy group is S3 and the point stabiliser is not normal.
  CoveringMap non_normal_cover() {
    auto b = graph(kBouquet);
    return action_to_covering(GroupoidAction(b, labels(*b, 3), {{1, 0, 2}, {0, 2, 1}}));
  }

  // Checks that `m` is a covering isomorphism from p's domain to q's domain
  // over the common base.
  void check_covering_iso(CoveringMap const& p, CoveringMap const& q, GraphMap const& m) {
    CHECK(is_bijective(m));
    for (VertexIndex v = 0; v < p.domain().num_vertices(); ++v) {
      CHECK(q.vertex_image(m.vertices[v]) == p.vertex_image(v));
    }
    for (EdgeIndex e = 0; e < p.domain().num_edges(); ++e) {
      CHECK(q.edge_image(m.edges[e]) == p.edge_image(e));
      auto const& de = p.domain().edge(e);
      auto const& ce = q.domain().edge(m.edges[e]);
      CHECK(ce.source == m.vertices[de.source]);
      CHECK(ce.range == m.vertices[de.range]);
    }
  }

}  // namespace

TEST_CASE("cover fixtures are coverings") {
  for (std::size_t n : {2, 3, 4}) {
    auto p = load_cover(fixture("cycle" + std::to_string(n) + "_l1.cv"));
    CHECK(p.sheets() == n);
    CHECK(p.domain().is_connected());
    auto lifted = p.lift(0, p.fiber(0)[0], Direction::source);
    CHECK(p.edge_image(lifted) == 0);
    CHECK(p.domain().edge(lifted).source == p.fiber(0)[0]);
  }
}

TEST_CASE("covering conditions are enforced") {
  auto l1 = load("l1.kg");
  auto p2 = load("p2.kg");

  SUBCASE("vertex and edge maps disagree") {
    // u -> v in P2; sending u to v and v to u reverses the edge
    auto q = graph("kgraph 1\nvertex u\nvertex v\nedge a 1 u v\n");
    CHECK(error_of([&] { check_covering(q, p2, GraphMap{{1, 0}, {0}}); })
          == ErrorCode::not_functorial);
  }
  SUBCASE("two lifts at one vertex") {
    auto d = graph("kgraph 1\nvertex x\nvertex y\nedge a 1 x y\nedge b 1 x y\n"
                   "edge c 1 y x\nedge d 1 y x\n");
    auto err = error_of([&] { check_covering(d, l1, GraphMap{{0, 0}, {0, 0, 0, 0}}); });
    CHECK(err == ErrorCode::not_locally_injective);
  }
  SUBCASE("a missing lift") {
    CHECK(error_of([&] { check_covering(p2, l1, GraphMap{{0, 0}, {0}}); })
          == ErrorCode::not_locally_surjective);
  }
  SUBCASE("a base vertex outside the image") {
    auto two = graph("kgraph 1\nvertex a\nvertex b\n");
    auto one = graph("kgraph 1\nvertex x\n");
    CHECK(error_of([&] { check_covering(one, two, GraphMap{{0}, {}}); })
          == ErrorCode::not_surjective);
  }
  SUBCASE("a square sent to a non-square") {
    auto ff2 = load("ff2.kg");
    auto flat = graph("kgraph 2\nvertex v\nedge a 1 v v\nedge b 1 v v\nedge c 2 v v\n"
                      "square a c c a\nsquare b c c b\n");
    CHECK(error_of([&] { check_covering(flat, ff2, GraphMap{{0}, {0, 1, 2}}); })
          == ErrorCode::square_broken);
  }
  SUBCASE("malformed maps") {
    CHECK(error_of([&] { check_covering(l1, l1, GraphMap{{0}, {}}); })
          == ErrorCode::invalid_argument);
  }
}

TEST_CASE("groupoid actions validate their data") {
  auto t2 = load("t2.kg");
  CHECK(error_of([&] { GroupoidAction(t2, labels(*t2, 2), {{0, 0}, {1, 0}}); })
        == ErrorCode::invalid_argument);
  // (0 1) and (1 2) do not commute
  CHECK(error_of([&] { GroupoidAction(t2, labels(*t2, 3), {{1, 0, 2}, {0, 2, 1}}); })
        == ErrorCode::square_broken);
  CHECK_NOTHROW(GroupoidAction(t2, labels(*t2, 3), {{1, 2, 0}, {2, 0, 1}}));
}

TEST_CASE("action round trips") {
  std::vector<CoveringMap> covers;
  for (std::size_t n : {2, 3, 4}) {
    covers.push_back(load_cover(fixture("cycle" + std::to_string(n) + "_l1.cv")));
  }
  covers.push_back(non_normal_cover());
  auto t2 = load("t2.kg");
  covers.push_back(action_to_covering(
      GroupoidAction(t2, labels(*t2, 4), {{1, 0, 3, 2}, {2, 3, 0, 1}})));

  for (auto const& p : covers) {
    auto const a = covering_to_action(p);
    auto const q = action_to_covering(a);
    // canonical renaming: w over x becomes x@w
    GraphMap rename;
    for (VertexIndex w = 0; w < p.domain().num_vertices(); ++w) {
      auto id = p.codomain().vertex_id(p.vertex_image(w)) + "@" + p.domain().vertex_id(w);
      rename.vertices.push_back(q.domain().vertex_index(id));
    }
    for (EdgeIndex e = 0; e < p.domain().num_edges(); ++e) {
      auto const& de = p.domain().edge(e);
      auto id = p.codomain().edge(p.edge_image(e)).id + "@" + p.domain().vertex_id(de.source);
      rename.edges.push_back(q.domain().edge_index(id));
    }
    check_covering_iso(p, q, rename);
    CHECK(are_isomorphic_coverings(p, q).has_value());

    // and back: the action of q is that of p with relabelled fibres
    auto const b = covering_to_action(q);
    for (EdgeIndex e = 0; e < p.codomain().num_edges(); ++e) {
      CHECK(a.permutation(e) == b.permutation(e));
    }
  }
}

TEST_CASE("path words act right to left") {
  auto b  = graph(kBouquet);
  auto ga = GroupoidAction(b, labels(*b, 3), {{1, 0, 2}, {0, 2, 1}});
  // a b sends 1 first through b to 2, then through a to 2
  CHECK(ga.act(GroupWord{Letter{0, false}, Letter{1, false}}, 1) == 2);
  CHECK(ga.act(GroupWord{Letter{1, false}, Letter{0, false}}, 1) == 0);
  CHECK(ga.act_inverse(0, ga.act(0, 2)) == 2);
  CHECK(is_transitive(ga));
  CHECK(!is_transitive(GroupoidAction(b, labels(*b, 3), {{1, 0, 2}, {1, 0, 2}})));
}

TEST_CASE("stabilisers of cycle coverings") {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto p = cycle_over_l1(n);
    for (auto v : p.fiber(0)) {
      auto s = stabilizer_subgroup(p, v);
      REQUIRE(s.subgroup.table.has_value());
      CHECK(s.subgroup.table->size() == n);
      // H = <e^n>
      GroupWord en(n, Letter{0, false});
      CHECK(*s.subgroup.table == todd_coxeter(s.pi.presentation, {en}, 100));
      CHECK(s.fiber_of_coset[0] == v);
    }
  }
}

TEST_CASE("stabilisers at different points are conjugate") {
  auto p = non_normal_cover();
  auto s0 = stabilizer_subgroup(p, p.fiber(0)[0]);
  auto const& t0 = *s0.subgroup.table;
  for (std::size_t i = 0; i < 3; ++i) {
    auto si = stabilizer_subgroup(p, p.fiber(0)[i]);
    // the stabiliser of fibre point i is the rebased table at its coset
    auto coset = std::find(s0.fiber_of_coset.begin(), s0.fiber_of_coset.end(),
                           p.fiber(0)[i])
                 - s0.fiber_of_coset.begin();
    CHECK(*si.subgroup.table == t0.rebased(coset));
    for (auto const& g : si.subgroup.generators) {
      CHECK(si.subgroup.table->contains(g));
    }
  }
  CHECK(!is_normal_subgroup(t0));
  CHECK(error_of([] {
          auto two = graph("kgraph 1\nvertex a\nvertex b\nvertex c\nedge x 1 a c\n");
          auto p = check_covering(two, two, identity_map(*two));
          stabilizer_subgroup(p, 0);
        })
        == ErrorCode::not_connected);
}

TEST_CASE("covering morphisms between cycles follow subgroup containment") {
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t n = 1; n <= 4; ++n) {
      auto p = cycle_over_l1(m);
      auto q = cycle_over_l1(n);
      auto f = covering_morphism(p, q, p.fiber(0)[0], q.fiber(0)[0]);
      CAPTURE(m);
      CAPTURE(n);
      // m Z is contained in n Z exactly when n divides m
      CHECK(f.has_value() == (m % n == 0));
      if (f) {
        for (EdgeIndex e = 0; e < p.domain().num_edges(); ++e) {
          CHECK(q.edge_image(f->edges[e]) == p.edge_image(e));
        }
      }
      CHECK(are_isomorphic_coverings(p, q).has_value() == (m == n));
    }
  }
}

TEST_CASE("covering morphism errors") {
  auto c2 = load("cycle2.kg");
  auto c4 = load("cycle4.kg");
  // cycle4 over cycle2: v0, v2 over u
  auto p  = check_covering(c4, c2, GraphMap{{0, 1, 0, 1}, {1, 0, 1, 0}});
  auto id = check_covering(c2, c2, identity_map(*c2));
  CHECK(error_of([&] { covering_morphism(p, id, 0, 1); }) == ErrorCode::basepoint_mismatch);
  CHECK(covering_morphism(p, id, 0, 0).has_value());
  auto l1cover = cycle_over_l1(2);
  CHECK(error_of([&] { covering_morphism(p, l1cover, 0, 0); })
        == ErrorCode::invalid_argument);
}

TEST_CASE("deck groups") {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto d = deck_group(cycle_over_l1(n));
    CHECK(d.group.order() == n);
    CHECK(d.transitive);
    CHECK(d.group.maps[0] == identity_map(cycle_over_l1(n).domain()));
  }
  auto d = deck_group(non_normal_cover());
  CHECK(d.group.order() == 1);
  CHECK(!d.transitive);
}

TEST_CASE("closing groups of automorphisms") {
  auto p = cycle_over_l1(4);
  auto d = deck_group(p).group;
  // product table: (v.g).h = v.(g h)
  for (std::size_t g = 0; g < d.order(); ++g) {
    for (std::size_t h = 0; h < d.order(); ++h) {
      CHECK(d.maps[d.product[g][h]] == compose(d.maps[h], d.maps[g]));
    }
  }
  auto const& omega = p.domain();
  // only the half-turn and identity: closed
  CHECK(close_group(omega, {d.maps[0], d.maps[2]}).order() == 2);
  // a quarter-turn alone is not closed
  CHECK(error_of([&] { close_group(omega, {d.maps[0], d.maps[1]}); })
        == ErrorCode::not_closed);
  CHECK(error_of([&] { close_group(omega, {d.maps[1], d.maps[0], d.maps[2], d.maps[3]}); })
        == ErrorCode::invalid_argument);
  CHECK(error_of([&] { close_group(omega, {d.maps[0], d.maps[2], d.maps[2]}); })
        == ErrorCode::invalid_argument);
  // not an automorphism
  GraphMap bad = d.maps[1];
  std::swap(bad.edges[0], bad.edges[1]);
  CHECK(error_of([&] { close_group(omega, {d.maps[0], bad}); })
        == ErrorCode::invalid_argument);
}

TEST_CASE("quotients by free actions") {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto p   = cycle_over_l1(n);
    auto d   = deck_group(p);
    auto res = quotient(p, d.group);
    CHECK(res.quotient->num_vertices() == 1);
    CHECK(res.quotient->num_edges() == 1);
    CHECK(res.orbit_map.sheets() == n);
    REQUIRE(res.induced.has_value());
    CHECK(res.induced->sheets() == 1);
    CHECK(is_bijective(res.induced->map()));
  }
  // a quotient by a subgroup: the 4-cycle modulo the half-turn is a 2-cycle
  auto p    = cycle_over_l1(4);
  auto d    = deck_group(p).group;
  auto half = close_group(p.domain(), {d.maps[0], d.maps[2]});
  auto res  = quotient(p, half);
  CHECK(res.quotient->num_vertices() == 2);
  REQUIRE(res.induced.has_value());
  CHECK(res.induced->sheets() == 2);
  CHECK(are_isomorphic_coverings(*res.induced, cycle_over_l1(2)).has_value());
  // orbits are named after their least element
  for (auto const& id : res.quotient->vertex_ids()) {
    CHECK(p.domain().find_vertex(id).has_value());
  }
}

TEST_CASE("a fixed vertex makes the action not free") {
  auto b    = graph(kBouquet);
  GraphMap swap{{0}, {1, 0}};
  auto grp  = close_group(*b, {identity_map(*b), swap});
  CHECK(error_of([&] { quotient(b, grp); }) == ErrorCode::not_free);
}
