#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "support.hpp"

#include "kcover/classify.hpp"
#include "kcover/io.hpp"
#include "kcover/skew.hpp"

using namespace kcover;
using kcover::test::error_of;
using kcover::test::fixture;
using kcover::test::graph;
using kcover::test::load;

namespace {

  GroupPresentation s3() {
    GroupPresentation p{{"r", "s"}, {}};
    for (auto w : {"r^3", "s^2", "s r s r"}) {
      p.relators.push_back(parse_word(w, p.generators));
    }
    return p;
  }

  // Subgroup of r generated by the given elements, by closure.
  std::size_t generated_order(FiniteGroupRealization const& r,
                              std::vector<GroupElement> const& gens) {
    std::set<GroupElement>    seen{r.identity()};
    std::vector<GroupElement> queue{r.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (auto g : gens) {
        auto h = r.multiply(queue[i], g);
        if (seen.insert(h).second) {
          queue.push_back(h);
        }
      }
    }
    return seen.size();
  }

  // Values of eta on the loops t_{r(a)}^-1 a t_{s(a)} at the base vertex.
  std::vector<GroupElement> holonomy(KGraph const& g, Cocycle const& eta,
                                     FiniteGroupRealization const& r) {
    auto const                tree = spanning_tree(g, 0);
    auto                      along = [&](GroupWord const& path) {
      GroupElement x = r.identity();
      for (auto const& l : path) {
        auto v = r.element(eta.value(l.generator));
        x      = r.multiply(x, l.inverse ? r.inverse(v) : v);
      }
      return x;
    };
    std::vector<GroupElement> out;
    for (EdgeIndex a = 0; a < g.num_edges(); ++a) {
      auto const& e = g.edge(a);
      out.push_back(r.multiply(r.multiply(r.inverse(along(tree.paths[e.range])),
                                          r.element(eta.value(a))),
                               along(tree.paths[e.source])));
    }
    return out;
  }

  // Moves a cocycle on the quotient of a skew product (ids x@0, a@0) back
  // onto the base graph.
  Cocycle to_base(Cocycle const& c, std::shared_ptr<KGraph const> base) {
    std::vector<GroupWord> values(base->num_edges());
    auto const& q = c.source();
    for (EdgeIndex a = 0; a < q.num_edges(); ++a) {
      auto id = q.edge(a).id;
      values[base->edge_index(id.substr(0, id.find('@')))] = c.value(a);
    }
    return Cocycle::from_words(base, c.target(), values);
  }

  struct GraphCocycle {
    char const* graph;
    char const* cocycle;
  };

  std::vector<GraphCocycle> const kFixtureCocycles{
      {"l1.kg", "l1_z2.cc"}, {"l1.kg", "l1_z3.cc"}, {"l1.kg", "l1_s3.cc"},
      {"t2.kg", "t2_z2.cc"}, {"t2.kg", "t2_z3.cc"}, {"t2.kg", "t2_s3.cc"}};

}  // namespace

TEST_CASE("skew products have one sheet per group element") {
  for (auto const& gc : kFixtureCocycles) {
    CAPTURE(gc.cocycle);
    auto g   = load(gc.graph);
    auto eta = load_cocycle(fixture(gc.cocycle), g);
    FiniteGroupRealization const r(eta.target(), 1000);
    auto res = skew_product(g, eta, r);
    CHECK(res.covering.sheets() == r.order());
    CHECK(res.product->num_edges() == g->num_edges() * r.order());
    REQUIRE(res.action.has_value());
    CHECK(res.action->order() == r.order());
    // the right action commutes with the covering and permutes each fibre
    for (auto const& m : res.action->maps) {
      for (VertexIndex v = 0; v < res.product->num_vertices(); ++v) {
        CHECK(res.covering.vertex_image(m.vertices[v]) == res.covering.vertex_image(v));
      }
    }
  }
}

TEST_CASE("edges of a skew product move sheets by eta") {
  auto g   = load("l1.kg");
  auto eta = load_cocycle(fixture("l1_s3.cc"), g);
  FiniteGroupRealization const r(eta.target(), 100);
  auto res = skew_product(g, eta, r);
  auto const rv = r.element(eta.value(0));
  for (GroupElement x = 0; x < r.order(); ++x) {
    auto const& e = res.product->edge(res.product->edge_index("e@" + std::to_string(x)));
    CHECK(res.product->vertex_id(e.source) == "v@" + std::to_string(x));
    CHECK(res.product->vertex_id(e.range) == "v@" + std::to_string(r.multiply(rv, x)));
  }
}

TEST_CASE("invalid cocycles are rejected") {
  auto g = load("t2.kg");
  auto bad = load_cocycle(fixture("t2_s3_bad.cc"), g);
  FiniteGroupRealization const r(bad.target(), 100);
  CHECK(error_of([&] { skew_product(g, bad, r); }) == ErrorCode::cocycle_invalid);
  FiniteGroupRealization const other(load_cocycle(fixture("t2_z3.cc"), g).target(), 100);
  CHECK(error_of([&] { skew_product(g, bad, other); }) == ErrorCode::target_mismatch);
}

TEST_CASE("skew product is connected iff the holonomy generates the group") {
  std::mt19937 rng(8080);
  auto const   p = s3();
  FiniteGroupRealization const r(p, 100);
  std::vector<std::shared_ptr<KGraph const>> graphs{
      load("l1.kg"), load("cycle3.kg"), load("cycle2.kg"),
      graph("kgraph 1\nvertex v\nedge a 1 v v\nedge b 1 v v\n"),
      graph("kgraph 1\nvertex u\nvertex v\nedge a 1 u v\nedge b 1 v u\nedge c 1 u u\n")};
  for (auto const& g : graphs) {
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<GroupWord> values;
      for (EdgeIndex a = 0; a < g->num_edges(); ++a) {
        values.push_back(r.word(rng() % r.order()));
      }
      auto eta = Cocycle::from_words(g, p, values);
      auto res = skew_product(g, eta, r);
      auto h   = generated_order(r, holonomy(*g, eta, r));
      CHECK(res.product->is_connected() == (h == r.order()));
      // more precisely the components are the cosets of the holonomy group
      auto comps = res.product->components();
      auto count = *std::max_element(comps.begin(), comps.end()) + 1;
      CHECK(count * h == r.order());
    }
  }
  // T2 with eta(e) = r, eta(f) = r^2 only reaches the rotations
  auto t2  = load("t2.kg");
  auto eta = load_cocycle(fixture("t2_s3.cc"), t2);
  CHECK(!skew_product(t2, eta, r).product->is_connected());
}

TEST_CASE("quotienting a skew product by its action returns the base") {
  for (auto const& gc : kFixtureCocycles) {
    CAPTURE(gc.cocycle);
    auto g   = load(gc.graph);
    auto eta = load_cocycle(fixture(gc.cocycle), g);
    FiniteGroupRealization const r(eta.target(), 1000);
    auto res = skew_product(g, eta, r);
    auto q   = quotient(res.covering, *res.action);
    REQUIRE(q.induced.has_value());
    CHECK(q.induced->sheets() == 1);
    CHECK(is_bijective(q.induced->map()));
    CHECK(q.orbit_map.sheets() == r.order());
  }
}

TEST_CASE("gross-tucker recovers a cohomologous cocycle") {
  for (auto const& gc : kFixtureCocycles) {
    CAPTURE(gc.cocycle);
    auto g   = load(gc.graph);
    auto eta = load_cocycle(fixture(gc.cocycle), g);
    FiniteGroupRealization const r(eta.target(), 1000);
    auto res = skew_product(g, eta, r);
    auto gt  = gross_tucker(res.product, *res.action, *res.group);
    auto back = to_base(gt.cocycle, g);
    auto tau  = are_cohomologous(*g, eta, back, r);
    CHECK(tau.has_value());
    CHECK(is_bijective(gt.isomorphism));
    CHECK(gt.skew.covering.sheets() == r.order());
    // the isomorphism is a map of skeletons onto the original product
    auto const& from = *gt.skew.product;
    for (EdgeIndex a = 0; a < from.num_edges(); ++a) {
      auto const& e  = from.edge(a);
      auto const& fe = res.product->edge(gt.isomorphism.edges[a]);
      CHECK(fe.source == gt.isomorphism.vertices[e.source]);
      CHECK(fe.range == gt.isomorphism.vertices[e.range]);
      CHECK(fe.color == e.color);
    }

    // without a realisation the group is read off the Cayley graph
    auto free_gt = gross_tucker(res.product, *res.action);
    CHECK(free_gt.group.order() == r.order());
    CHECK(is_bijective(free_gt.isomorphism));
  }
}

TEST_CASE("gross-tucker on deck groups of cycles") {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto p  = load_cover(fixture("cycle" + std::to_string(n) + "_l1.cv"));
    auto d  = deck_group(p);
    auto gt = gross_tucker(p.domain_ptr(), d.group);
    CHECK(gt.quotient.quotient->num_vertices() == 1);
    CHECK(gt.group.order() == p.sheets());
    CHECK(abelian_invariants(gt.group.presentation())
          == std::vector<std::int64_t>{static_cast<std::int64_t>(p.sheets())});
    // the single quotient edge carries a generator of Z/n
    auto v = gt.group.element(gt.cocycle.value(0));
    std::vector<GroupElement> gens{v};
    CHECK(generated_order(gt.group, gens) == p.sheets());
  }
  // trivial group: the quotient is the graph itself
  auto t2 = load("t2.kg");
  AutomorphismGroup triv = close_group(*t2, {identity_map(*t2)});
  auto gt = gross_tucker(t2, triv);
  CHECK(gt.quotient.quotient->num_edges() == 2);
  CHECK(gt.group.order() == 1);
}

TEST_CASE("cayley presentations present the group") {
  auto p  = load_cover(fixture("cycle4_l1.cv"));
  auto pr = cayley_presentation(deck_group(p).group);
  CHECK(FiniteGroupRealization(pr, 100).order() == 4);

  auto g   = load("l1.kg");
  auto eta = load_cocycle(fixture("l1_s3.cc"), g);
  FiniteGroupRealization const r(eta.target(), 100);
  auto res = skew_product(g, eta, r);
  auto pr6 = cayley_presentation(*res.action);
  FiniteGroupRealization const r6(pr6, 100);
  CHECK(r6.order() == 6);
  CHECK(abelian_invariants(pr6) == std::vector<std::int64_t>{2});
}

TEST_CASE("relative skew products") {
  auto t2  = load("t2.kg");
  auto eta = load_cocycle(fixture("t2_s3.cc"), t2);
  auto const& p = eta.target();
  // <s> has index 3 and is not normal
  SubgroupData h{p, {parse_word("s", p.generators)}, std::nullopt};
  auto res = relative_skew_product(t2, eta, h, 100);
  CHECK(res.covering.sheets() == 3);
  CHECK(!res.action.has_value());
  // <r> is normal of index 2: the quotient action is attached
  SubgroupData n{p, {parse_word("r", p.generators)}, std::nullopt};
  auto res2 = relative_skew_product(t2, eta, n, 100);
  CHECK(res2.covering.sheets() == 2);
  REQUIRE(res2.action.has_value());
  CHECK(res2.action->order() == 2);
  // the trivial subgroup gives the full skew product
  auto z3 = load_cocycle(fixture("t2_z3.cc"), t2);
  SubgroupData triv{z3.target(), {}, std::nullopt};
  FiniteGroupRealization const r(z3.target(), 100);
  CHECK(are_isomorphic_coverings(relative_skew_product(t2, z3, triv, 100).covering,
                                 skew_product(t2, z3, r).covering)
            .has_value());
  SubgroupData wrong{GroupPresentation{{"x"}, {}}, {}, std::nullopt};
  CHECK(error_of([&] { relative_skew_product(t2, eta, wrong, 100); })
        == ErrorCode::target_mismatch);
  // the canonical cocycle into an infinite group with no subgroup given
  auto l1 = load("l1.kg");
  auto c  = canonical_cocycle(l1, 0);
  SubgroupData none{c.target(), {}, std::nullopt};
  CHECK(error_of([&] { relative_skew_product(l1, c, none, 50); })
        == ErrorCode::coset_overflow);
}

TEST_CASE("relative skew products by index-n subgroups of Z^2") {
  auto t2 = load("t2.kg");
  auto c  = canonical_cocycle(t2, 0);
  for (auto const& table : low_index_subgroups(c.target(), 3, LowIndexMode::all_subgroups)) {
    SubgroupData h{c.target(), table.subgroup_generators(), table};
    auto res = relative_skew_product(t2, c, h, 100);
    CHECK(res.covering.sheets() == table.size());
    CHECK(res.product->is_connected());
    // abelian: every subgroup is normal
    CHECK(res.action.has_value());
    auto st = stabilizer_subgroup(res.covering, res.product->vertex_index("v@0"));
    CHECK(*st.subgroup.table == table);
  }
}

TEST_CASE("universal covers") {
  for (auto name : {"p2.kg", "q2.kg"}) {
    CAPTURE(name);
    auto g   = load(name);
    auto res = universal_cover(g, 0, 1000);
    CHECK(res.covering.sheets() == 1);
    CHECK(is_ktree(*res.product, 1000) == KTreeAnswer::yes);
    for (VertexIndex v = 0; v < res.product->num_vertices(); ++v) {
      auto st = stabilizer_subgroup(res.covering, v);
      CHECK(st.subgroup.table->size() == 1);
      CHECK(todd_coxeter(st.pi.presentation, {}, 100).size() == 1);
    }
  }
  CHECK(error_of([] { universal_cover(load("l1.kg"), 0, 1000); })
        == ErrorCode::coset_overflow);
}

TEST_CASE("k-tree answers") {
  CHECK(is_ktree(*load("q2.kg"), 100) == KTreeAnswer::yes);
  CHECK(is_ktree(*load("p2.kg"), 100) == KTreeAnswer::yes);
  CHECK(is_ktree(*load("l1.kg"), 100) == KTreeAnswer::no);
  CHECK(is_ktree(*load("t2.kg"), 100) == KTreeAnswer::no);
  CHECK(is_ktree(*load("ff2.kg"), 100) == KTreeAnswer::no);
  CHECK(is_ktree(*load("cycle3.kg"), 100) == KTreeAnswer::no);
  auto two = graph("kgraph 1\nvertex a\nvertex b\n");
  CHECK(error_of([&] { is_ktree(*two, 100); }) == ErrorCode::not_connected);
}

TEST_CASE("classification of small coverings") {
  CHECK(classify_coverings(load("l1.kg"), 0, 3).size() == 3);
  CHECK(classify_coverings(load("t2.kg"), 0, 2).size() == 4);
  CHECK(classify_coverings(load("p2.kg"), 0, 3).size() == 1);
  // bouquet of two loops: transitive actions of F2 up to relabelling
  auto b = graph("kgraph 1\nvertex v\nedge a 1 v v\nedge b 1 v v\n");
  auto cls = classify_coverings(b, 0, 3);
  std::size_t want = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    want += kcover::test::transitive_actions_up_to_iso(2, n);
  }
  CHECK(cls.size() == want);
  for (auto const& c : cls) {
    CHECK(c.deck_order == c.normalizer_order);
    CHECK(deck_group(c.cover.covering).group.order() == c.deck_order);
    CHECK(c.cover.covering.sheets() == c.table.size());
  }
  auto two = graph("kgraph 1\nvertex a\nvertex b\n");
  CHECK(error_of([&] { classify_coverings(two, 0, 2); }) == ErrorCode::not_connected);
}

TEST_CASE("every connected skew product appears exactly once in the classification") {
  for (auto const& gc : kFixtureCocycles) {
    CAPTURE(gc.cocycle);
    auto g   = load(gc.graph);
    auto eta = load_cocycle(fixture(gc.cocycle), g);
    FiniteGroupRealization const r(eta.target(), 1000);
    auto res = skew_product(g, eta, r);
    if (!res.product->is_connected()) {
      continue;
    }
    auto cls = classify_coverings(g, 0, res.covering.sheets());
    std::size_t matches = 0;
    for (auto const& c : cls) {
      matches += are_isomorphic_coverings(c.cover.covering, res.covering).has_value() ? 1 : 0;
    }
    CHECK(matches == 1);
  }
}

TEST_CASE("degree cocycle skew products") {
  auto t2  = load("t2.kg");
  auto eta = degree_cocycle(t2, std::vector<std::int64_t>{2, 3});
  FiniteGroupRealization const r(eta.target(), 100);
  auto res = skew_product(t2, eta, r);
  CHECK(res.covering.sheets() == 6);
  CHECK(res.product->is_connected());
  CHECK(deck_group(res.covering).group.order() == 6);
}
