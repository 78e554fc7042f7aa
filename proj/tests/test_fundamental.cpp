#include <random>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "support.hpp"

#include "kcover/coset_table.hpp"
#include "kcover/fundamental.hpp"
#include "kcover/io.hpp"
#include "kcover/realization.hpp"
#include "kcover/skew.hpp"

using namespace kcover;
using kcover::test::error_of;
using kcover::test::fixture;
using kcover::test::graph;
using kcover::test::load;

namespace {

  // Follows a groupoid word from `start`, last letter first, and returns
  // the vertex reached or nothing if the word does not compose.
  std::optional<VertexIndex> walk(KGraph const& g, GroupWord const& w, VertexIndex start) {
    VertexIndex at = start;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      Edge const& e = g.edge(it->generator);
      if (!it->inverse) {
        if (e.source != at) {
          return std::nullopt;
        }
        at = e.range;
      } else {
        if (e.range != at) {
          return std::nullopt;
        }
        at = e.source;
      }
    }
    return at;
  }

  GroupWord random_closed_walk(KGraph const& g, VertexIndex base, std::mt19937& rng) {
    // a random walk out, then back along the spanning tree
    auto const  tree = spanning_tree(g, base);
    GroupWord   w;
    VertexIndex at = base;
    for (std::size_t i = 0, n = 1 + rng() % 6; i < n; ++i) {
      std::vector<Letter> moves;
      for (auto a : g.edges_out(at)) {
        moves.push_back(Letter{a, false});
      }
      for (auto a : g.edges_in(at)) {
        moves.push_back(Letter{a, true});
      }
      auto l = moves[rng() % moves.size()];
      w.insert(w.begin(), l);
      at = l.inverse ? g.edge(l.generator).source : g.edge(l.generator).range;
    }
    return multiply(inverse(tree.paths[at]), w);
  }

}  // namespace

TEST_CASE("spanning tree paths run from the base to each vertex") {
  for (auto name : {"q2.kg", "cycle4.kg", "p2.kg", "cycle2.kg", "l1.kg"}) {
    CAPTURE(name);
    auto g = load(name);
    for (VertexIndex base = 0; base < g->num_vertices(); ++base) {
      auto const t = spanning_tree(*g, base);
      std::size_t tree_edges = 0;
      for (bool b : t.in_tree) {
        tree_edges += b ? 1 : 0;
      }
      CHECK(tree_edges + 1 == g->num_vertices());
      CHECK(t.order.front() == base);
      for (VertexIndex y = 0; y < g->num_vertices(); ++y) {
        CHECK(walk(*g, t.paths[y], base) == y);
        for (auto const& l : t.paths[y]) {
          CHECK(t.in_tree[l.generator]);
        }
      }
    }
  }
  auto two = graph("kgraph 1\nvertex a\nvertex b\n");
  CHECK(error_of([&] { spanning_tree(*two, 0); }) == ErrorCode::not_connected);
}

TEST_CASE("fundamental group presentations") {
  struct Row {
    char const* file;
    std::size_t generators;
    char const* abelian;
  };
  for (auto const& row : {Row{"l1.kg", 1, "Z"},
                          Row{"p2.kg", 0, "trivial"},
                          Row{"t2.kg", 2, "Z^2"},
                          Row{"c3.kg", 3, "Z^3"},
                          Row{"q2.kg", 1, "trivial"},
                          Row{"ff2.kg", 3, "Z^2"},
                          Row{"cycle3.kg", 1, "Z"}}) {
    CAPTURE(row.file);
    auto g  = load(row.file);
    auto fg = fundamental_group(*g, 0);
    CHECK(fg.presentation.num_generators() == row.generators);
    CHECK(format_abelian(abelian_invariants(fg.presentation)) == row.abelian);
    CHECK(fg.presentation.relators.size() == g->num_squares());

    auto raw = fundamental_group(*g, 0, {.eliminate_tree = false});
    CHECK(raw.presentation.num_generators() == g->num_edges());
    CHECK(format_abelian(abelian_invariants(raw.presentation)) == row.abelian);
  }
  auto t2 = load("t2.kg");
  CHECK(format_presentation(fundamental_group(*t2, 0).presentation)
        == "< e, f | e f e^-1 f^-1 >");
}

TEST_CASE("the group does not depend on the base vertex") {
  for (auto name : {"q2.kg", "cycle4.kg"}) {
    auto g = load(name);
    auto a = abelian_invariants(fundamental_group(*g, 0).presentation);
    for (VertexIndex v = 1; v < g->num_vertices(); ++v) {
      CHECK(abelian_invariants(fundamental_group(*g, v).presentation) == a);
    }
  }
}

TEST_CASE("canonical cocycle is trivial on the tree and sends loops to rho") {
  std::mt19937 rng(99);
  for (auto name : {"cycle3.kg", "q2.kg", "ff2.kg", "t2.kg", "cycle2.kg"}) {
    CAPTURE(name);
    auto g   = load(name);
    auto fg  = fundamental_group(*g, 0);
    auto eta = canonical_cocycle(g, 0);
    CHECK(eta.target() == fg.presentation);
    for (EdgeIndex a = 0; a < g->num_edges(); ++a) {
      if (fg.tree.in_tree[a]) {
        CHECK(eta.value(a).empty());
      }
    }
    // Along a closed walk at the base, the product of eta is the product
    // of rho with tree edges deleted.
    for (int trial = 0; trial < 20; ++trial) {
      auto const w = random_closed_walk(*g, 0, rng);
      REQUIRE(walk(*g, w, 0) == VertexIndex{0});
      GroupWord via_eta, via_rho;
      for (auto const& l : w) {
        auto const& e = eta.value(l.generator);
        auto const& r = fg.rho[l.generator];
        via_eta = multiply(via_eta, l.inverse ? inverse(e) : e);
        via_rho = multiply(via_rho, l.inverse ? inverse(r) : r);
      }
      CHECK(via_eta == via_rho);
    }
  }
}

TEST_CASE("canonical cocycle respects squares in every small permutation image") {
  // Each transitive action of pi of degree <= 3 is a finite quotient in
  // which both sides of every square must act alike.
  for (auto name : {"ff2.kg", "t2.kg", "c3.kg", "q2.kg"}) {
    CAPTURE(name);
    auto g   = load(name);
    auto eta = canonical_cocycle(g, 0);
    for (auto const& t : low_index_subgroups(eta.target(), 3,
                                             LowIndexMode::all_subgroups)) {
      for (std::size_t start = 0; start < t.size(); ++start) {
        for (auto const& s : g->squares()) {
          auto lhs = multiply(eta.value(s.e), eta.value(s.f));
          auto rhs = multiply(eta.value(s.g), eta.value(s.h));
          CHECK(t.act(start, lhs) == t.act(start, rhs));
        }
      }
    }
  }
}

TEST_CASE("degree cocycle") {
  auto t2 = load("t2.kg");
  auto d  = degree_cocycle(t2, std::vector<std::int64_t>{2, 1});
  CHECK(d.vector_value(t2->edge_index("e")) == ZVector{1, 0});
  CHECK(d.vector_value(t2->edge_index("f")) == ZVector{0, 0});
  CHECK_NOTHROW(d.check_functorial());

  auto l1 = load("l1.kg");
  CHECK(degree_cocycle(l1).vector_value(0) == ZVector{1});

  auto q2 = load("q2.kg");
  auto dq = degree_cocycle(q2, std::vector<std::int64_t>{2, 2});
  for (EdgeIndex a = 0; a < q2->num_edges(); ++a) {
    ZVector want{0, 0};
    want[q2->edge(a).color - 1] = 1;
    CHECK(dq.vector_value(a) == want);
  }
  // the degree of a morphism is its value under the unreduced degree cocycle
  auto ff2 = load("ff2.kg");
  auto dz  = degree_cocycle(ff2);
  for (auto const& m : ff2->morphisms_of_degree(0, Degree{2, 3}, Direction::range)) {
    CHECK(std::get<ZVector>(eval_cocycle(dz, m)) == ZVector{2, 3});
  }
}

TEST_CASE("functoriality checks") {
  auto t2 = load("t2.kg");
  FiniteGroupRealization const s3(load_cocycle(fixture("t2_s3.cc"), t2).target(), 100);
  CHECK_NOTHROW(load_cocycle(fixture("t2_s3.cc"), t2).check_functorial(s3));
  CHECK(error_of([&] { load_cocycle(fixture("t2_s3_bad.cc"), t2).check_functorial(s3); })
        == ErrorCode::cocycle_invalid);

  FiniteGroupRealization const z3(load_cocycle(fixture("t2_z3.cc"), t2).target(), 100);
  CHECK(error_of([&] { load_cocycle(fixture("t2_s3.cc"), t2).check_functorial(z3); })
        == ErrorCode::target_mismatch);

  auto ff2 = load("ff2.kg");
  auto bad = Cocycle::from_vectors(ff2, AbelianTarget{{0}}, {{1}, {0}, {0}});
  CHECK(error_of([&] { bad.check_functorial(); }) == ErrorCode::cocycle_invalid);
  auto good = Cocycle::from_vectors(ff2, AbelianTarget{{0}}, {{1}, {1}, {5}});
  CHECK_NOTHROW(good.check_functorial());
}

TEST_CASE("abelian targets reduce modulo their moduli") {
  AbelianTarget t{{2, 0, 3}};
  CHECK(t.reduce({5, -4, -1}) == ZVector{1, -4, 2});
}

TEST_CASE("random twists are cohomologous") {
  std::mt19937 rng(4242);
  struct Case {
    char const* graph;
    char const* cocycle;
  };
  auto cycle3 = graph(kcover::test::cycle_text(3));
  for (auto const& c : {Case{"l1.kg", "l1_s3.cc"}, Case{"t2.kg", "t2_s3.cc"},
                        Case{"t2.kg", "t2_z3.cc"}, Case{"l1.kg", "l1_z2.cc"}}) {
    CAPTURE(c.cocycle);
    auto g   = load(c.graph);
    auto eta = load_cocycle(fixture(c.cocycle), g);
    FiniteGroupRealization const r(eta.target(), 1000);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<GroupElement> tau(g->num_vertices());
      for (auto& x : tau) {
        x = rng() % r.order();
      }
      std::vector<GroupWord> kv;
      for (EdgeIndex a = 0; a < g->num_edges(); ++a) {
        auto const& e = g->edge(a);
        kv.push_back(r.word(r.multiply(
            r.multiply(tau[e.range], r.element(eta.value(a))), r.inverse(tau[e.source]))));
      }
      auto kappa = Cocycle::from_words(g, eta.target(), kv);
      auto found = are_cohomologous(*g, eta, kappa, r);
      REQUIRE(found.has_value());
      for (EdgeIndex a = 0; a < g->num_edges(); ++a) {
        auto const& e = g->edge(a);
        CHECK(r.multiply((*found)[e.range], r.element(eta.value(a)))
              == r.multiply(r.element(kappa.value(a)), (*found)[e.source]));
      }
    }
  }

  // a cocycle on the 3-cycle with arbitrary values is cohomologous to one
  // concentrated on a single edge
  GroupPresentation p{{"r", "s"}, {}};
  for (auto w : {"r^3", "s^2", "s r s r"}) {
    p.relators.push_back(parse_word(w, p.generators));
  }
  FiniteGroupRealization const r(p, 100);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<GroupElement> vals{rng() % 6, rng() % 6, rng() % 6};
    std::vector<GroupWord>    words{r.word(vals[0]), r.word(vals[1]), r.word(vals[2])};
    auto eta = Cocycle::from_words(cycle3, p, words);
    // holonomy around the cycle, read from v0
    auto hol = r.multiply(vals[2], r.multiply(vals[1], vals[0]));
    std::vector<GroupWord> conc{r.word(hol), {}, {}};
    auto kappa = Cocycle::from_words(cycle3, p, conc);
    CHECK(are_cohomologous(*cycle3, eta, kappa, r).has_value());
  }
}

TEST_CASE("non-cohomologous cocycles are told apart") {
  auto l1 = load("l1.kg");
  auto eta = load_cocycle(fixture("l1_s3.cc"), l1);
  FiniteGroupRealization const r(eta.target(), 100);
  // r has order 3 and s order 2, so they are not conjugate
  auto kappa = Cocycle::from_words(l1, eta.target(), {parse_word("s", eta.target().generators)});
  CHECK(!are_cohomologous(*l1, eta, kappa, r).has_value());
  // r and r^2 are conjugate by s
  auto r2 = Cocycle::from_words(l1, eta.target(), {parse_word("r^2", eta.target().generators)});
  CHECK(are_cohomologous(*l1, eta, r2, r).has_value());

  auto z2 = load_cocycle(fixture("l1_z2.cc"), l1);
  CHECK(error_of([&] { are_cohomologous(*l1, eta, z2, r); }) == ErrorCode::target_mismatch);
}
