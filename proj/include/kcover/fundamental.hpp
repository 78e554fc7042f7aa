// Fundamental-group presentations, cocycles and their cohomology.

#ifndef KCOVER_FUNDAMENTAL_HPP_
#define KCOVER_FUNDAMENTAL_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "kcover/kgraph.hpp"
#include "kcover/realization.hpp"
#include "kcover/words.hpp"

namespace kcover {

  // Breadth-first spanning tree of the undirected skeleton.  Paths are words
  // over edge indices (Letter::generator is an EdgeIndex); path(y) is a
  // groupoid morphism from the base to y, an edge traversed against its
  // direction appearing inverted.
  struct SpanningTree {
    VertexIndex            base = 0;
    std::vector<bool>      in_tree;  // per edge
    std::vector<GroupWord> paths;    // per vertex
    std::vector<VertexIndex> order;  // visiting order
  };

  // Throws NotConnected if the tree does not reach every vertex.
  SpanningTree spanning_tree(KGraph const& g, VertexIndex base);

  struct FundamentalGroupOptions {
    // false keeps every edge as a generator with tree edges as relators.
    bool eliminate_tree = true;
  };

  struct FundamentalGroup {
    VertexIndex            base = 0;
    SpanningTree           tree;
    GroupPresentation      presentation;
    std::vector<GroupWord> rho;              // per edge
    std::vector<EdgeIndex> generator_edges;  // generator i is this edge
  };

  FundamentalGroup fundamental_group(KGraph const&           g,
                                     VertexIndex             base,
                                     FundamentalGroupOptions options = {});

  using ZVector = std::vector<std::int64_t>;

  // Built-in abelian target Z/m1 x ... x Z/mk; a modulus of 0 means Z.
  struct AbelianTarget {
    std::vector<std::int64_t> moduli;

    ZVector reduce(ZVector v) const;
    friend bool operator==(AbelianTarget const&, AbelianTarget const&) = default;
  };

  // A functor from a k-graph to a group, given by its values on edges.
  class Cocycle {
   public:
    static Cocycle from_words(std::shared_ptr<KGraph const> source,
                              GroupPresentation             target,
                              std::vector<GroupWord>        values);
    static Cocycle from_vectors(std::shared_ptr<KGraph const> source,
                                AbelianTarget                 target,
                                std::vector<ZVector>          values);

    KGraph const& source() const noexcept {
      return *_source;
    }
    std::shared_ptr<KGraph const> const& source_ptr() const noexcept {
      return _source;
    }
    bool is_abelian() const noexcept {
      return _abelian.has_value();
    }
    AbelianTarget const& abelian_target() const;
    // For abelian targets this is <z1..zk | zi^mi, [zi,zj]>.
    GroupPresentation const& target() const noexcept {
      return _target;
    }
    GroupWord const& value(EdgeIndex e) const {
      return _words.at(e);
    }
    ZVector const& vector_value(EdgeIndex e) const;

    // Throws CocycleInvalid naming the first square that fails.
    void check_functorial(FiniteGroupRealization const& r) const;
    // Exact check; only available for abelian targets.
    void check_functorial() const;

   private:
    Cocycle() = default;

    std::shared_ptr<KGraph const> _source;
    GroupPresentation             _target;
    std::vector<GroupWord>        _words;
    std::optional<AbelianTarget>  _abelian;
    std::vector<ZVector>          _vectors;
  };

  Cocycle canonical_cocycle(std::shared_ptr<KGraph const> g, VertexIndex base);

  using CocycleValue = std::variant<GroupWord, ZVector>;

  // Product of the edge values along the morphism, in composition order.
  CocycleValue eval_cocycle(Cocycle const& c, Morphism const& m);

  // A map tau: vertices -> G with tau(r(a)) eta(a) = kappa(a) tau(s(a)) for
  // every edge a, or nullopt.  Throws TargetMismatch when either cocycle
  // does not target the realised presentation.
  std::optional<std::vector<GroupElement>>
  are_cohomologous(KGraph const&                 g,
                   Cocycle const&                eta,
                   Cocycle const&                kappa,
                   FiniteGroupRealization const& r);

}  // namespace kcover

#endif  // KCOVER_FUNDAMENTAL_HPP_
