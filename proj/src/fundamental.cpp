#include "kcover/fundamental.hpp"

#include <algorithm>
#include <string>

#include "kcover/error.hpp"

namespace kcover {

  SpanningTree spanning_tree(KGraph const& g, VertexIndex base) {
    if (base >= g.num_vertices()) {
      fail(ErrorCode::invalid_argument, "base vertex out of range");
    }
    SpanningTree t;
    t.base = base;
    t.in_tree.assign(g.num_edges(), false);
    t.paths.assign(g.num_vertices(), {});
    std::vector<bool> seen(g.num_vertices(), false);
    seen[base] = true;
    t.order.push_back(base);
    for (std::size_t i = 0; i < t.order.size(); ++i) {
      VertexIndex const y = t.order[i];
      // Incident edges in lexicographic id order (= index order).
      std::vector<EdgeIndex> incident(g.edges_out(y).begin(),
                                      g.edges_out(y).end());
      incident.insert(
          incident.end(), g.edges_in(y).begin(), g.edges_in(y).end());
      std::sort(incident.begin(), incident.end());
      incident.erase(std::unique(incident.begin(), incident.end()),
                     incident.end());
      for (EdgeIndex a : incident) {
        Edge const& e       = g.edge(a);
        bool const  forward = e.source == y;
        VertexIndex const z = forward ? e.range : e.source;
        if (seen[z]) {
          continue;
        }
        seen[z]      = true;
        t.in_tree[a] = true;
        // path(z) = a path(y) going forwards along a, a^-1 path(y) otherwise.
        t.paths[z] = multiply(GroupWord{Letter{a, !forward}}, t.paths[y]);
        t.order.push_back(z);
      }
    }
    if (t.order.size() != g.num_vertices()) {
      for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
        if (!seen[v]) {
          fail(ErrorCode::not_connected,
               "vertex " + g.vertex_id(v) + " is not reachable from "
                   + g.vertex_id(base));
        }
      }
    }
    return t;
  }

  FundamentalGroup fundamental_group(KGraph const&           g,
                                     VertexIndex             base,
                                     FundamentalGroupOptions options) {
    FundamentalGroup fg;
    fg.base = base;
    fg.tree = spanning_tree(g, base);
    fg.rho.assign(g.num_edges(), {});
    for (EdgeIndex a = 0; a < g.num_edges(); ++a) {
      if (!options.eliminate_tree || !fg.tree.in_tree[a]) {
        std::size_t const gen = fg.presentation.generators.size();
        fg.presentation.generators.push_back(g.edge(a).id);
        fg.generator_edges.push_back(a);
        fg.rho[a] = generator_word(gen);
      }
    }
    if (!options.eliminate_tree) {
      for (EdgeIndex a = 0; a < g.num_edges(); ++a) {
        if (fg.tree.in_tree[a]) {
          fg.presentation.relators.push_back(fg.rho[a]);
        }
      }
    }
    // e f = g h gives the relator e f h^-1 g^-1.
    for (auto const& s : g.squares()) {
      GroupWord r = multiply(multiply(fg.rho[s.e], fg.rho[s.f]),
                             multiply(inverse(fg.rho[s.h]), inverse(fg.rho[s.g])));
      if (!r.empty()) {
        fg.presentation.relators.push_back(std::move(r));
      }
    }
    return fg;
  }

  ////////////////////////////////////////////////////////////////////////
  // Cocycles
  ////////////////////////////////////////////////////////////////////////

  ZVector AbelianTarget::reduce(ZVector v) const {
    for (std::size_t i = 0; i < v.size() && i < moduli.size(); ++i) {
      if (moduli[i] > 0) {
        v[i] %= moduli[i];
        if (v[i] < 0) {
          v[i] += moduli[i];
        }
      }
    }
    return v;
  }

  Cocycle Cocycle::from_words(std::shared_ptr<KGraph const> source,
                              GroupPresentation             target,
                              std::vector<GroupWord>        values) {
    if (!source || values.size() != source->num_edges()) {
      fail(ErrorCode::invalid_argument, "cocycle must assign every edge");
    }
    for (auto& w : values) {
      for (auto const& l : w) {
        if (l.generator >= target.num_generators()) {
          fail(ErrorCode::invalid_argument,
               "cocycle value uses an unknown generator");
        }
      }
      w = free_reduce(w);
    }
    Cocycle c;
    c._source = std::move(source);
    c._target = std::move(target);
    c._words  = std::move(values);
    return c;
  }

  Cocycle Cocycle::from_vectors(std::shared_ptr<KGraph const> source,
                                AbelianTarget                 target,
                                std::vector<ZVector>          values) {
    if (!source || values.size() != source->num_edges()) {
      fail(ErrorCode::invalid_argument, "cocycle must assign every edge");
    }
    std::size_t const k = target.moduli.size();
    Cocycle           c;
    for (std::size_t i = 0; i < k; ++i) {
      c._target.generators.push_back("z" + std::to_string(i + 1));
      if (target.moduli[i] < 0) {
        fail(ErrorCode::invalid_argument, "negative modulus");
      }
      if (target.moduli[i] > 0) {
        c._target.relators.push_back(
            GroupWord(static_cast<std::size_t>(target.moduli[i]), Letter{i}));
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        c._target.relators.push_back(GroupWord{
            Letter{i}, Letter{j}, Letter{i, true}, Letter{j, true}});
      }
    }
    for (auto& v : values) {
      if (v.size() != k) {
        fail(ErrorCode::invalid_argument,
             "cocycle vector has length != " + std::to_string(k));
      }
      v = target.reduce(std::move(v));
      GroupWord w;
      for (std::size_t i = 0; i < k; ++i) {
        w.insert(w.end(),
                 static_cast<std::size_t>(std::llabs(v[i])),
                 Letter{i, v[i] < 0});
      }
      c._words.push_back(std::move(w));
    }
    c._source  = std::move(source);
    c._abelian = std::move(target);
    c._vectors = std::move(values);
    return c;
  }

  AbelianTarget const& Cocycle::abelian_target() const {
    if (!_abelian) {
      fail(ErrorCode::target_mismatch, "cocycle does not have an abelian target");
    }
    return *_abelian;
  }

  ZVector const& Cocycle::vector_value(EdgeIndex e) const {
    if (!_abelian) {
      fail(ErrorCode::target_mismatch, "cocycle does not have an abelian target");
    }
    return _vectors.at(e);
  }

  namespace {
    std::string square_name(KGraph const& g, Square const& s) {
      return "(" + g.edge(s.e).id + "," + g.edge(s.f).id + ","
             + g.edge(s.g).id + "," + g.edge(s.h).id + ")";
    }
  }  // namespace

  void Cocycle::check_functorial(FiniteGroupRealization const& r) const {
    if (r.presentation() != _target) {
      fail(ErrorCode::target_mismatch,
           "realisation presents a different group than the cocycle target");
    }
    for (auto const& s : _source->squares()) {
      if (r.element(multiply(_words[s.e], _words[s.f]))
          != r.element(multiply(_words[s.g], _words[s.h]))) {
        fail(ErrorCode::cocycle_invalid,
             "square " + square_name(*_source, s) + " does not commute");
      }
    }
  }

  void Cocycle::check_functorial() const {
    AbelianTarget const& t = abelian_target();
    for (auto const& s : _source->squares()) {
      ZVector a = _vectors[s.e], b = _vectors[s.g];
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] += _vectors[s.f][i];
        b[i] += _vectors[s.h][i];
      }
      if (t.reduce(a) != t.reduce(b)) {
        fail(ErrorCode::cocycle_invalid,
             "square " + square_name(*_source, s) + " does not commute");
      }
    }
  }

  Cocycle canonical_cocycle(std::shared_ptr<KGraph const> g, VertexIndex base) {
    FundamentalGroup fg = fundamental_group(*g, base);
    // eta(a) = t_{r(a)}^-1 a t_{s(a)} with every edge replaced by rho.
    auto rho_of = [&](GroupWord const& path) {
      GroupWord out;
      for (auto const& l : path) {
        auto const& w = fg.rho[l.generator];
        out           = multiply(out, l.inverse ? inverse(w) : w);
      }
      return out;
    };
    std::vector<GroupWord> values;
    for (EdgeIndex a = 0; a < g->num_edges(); ++a) {
      Edge const& e = g->edge(a);
      values.push_back(multiply(
          multiply(inverse(rho_of(fg.tree.paths[e.range])), fg.rho[a]),
          rho_of(fg.tree.paths[e.source])));
    }
    return Cocycle::from_words(
        std::move(g), std::move(fg.presentation), std::move(values));
  }

  CocycleValue eval_cocycle(Cocycle const& c, Morphism const& m) {
    if (c.is_abelian()) {
      ZVector v(c.abelian_target().moduli.size(), 0);
      for (auto e : m.edges()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          v[i] += c.vector_value(e)[i];
        }
      }
      return c.abelian_target().reduce(std::move(v));
    }
    GroupWord w;
    for (auto e : m.edges()) {
      w = multiply(w, c.value(e));
    }
    return w;
  }

  std::optional<std::vector<GroupElement>>
  are_cohomologous(KGraph const&                 g,
                   Cocycle const&                eta,
                   Cocycle const&                kappa,
                   FiniteGroupRealization const& r) {
    if (eta.target() != r.presentation() || kappa.target() != r.presentation()) {
      fail(ErrorCode::target_mismatch,
           "cocycles must target the realised presentation");
    }
    if (eta.source().num_edges() != g.num_edges()
        || kappa.source().num_edges() != g.num_edges()) {
      fail(ErrorCode::invalid_argument, "cocycles are defined on another graph");
    }
    std::size_t const         n = g.num_edges();
    std::vector<GroupElement> eta_v(n), eta_inv(n), kappa_v(n), kappa_inv(n);
    for (EdgeIndex a = 0; a < n; ++a) {
      eta_v[a]     = r.element(eta.value(a));
      eta_inv[a]   = r.inverse(eta_v[a]);
      kappa_v[a]   = r.element(kappa.value(a));
      kappa_inv[a] = r.inverse(kappa_v[a]);
    }

    std::vector<GroupElement> tau(g.num_vertices(), 0);
    auto const                component = g.components();
    std::size_t const         num_components
        = component.empty()
              ? 0
              : *std::max_element(component.begin(), component.end()) + 1;
    for (std::size_t comp = 0; comp < num_components; ++comp) {
      VertexIndex root = 0;
      while (component[root] != comp) {
        ++root;
      }
      bool found = false;
      for (GroupElement start = 0; start < r.order() && !found; ++start) {
        std::vector<bool>        known(g.num_vertices(), false);
        std::vector<VertexIndex> queue{root};
        known[root] = true;
        tau[root]   = start;
        bool ok     = true;
        for (std::size_t i = 0; i < queue.size() && ok; ++i) {
          VertexIndex const y = queue[i];
          for (EdgeIndex a : g.edges_out(y)) {
            // tau(r(a)) = kappa(a) tau(s(a)) eta(a)^-1
            GroupElement const want
                = r.multiply(r.multiply(kappa_v[a], tau[y]), eta_inv[a]);
            VertexIndex const x = g.edge(a).range;
            if (!known[x]) {
              known[x] = true;
              tau[x]   = want;
              queue.push_back(x);
            } else if (tau[x] != want) {
              ok = false;
              break;
            }
          }
          for (EdgeIndex a : g.edges_in(y)) {
            if (!ok) {
              break;
            }
            // tau(s(a)) = kappa(a)^-1 tau(r(a)) eta(a)
            GroupElement const want
                = r.multiply(r.multiply(kappa_inv[a], tau[y]), eta_v[a]);
            VertexIndex const z = g.edge(a).source;
            if (!known[z]) {
              known[z] = true;
              tau[z]   = want;
              queue.push_back(z);
            } else if (tau[z] != want) {
              ok = false;
            }
          }
        }
        found = ok;
      }
      if (!found) {
        return std::nullopt;
      }
    }
    return tau;
  }

}  // namespace kcover
