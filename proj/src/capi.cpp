#include "kcover/kcover.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "kcover/classify.hpp"
#include "kcover/coverings.hpp"
#include "kcover/error.hpp"
#include "kcover/fundamental.hpp"
#include "kcover/io.hpp"
#include "kcover/kgraph.hpp"
#include "kcover/skew.hpp"

struct kc_kgraph {
  std::shared_ptr<kcover::KGraph const> graph;
};

struct kc_cocycle {
  kcover::Cocycle cocycle;
};

struct kc_covering {
  kcover::CoveringMap map;
};

struct kc_covering_list {
  std::vector<kcover::ClassifiedCovering> entries;
};

namespace {
  thread_local std::string last_name;
  thread_local std::string last_detail;

  kc_status status_of(kcover::ErrorCode c) {
    return static_cast<kc_status>(static_cast<int>(c) + 1);
  }

  template <typename F>
  kc_status guard(F&& f) {
    last_name.clear();
    last_detail.clear();
    try {
      f();
      return KC_OK;
    } catch (kcover::Error const& e) {
      last_name   = kcover::error_name(e.code());
      last_detail = e.witness();
      return status_of(e.code());
    } catch (std::bad_alloc const&) {
      last_name   = "InternalError";
      last_detail = "out of memory";
    } catch (std::exception const& e) {
      last_name   = "InternalError";
      last_detail = e.what();
    }
    return KC_INTERNAL_ERROR;
  }

  void require(bool ok, char const* what) {
    if (!ok) {
      kcover::fail(kcover::ErrorCode::invalid_argument, what);
    }
  }

  char* copy_string(std::string const& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
      throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
  }

  kcover::VertexIndex base_vertex(kcover::KGraph const& g, char const* base) {
    if (base == nullptr) {
      if (g.num_vertices() == 0) {
        kcover::fail(kcover::ErrorCode::not_connected, "the k-graph has no vertices");
      }
      return 0;
    }
    return g.vertex_index(base);
  }

  std::string format_table(kcover::CosetTable const&       t,
                           std::vector<std::string> const& names) {
    std::ostringstream out;
    for (std::size_t i = 0; i < t.size(); ++i) {
      out << "  " << i << ":";
      for (std::size_t c = 0; c < t.num_columns(); ++c) {
        out << ' ' << names[c / 2] << (c % 2 ? "^-1" : "") << "->" << t.at(i, c);
      }
      out << '\n';
    }
    return out.str();
  }

  std::string format_map(kcover::CoveringMap const& p,
                         kcover::CoveringMap const& q,
                         kcover::GraphMap const&    f) {
    std::ostringstream out;
    for (std::size_t v = 0; v < f.vertices.size(); ++v) {
      out << "vmap " << p.domain().vertex_id(v) << ' '
          << q.domain().vertex_id(f.vertices[v]) << '\n';
    }
    for (std::size_t e = 0; e < f.edges.size(); ++e) {
      out << "emap " << p.domain().edge(e).id << ' '
          << q.domain().edge(f.edges[e]).id << '\n';
    }
    return out.str();
  }

  kcover::AutomorphismGroup deck(kcover::CoveringMap const& p) {
    return kcover::deck_group(p).group;
  }
}  // namespace

extern "C" {

const char* kc_status_name(kc_status status) {
  if (status == KC_OK) {
    return "OK";
  }
  if (status < KC_OK || status > KC_INTERNAL_ERROR) {
    return "Unknown";
  }
  return kcover::error_name(static_cast<kcover::ErrorCode>(status - 1)).data();
}

const char* kc_last_error_name(void) {
  return last_name.c_str();
}

const char* kc_last_error_detail(void) {
  return last_detail.c_str();
}

void kc_string_free(char* s) {
  std::free(s);
}

kc_status kc_kgraph_load(const char* path, kc_kgraph** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new kc_kgraph{kcover::load_kgraph(path)};
  });
}

kc_status kc_kgraph_parse(const char* text, kc_kgraph** out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = new kc_kgraph{
        std::make_shared<kcover::KGraph const>(kcover::read_kgraph(text))};
  });
}

void kc_kgraph_free(kc_kgraph* g) {
  delete g;
}

kc_status kc_kgraph_format(const kc_kgraph* g, char** out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = copy_string(kcover::format_kgraph(*g->graph));
  });
}

kc_status kc_kgraph_counts(const kc_kgraph* g,
                           size_t*          rank,
                           size_t*          vertices,
                           size_t*          edges,
                           size_t*          squares) {
  return guard([&] {
    require(g != nullptr, "null argument");
    if (rank) *rank = g->graph->rank();
    if (vertices) *vertices = g->graph->num_vertices();
    if (edges) *edges = g->graph->num_edges();
    if (squares) *squares = g->graph->num_squares();
  });
}

kc_status kc_kgraph_is_connected(const kc_kgraph* g, int* out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = g->graph->is_connected() ? 1 : 0;
  });
}

kc_status kc_fundamental_group(const kc_kgraph* g,
                               const char*      base,
                               int              keep_tree,
                               char**           presentation,
                               char**           abelianization) {
  return guard([&] {
    require(g && presentation && abelianization, "null argument");
    auto const fg = kcover::fundamental_group(
        *g->graph, base_vertex(*g->graph, base), {keep_tree == 0});
    std::string const p = kcover::format_presentation(fg.presentation);
    std::string const a
        = kcover::format_abelian(kcover::abelian_invariants(fg.presentation));
    *presentation   = copy_string(p);
    *abelianization = copy_string(a);
  });
}

kc_status kc_is_ktree(const kc_kgraph* g, size_t max_cosets, kc_ktree* out) {
  return guard([&] {
    require(g && out, "null argument");
    switch (kcover::is_ktree(*g->graph, max_cosets)) {
      case kcover::KTreeAnswer::yes: *out = KC_KTREE_YES; break;
      case kcover::KTreeAnswer::no: *out = KC_KTREE_NO; break;
      case kcover::KTreeAnswer::unknown: *out = KC_KTREE_UNKNOWN; break;
    }
  });
}

kc_status kc_cocycle_load(const char* path, const kc_kgraph* g, kc_cocycle** out) {
  return guard([&] {
    require(path && g && out, "null argument");
    *out = new kc_cocycle{kcover::load_cocycle(path, g->graph)};
  });
}

void kc_cocycle_free(kc_cocycle* c) {
  delete c;
}

kc_status kc_cocycle_format(const kc_cocycle* c, char** out) {
  return guard([&] {
    require(c && out, "null argument");
    *out = copy_string(kcover::format_cocycle(c->cocycle));
  });
}

kc_status kc_canonical_cocycle(const kc_kgraph* g, const char* base, kc_cocycle** out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = new kc_cocycle{
        kcover::canonical_cocycle(g->graph, base_vertex(*g->graph, base))};
  });
}

kc_status kc_degree_cocycle(const kc_kgraph* g,
                            const long long* moduli,
                            size_t           num_moduli,
                            kc_cocycle**     out) {
  return guard([&] {
    require(g && out, "null argument");
    std::optional<std::vector<std::int64_t>> m;
    if (moduli != nullptr) {
      m.emplace(moduli, moduli + num_moduli);
    }
    *out = new kc_cocycle{kcover::degree_cocycle(g->graph, m)};
  });
}

kc_status kc_covering_load(const char* path, kc_covering** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new kc_covering{kcover::load_cover(path)};
  });
}

void kc_covering_free(kc_covering* p) {
  delete p;
}

kc_status kc_covering_domain(const kc_covering* p, kc_kgraph** out) {
  return guard([&] {
    require(p && out, "null argument");
    *out = new kc_kgraph{p->map.domain_ptr()};
  });
}

kc_status kc_covering_codomain(const kc_covering* p, kc_kgraph** out) {
  return guard([&] {
    require(p && out, "null argument");
    *out = new kc_kgraph{p->map.codomain_ptr()};
  });
}

kc_status kc_covering_sheets(const kc_covering* p, size_t* out) {
  return guard([&] {
    require(p && out, "null argument");
    *out = p->map.sheets();
  });
}

kc_status kc_covering_format(const kc_covering* p,
                             const char*        domain_file,
                             const char*        codomain_file,
                             char**             out) {
  return guard([&] {
    require(p && domain_file && codomain_file && out, "null argument");
    *out = copy_string(kcover::format_cover(p->map, domain_file, codomain_file));
  });
}

kc_status kc_skew_product(const kc_kgraph*  g,
                          const kc_cocycle* c,
                          size_t            max_cosets,
                          kc_covering**     out) {
  return guard([&] {
    require(g && c && out, "null argument");
    kcover::FiniteGroupRealization const r(c->cocycle.target(), max_cosets);
    *out = new kc_covering{kcover::skew_product(g->graph, c->cocycle, r).covering};
  });
}

kc_status kc_relative_skew_product(const kc_kgraph*   g,
                                   const kc_cocycle*  c,
                                   const char* const* subgroup,
                                   size_t             num_subgroup,
                                   size_t             max_cosets,
                                   kc_covering**      out) {
  return guard([&] {
    require(g && c && out && (subgroup || num_subgroup == 0), "null argument");
    kcover::SubgroupData h{c->cocycle.target(), {}, std::nullopt};
    for (size_t i = 0; i < num_subgroup; ++i) {
      h.generators.push_back(kcover::parse_word(subgroup[i], h.ambient.generators));
    }
    *out = new kc_covering{
        kcover::relative_skew_product(g->graph, c->cocycle, h, max_cosets).covering};
  });
}

kc_status kc_universal_cover(const kc_kgraph* g,
                             const char*      base,
                             size_t           max_cosets,
                             kc_covering**    out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = new kc_covering{
        kcover::universal_cover(g->graph, base_vertex(*g->graph, base), max_cosets)
            .covering};
  });
}

kc_status kc_stabilizer(const kc_covering* p, const char* vertex, char** report) {
  return guard([&] {
    require(p && report, "null argument");
    auto const& dom = p->map.domain();
    auto const  v   = vertex ? dom.vertex_index(vertex) : kcover::VertexIndex{0};
    auto const  st  = kcover::stabilizer_subgroup(p->map, v);
    auto const& names = st.subgroup.ambient.generators;
    std::ostringstream out;
    out << "stabilizer of " << dom.vertex_id(v) << " in pi("
        << p->map.codomain().vertex_id(p->map.vertex_image(v)) << ") = "
        << kcover::format_presentation(st.subgroup.ambient) << '\n';
    out << "index " << st.subgroup.table->size() << '\n';
    out << "generators:";
    if (st.subgroup.generators.empty()) {
      out << " none";
    }
    out << '\n';
    for (auto const& w : st.subgroup.generators) {
      out << "  " << kcover::format_word(w, names) << '\n';
    }
    out << "fibre action:\n" << format_table(*st.subgroup.table, names);
    out << "cosets:";
    for (auto w : st.fiber_of_coset) {
      out << ' ' << dom.vertex_id(w);
    }
    out << '\n';
    *report = copy_string(out.str());
  });
}

kc_status kc_deck_group(const kc_covering* p,
                        size_t*            order,
                        int*               transitive,
                        size_t*            normalizer_order) {
  return guard([&] {
    require(p && order && transitive, "null argument");
    auto const d = kcover::deck_group(p->map);
    *order       = d.group.order();
    *transitive  = d.transitive ? 1 : 0;
    if (normalizer_order != nullptr) {
      auto const st = kcover::stabilizer_subgroup(p->map, 0);
      *normalizer_order = kcover::normalizer_quotient_order(*st.subgroup.table);
    }
  });
}

kc_status kc_quotient_by_deck(const kc_covering* p,
                              kc_covering**      orbit_map,
                              kc_covering**      induced) {
  return guard([&] {
    require(p && orbit_map && induced, "null argument");
    auto r     = kcover::quotient(p->map, deck(p->map));
    auto orbit = std::make_unique<kc_covering>(kc_covering{std::move(r.orbit_map)});
    *induced   = new kc_covering{std::move(*r.induced)};
    *orbit_map = orbit.release();
  });
}

kc_status kc_gross_tucker_deck(const kc_covering* p,
                               size_t             max_cosets,
                               kc_cocycle**       cocycle,
                               kc_covering**      skew,
                               kc_covering**      isomorphism) {
  return guard([&] {
    require(p && cocycle && skew && isomorphism, "null argument");
    auto gt = kcover::gross_tucker(p->map.domain_ptr(), deck(p->map), std::nullopt,
                                   max_cosets);
    auto iso = kcover::check_covering(gt.skew.product, p->map.domain_ptr(), gt.isomorphism);
    auto c   = std::make_unique<kc_cocycle>(kc_cocycle{std::move(gt.cocycle)});
    auto s   = std::make_unique<kc_covering>(kc_covering{std::move(gt.skew.covering)});
    *isomorphism = new kc_covering{std::move(iso)};
    *cocycle     = c.release();
    *skew        = s.release();
  });
}

kc_status kc_covering_morphism(const kc_covering* p,
                               const kc_covering* q,
                               const char*        v,
                               const char*        u,
                               int*               exists,
                               char**             map) {
  return guard([&] {
    require(p && q && v && u && exists && map, "null argument");
    auto f = kcover::covering_morphism(
        p->map, q->map, p->map.domain().vertex_index(v), q->map.domain().vertex_index(u));
    *exists = f ? 1 : 0;
    *map    = f ? copy_string(format_map(p->map, q->map, *f)) : nullptr;
  });
}

kc_status kc_covering_isomorphism(const kc_covering* p,
                                  const kc_covering* q,
                                  int*               exists,
                                  char**             map) {
  return guard([&] {
    require(p && q && exists && map, "null argument");
    auto f  = kcover::are_isomorphic_coverings(p->map, q->map);
    *exists = f ? 1 : 0;
    *map    = f ? copy_string(format_map(p->map, q->map, *f)) : nullptr;
  });
}

kc_status kc_classify(const kc_kgraph*   g,
                      const char*        base,
                      size_t             max_sheets,
                      kc_covering_list** out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = new kc_covering_list{kcover::classify_coverings(
        g->graph, base_vertex(*g->graph, base), max_sheets)};
  });
}

void kc_covering_list_free(kc_covering_list* l) {
  delete l;
}

size_t kc_covering_list_size(const kc_covering_list* l) {
  return l ? l->entries.size() : 0;
}

kc_status kc_covering_list_at(const kc_covering_list* l, size_t i, kc_covering** out) {
  return guard([&] {
    require(l && out && i < l->entries.size(), "index out of range");
    *out = new kc_covering{l->entries[i].cover.covering};
  });
}

kc_status kc_covering_list_certificate(const kc_covering_list* l, size_t i, char** out) {
  return guard([&] {
    require(l && out && i < l->entries.size(), "index out of range");
    auto const& e     = l->entries[i];
    std::ostringstream s;
    s << "pi = " << kcover::format_presentation(e.pi) << '\n';
    s << "index " << e.table.size() << '\n';
    s << "coset table of H:\n";
    s << format_table(e.table, e.pi.generators);
    s << "stabiliser table at base fibre point equals coset table: yes\n";
    s << "connected: yes\n";
    s << "deck group order " << e.deck_order << ", |N(H)/H| = " << e.normalizer_order
      << '\n';
    s << "normal: " << (e.deck_order == e.table.size() ? "yes" : "no") << '\n';
    *out = copy_string(s.str());
  });
}

}  // extern "C"
