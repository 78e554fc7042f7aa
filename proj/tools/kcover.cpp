// Command-line front end.  Exit status: 0 on success, 1 on domain errors,
// 2 on parse errors.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kcover/kcover.h"

namespace fs = std::filesystem;

namespace {

  struct Failure {
    kc_status status;
  };

  void check(kc_status s) {
    if (s != KC_OK) {
      throw Failure{s};
    }
  }

  // Owning wrappers for the C handles.
  struct Free {
    void operator()(kc_kgraph* g) const { kc_kgraph_free(g); }
    void operator()(kc_cocycle* c) const { kc_cocycle_free(c); }
    void operator()(kc_covering* p) const { kc_covering_free(p); }
    void operator()(kc_covering_list* l) const { kc_covering_list_free(l); }
  };
  using Graph    = std::unique_ptr<kc_kgraph, Free>;
  using Cocycle  = std::unique_ptr<kc_cocycle, Free>;
  using Covering = std::unique_ptr<kc_covering, Free>;
  using List     = std::unique_ptr<kc_covering_list, Free>;

  std::string take(char* s) {
    std::string out = s ? s : "";
    kc_string_free(s);
    return out;
  }

  struct Options {
    std::optional<std::string> base;
    std::size_t                max_cosets = 10000;
    std::size_t                sheets     = 1;
    std::string                out        = ".";
    bool                       emit_proof = false;
    bool                       raw        = false;
    std::vector<std::string>   subgroup;
    std::vector<std::string>   files;
    std::string                v, u;

    char const* base_or_null() const {
      return base ? base->c_str() : nullptr;
    }
  };

  void write(Options const& o, std::string const& name, std::string const& text) {
    fs::path const path = fs::path(o.out) / name;
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) {
      throw std::runtime_error("cannot write " + path.string());
    }
  }

  Graph load_graph(std::string const& path) {
    kc_kgraph* g = nullptr;
    check(kc_kgraph_load(path.c_str(), &g));
    return Graph(g);
  }

  Covering load_cover(std::string const& path) {
    kc_covering* p = nullptr;
    check(kc_covering_load(path.c_str(), &p));
    return Covering(p);
  }

  std::string format(kc_kgraph const* g) {
    char* s = nullptr;
    check(kc_kgraph_format(g, &s));
    return take(s);
  }

  std::string format(kc_covering const* p, std::string const& dom, std::string const& cod) {
    char* s = nullptr;
    check(kc_covering_format(p, dom.c_str(), cod.c_str(), &s));
    return take(s);
  }

  std::string format(kc_cocycle const* c) {
    char* s = nullptr;
    check(kc_cocycle_format(c, &s));
    return take(s);
  }

  Graph domain(kc_covering const* p) {
    kc_kgraph* g = nullptr;
    check(kc_covering_domain(p, &g));
    return Graph(g);
  }

  Graph codomain(kc_covering const* p) {
    kc_kgraph* g = nullptr;
    check(kc_covering_codomain(p, &g));
    return Graph(g);
  }

  std::string plural(std::size_t n, std::string const& word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
  }

  std::string counts(kc_kgraph const* g) {
    std::size_t k, v, e, s;
    check(kc_kgraph_counts(g, &k, &v, &e, &s));
    return (v == 1 ? "1 vertex" : std::to_string(v) + " vertices") + ", "
           + plural(e, "edge") + ", " + plural(s, "square");
  }

  std::size_t sheets(kc_covering const* p) {
    std::size_t n = 0;
    check(kc_covering_sheets(p, &n));
    return n;
  }

  // Writes the covering space and a cover file over base.kg.
  void write_cover(Options const& o, kc_covering const* p, std::string const& stem) {
    Graph const d = domain(p);
    write(o, stem + ".kg", format(d.get()));
    write(o, stem + ".cv", format(p, stem + ".kg", "base.kg"));
  }

  ////////////////////////////////////////////////////////////////////////
  // Commands
  ////////////////////////////////////////////////////////////////////////

  void cmd_validate(Options const& o) {
    Graph const g = load_graph(o.files[0]);
    std::size_t k;
    check(kc_kgraph_counts(g.get(), &k, nullptr, nullptr, nullptr));
    std::cout << "valid " << k << "-graph: " << counts(g.get()) << '\n';
  }

  void cmd_pi1(Options const& o) {
    Graph const g = load_graph(o.files[0]);
    char*       p = nullptr;
    char*       a = nullptr;
    check(kc_fundamental_group(g.get(), o.base_or_null(), o.raw ? 1 : 0, &p, &a));
    std::cout << "pi1 = " << take(p) << '\n' << "abelianization: " << take(a) << '\n';
  }

  void cmd_cocycle_canonical(Options const& o) {
    Graph const g = load_graph(o.files[0]);
    kc_cocycle* c = nullptr;
    check(kc_canonical_cocycle(g.get(), o.base_or_null(), &c));
    Cocycle const     eta(c);
    std::string const text = format(eta.get());
    write(o, "base.kg", format(g.get()));
    write(o, "cocycle.cc", text);
    std::cout << text;
  }

  void cmd_classify(Options const& o) {
    Graph const       g = load_graph(o.files[0]);
    kc_covering_list* l = nullptr;
    check(kc_classify(g.get(), o.base_or_null(), o.sheets, &l));
    List const        list(l);
    std::size_t const n = kc_covering_list_size(list.get());
    write(o, "base.kg", format(g.get()));
    std::string proof;
    for (std::size_t i = 0; i < n; ++i) {
      kc_covering* p = nullptr;
      check(kc_covering_list_at(list.get(), i, &p));
      Covering const    cover(p);
      std::string const stem = "cover_" + std::to_string(i + 1);
      write_cover(o, cover.get(), stem);
      std::size_t order, normalizer;
      int         transitive;
      check(kc_deck_group(cover.get(), &order, &transitive, &normalizer));
      std::cout << stem << ": " << plural(sheets(cover.get()), "sheet")
                << ", deck group of order " << order
                << (transitive ? " (normal)" : "") << '\n';
      if (o.emit_proof) {
        char* cert = nullptr;
        check(kc_covering_list_certificate(list.get(), i, &cert));
        proof += "[" + stem + "]\n" + take(cert);
        int   iso = 0;
        char* map = nullptr;
        for (std::size_t j = 0; j < i; ++j) {
          kc_covering* q = nullptr;
          check(kc_covering_list_at(list.get(), j, &q));
          Covering const other(q);
          if (sheets(other.get()) == sheets(cover.get())) {
            check(kc_covering_isomorphism(other.get(), cover.get(), &iso, &map));
            take(map);
            proof += "isomorphic to cover_" + std::to_string(j + 1) + ": "
                     + (iso ? "yes" : "no") + "\n";
          }
        }
      }
    }
    if (o.emit_proof) {
      write(o, "proof.txt", proof);
    }
    std::cout << n << " connected covering" << (n == 1 ? "" : "s")
              << " up to isomorphism\n";
  }

  void report_product(kc_covering const* p, std::string const& what) {
    Graph const d = domain(p);
    int         connected;
    check(kc_kgraph_is_connected(d.get(), &connected));
    std::cout << what << ": " << counts(d.get()) << ", "
              << plural(sheets(p), "sheet") << ", "
              << (connected ? "connected" : "disconnected") << '\n';
  }

  void cmd_skew(Options const& o) {
    Graph const g = load_graph(o.files[0]);
    kc_cocycle* c = nullptr;
    check(kc_cocycle_load(o.files[1].c_str(), g.get(), &c));
    Cocycle const eta(c);
    kc_covering*  p = nullptr;
    check(kc_skew_product(g.get(), eta.get(), o.max_cosets, &p));
    Covering const cover(p);
    write(o, "base.kg", format(g.get()));
    write_cover(o, cover.get(), "skew");
    report_product(cover.get(), "skew product");
  }

  void cmd_rskew(Options const& o) {
    Graph const g = load_graph(o.files[0]);
    kc_cocycle* c = nullptr;
    check(kc_cocycle_load(o.files[1].c_str(), g.get(), &c));
    Cocycle const            eta(c);
    std::vector<char const*> words;
    for (auto const& w : o.subgroup) {
      words.push_back(w.c_str());
    }
    kc_covering* p = nullptr;
    check(kc_relative_skew_product(
        g.get(), eta.get(), words.data(), words.size(), o.max_cosets, &p));
    Covering const cover(p);
    write(o, "base.kg", format(g.get()));
    write_cover(o, cover.get(), "rskew");
    report_product(cover.get(), "relative skew product");
  }

  void cmd_universal_cover(Options const& o) {
    Graph const  g = load_graph(o.files[0]);
    kc_covering* p = nullptr;
    check(kc_universal_cover(g.get(), o.base_or_null(), o.max_cosets, &p));
    Covering const cover(p);
    write(o, "base.kg", format(g.get()));
    write_cover(o, cover.get(), "universal");
    report_product(cover.get(), "universal cover");
    Graph const d = domain(cover.get());
    kc_ktree    t;
    check(kc_is_ktree(d.get(), o.max_cosets, &t));
    std::cout << "k-tree: " << (t == KC_KTREE_YES ? "yes" : t == KC_KTREE_NO ? "no" : "unknown")
              << '\n';
  }

  void cmd_is_tree(Options const& o) {
    Graph const g = load_graph(o.files[0]);
    kc_ktree    t;
    check(kc_is_ktree(g.get(), o.max_cosets, &t));
    std::cout << (t == KC_KTREE_YES ? "yes" : t == KC_KTREE_NO ? "no" : "unknown") << '\n';
  }

  void cmd_check_cover(Options const& o) {
    Covering const p = load_cover(o.files[0]);
    Graph const    d = domain(p.get());
    int            connected;
    check(kc_kgraph_is_connected(d.get(), &connected));
    std::cout << "valid covering: " << plural(sheets(p.get()), "sheet") << ", "
              << (connected ? "connected" : "disconnected") << '\n';
  }

  void cmd_deck(Options const& o) {
    Covering const p = load_cover(o.files[0]);
    std::size_t    order, normalizer;
    int            transitive;
    check(kc_deck_group(p.get(), &order, &transitive, &normalizer));
    std::cout << "deck group of order " << order << ", "
              << (transitive ? "transitive on fibres (normal covering)"
                             : "not transitive on fibres")
              << '\n';
    if (o.emit_proof) {
      char* report = nullptr;
      check(kc_stabilizer(p.get(), nullptr, &report));
      write(o, "proof.txt",
            take(report) + "deck group order " + std::to_string(order)
                + ", |N(H)/H| = " + std::to_string(normalizer) + "\n");
    }
  }

  void cmd_stabilizer(Options const& o) {
    Covering const p      = load_cover(o.files[0]);
    char*          report = nullptr;
    check(kc_stabilizer(p.get(), o.base_or_null(), &report));
    std::cout << take(report);
  }

  void cmd_quotient(Options const& o) {
    Covering const p     = load_cover(o.files[0]);
    kc_covering*   orbit = nullptr;
    kc_covering*   ind   = nullptr;
    check(kc_quotient_by_deck(p.get(), &orbit, &ind));
    Covering const orbit_map(orbit), induced(ind);
    Graph const    base = codomain(p.get());
    Graph const    q    = domain(induced.get());
    write(o, "base.kg", format(base.get()));
    write(o, "cover.kg", format(domain(p.get()).get()));
    write(o, "quotient.kg", format(q.get()));
    write(o, "orbit.cv", format(orbit_map.get(), "cover.kg", "quotient.kg"));
    write(o, "induced.cv", format(induced.get(), "quotient.kg", "base.kg"));
    std::cout << "quotient by the deck group: " << counts(q.get()) << "; covers the base with "
              << plural(sheets(induced.get()), "sheet") << '\n';
  }

  void cmd_gross_tucker(Options const& o) {
    Covering const p   = load_cover(o.files[0]);
    kc_cocycle*    c   = nullptr;
    kc_covering*   s   = nullptr;
    kc_covering*   iso = nullptr;
    check(kc_gross_tucker_deck(p.get(), o.max_cosets, &c, &s, &iso));
    Cocycle const  eta(c);
    Covering const skew(s), isomorphism(iso);
    Graph const    sigma = domain(p.get());
    Graph const    q     = codomain(skew.get());
    write(o, "sigma.kg", format(sigma.get()));
    write(o, "quotient.kg", format(q.get()));
    write(o, "cocycle.cc", format(eta.get()));
    write(o, "skew.kg", format(domain(skew.get()).get()));
    write(o, "skew.cv", format(skew.get(), "skew.kg", "quotient.kg"));
    write(o, "iso.cv", format(isomorphism.get(), "skew.kg", "sigma.kg"));
    std::cout << "quotient: " << counts(q.get()) << '\n' << format(eta.get());
    std::cout << "skew product isomorphic to the covering space: yes\n";
  }

  void print_map(bool exists, char* map, std::string const& yes, std::string const& no) {
    if (exists) {
      std::cout << yes << ":\n" << take(map);
    } else {
      take(map);
      std::cout << no << '\n';
    }
  }

  void cmd_morphism(Options const& o) {
    Covering const p = load_cover(o.files[0]);
    Covering const q = load_cover(o.files[1]);
    int            exists = 0;
    char*          map    = nullptr;
    check(kc_covering_morphism(p.get(), q.get(), o.v.c_str(), o.u.c_str(), &exists, &map));
    print_map(exists, map, "covering morphism " + o.v + " -> " + o.u,
              "no covering morphism sends " + o.v + " to " + o.u);
  }

  void cmd_iso(Options const& o) {
    Covering const p = load_cover(o.files[0]);
    Covering const q = load_cover(o.files[1]);
    int            exists = 0;
    char*          map    = nullptr;
    check(kc_covering_isomorphism(p.get(), q.get(), &exists, &map));
    print_map(exists, map, "isomorphic coverings", "coverings are not isomorphic");
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite k-graphs: coverings, fundamental groups and skew products"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    char const* name;
    char const* help;
    std::vector<char const*> files;
    void (*run)(Options const&);
  };
  std::vector<Command> const commands{
      {"validate", "check the k-graph axioms", {"kgraph"}, cmd_validate},
      {"pi1", "presentation of the fundamental group", {"kgraph"}, cmd_pi1},
      {"cocycle-canonical", "canonical cocycle into pi1", {"kgraph"}, cmd_cocycle_canonical},
      {"classify", "connected coverings up to isomorphism", {"kgraph"}, cmd_classify},
      {"skew", "skew product by a finite group", {"kgraph", "cocycle"}, cmd_skew},
      {"rskew", "relative skew product by a subgroup", {"kgraph", "cocycle"}, cmd_rskew},
      {"quotient", "quotient of a covering by its deck group", {"cover"}, cmd_quotient},
      {"check-cover", "validate a covering map", {"cover"}, cmd_check_cover},
      {"deck", "deck transformation group", {"cover"}, cmd_deck},
      {"stabilizer", "stabiliser subgroup of a fibre vertex", {"cover"}, cmd_stabilizer},
      {"gross-tucker", "recover a covering as a skew product of its deck quotient", {"cover"},
       cmd_gross_tucker},
      {"universal-cover", "universal cover when pi1 is finite", {"kgraph"}, cmd_universal_cover},
      {"is-tree", "decide whether the k-graph is a k-tree", {"kgraph"}, cmd_is_tree},
      {"morphism", "covering morphism sending v to u", {"p", "q"}, cmd_morphism},
      {"iso", "isomorphism of coverings", {"p", "q"}, cmd_iso},
  };

  o.files.resize(2);
  void (*selected)(Options const&) = nullptr;
  for (auto const& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    for (std::size_t i = 0; i < c.files.size(); ++i) {
      sub->add_option(c.files[i], o.files[i], "input file")->required();
    }
    if (std::string(c.name) == "morphism") {
      sub->add_option("v", o.v, "vertex of p's covering space")->required();
      sub->add_option("u", o.u, "vertex of q's covering space")->required();
    }
    sub->add_option("--base", o.base, "base vertex (default: least id)");
    sub->add_option("--max-cosets", o.max_cosets, "coset enumeration budget")
        ->check(CLI::PositiveNumber);
    sub->add_option("--sheets", o.sheets, "sheet bound for classify")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "output directory");
    sub->add_flag("--emit-proof", o.emit_proof, "write cross-check certificates");
    if (std::string(c.name) == "pi1") {
      sub->add_flag("--raw", o.raw, "keep tree edges as generators");
    }
    if (std::string(c.name) == "rskew") {
      sub->add_option("--subgroup", o.subgroup, "subgroup generator word");
    }
    sub->callback([&selected, run = c.run] { selected = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    selected(o);
  } catch (Failure const& f) {
    std::cerr << kc_last_error_name() << ": " << kc_last_error_detail() << '\n';
    return f.status == KC_PARSE_ERROR ? 2 : 1;
  } catch (std::exception const& e) {
    std::cerr << "InternalError: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
