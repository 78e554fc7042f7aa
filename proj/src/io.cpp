#include "kcover/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "kcover/error.hpp"

namespace kcover {

  namespace {
    struct Line {
      std::size_t              number;
      std::vector<std::string> tokens;
    };

    std::vector<Line> tokenize(std::string_view text) {
      std::vector<Line>  lines;
      std::istringstream in{std::string(text)};
      std::string        raw;
      for (std::size_t n = 1; std::getline(in, raw); ++n) {
        if (auto hash = raw.find('#'); hash != std::string::npos) {
          raw.erase(hash);
        }
        std::istringstream words(raw);
        Line               line{n, {}};
        for (std::string w; words >> w;) {
          line.tokens.push_back(std::move(w));
        }
        if (!line.tokens.empty()) {
          lines.push_back(std::move(line));
        }
      }
      return lines;
    }

    [[noreturn]] void parse_fail(Line const& line, std::string const& what) {
      fail(ErrorCode::parse_error, "line " + std::to_string(line.number) + ": " + what);
    }

    void expect_arity(Line const& line, std::size_t n) {
      if (line.tokens.size() != n) {
        parse_fail(line,
                   "'" + line.tokens[0] + "' takes " + std::to_string(n - 1)
                       + " argument" + (n == 2 ? "" : "s"));
      }
    }

    std::string const& id(Line const& line, std::size_t i) {
      static std::regex const pattern("[A-Za-z0-9_]+(@[A-Za-z0-9_]+)*");
      if (!std::regex_match(line.tokens[i], pattern)) {
        parse_fail(line, "bad id '" + line.tokens[i] + "'");
      }
      return line.tokens[i];
    }

    template <typename Int>
    Int number(Line const& line, std::string_view token) {
      Int value{};
      auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || end != token.data() + token.size()) {
        parse_fail(line, "bad number '" + std::string(token) + "'");
      }
      return value;
    }

    std::string rest(Line const& line, std::size_t from) {
      std::string out;
      for (std::size_t i = from; i < line.tokens.size(); ++i) {
        if (!out.empty()) {
          out += ' ';
        }
        out += line.tokens[i];
      }
      return out;
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // k-graphs
  ////////////////////////////////////////////////////////////////////////

  KGraphData parse_kgraph(std::string_view text) {
    KGraphData                         data;
    bool                               header = false;
    std::set<std::string>              vertices;
    std::map<std::string, std::size_t> colors;
    for (auto const& line : tokenize(text)) {
      std::string const& d = line.tokens[0];
      if (!header) {
        if (d != "kgraph") {
          parse_fail(line, "expected 'kgraph <k>' first");
        }
        expect_arity(line, 2);
        data.skeleton.k = number<std::size_t>(line, line.tokens[1]);
        if (data.skeleton.k == 0) {
          parse_fail(line, "rank must be positive");
        }
        header = true;
      } else if (d == "vertex") {
        expect_arity(line, 2);
        if (!vertices.insert(id(line, 1)).second) {
          parse_fail(line, "duplicate vertex " + line.tokens[1]);
        }
        data.skeleton.vertices.push_back(line.tokens[1]);
      } else if (d == "edge") {
        expect_arity(line, 5);
        EdgeSpec e{id(line, 1),
                   number<std::size_t>(line, line.tokens[2]),
                   id(line, 3),
                   id(line, 4)};
        if (e.color < 1 || e.color > data.skeleton.k) {
          parse_fail(line, "colour " + line.tokens[2] + " is out of range");
        }
        if (!vertices.contains(e.source) || !vertices.contains(e.range)) {
          parse_fail(line, "edge " + e.id + " uses an undeclared vertex");
        }
        if (!colors.emplace(e.id, e.color).second) {
          parse_fail(line, "duplicate edge " + e.id);
        }
        data.skeleton.edges.push_back(std::move(e));
      } else if (d == "square") {
        expect_arity(line, 5);
        SquareSpec s{id(line, 1), id(line, 2), id(line, 3), id(line, 4)};
        for (std::size_t i = 1; i <= 4; ++i) {
          if (!colors.contains(line.tokens[i])) {
            parse_fail(line, "unknown edge " + line.tokens[i]);
          }
        }
        if (colors[s.e] > colors[s.f]) {
          parse_fail(line,
                     "square must be written e f g h with color(e) < color(f)");
        }
        data.squares.push_back(std::move(s));
      } else if (d == "kgraph") {
        parse_fail(line, "repeated 'kgraph' header");
      } else {
        parse_fail(line, "unknown directive '" + d + "'");
      }
    }
    if (!header) {
      fail(ErrorCode::parse_error, "missing 'kgraph <k>' header");
    }
    return data;
  }

  KGraph read_kgraph(std::string_view text) {
    KGraphData const data = parse_kgraph(text);
    return KGraph::validate(data.skeleton, data.squares);
  }

  std::string format_kgraph(KGraph const& g) {
    std::ostringstream out;
    out << "kgraph " << g.rank() << '\n';
    for (auto const& v : g.vertex_ids()) {
      out << "vertex " << v << '\n';
    }
    for (auto const& e : g.edges()) {
      out << "edge " << e.id << ' ' << e.color << ' ' << g.vertex_id(e.source)
          << ' ' << g.vertex_id(e.range) << '\n';
    }
    for (auto const& s : g.square_table()) {
      out << "square " << s.e << ' ' << s.f << ' ' << s.g << ' ' << s.h << '\n';
    }
    return out.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Cocycles
  ////////////////////////////////////////////////////////////////////////

  Cocycle parse_cocycle(std::string_view text, std::shared_ptr<KGraph const> g) {
    std::optional<GroupPresentation>  group;
    std::optional<AbelianTarget>      target;
    std::map<EdgeIndex, Line>         eta;
    for (auto const& line : tokenize(text)) {
      std::string const& d = line.tokens[0];
      if (d == "group") {
        if (group || target) {
          parse_fail(line, "repeated target declaration");
        }
        group.emplace();
        for (std::size_t i = 1; i < line.tokens.size(); ++i) {
          if (group->generator_index(id(line, i))) {
            parse_fail(line, "duplicate generator " + line.tokens[i]);
          }
          group->generators.push_back(line.tokens[i]);
        }
      } else if (d == "relator") {
        if (!group) {
          parse_fail(line, "'relator' needs a preceding 'group'");
        }
        if (line.tokens.size() < 2) {
          parse_fail(line, "empty relator");
        }
        try {
          group->relators.push_back(parse_word(rest(line, 1), group->generators));
        } catch (Error const& e) {
          parse_fail(line, e.witness());
        }
      } else if (d == "target") {
        if (group || target) {
          parse_fail(line, "repeated target declaration");
        }
        if (line.tokens.size() < 2 || line.tokens[1].rfind("Z^", 0) != 0) {
          parse_fail(line, "expected 'target Z^k [mod m1 ... mk]'");
        }
        auto const k = number<std::size_t>(line, std::string_view(line.tokens[1]).substr(2));
        target.emplace();
        target->moduli.assign(k, 0);
        if (line.tokens.size() > 2) {
          if (line.tokens[2] != "mod" || line.tokens.size() != 3 + k) {
            parse_fail(line, "expected 'mod' followed by " + std::to_string(k) + " moduli");
          }
          for (std::size_t i = 0; i < k; ++i) {
            target->moduli[i] = number<std::int64_t>(line, line.tokens[3 + i]);
            if (target->moduli[i] < 0) {
              parse_fail(line, "negative modulus");
            }
          }
        }
      } else if (d == "eta") {
        if (line.tokens.size() < 3) {
          parse_fail(line, "expected 'eta <edge> <value>'");
        }
        auto const e = g->find_edge(id(line, 1));
        if (!e) {
          parse_fail(line, "unknown edge " + line.tokens[1]);
        }
        if (!eta.emplace(*e, line).second) {
          parse_fail(line, "edge " + line.tokens[1] + " assigned twice");
        }
      } else {
        parse_fail(line, "unknown directive '" + d + "'");
      }
    }
    if (!group && !target) {
      fail(ErrorCode::parse_error, "missing 'group' or 'target' declaration");
    }
    for (EdgeIndex a = 0; a < g->num_edges(); ++a) {
      if (!eta.contains(a)) {
        fail(ErrorCode::parse_error, "edge " + g->edge(a).id + " has no value");
      }
    }
    if (group) {
      std::vector<GroupWord> values;
      for (auto const& [a, line] : eta) {
        try {
          values.push_back(parse_word(rest(line, 2), group->generators));
        } catch (Error const& e) {
          parse_fail(line, e.witness());
        }
      }
      return Cocycle::from_words(std::move(g), std::move(*group), std::move(values));
    }
    std::vector<ZVector> values;
    for (auto const& [a, line] : eta) {
      std::string v = rest(line, 2);
      v.erase(std::remove(v.begin(), v.end(), ' '), v.end());
      if (v.size() < 2 || v.front() != '(' || v.back() != ')') {
        parse_fail(line, "expected a vector (v1,...,vk)");
      }
      ZVector z;
      std::string_view body = std::string_view(v).substr(1, v.size() - 2);
      while (!body.empty()) {
        auto const comma = body.find(',');
        z.push_back(number<std::int64_t>(line, body.substr(0, comma)));
        if (comma == std::string_view::npos) {
          break;
        }
        body.remove_prefix(comma + 1);
        if (body.empty()) {
          parse_fail(line, "trailing comma");
        }
      }
      if (z.size() != target->moduli.size()) {
        parse_fail(line, "vector must have " + std::to_string(target->moduli.size())
                             + " entries");
      }
      values.push_back(std::move(z));
    }
    return Cocycle::from_vectors(std::move(g), std::move(*target), std::move(values));
  }

  std::string format_cocycle(Cocycle const& c) {
    std::ostringstream out;
    KGraph const&      g = c.source();
    if (c.is_abelian()) {
      auto const& m = c.abelian_target().moduli;
      out << "target Z^" << m.size();
      if (std::any_of(m.begin(), m.end(), [](auto x) { return x != 0; })) {
        out << " mod";
        for (auto x : m) {
          out << ' ' << x;
        }
      }
      out << '\n';
      for (EdgeIndex a = 0; a < g.num_edges(); ++a) {
        out << "eta " << g.edge(a).id << " (";
        auto const& v = c.vector_value(a);
        for (std::size_t i = 0; i < v.size(); ++i) {
          out << (i ? "," : "") << v[i];
        }
        out << ")\n";
      }
      return out.str();
    }
    GroupPresentation const& p = c.target();
    out << "group";
    for (auto const& s : p.generators) {
      out << ' ' << s;
    }
    out << '\n';
    for (auto const& r : p.relators) {
      out << "relator " << format_word(r, p.generators) << '\n';
    }
    for (EdgeIndex a = 0; a < g.num_edges(); ++a) {
      out << "eta " << g.edge(a).id << ' ' << format_word(c.value(a), p.generators)
          << '\n';
    }
    return out.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Covers
  ////////////////////////////////////////////////////////////////////////

  CoverData parse_cover(std::string_view text) {
    CoverData d;
    bool      header = false;
    for (auto const& line : tokenize(text)) {
      std::string const& t = line.tokens[0];
      if (t == "cover") {
        if (header) {
          parse_fail(line, "repeated 'cover' header");
        }
        expect_arity(line, 3);
        d.domain   = line.tokens[1];
        d.codomain = line.tokens[2];
        header     = true;
      } else if (!header) {
        parse_fail(line, "expected 'cover <domain> <codomain>' first");
      } else if (t == "vmap") {
        expect_arity(line, 3);
        d.vmap.emplace_back(id(line, 1), id(line, 2));
      } else if (t == "emap") {
        expect_arity(line, 3);
        d.emap.emplace_back(id(line, 1), id(line, 2));
      } else {
        parse_fail(line, "unknown directive '" + t + "'");
      }
    }
    if (!header) {
      fail(ErrorCode::parse_error, "missing 'cover' header");
    }
    return d;
  }

  CoveringMap resolve_cover(CoverData const&              data,
                            std::shared_ptr<KGraph const> domain,
                            std::shared_ptr<KGraph const> codomain) {
    constexpr std::size_t unset = SIZE_MAX;
    GraphMap              m;
    m.vertices.assign(domain->num_vertices(), unset);
    m.edges.assign(domain->num_edges(), unset);
    for (auto const& [from, to] : data.vmap) {
      auto v = domain->find_vertex(from);
      auto w = codomain->find_vertex(to);
      if (!v || !w) {
        fail(ErrorCode::parse_error, "vmap " + from + " " + to + ": unknown vertex");
      }
      if (m.vertices[*v] != unset) {
        fail(ErrorCode::parse_error, "vertex " + from + " mapped twice");
      }
      m.vertices[*v] = *w;
    }
    for (auto const& [from, to] : data.emap) {
      auto e = domain->find_edge(from);
      auto f = codomain->find_edge(to);
      if (!e || !f) {
        fail(ErrorCode::parse_error, "emap " + from + " " + to + ": unknown edge");
      }
      if (m.edges[*e] != unset) {
        fail(ErrorCode::parse_error, "edge " + from + " mapped twice");
      }
      m.edges[*e] = *f;
    }
    for (VertexIndex v = 0; v < domain->num_vertices(); ++v) {
      if (m.vertices[v] == unset) {
        fail(ErrorCode::parse_error, "vertex " + domain->vertex_id(v) + " is not mapped");
      }
    }
    for (EdgeIndex e = 0; e < domain->num_edges(); ++e) {
      if (m.edges[e] == unset) {
        fail(ErrorCode::parse_error, "edge " + domain->edge(e).id + " is not mapped");
      }
    }
    return check_covering(std::move(domain), std::move(codomain), std::move(m));
  }

  std::string format_cover(CoveringMap const& p,
                           std::string const& domain_file,
                           std::string const& codomain_file) {
    std::ostringstream out;
    out << "cover " << domain_file << ' ' << codomain_file << '\n';
    for (VertexIndex v = 0; v < p.domain().num_vertices(); ++v) {
      out << "vmap " << p.domain().vertex_id(v) << ' '
          << p.codomain().vertex_id(p.vertex_image(v)) << '\n';
    }
    for (EdgeIndex e = 0; e < p.domain().num_edges(); ++e) {
      out << "emap " << p.domain().edge(e).id << ' '
          << p.codomain().edge(p.edge_image(e)).id << '\n';
    }
    return out.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Files
  ////////////////////////////////////////////////////////////////////////

  std::string read_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      fail(ErrorCode::parse_error, "cannot read " + path.string());
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  void write_file(std::filesystem::path const& path, std::string_view text) {
    if (path.has_parent_path()) {
      std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
      fail(ErrorCode::invalid_argument, "cannot write " + path.string());
    }
  }

  namespace {
    // Prefix parse errors with the file name.
    template <typename F>
    auto in_file(std::filesystem::path const& path, F&& f) {
      try {
        return f();
      } catch (Error const& e) {
        if (e.code() != ErrorCode::parse_error
            || e.witness().rfind("cannot read", 0) == 0) {
          throw;
        }
        fail(ErrorCode::parse_error, path.string() + ": " + e.witness());
      }
    }
  }  // namespace

  std::shared_ptr<KGraph const> load_kgraph(std::filesystem::path const& path) {
    std::string const text = read_file(path);
    return std::make_shared<KGraph const>(
        in_file(path, [&] { return read_kgraph(text); }));
  }

  Cocycle load_cocycle(std::filesystem::path const& path,
                       std::shared_ptr<KGraph const> g) {
    std::string const text = read_file(path);
    return in_file(path, [&] { return parse_cocycle(text, g); });
  }

  CoveringMap load_cover(std::filesystem::path const& path) {
    std::string const     text = read_file(path);
    CoverData const       data = in_file(path, [&] { return parse_cover(text); });
    std::filesystem::path dir  = path.parent_path();
    auto domain   = load_kgraph(dir / data.domain);
    auto codomain = load_kgraph(dir / data.codomain);
    return in_file(path, [&] { return resolve_cover(data, domain, codomain); });
  }

}  // namespace kcover
