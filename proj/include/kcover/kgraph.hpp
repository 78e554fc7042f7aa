// Finite k-graphs presented by a coloured 1-skeleton and a table of
// commuting squares, together with path arithmetic in colour-sorted normal
// form.

#ifndef KCOVER_KGRAPH_HPP_
#define KCOVER_KGRAPH_HPP_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace kcover {

  using VertexIndex = std::size_t;
  using EdgeIndex   = std::size_t;

  // An element of N^k.  Entry c-1 counts the edges of colour c.
  class Degree {
   public:
    Degree() = default;
    explicit Degree(std::size_t k) : _entries(k, 0) {}
    Degree(std::initializer_list<std::size_t> entries) : _entries(entries) {}
    explicit Degree(std::vector<std::size_t> entries)
        : _entries(std::move(entries)) {}

    // The standard basis vector of colour `color` (1-based).
    static Degree basis(std::size_t k, std::size_t color);

    std::size_t rank() const noexcept {
      return _entries.size();
    }
    std::size_t operator[](std::size_t i) const {
      return _entries.at(i);
    }
    std::size_t& operator[](std::size_t i) {
      return _entries.at(i);
    }
    std::size_t total() const noexcept;
    std::vector<std::size_t> const& entries() const noexcept {
      return _entries;
    }

    // Colours (1-based) in ascending order, each repeated by its count.
    std::vector<std::size_t> sorted_colors() const;

    friend Degree operator+(Degree const& a, Degree const& b);
    friend auto   operator<=>(Degree const&, Degree const&) = default;

   private:
    std::vector<std::size_t> _entries;
  };

  std::string to_string(Degree const& d);

  struct EdgeSpec {
    std::string id;
    std::size_t color;  // 1..k
    std::string source;
    std::string range;
  };

  struct Skeleton {
    std::size_t              k = 1;
    std::vector<std::string> vertices;
    std::vector<EdgeSpec>    edges;
  };

  // The relation e∘f = g∘h, with color(e) = color(h) < color(f) = color(g).
  struct SquareSpec {
    std::string e, f, g, h;
    friend auto operator<=>(SquareSpec const&, SquareSpec const&) = default;
  };

  using SquareTable = std::vector<SquareSpec>;

  struct Edge {
    std::string id;
    std::size_t color;
    VertexIndex source;
    VertexIndex range;
  };

  struct Square {
    EdgeIndex e, f, g, h;
    friend auto operator<=>(Square const&, Square const&) = default;
  };

  // A morphism stored as its colour-sorted edge sequence.  edges()[0] is
  // applied last, so source(edges()[i]) == range(edges()[i + 1]).
  class Morphism {
   public:
    Morphism(VertexIndex            range,
             VertexIndex            source,
             std::vector<EdgeIndex> edges,
             Degree                 degree)
        : _range(range),
          _source(source),
          _edges(std::move(edges)),
          _degree(std::move(degree)) {}

    VertexIndex range() const noexcept {
      return _range;
    }
    VertexIndex source() const noexcept {
      return _source;
    }
    std::vector<EdgeIndex> const& edges() const noexcept {
      return _edges;
    }
    Degree const& degree() const noexcept {
      return _degree;
    }
    bool is_identity() const noexcept {
      return _edges.empty();
    }

    friend bool operator==(Morphism const& a, Morphism const& b) {
      return a._range == b._range && a._source == b._source
             && a._edges == b._edges;
    }
    friend auto operator<=>(Morphism const& a, Morphism const& b) {
      return std::tie(a._range, a._source, a._edges)
             <=> std::tie(b._range, b._source, b._edges);
    }

   private:
    VertexIndex            _range;
    VertexIndex            _source;
    std::vector<EdgeIndex> _edges;
    Degree                 _degree;
  };

  enum class Direction { source, range };

  struct ValidateOptions {
    // Unique factorisation is checked exhaustively on every path of total
    // degree at most this bound.  3 suffices for skeleton + squares data.
    std::size_t max_check_degree = 3;
  };

  class KGraph {
   public:
    // Throws BadSquare, NotBijective or FactorizationFailure for data that
    // does not present a k-graph, and InvalidArgument for structurally
    // malformed input (unknown ids, duplicate ids, colours out of range).
    static KGraph validate(Skeleton const&    skeleton,
                           SquareTable const& squares,
                           ValidateOptions    options = {});

    std::size_t rank() const noexcept {
      return _k;
    }
    std::size_t num_vertices() const noexcept {
      return _vertices.size();
    }
    std::size_t num_edges() const noexcept {
      return _edges.size();
    }
    std::size_t num_squares() const noexcept {
      return _squares.size();
    }

    // Vertices and edges are indexed in lexicographic order of their ids.
    std::string const& vertex_id(VertexIndex v) const {
      return _vertices.at(v);
    }
    Edge const& edge(EdgeIndex e) const {
      return _edges.at(e);
    }
    std::vector<std::string> const& vertex_ids() const noexcept {
      return _vertices;
    }
    std::vector<Edge> const& edges() const noexcept {
      return _edges;
    }
    std::vector<Square> const& squares() const noexcept {
      return _squares;
    }

    std::optional<VertexIndex> find_vertex(std::string_view id) const;
    std::optional<EdgeIndex>   find_edge(std::string_view id) const;
    // As above but throw InvalidArgument for unknown ids.
    VertexIndex vertex_index(std::string_view id) const;
    EdgeIndex   edge_index(std::string_view id) const;

    // Edges with the given source (resp. range), ascending by id.
    std::span<EdgeIndex const> edges_out(VertexIndex v) const {
      return _out.at(v);
    }
    std::span<EdgeIndex const> edges_in(VertexIndex v) const {
      return _in.at(v);
    }

    // For composable edges x∘y of distinct colours, the unique pair (x', y')
    // with x∘y = x'∘y', color(x') = color(y) and color(y') = color(x).
    std::pair<EdgeIndex, EdgeIndex> swap(EdgeIndex x, EdgeIndex y) const;

    Skeleton    skeleton() const;
    SquareTable square_table() const;

    Degree   edge_degree(EdgeIndex e) const;
    Morphism identity(VertexIndex v) const;
    // Throws NotComposable (witness names the first bad junction) or
    // InvalidArgument for an empty path; use identity() for those.
    Morphism normal_form(std::span<EdgeIndex const> path) const;
    Morphism compose(Morphism const& left, Morphism const& right) const;
    std::pair<Morphism, Morphism> factor(Morphism const& m,
                                         Degree const&   n,
                                         Degree const&   l) const;
    std::vector<Morphism> morphisms_of_degree(VertexIndex   v,
                                              Degree const& n,
                                              Direction     direction) const;

    bool is_connected() const;
    // Component label per vertex; labels are numbered by least vertex.
    std::vector<std::size_t> components() const;

    std::string describe(std::span<EdgeIndex const> path) const;
    std::string describe(Morphism const& m) const;

   private:
    KGraph() = default;

    void check_factorization(std::size_t max_degree) const;
    std::vector<EdgeIndex> rearrange(std::vector<EdgeIndex>   path,
                                     std::vector<std::size_t> keys) const;

    std::size_t                                      _k = 1;
    std::vector<std::string>                         _vertices;
    std::vector<Edge>                                _edges;
    std::vector<Square>                              _squares;
    std::vector<std::vector<EdgeIndex>>              _out;
    std::vector<std::vector<EdgeIndex>>              _in;
    std::map<std::pair<EdgeIndex, EdgeIndex>,
             std::pair<EdgeIndex, EdgeIndex>>        _swap;
  };

}  // namespace kcover

#endif  // KCOVER_KGRAPH_HPP_
