// Text formats for k-graphs, cocycles and covering maps.
//
//   kgraph 2                   cover base2.kg base.kg
//   vertex v                   vmap v@0 v
//   edge e 1 v v               emap e@0 e
//   edge f 2 v v
//   square e f f e             group r s
//                              relator r^3
//   target Z^2 mod 2 0         eta e r s^-1
//   eta e (1,0)
//
// `#` starts a comment.  Ids are [A-Za-z0-9_]+, optionally joined by `@`
// as in generated product ids.  Writers are canonical: ids sorted, one
// directive per line.

#ifndef KCOVER_IO_HPP_
#define KCOVER_IO_HPP_

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kcover/coverings.hpp"
#include "kcover/fundamental.hpp"
#include "kcover/kgraph.hpp"

namespace kcover {

  struct KGraphData {
    Skeleton    skeleton;
    SquareTable squares;
  };

  // Throws ParseError, including for squares written with color(e) > color(f).
  KGraphData  parse_kgraph(std::string_view text);
  // Parses and validates.
  KGraph      read_kgraph(std::string_view text);
  std::string format_kgraph(KGraph const& g);

  Cocycle     parse_cocycle(std::string_view text, std::shared_ptr<KGraph const> g);
  std::string format_cocycle(Cocycle const& c);

  struct CoverData {
    std::string                                      domain;
    std::string                                      codomain;
    std::vector<std::pair<std::string, std::string>> vmap;
    std::vector<std::pair<std::string, std::string>> emap;
  };

  CoverData   parse_cover(std::string_view text);
  CoveringMap resolve_cover(CoverData const&              data,
                            std::shared_ptr<KGraph const> domain,
                            std::shared_ptr<KGraph const> codomain);
  std::string format_cover(CoveringMap const& p,
                           std::string const& domain_file,
                           std::string const& codomain_file);

  std::string read_file(std::filesystem::path const& path);
  void        write_file(std::filesystem::path const& path, std::string_view text);

  std::shared_ptr<KGraph const> load_kgraph(std::filesystem::path const& path);
  Cocycle     load_cocycle(std::filesystem::path const& path,
                           std::shared_ptr<KGraph const> g);
  // Domain and codomain paths are relative to the cover file.
  CoveringMap load_cover(std::filesystem::path const& path);

}  // namespace kcover

#endif  // KCOVER_IO_HPP_
