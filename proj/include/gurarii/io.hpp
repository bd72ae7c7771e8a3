#pragma once

// JSON exchange formats. Rationals are "p/q" strings (q omitted when 1).
// Output is canonical: sorted keys, two-space indent, trailing newline, and
// balls written with both representations in canonical order.
//
// Errors carry the JSON pointer of the offending value, e.g.
// "/maps/f/matrix/1/0: malformed rational".

#include <map>
#include <string>

#include "json.hpp"

#include "gurarii/amalgam.hpp"
#include "gurarii/banach.hpp"
#include "gurarii/fraisse.hpp"
#include "gurarii/report.hpp"

namespace gurarii::io {

using Json = nlohmann::json;

Json to_json(const Rat& r);
Json to_json(const QVec& v);
/// Row-major list of rows.
Json to_json(const QMat& m);
/// {"dim", "vrep", "hrep"}
Json to_json(const Ball& b);
/// {"dim", "ball"}
Json to_json(const Space& s);
Json to_json(const Report& r);
Json to_json(const OperatorSquare& s);
Json to_json(const Chain& c);

Rat rat_from_json(const Json& j, const std::string& where);
QVec vec_from_json(const Json& j, std::size_t dim, const std::string& where);
QMat mat_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where);
Ball ball_from_json(const Json& j, const std::string& where);
Space space_from_json(const Json& j, const std::string& where, std::size_t dim_cap = kDefaultDimCap);

/// A file of named spaces and maps. Maps refer to spaces by name or inline.
struct Instance {
  std::map<std::string, Space> spaces;
  std::map<std::string, LinMap> maps;

  const LinMap& map(const std::string& name) const;
  const Space& space(const std::string& name) const;
  bool has_map(const std::string& name) const { return maps.count(name) != 0; }
};

/// extra: spaces visible to references but not written back (e.g. chain
/// stages the caller resolved beforehand).
Instance instance_from_json(const Json& j, const std::map<std::string, Space>& extra = {});
/// Maps whose spaces equal a named space are written with the reference.
Json to_json(const Instance& inst, const std::map<std::string, Space>& extra = {});

Chain chain_from_json(const Json& j);

/// Parses text; syntax errors become ParseError with the byte position.
Json parse(const std::string& text, const std::string& source);
Json read_file(const std::string& path);
/// Canonical text of a document.
std::string dump(const Json& j);
void write_file(const std::string& path, const Json& j);

}  // namespace gurarii::io
