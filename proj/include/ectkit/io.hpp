#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ectkit/complex.hpp"
#include "ectkit/filtration.hpp"
#include "ectkit/persistence.hpp"

namespace ectkit {

/// Malformed input file; the message names the offending line or field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A complex with its named embeddings and vertex functions.
///
/// Internal vertex ids are dense 0..n-1 in the order of `external_ids`;
/// external_ids[i] is the id the file used for internal vertex i.
struct ComplexFile {
  AbstractComplex complex;
  std::vector<std::int64_t> external_ids;
  std::map<std::string, Embedding> embeddings;
  std::map<std::string, VertexFunction> phis;
  std::vector<std::string> warnings;

  /// Throw std::out_of_range("embedding not found: <name>") / ("phi not found: <name>").
  const Embedding& embedding(const std::string& name) const;
  const VertexFunction& phi(const std::string& name) const;

  friend bool operator==(const ComplexFile& a, const ComplexFile& b) {
    return a.complex == b.complex && a.external_ids == b.external_ids && a.embeddings == b.embeddings &&
           a.phis == b.phis;
  }
};

/// JSON layout:
/// {"vertices": [id,...], "simplices": [[ids],...],
///  "embeddings": {"name": [[x,y,...],...]}, "phi": {"name": [values...]}}
/// Coordinate rows and phi values follow the order of "vertices". Missing
/// faces are inserted and reported in `warnings`.
ComplexFile parse_complex_json(const nlohmann::json& j);
nlohmann::json complex_to_json(const ComplexFile& file);

/// OFF surface: vertices and polygonal faces (polygons are fan-triangulated).
/// The coordinates become the embedding named "off".
ComplexFile parse_off(std::istream& in);

/// Dispatches on content: files whose first token is an OFF header are read
/// as OFF, anything else as JSON. Throws ParseError or std::runtime_error.
ComplexFile load_complex_file(const std::filesystem::path& path);

/// {"dims": {"0": [[b, d | "inf"], ...], ...}}
nlohmann::json diagram_to_json(const PersistenceDiagram& dgm);
PersistenceDiagram diagram_from_json(const nlohmann::json& j);

/// Serializes a double, writing infinities as "inf" / "-inf".
nlohmann::json number_to_json(double x);
double number_from_json(const nlohmann::json& j);

/// One unit vector per CSV row; rows are normalized if within 1e-6 of unit length.
std::vector<Direction> load_directions_csv(const std::filesystem::path& path);

}  // namespace ectkit
