#include "ectkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace ectkit {

using nlohmann::json;

const Embedding& ComplexFile::embedding(const std::string& name) const {
  auto it = embeddings.find(name);
  if (it == embeddings.end()) throw std::out_of_range("embedding not found: " + name);
  return it->second;
}

const VertexFunction& ComplexFile::phi(const std::string& name) const {
  auto it = phis.find(name);
  if (it == phis.end()) throw std::out_of_range("phi not found: " + name);
  return it->second;
}

json number_to_json(double x) {
  if (x == kInfinity) return "inf";
  if (x == -kInfinity) return "-inf";
  return x;
}

double number_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    throw ParseError("expected a number or \"inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw ParseError("expected a number, got " + j.dump());
  return j.get<double>();
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

std::int64_t as_id(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "vertex id must be an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

double as_real(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number, got " + j.dump());
  return j.get<double>();
}

}  // namespace

ComplexFile parse_complex_json(const json& j) {
  if (!j.is_object()) fail("<root>", "expected a JSON object");
  ComplexFile out;

  const json empty_array = json::array();
  const json& simplices = j.contains("simplices") ? j.at("simplices") : empty_array;
  if (!simplices.is_array()) fail("simplices", "expected an array");

  if (j.contains("vertices")) {
    const json& vs = j.at("vertices");
    if (!vs.is_array()) fail("vertices", "expected an array");
    for (std::size_t i = 0; i < vs.size(); ++i)
      out.external_ids.push_back(as_id(vs[i], "vertices[" + std::to_string(i) + "]"));
  } else {
    std::set<std::int64_t> seen;
    for (std::size_t i = 0; i < simplices.size(); ++i) {
      if (!simplices[i].is_array()) fail("simplices[" + std::to_string(i) + "]", "expected an array");
      for (std::size_t k = 0; k < simplices[i].size(); ++k)
        seen.insert(as_id(simplices[i][k], "simplices[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    }
    out.external_ids.assign(seen.begin(), seen.end());
  }

  std::map<std::int64_t, VertexId> internal;
  for (std::size_t i = 0; i < out.external_ids.size(); ++i)
    if (!internal.emplace(out.external_ids[i], static_cast<VertexId>(i)).second)
      fail("vertices[" + std::to_string(i) + "]", "duplicate vertex id " + std::to_string(out.external_ids[i]));
  if (internal.empty()) throw ParseError("empty complex not permitted");

  std::vector<Simplex> generators;
  for (std::size_t i = 0; i < out.external_ids.size(); ++i) generators.push_back({static_cast<VertexId>(i)});
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const std::string where = "simplices[" + std::to_string(i) + "]";
    if (!simplices[i].is_array() || simplices[i].empty()) fail(where, "expected a non-empty array of vertex ids");
    Simplex s;
    for (std::size_t k = 0; k < simplices[i].size(); ++k) {
      const auto id = as_id(simplices[i][k], where + "[" + std::to_string(k) + "]");
      auto it = internal.find(id);
      if (it == internal.end()) fail(where, "unknown vertex id " + std::to_string(id));
      s.push_back(it->second);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) fail(where, "repeated vertex id");
    generators.push_back(std::move(s));
  }
  out.complex = AbstractComplex::close(generators);
  const std::set<Simplex> given(generators.begin(), generators.end());
  if (out.complex.size() > given.size())
    out.warnings.push_back("input was not face-closed; inserted " + std::to_string(out.complex.size() - given.size()) +
                           " missing faces");

  const std::size_t n = out.external_ids.size();
  if (j.contains("embeddings")) {
    const json& embs = j.at("embeddings");
    if (!embs.is_object()) fail("embeddings", "expected an object");
    for (const auto& [name, rows] : embs.items()) {
      const std::string where = "embeddings." + name;
      if (!rows.is_array() || rows.size() != n)
        fail(where, "expected " + std::to_string(n) + " coordinate rows, one per vertex");
      std::map<VertexId, std::vector<double>> coords;
      std::size_t dim = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::string row_where = where + "[" + std::to_string(i) + "]";
        if (!rows[i].is_array() || rows[i].empty()) fail(row_where, "expected a non-empty coordinate array");
        if (i == 0) dim = rows[i].size();
        if (rows[i].size() != dim)
          fail(row_where, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(rows[i].size()));
        std::vector<double> x;
        for (std::size_t c = 0; c < dim; ++c) x.push_back(as_real(rows[i][c], row_where));
        coords.emplace(static_cast<VertexId>(i), std::move(x));
      }
      if (n == 0) fail(where, "no vertices");
      try {
        out.embeddings.emplace(name, Embedding(static_cast<int>(dim), std::move(coords)));
      } catch (const std::invalid_argument& e) {
        fail(where, e.what());
      }
    }
  }

  if (j.contains("phi")) {
    const json& phis = j.at("phi");
    if (!phis.is_object()) fail("phi", "expected an object");
    for (const auto& [name, values] : phis.items()) {
      const std::string where = "phi." + name;
      if (!values.is_array() || values.size() != n) fail(where, "expected " + std::to_string(n) + " values, one per vertex");
      std::map<VertexId, double> vals;
      for (std::size_t i = 0; i < n; ++i)
        vals.emplace(static_cast<VertexId>(i), as_real(values[i], where + "[" + std::to_string(i) + "]"));
      try {
        out.phis.emplace(name, VertexFunction(std::move(vals)));
      } catch (const std::invalid_argument& e) {
        fail(where, e.what());
      }
    }
  }
  return out;
}

json complex_to_json(const ComplexFile& file) {
  json j;
  j["vertices"] = file.external_ids;
  json simplices = json::array();
  for (const auto& s : file.complex.simplices()) {
    json row = json::array();
    for (VertexId v : s) row.push_back(file.external_ids.at(static_cast<std::size_t>(v)));
    simplices.push_back(std::move(row));
  }
  j["simplices"] = std::move(simplices);
  json embs = json::object();
  for (const auto& [name, emb] : file.embeddings) {
    json rows = json::array();
    for (const auto& [id, x] : emb.coordinates()) rows.push_back(x);
    embs[name] = std::move(rows);
  }
  j["embeddings"] = std::move(embs);
  json phis = json::object();
  for (const auto& [name, phi] : file.phis) {
    json vals = json::array();
    for (const auto& [id, x] : phi.values()) vals.push_back(x);
    phis[name] = std::move(vals);
  }
  j["phi"] = std::move(phis);
  return j;
}

namespace {

// Numeric tokens of the non-blank, non-comment lines of an OFF file.
struct OffLine {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<OffLine> off_lines(std::istream& in) {
  std::vector<OffLine> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    OffLine line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

template <class T>
T off_number(const OffLine& line, std::size_t i, const char* what) {
  const auto where = "line " + std::to_string(line.number);
  if (i >= line.tokens.size()) fail(where, std::string("missing ") + what);
  std::istringstream ss(line.tokens[i]);
  T value{};
  if (!(ss >> value) || !ss.eof()) fail(where, std::string("malformed ") + what + " '" + line.tokens[i] + "'");
  return value;
}

}  // namespace

ComplexFile parse_off(std::istream& in) {
  const auto lines = off_lines(in);
  if (lines.empty() || lines[0].tokens[0] != "OFF") fail("line 1", "missing OFF header");

  // Counts may share the header line.
  std::size_t cursor = 0;
  OffLine counts = lines[0];
  counts.tokens.erase(counts.tokens.begin());
  if (counts.tokens.empty()) {
    if (lines.size() < 2) fail("line " + std::to_string(lines[0].number + 1), "missing vertex/face counts");
    counts = lines[1];
    cursor = 2;
  } else {
    cursor = 1;
  }
  const auto nv = off_number<long long>(counts, 0, "vertex count");
  const auto nf = off_number<long long>(counts, 1, "face count");
  if (nv < 0 || nf < 0) fail("line " + std::to_string(counts.number), "negative counts");
  if (nv == 0) throw ParseError("empty complex not permitted");
  if (lines.size() < cursor + static_cast<std::size_t>(nv) + static_cast<std::size_t>(nf))
    fail("line " + std::to_string(lines.back().number), "file ends before all vertices and faces were read");

  ComplexFile out;
  std::map<VertexId, std::vector<double>> coords;
  std::vector<Simplex> generators;
  for (long long i = 0; i < nv; ++i) {
    const auto& line = lines[cursor++];
    std::vector<double> x;
    for (std::size_t c = 0; c < 3; ++c) x.push_back(off_number<double>(line, c, "coordinate"));
    coords.emplace(i, std::move(x));
    out.external_ids.push_back(i);
    generators.push_back({i});
  }
  for (long long f = 0; f < nf; ++f) {
    const auto& line = lines[cursor++];
    const auto where = "line " + std::to_string(line.number);
    const auto k = off_number<long long>(line, 0, "face size");
    if (k < 3) fail(where, "faces need at least 3 vertices");
    std::vector<VertexId> poly;
    for (long long i = 0; i < k; ++i) {
      const auto v = off_number<long long>(line, static_cast<std::size_t>(i) + 1, "vertex index");
      if (v < 0 || v >= nv) fail(where, "vertex index " + std::to_string(v) + " out of range");
      poly.push_back(v);
    }
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
      Simplex tri{poly[0], poly[i], poly[i + 1]};
      std::sort(tri.begin(), tri.end());
      if (std::adjacent_find(tri.begin(), tri.end()) != tri.end()) fail(where, "degenerate face repeats a vertex");
      generators.push_back(std::move(tri));
    }
  }
  out.complex = AbstractComplex::close(generators);
  out.embeddings.emplace("off", Embedding(3, std::move(coords)));
  return out;
}

ComplexFile load_complex_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string first;
  in >> first;
  in.clear();
  in.seekg(0);
  if (first.rfind("OFF", 0) == 0) return parse_off(in);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return parse_complex_json(j);
}

json diagram_to_json(const PersistenceDiagram& dgm) {
  json dims = json::object();
  for (int k = 0; k < dgm.dimension_count(); ++k) {
    json pts = json::array();
    for (const auto& p : dgm.points(k)) pts.push_back(json::array({number_to_json(p.birth), number_to_json(p.death)}));
    dims[std::to_string(k)] = std::move(pts);
  }
  return json{{"dims", std::move(dims)}};
}

PersistenceDiagram diagram_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.at("dims").is_object()) fail("<root>", "expected {\"dims\": {...}}");
  std::vector<PersistencePoint> points;
  for (const auto& [key, pts] : j.at("dims").items()) {
    const std::string where = "dims." + key;
    int dim = 0;
    try {
      std::size_t used = 0;
      dim = std::stoi(key, &used);
      if (used != key.size() || dim < 0) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(where, "dimension key must be a non-negative integer");
    }
    if (!pts.is_array()) fail(where, "expected an array of [birth, death] pairs");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string pw = where + "[" + std::to_string(i) + "]";
      if (!pts[i].is_array() || pts[i].size() != 2) fail(pw, "expected [birth, death]");
      try {
        points.push_back({number_from_json(pts[i][0]), number_from_json(pts[i][1]), dim});
      } catch (const ParseError& e) {
        fail(pw, e.what());
      }
    }
  }
  try {
    return PersistenceDiagram(std::move(points));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

namespace {

// Parses one CSV row of numbers; nullopt when a cell is not a number.
std::optional<std::vector<double>> parse_csv_row(const std::string& raw) {
  std::vector<double> v;
  std::istringstream ss(raw);
  for (std::string cell; std::getline(ss, cell, ',');) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(cell, &used));
      if (cell.find_first_not_of(" \t\r", used) != std::string::npos) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return v;
}

}  // namespace

std::vector<Direction> load_directions_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<Direction> out;
  std::string raw;
  std::size_t number = 0;
  bool first_row = true;
  while (std::getline(in, raw)) {
    ++number;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(number);
    auto row = parse_csv_row(raw);
    const bool header = first_row && !row;
    first_row = false;
    if (header) continue;
    if (!row) fail(where, "malformed row '" + raw + "'");
    double norm = 0.0;
    for (double c : *row) norm += c * c;
    if (std::abs(std::sqrt(norm) - 1.0) > 1e-6) fail(where, "direction is not a unit vector");
    if (!out.empty() && static_cast<int>(row->size()) != out.front().dim()) fail(where, "direction has wrong dimension");
    out.push_back(Direction::normalized(std::move(*row)));
  }
  if (out.empty()) throw ParseError(path.string() + ": no directions");
  return out;
}

}  // namespace ectkit
