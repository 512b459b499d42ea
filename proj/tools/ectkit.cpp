#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ectkit/ecc.hpp"
#include "ectkit/ect.hpp"
#include "ectkit/io.hpp"
#include "ectkit/persistence.hpp"
#include "ectkit/select.hpp"
#include "ectkit/stability.hpp"
#include "ectkit/wasserstein.hpp"

using namespace ectkit;
using nlohmann::json;

namespace {

constexpr int kUsageError = 1;
constexpr int kVerifyFailure = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: " + text);
  }
  if (used != text.size()) throw UsageError("not a number: " + text);
  return v;
}

Direction parse_direction(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_real(item));
  if (v.empty()) throw UsageError("empty direction");
  return Direction::normalized(std::move(v));
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void print_warnings(const ComplexFile& file) {
  for (const auto& w : file.warnings) std::cerr << "warning: " << w << '\n';
}

struct SchemeArgs {
  std::optional<std::size_t> count;
  std::string kind;
  std::uint64_t seed = 0;
  std::string directions_file;

  void add(CLI::App* cmd) {
    cmd->add_option("--directions", count, "Number of quadrature directions (default 1024 for d=2, 4096 otherwise)");
    cmd->add_option("--scheme", kind, "uniform-circle | fibonacci-sphere | monte-carlo (default chosen by dimension)");
    cmd->add_option("--direction-seed", seed, "Seed for the monte-carlo scheme");
    cmd->add_option("--directions-file", directions_file,
                    "CSV of unit directions, one per row; replaces the scheme (equal weights)");
  }

  std::vector<WeightedDirection> directions(int dim, std::string& label) const {
    if (!directions_file.empty()) {
      auto dirs = load_directions_csv(directions_file);
      for (const auto& d : dirs)
        if (d.dim() != dim) throw UsageError("direction file dimension does not match embedding");
      label = "file:" + directions_file + " N=" + std::to_string(dirs.size());
      return equal_weight_directions(std::move(dirs));
    }
    auto scheme = this->scheme(dim);
    label = scheme.describe();
    return sample_directions(scheme);
  }

  DirectionScheme scheme(int dim) const {
    DirectionScheme s = DirectionScheme::default_for(dim);
    if (!kind.empty()) s.kind = parse_scheme_kind(kind);
    if (count) s.count = *count;
    s.seed = seed;
    s.validate();
    return s;
  }
};

std::optional<double> resolve_window(const std::string& text, const Embedding& f, const Embedding& g) {
  if (text.empty()) return std::nullopt;
  if (text == "auto") return default_window(f, g);
  return parse_real(text);
}

unsigned env_threads() {
  if (const char* env = std::getenv("ECTKIT_THREADS")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw UsageError("ECTKIT_THREADS is not a non-negative integer");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ectkit: Euler characteristic transforms, persistence and stability bounds"};
  app.require_subcommand(1);
  std::optional<unsigned> threads_flag;
  app.add_option("--threads", threads_flag, "Worker threads (0 = all cores; falls back to ECTKIT_THREADS)");

  // ecc
  auto* ecc_cmd = app.add_subcommand("ecc", "Euler characteristic curve of a complex in one direction");
  std::string ecc_complex, ecc_embedding, ecc_direction, ecc_out;
  bool ecc_csv = false;
  ecc_cmd->add_option("--complex", ecc_complex, "Complex file (JSON or OFF)")->required();
  ecc_cmd->add_option("--embedding", ecc_embedding, "Embedding name")->required();
  ecc_cmd->add_option("--direction", ecc_direction, "Direction as comma-separated components (normalized)")->required();
  ecc_cmd->add_flag("--csv", ecc_csv, "Write CSV rows breakpoint,value_after instead of JSON");
  ecc_cmd->add_option("--out", ecc_out, "Output path (default stdout)");

  // ect-distance
  auto* ect_cmd = app.add_subcommand("ect-distance", "Quadrature estimate of the ECT distance between two embeddings");
  std::string ect_complex, ect_window, ect_per_dir, ect_out;
  std::vector<std::string> ect_embeddings;
  bool ect_check = false;
  SchemeArgs ect_scheme;
  ect_cmd->add_option("--complex", ect_complex, "Complex file (JSON or OFF)")->required();
  ect_cmd->add_option("--embedding", ect_embeddings, "Embedding name; give exactly two")->required()->expected(2);
  ect_scheme.add(ect_cmd);
  ect_cmd->add_option("--window", ect_window, "Integrate heights over [-B, B]; a number or 'auto'");
  ect_cmd->add_option("--per-direction", ect_per_dir, "CSV path for per-direction integrands");
  ect_cmd->add_flag("--check-nondegenerate", ect_check, "Reject embeddings with affinely dependent simplices");
  ect_cmd->add_option("--out", ect_out, "Output path (default stdout)");

  // select-distance
  auto* sel_cmd = app.add_subcommand("select-distance", "SELECT distance, exact in the field parameter");
  std::string sel_complex, sel_phi, sel_window, sel_out;
  std::vector<std::string> sel_embeddings;
  SchemeArgs sel_scheme;
  sel_cmd->add_option("--complex", sel_complex, "Complex file (JSON)")->required();
  sel_cmd->add_option("--phi", sel_phi, "Vertex function name")->required();
  sel_cmd->add_option("--embedding", sel_embeddings, "Embedding name; give exactly two")->required()->expected(2);
  sel_cmd->add_option("--directions", sel_scheme.count, "Number of quadrature directions");
  sel_cmd->add_option("--scheme", sel_scheme.kind, "uniform-circle | fibonacci-sphere | monte-carlo");
  sel_cmd->add_option("--direction-seed", sel_scheme.seed, "Seed for the monte-carlo scheme");
  sel_cmd->add_option("--window", sel_window, "Integrate heights over [-B, B]; a number or 'auto'");
  sel_cmd->add_option("--out", sel_out, "Output path (default stdout)");

  // persistence
  auto* pers_cmd = app.add_subcommand("persistence", "Persistence diagram of a height filtration, or Betti numbers");
  std::string pers_complex, pers_embedding, pers_direction, pers_out;
  pers_cmd->add_option("--complex", pers_complex, "Complex file (JSON or OFF)")->required();
  pers_cmd->add_option("--embedding", pers_embedding, "Embedding name (omit for Betti numbers only)");
  pers_cmd->add_option("--direction", pers_direction, "Direction as comma-separated components (normalized)");
  pers_cmd->add_option("--out", pers_out, "Output path (default stdout)");

  // wasserstein
  auto* w_cmd = app.add_subcommand("wasserstein", "Total (p,q)-Wasserstein distance between two diagram files");
  std::string w_d1, w_d2, w_p = "1", w_q = "inf", w_out;
  w_cmd->add_option("dgm1", w_d1, "First diagram JSON")->required();
  w_cmd->add_option("dgm2", w_d2, "Second diagram JSON")->required();
  w_cmd->add_option("-p,--p", w_p, "Outer exponent p >= 1 (default 1)");
  w_cmd->add_option("-q,--q", w_q, "Ground norm q >= 1 or 'inf' (default inf)");
  w_cmd->add_option("--out", w_out, "Output path (default stdout)");

  // verify-bound
  auto* v_cmd = app.add_subcommand("verify-bound", "Check stability inequalities on seeded random instances");
  std::string v_which = "all", v_out;
  BatchOptions v_opts;
  v_cmd->add_option("--which", v_which, "ect | select | prop2 | skraba | turner | all")
      ->check(CLI::IsMember({"ect", "select", "prop2", "skraba", "turner", "all"}));
  v_cmd->add_option("--trials", v_opts.trials, "Trials per inequality (default 200)");
  v_cmd->add_option("--seed", v_opts.seed, "Master seed (default 0)");
  v_cmd->add_option("--directions", v_opts.directions, "Override the per-dimension direction count");
  v_cmd->add_option("--max-vertices", v_opts.max_vertices, "Largest random complex (default 12)");
  v_cmd->add_option("--out", v_out, "JSON report path (default stdout)");

  // constants
  auto* c_cmd = app.add_subcommand("constants", "Print C_d, C_K and r_max for an input");
  std::string c_complex, c_phi;
  std::optional<int> c_dim;
  c_cmd->add_option("--complex", c_complex, "Complex file (JSON or OFF)");
  c_cmd->add_option("--phi", c_phi, "Vertex function name for r_max");
  c_cmd->add_option("--dim", c_dim, "Ambient dimension for C_d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    const unsigned threads = threads_flag ? *threads_flag : env_threads();

    if (*ecc_cmd) {
      const auto file = load_complex_file(ecc_complex);
      print_warnings(file);
      const GeometricComplex gc(file.complex, file.embedding(ecc_embedding));
      const auto s = ecc(gc, parse_direction(ecc_direction));
      if (ecc_csv) {
        std::ostringstream os;
        write_csv(os, s);
        std::string text = os.str();
        if (!text.empty() && text.back() == '\n') text.pop_back();
        write_output(ecc_out, text);
      } else {
        json j{{"breakpoints", std::vector<double>(s.breakpoints().begin(), s.breakpoints().end())},
               {"jumps", std::vector<std::int64_t>(s.jumps().begin(), s.jumps().end())},
               {"terminal_value", s.terminal_value()}};
        write_output(ecc_out, j.dump(2));
      }
    } else if (*ect_cmd) {
      const auto file = load_complex_file(ect_complex);
      print_warnings(file);
      const auto& f = file.embedding(ect_embeddings[0]);
      const auto& g = file.embedding(ect_embeddings[1]);
      const GeometricComplex gf(file.complex, f), gg(file.complex, g);
      if (ect_check) {
        for (const auto* gc : {&gf, &gg}) {
          const auto bad = degenerate_simplices(*gc);
          if (!bad.empty())
            throw std::invalid_argument(std::to_string(bad.size()) + " degenerate simplices in embedding");
        }
      }
      IntegrationOptions opts;
      opts.threads = threads;
      opts.window = resolve_window(ect_window, f, g);
      opts.keep_per_direction = !ect_per_dir.empty();
      std::string label;
      const auto dirs = ect_scheme.directions(f.dim(), label);
      const auto est = d_ect(gf, gg, dirs, label, opts);
      json j{{"d_ect", number_to_json(est.value)},
             {"quadrature", est.quadrature},
             {"direction_count", est.direction_count},
             {"window", opts.window ? json(*opts.window) : json(nullptr)},
             {"c_k", c_k(file.complex)},
             {"c_d", c_d(f.dim())},
             {"displacement", displacement(f, g, file.complex)},
             {"bound", ect_bound(file.complex, f, g)}};
      write_output(ect_out, j.dump(2));
      if (!ect_per_dir.empty()) {
        std::ofstream out(ect_per_dir);
        if (!out) throw std::runtime_error("cannot write " + ect_per_dir);
        for (int c = 0; c < f.dim(); ++c) out << "nu" << c << ',';
        out << "weight,integrand\n";
        for (std::size_t i = 0; i < est.directions.size(); ++i) {
          for (double x : est.directions[i].direction.components()) out << number_to_json(x).dump() << ',';
          out << number_to_json(est.directions[i].weight).dump() << ','
              << number_to_json(est.integrands[i]).dump() << '\n';
        }
      }
    } else if (*sel_cmd) {
      const auto file = load_complex_file(sel_complex);
      print_warnings(file);
      const auto& f = file.embedding(sel_embeddings[0]);
      const auto& g = file.embedding(sel_embeddings[1]);
      const auto& phi = file.phi(sel_phi);
      IntegrationOptions opts;
      opts.threads = threads;
      opts.window = resolve_window(sel_window, f, g);
      const auto dist = d_select(file.complex, phi, f, g, sel_scheme.scheme(f.dim()), opts);
      json segs = json::array();
      for (const auto& s : dist.segments)
        segs.push_back({{"t_lo", s.t_lo},
                        {"t_hi", s.t_hi},
                        {"simplices", s.simplex_count},
                        {"d_ect", number_to_json(s.d_ect)},
                        {"contribution", number_to_json(s.contribution)}});
      const SelectField field(GeometricComplex(file.complex, f), phi);
      json j{{"d_select", number_to_json(dist.value)},
             {"quadrature", dist.quadrature},
             {"r_max", r_max(field)},
             {"bound", select_bound(file.complex, phi, f, g)},
             {"segmentwise_bound", select_segmentwise_bound(file.complex, phi, f, g)},
             {"segments", segs}};
      write_output(sel_out, j.dump(2));
    } else if (*pers_cmd) {
      const auto file = load_complex_file(pers_complex);
      print_warnings(file);
      json j{{"betti", betti_numbers(file.complex)}};
      if (!pers_embedding.empty()) {
        if (pers_direction.empty()) throw UsageError("--direction is required with --embedding");
        const GeometricComplex gc(file.complex, file.embedding(pers_embedding));
        j["diagram"] = diagram_to_json(persistence_diagram(directional_filtration(gc, parse_direction(pers_direction))));
      }
      write_output(pers_out, j.dump(2));
    } else if (*w_cmd) {
      const auto d1 = diagram_from_json(read_json_file(w_d1));
      const auto d2 = diagram_from_json(read_json_file(w_d2));
      const double p = parse_real(w_p), q = parse_real(w_q);
      json per_dim = json::object();
      const int dims = std::max(d1.dimension_count(), d2.dimension_count());
      for (int k = 0; k < dims; ++k) per_dim[std::to_string(k)] = number_to_json(w_pq(d1.points(k), d2.points(k), p, q));
      json j{{"p", number_to_json(p)}, {"q", number_to_json(q)}, {"total", number_to_json(total_w_pq(d1, d2, p, q))},
             {"per_dim", per_dim}};
      write_output(w_out, j.dump(2));
    } else if (*v_cmd) {
      v_opts.threads = threads;
      std::vector<Inequality> which;
      if (v_which == "all")
        which = {Inequality::Ect, Inequality::Select, Inequality::Prop2, Inequality::Skraba, Inequality::Turner};
      else
        which = {parse_inequality(v_which)};
      json reports = json::array();
      std::size_t failures = 0;
      for (auto w : which) {
        const auto batch = run_batch(w, v_opts);
        std::size_t failed = 0;
        for (const auto& r : batch) {
          if (!r.holds) ++failed;
          reports.push_back(report_to_json(r));
        }
        std::cerr << to_string(w) << ": " << batch.size() - failed << "/" << batch.size() << " hold\n";
        failures += failed;
      }
      write_output(v_out, reports.dump(2));
      if (failures > 0) return kVerifyFailure;
    } else if (*c_cmd) {
      json j = json::object();
      if (c_dim) j["c_d"] = c_d(*c_dim);
      if (!c_complex.empty()) {
        const auto file = load_complex_file(c_complex);
        print_warnings(file);
        j["c_k"] = c_k(file.complex);
        j["euler_characteristic"] = euler_characteristic(file.complex);
        json per_embedding = json::object();
        for (const auto& [name, emb] : file.embeddings) per_embedding[name] = {{"dim", emb.dim()}, {"c_d", c_d(emb.dim())}};
        if (!per_embedding.empty()) j["embeddings"] = per_embedding;
        if (!c_phi.empty()) {
          const auto& phi = file.phi(c_phi);
          double m = 0.0;
          for (VertexId v : file.complex.vertices()) m = std::max(m, phi.at(v));
          j["r_max"] = m;
        }
      } else if (!c_phi.empty()) {
        throw UsageError("--phi requires --complex");
      }
      if (j.empty()) throw UsageError("give --dim and/or --complex");
      std::cout << j.dump(2) << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return 0;
}
