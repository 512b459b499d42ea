#include "ectkit/stability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "ectkit/io.hpp"
#include "ectkit/parallel.hpp"
#include "ectkit/wasserstein.hpp"

namespace ectkit {

using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for one role (complex, embedding, perturbation, ...) of a trial.
std::uint64_t derive(std::uint64_t seed, std::uint64_t role) { return splitmix64(seed ^ splitmix64(role)); }

json tolerance_json(Tolerance t) { return json{{"rel", t.rel}, {"abs", t.abs}}; }

}  // namespace

BoundReport make_report(std::string inequality, double lhs, double rhs, Tolerance tol, json instance) {
  BoundReport r;
  r.inequality = std::move(inequality);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tol;
  r.instance = std::move(instance);
  if (lhs == kInfinity && rhs == kInfinity) {
    r.slack = 0.0;
    r.holds = true;
    r.instance["both_infinite"] = true;
  } else {
    r.slack = rhs - lhs;
    r.holds = !std::isnan(lhs) && !std::isnan(rhs) && lhs <= rhs * (1.0 + tol.rel) + tol.abs;
  }
  return r;
}

json report_to_json(const BoundReport& r) {
  return json{{"inequality", r.inequality},
              {"lhs", number_to_json(r.lhs)},
              {"rhs", number_to_json(r.rhs)},
              {"slack", number_to_json(r.slack)},
              {"holds", r.holds},
              {"tolerance", tolerance_json(r.tolerance)},
              {"instance", r.instance}};
}

void InstanceParams::validate() const {
  if (vertices < 1) throw std::invalid_argument("instance needs at least one vertex");
  if (top_dim < 0) throw std::invalid_argument("top dimension must be non-negative");
  if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");
  if (ambient_dim < 2) throw std::invalid_argument("ambient dimension must be at least 2");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("perturbation must be non-negative");
  if (!(phi_lo > 0.0 && phi_lo <= phi_hi)) throw std::invalid_argument("phi range must satisfy 0 < lo <= hi");
}

json InstanceParams::to_json() const {
  return json{{"vertices", vertices}, {"top_dim", top_dim}, {"density", density},   {"ambient_dim", ambient_dim},
              {"epsilon", epsilon},   {"phi_lo", phi_lo},   {"phi_hi", phi_hi},     {"seed", seed}};
}

AbstractComplex random_complex(const InstanceParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const auto n = static_cast<VertexId>(params.vertices);

  std::set<Simplex> present;
  for (VertexId v = 0; v < n; ++v) present.insert({v});

  // Grow simplices one dimension at a time: a (k+1)-subset is a candidate
  // only when all of its facets are already present.
  std::vector<Simplex> previous;
  for (VertexId v = 0; v < n; ++v) previous.push_back({v});
  for (int k = 1; k <= params.top_dim && !previous.empty(); ++k) {
    std::vector<Simplex> current;
    for (const auto& base : previous) {
      for (VertexId w = base.back() + 1; w < n; ++w) {
        Simplex cand = base;
        cand.push_back(w);
        bool closed = true;
        for (std::size_t drop = 0; drop + 1 < cand.size() && closed; ++drop) {
          Simplex face;
          for (std::size_t j = 0; j < cand.size(); ++j)
            if (j != drop) face.push_back(cand[j]);
          closed = present.count(face) != 0;
        }
        if (closed && coin(rng) < params.density) current.push_back(std::move(cand));
      }
    }
    for (const auto& s : current) present.insert(s);
    previous = std::move(current);
  }
  const std::vector<Simplex> all(present.begin(), present.end());
  return build_complex(all);
}

Embedding random_embedding(const AbstractComplex& k, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::map<VertexId, std::vector<double>> coords;
  for (VertexId v : k.vertices()) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (double& c : x) c = unif(rng);
    coords.emplace(v, std::move(x));
  }
  return Embedding(d, std::move(coords));
}

Embedding perturb(const Embedding& f, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0)) throw std::invalid_argument("perturbation must be non-negative");
  if (eps == 0.0) return f;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto d = static_cast<std::size_t>(f.dim());
  std::map<VertexId, std::vector<double>> coords;
  for (const auto& [v, x] : f.coordinates()) {
    std::vector<double> dir(d);
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& c : dir) {
        c = gauss(rng);
        norm2 += c * c;
      }
    } while (norm2 < 1e-24);
    // Radius eps * U^{1/d} makes the displacement uniform in the ball.
    const double radius = eps * std::pow(unif(rng), 1.0 / static_cast<double>(d)) / std::sqrt(norm2);
    std::vector<double> y = x;
    for (std::size_t c = 0; c < d; ++c) y[c] += radius * dir[c];
    coords.emplace(v, std::move(y));
  }
  return Embedding(f.dim(), std::move(coords));
}

VertexFunction random_phi(const AbstractComplex& k, double lo, double hi, std::uint64_t seed) {
  if (!(lo > 0.0 && lo <= hi)) throw std::invalid_argument("phi range must satisfy 0 < lo <= hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::map<VertexId, double> values;
  // hi - (hi - lo) * u with u in [0, 1) lands in (lo, hi].
  for (VertexId v : k.vertices()) values.emplace(v, hi - (hi - lo) * unif(rng));
  return VertexFunction(std::move(values));
}

PersistenceDiagram random_diagram(std::uint64_t seed, int dims, std::size_t max_finite,
                                  const std::vector<std::size_t>& essential_per_dim) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> birth(-2.0, 2.0);
  std::uniform_real_distribution<double> life(0.0, 2.0);
  std::uniform_int_distribution<std::size_t> count(0, max_finite);
  std::vector<PersistencePoint> points;
  for (int k = 0; k < dims; ++k) {
    const std::size_t nf = count(rng);
    for (std::size_t i = 0; i < nf; ++i) {
      const double b = birth(rng);
      points.push_back({b, b + life(rng), k});
    }
    if (static_cast<std::size_t>(k) < essential_per_dim.size())
      for (std::size_t i = 0; i < essential_per_dim[static_cast<std::size_t>(k)]; ++i)
        points.push_back({birth(rng), kInfinity, k});
  }
  return PersistenceDiagram(std::move(points));
}

BoundReport verify_ect_stability(const AbstractComplex& k, const Embedding& f, const Embedding& g,
                                 const DirectionScheme& scheme, unsigned threads) {
  IntegrationOptions opts;
  opts.threads = threads;
  const double lhs = d_ect(GeometricComplex(k, f), GeometricComplex(k, g), scheme, opts).value;
  const double rhs = ect_bound(k, f, g);
  return make_report("ect", lhs, rhs, kQuadratureTolerance,
                     json{{"scheme", scheme.describe()}, {"c_k", c_k(k)}, {"c_d", c_d(f.dim())},
                          {"displacement", displacement(f, g, k)}});
}

BoundReport verify_select_stability(const AbstractComplex& k, const VertexFunction& phi, const Embedding& f,
                                    const Embedding& g, const DirectionScheme& scheme, unsigned threads) {
  IntegrationOptions opts;
  opts.threads = threads;
  const auto dist = d_select(k, phi, f, g, scheme, opts);
  const double rhs = select_bound(k, phi, f, g);
  return make_report("select", dist.value, rhs, kQuadratureTolerance,
                     json{{"scheme", scheme.describe()},
                          {"segments", dist.segments.size()},
                          {"r_max", r_max(SelectField(GeometricComplex(k, f), phi))},
                          {"segmentwise_bound", select_segmentwise_bound(k, phi, f, g)}});
}

namespace {

PersistenceDiagram height_diagram(const GeometricComplex& gc, const Direction& nu) {
  return persistence_diagram(directional_filtration(gc, nu));
}

json direction_json(const Direction& nu) {
  return json(std::vector<double>(nu.components().begin(), nu.components().end()));
}

}  // namespace

BoundReport verify_ecc_vs_wasserstein(const GeometricComplex& gc_f, const GeometricComplex& gc_g, const Direction& nu) {
  const double lhs = l1_distance(ecc(gc_f, nu), ecc(gc_g, nu));
  const double rhs = 2.0 * total_w_pq(height_diagram(gc_f, nu), height_diagram(gc_g, nu), 1.0, kInfinity);
  return make_report("prop2", lhs, rhs, kRoundingTolerance, json{{"direction", direction_json(nu)}});
}

BoundReport verify_integrated_wasserstein(const AbstractComplex& k, const Embedding& f, const Embedding& g,
                                          const DirectionScheme& scheme, unsigned threads) {
  const GeometricComplex gf(k, f), gg(k, g);
  const auto directions = sample_directions(scheme);
  const double lhs = integrate_over_directions(
      directions, [&](const Direction& nu) { return total_w_pq(height_diagram(gf, nu), height_diagram(gg, nu), 1.0, 1.0); },
      threads);
  const double rhs = static_cast<double>(c_k(k)) * c_d(f.dim()) * displacement(f, g, k);
  return make_report("skraba", lhs, rhs, kQuadratureTolerance, json{{"scheme", scheme.describe()}});
}

BoundReport verify_turner_sandwich(const PersistenceDiagram& dgm1, const PersistenceDiagram& dgm2, double p) {
  const double w_inf = total_w_pq(dgm1, dgm2, p, kInfinity);
  const double w_p = total_w_pq(dgm1, dgm2, p, p);
  const bool lower = (w_inf == kInfinity && w_p == kInfinity) || w_inf <= w_p + kRoundingTolerance.abs;
  auto r = make_report("turner", w_p, 2.0 * w_inf, kRoundingTolerance,
                       json{{"p", p}, {"w_p_inf", number_to_json(w_inf)}, {"w_p_p", number_to_json(w_p)},
                            {"lower_holds", lower}});
  r.holds = r.holds && lower;
  return r;
}

std::vector<BoundReport> verify_ect_chain(const AbstractComplex& k, const Embedding& f, const Embedding& g,
                                          const DirectionScheme& scheme, unsigned threads) {
  const GeometricComplex gf(k, f), gg(k, g);
  const auto directions = sample_directions(scheme);
  struct Row {
    double ecc = 0.0, w_inf = 0.0, w_one = 0.0;
  };
  std::vector<Row> rows(directions.size());
  parallel_for(directions.size(), threads, [&](std::size_t i) {
    const auto& nu = directions[i].direction;
    const auto df = height_diagram(gf, nu);
    const auto dg = height_diagram(gg, nu);
    rows[i] = {l1_distance(ecc(gf, nu), ecc(gg, nu)), total_w_pq(df, dg, 1.0, kInfinity), total_w_pq(df, dg, 1.0, 1.0)};
  });
  double d = 0.0, twice_w_inf = 0.0, twice_w_one = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    d += directions[i].weight * rows[i].ecc;
    twice_w_inf += directions[i].weight * 2.0 * rows[i].w_inf;
    twice_w_one += directions[i].weight * 2.0 * rows[i].w_one;
  }
  const double bound = ect_bound(k, f, g);
  const json inst{{"scheme", scheme.describe()}};
  // The first two links hold direction by direction, so only rounding separates the sums.
  const Tolerance summed{1e-12, 1e-9};
  return {make_report("chain:ecc<=2w1inf", d, twice_w_inf, summed, inst),
          make_report("chain:2w1inf<=2w11", twice_w_inf, twice_w_one, summed, inst),
          make_report("chain:2w11<=bound", twice_w_one, bound, kQuadratureTolerance, inst)};
}

std::string_view to_string(Inequality which) {
  switch (which) {
    case Inequality::Ect: return "ect";
    case Inequality::Select: return "select";
    case Inequality::Prop2: return "prop2";
    case Inequality::Skraba: return "skraba";
    case Inequality::Turner: return "turner";
  }
  return "unknown";
}

Inequality parse_inequality(std::string_view name) {
  for (auto w : {Inequality::Ect, Inequality::Select, Inequality::Prop2, Inequality::Skraba, Inequality::Turner})
    if (name == to_string(w)) return w;
  throw std::invalid_argument("unknown inequality: " + std::string(name));
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(trial));
}

InstanceParams draw_instance(std::uint64_t seed, std::size_t max_vertices) {
  if (max_vertices < 1) throw std::invalid_argument("max_vertices must be positive");
  std::mt19937_64 rng(derive(seed, 0));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  constexpr double kEpsilons[] = {0.01, 0.1, 0.5};
  InstanceParams p;
  p.seed = seed;
  p.ambient_dim = 2 + static_cast<int>(rng() % 2);
  p.vertices = 1 + static_cast<std::size_t>(rng() % max_vertices);
  p.top_dim = std::min(static_cast<int>(rng() % 4), static_cast<int>(p.vertices) - 1);
  p.density = 0.2 + 0.7 * unif(rng);
  p.epsilon = kEpsilons[rng() % 3];
  p.phi_lo = 0.1;
  p.phi_hi = 5.0;
  return p;
}

namespace {

json replay_json(const AbstractComplex& k, const Embedding& f, const Embedding& g, const VertexFunction* phi) {
  ComplexFile file;
  file.complex = k;
  for (VertexId v : k.vertices()) file.external_ids.push_back(v);
  file.embeddings.emplace("f", f);
  file.embeddings.emplace("g", g);
  if (phi) file.phis.emplace("phi", *phi);
  return complex_to_json(file);
}

BoundReport run_trial(Inequality which, const BatchOptions& options, std::size_t trial) {
  const std::uint64_t seed = trial_seed(options.seed, trial);
  if (which == Inequality::Turner) {
    std::mt19937_64 rng(derive(seed, 5));
    const int dims = 1 + static_cast<int>(rng() % 3);
    std::vector<std::size_t> essential(static_cast<std::size_t>(dims));
    for (auto& e : essential) e = rng() % 3;
    const auto d1 = random_diagram(derive(seed, 6), dims, 6, essential);
    const auto d2 = random_diagram(derive(seed, 7), dims, 6, essential);
    auto r = verify_turner_sandwich(d1, d2, 1.0);
    r.instance["trial"] = trial;
    r.instance["seed"] = seed;
    if (!r.holds) r.instance["diagrams"] = json::array({diagram_to_json(d1), diagram_to_json(d2)});
    return r;
  }

  const InstanceParams params = draw_instance(seed, options.max_vertices);
  InstanceParams complex_params = params;
  complex_params.seed = derive(seed, 1);
  const AbstractComplex k = random_complex(complex_params);
  const Embedding f = random_embedding(k, params.ambient_dim, derive(seed, 2));
  const Embedding g = perturb(f, params.epsilon, derive(seed, 3));
  DirectionScheme scheme = DirectionScheme::default_for(params.ambient_dim);
  if (options.directions) scheme.count = *options.directions;

  BoundReport r;
  std::optional<VertexFunction> phi;
  switch (which) {
    case Inequality::Ect: r = verify_ect_stability(k, f, g, scheme, 1); break;
    case Inequality::Select:
      phi = random_phi(k, params.phi_lo, params.phi_hi, derive(seed, 4));
      r = verify_select_stability(k, *phi, f, g, scheme, 1);
      break;
    case Inequality::Prop2: {
      std::mt19937_64 rng(derive(seed, 8));
      std::normal_distribution<double> gauss;
      std::vector<double> v(static_cast<std::size_t>(params.ambient_dim));
      for (double& c : v) c = gauss(rng);
      r = verify_ecc_vs_wasserstein(GeometricComplex(k, f), GeometricComplex(k, g), Direction::normalized(v));
      break;
    }
    case Inequality::Skraba: r = verify_integrated_wasserstein(k, f, g, scheme, 1); break;
    case Inequality::Turner: break;
  }
  json inst = params.to_json();
  inst["trial"] = trial;
  inst["simplices"] = k.size();
  for (const auto& [key, value] : r.instance.items()) inst[key] = value;
  if (!r.holds) inst["replay"] = replay_json(k, f, g, phi ? &*phi : nullptr);
  r.instance = std::move(inst);
  return r;
}

}  // namespace

std::vector<BoundReport> run_batch(Inequality which, const BatchOptions& options) {
  std::vector<BoundReport> reports(options.trials);
  parallel_for(options.trials, options.threads,
               [&](std::size_t i) { reports[i] = run_trial(which, options, i); });
  return reports;
}

}  // namespace ectkit
