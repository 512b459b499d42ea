#include "ectkit/select.hpp"

#include <algorithm>
#include <stdexcept>

namespace ectkit {

namespace {

std::vector<double> distinct_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

SelectField::SelectField(GeometricComplex gc, VertexFunction phi)
    : gc_(std::move(gc)), phi_(std::move(phi)), phibar_(min_extension(gc_.complex(), phi_)),
      breakpoints_(distinct_sorted(phibar_)) {}

AbstractComplex SelectField::superlevel(double t) const { return superlevel_complex(gc_.complex(), phibar_, t); }

std::int64_t select_eval(const SelectField& field, const Direction& nu, double a, double t) {
  const GeometricComplex sub(field.superlevel(t), field.geometry().embedding());
  return ect_eval(sub, nu, a);
}

double r_max(const SelectField& field) {
  if (field.breakpoints().empty()) throw std::invalid_argument("r_max of an empty complex");
  return field.breakpoints().back();
}

SelectDistance d_select(const AbstractComplex& k, const VertexFunction& phi, const Embedding& f, const Embedding& g,
                        const DirectionScheme& scheme, const IntegrationOptions& options) {
  if (f.dim() != g.dim()) throw std::invalid_argument("embeddings have different ambient dimensions");
  if (scheme.dim != f.dim()) throw std::invalid_argument("direction scheme dimension does not match embedding");
  const SelectField field_f(GeometricComplex(k, f), phi);
  const auto directions = sample_directions(scheme);

  SelectDistance out;
  out.quadrature = scheme.describe();
  double t_lo = 0.0;
  for (double t_hi : field_f.breakpoints()) {
    const AbstractComplex sub = field_f.superlevel(t_hi);
    SelectSegment seg;
    seg.t_lo = t_lo;
    seg.t_hi = t_hi;
    seg.simplex_count = sub.size();
    if (!sub.empty()) {
      IntegrationOptions seg_options = options;
      seg_options.keep_per_direction = false;
      seg.d_ect = d_ect(GeometricComplex(sub, f), GeometricComplex(sub, g), directions, out.quadrature, seg_options).value;
    }
    seg.contribution = (t_hi - t_lo) * seg.d_ect;
    out.value += seg.contribution;
    out.segments.push_back(seg);
    t_lo = t_hi;
  }
  return out;
}

double select_bound(const AbstractComplex& k, const VertexFunction& phi, const Embedding& f, const Embedding& g) {
  const SelectField field(GeometricComplex(k, f), phi);
  return 2.0 * r_max(field) * c_d(f.dim()) * static_cast<double>(c_k(k)) * displacement(f, g, k);
}

double select_segmentwise_bound(const AbstractComplex& k, const VertexFunction& phi, const Embedding& f,
                                const Embedding& g) {
  const SelectField field(GeometricComplex(k, f), phi);
  const double cd = c_d(f.dim());
  double total = 0.0;
  double t_lo = 0.0;
  for (double t_hi : field.breakpoints()) {
    const AbstractComplex sub = field.superlevel(t_hi);
    total += (t_hi - t_lo) * 2.0 * cd * static_cast<double>(c_k(sub)) * displacement(f, g, sub);
    t_lo = t_hi;
  }
  return total;
}

}  // namespace ectkit
