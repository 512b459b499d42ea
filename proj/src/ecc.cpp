#include "ectkit/ecc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include "format.hpp"

namespace ectkit {

StepFunction StepFunction::from_events(std::vector<std::pair<double, std::int64_t>> events) {
  for (const auto& e : events)
    if (!std::isfinite(e.first)) throw std::invalid_argument("step function breakpoint must be finite");
  std::sort(events.begin(), events.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  StepFunction s;
  for (std::size_t i = 0; i < events.size();) {
    const double x = events[i].first;
    std::int64_t jump = 0;
    for (; i < events.size() && events[i].first == x; ++i) jump += events[i].second;
    if (jump != 0) {
      s.breakpoints_.push_back(x);
      s.jumps_.push_back(jump);
    }
  }
  return s;
}

std::int64_t StepFunction::terminal_value() const {
  std::int64_t v = 0;
  for (auto j : jumps_) v += j;
  return v;
}

std::int64_t evaluate(const StepFunction& s, double a) {
  const auto bp = s.breakpoints();
  const auto end = static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), a) - bp.begin());
  std::int64_t v = 0;
  for (std::size_t i = 0; i < end; ++i) v += s.jumps()[i];
  return v;
}

StepFunction ecc_from_filtration(const SimplexFiltration& filt) {
  const auto& k = filt.complex();
  std::vector<std::pair<double, std::int64_t>> events;
  events.reserve(k.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    events.emplace_back(filt.value(i), k.dimension_of(i) % 2 == 0 ? 1 : -1);
  return StepFunction::from_events(std::move(events));
}

StepFunction ecc_from_diagram(const PersistenceDiagram& dgm) {
  std::vector<std::pair<double, std::int64_t>> events;
  for (int k = 0; k < dgm.dimension_count(); ++k) {
    const std::int64_t sign = k % 2 == 0 ? 1 : -1;
    for (const auto& p : dgm.points(k)) {
      events.emplace_back(p.birth, sign);
      if (!p.is_essential()) events.emplace_back(p.death, -sign);
    }
  }
  return StepFunction::from_events(std::move(events));
}

double l1_distance(const StepFunction& s1, const StepFunction& s2, std::optional<double> window) {
  if (window && !(*window > 0.0)) throw std::invalid_argument("integration window B must be positive");

  std::vector<std::pair<double, std::int64_t>> events;
  events.reserve(s1.breakpoints().size() + s2.breakpoints().size());
  for (std::size_t i = 0; i < s1.breakpoints().size(); ++i) events.emplace_back(s1.breakpoints()[i], s1.jumps()[i]);
  for (std::size_t i = 0; i < s2.breakpoints().size(); ++i) events.emplace_back(s2.breakpoints()[i], -s2.jumps()[i]);
  const StepFunction diff = StepFunction::from_events(std::move(events));

  const auto bp = diff.breakpoints();
  const auto jumps = diff.jumps();
  const double lo = window ? -*window : -kInfinity;
  const double hi = window ? *window : kInfinity;

  double total = 0.0;
  std::int64_t value = 0;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    value += jumps[i];
    const double next = i + 1 < bp.size() ? bp[i + 1] : kInfinity;
    if (value == 0) continue;
    const double a = std::max(bp[i], lo);
    const double b = std::min(next, hi);
    if (b <= a) continue;
    if (b == kInfinity) return kInfinity;
    total += static_cast<double>(std::llabs(value)) * (b - a);
  }
  return total;
}

void write_csv(std::ostream& out, const StepFunction& s) {
  out << "terminal_value," << s.terminal_value() << '\n';
  out << "breakpoint,value_after\n";
  std::int64_t value = 0;
  for (std::size_t i = 0; i < s.breakpoints().size(); ++i) {
    value += s.jumps()[i];
    out << detail::format_double(s.breakpoints()[i]) << ',' << value << '\n';
  }
}

}  // namespace ectkit
