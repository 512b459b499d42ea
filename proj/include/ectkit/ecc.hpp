#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ectkit/filtration.hpp"
#include "ectkit/persistence.hpp"

namespace ectkit {

/// Integer-valued right-continuous step function with finite support of jumps.
///
/// The value is 0 before the first breakpoint and jumps[i] is added at
/// breakpoints[i], so f(a) is the sum of the jumps at breakpoints <= a.
/// The representation is canonical: breakpoints strictly increase and every
/// jump is non-zero, so two step functions are equal iff they agree everywhere.
class StepFunction {
 public:
  StepFunction() = default;

  /// Builds the canonical form of a list of (position, jump) events. Events
  /// at bit-identical positions are merged; zero net jumps are dropped.
  /// Throws std::invalid_argument on non-finite positions.
  static StepFunction from_events(std::vector<std::pair<double, std::int64_t>> events);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const std::int64_t> jumps() const { return jumps_; }
  bool empty() const { return breakpoints_.empty(); }

  /// Value for a -> +infinity.
  std::int64_t terminal_value() const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<std::int64_t> jumps_;
};

std::int64_t evaluate(const StepFunction& s, double a);

/// Euler characteristic curve of a filtration: the jump at a is the
/// alternating count of simplices with value exactly a.
StepFunction ecc_from_filtration(const SimplexFiltration& filt);

/// Euler characteristic curve read off a diagram via Euler-Poincare.
StepFunction ecc_from_diagram(const PersistenceDiagram& dgm);

/// Exact integral of |s1 - s2| over R, or over [-B, B] when a window is given.
/// Without a window the result is +infinity whenever the terminal values
/// differ. Throws std::invalid_argument for a window B <= 0.
double l1_distance(const StepFunction& s1, const StepFunction& s2, std::optional<double> window = std::nullopt);

/// CSV for plotting: a `terminal_value,<v>` row, a `breakpoint,value_after`
/// header, then one row per breakpoint.
void write_csv(std::ostream& out, const StepFunction& s);

}  // namespace ectkit
