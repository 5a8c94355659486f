#pragma once

#include <cstddef>
#include <vector>

namespace tslab {

/// Partition s = t_0 < t_1 < ... < t_L = t of a time interval.
class Subdivision {
 public:
  /// Throws InvalidArgument unless there are >= 2 strictly increasing times.
  explicit Subdivision(std::vector<double> times);

  /// L equal gaps of [s, t].
  static Subdivision uniform(double s, double t, std::size_t slices);

  const std::vector<double>& times() const noexcept { return times_; }
  double start() const noexcept { return times_.front(); }
  double end() const noexcept { return times_.back(); }
  std::size_t slices() const noexcept { return times_.size() - 1; }

  /// Largest gap.
  double mesh() const noexcept;

  /// Adds the midpoint of the largest gap (first one on ties).
  Subdivision refine_largest() const;

 private:
  std::vector<double> times_;
};

}  // namespace tslab
