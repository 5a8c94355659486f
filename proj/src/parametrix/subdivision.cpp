#include "tslab/subdivision.hpp"

#include <algorithm>

#include "tslab/errors.hpp"

namespace tslab {

Subdivision::Subdivision(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) throw InvalidArgument("Subdivision: need at least two times");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1])) throw InvalidArgument("Subdivision: times must be strictly increasing");
}

Subdivision Subdivision::uniform(double s, double t, std::size_t slices) {
  if (slices == 0) throw InvalidArgument("Subdivision::uniform: slices must be >= 1");
  std::vector<double> times(slices + 1);
  for (std::size_t j = 0; j <= slices; ++j) times[j] = s + (t - s) * static_cast<double>(j) / static_cast<double>(slices);
  times.back() = t;
  return Subdivision(std::move(times));
}

double Subdivision::mesh() const noexcept {
  double m = 0.0;
  for (std::size_t i = 1; i < times_.size(); ++i) m = std::max(m, times_[i] - times_[i - 1]);
  return m;
}

Subdivision Subdivision::refine_largest() const {
  std::size_t best = 1;
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (times_[i] - times_[i - 1] > times_[best] - times_[best - 1]) best = i;
  std::vector<double> times = times_;
  times.insert(times.begin() + static_cast<long>(best), 0.5 * (times_[best] + times_[best - 1]));
  return Subdivision(std::move(times));
}

}  // namespace tslab
