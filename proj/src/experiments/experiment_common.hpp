#pragma once

#include <span>

#include "tslab/experiments.hpp"

namespace tslab::detail {

/// Log-log fit of ys against xs checked against band; refused when fewer
/// than min_points pairs are given.
SlopeCheck slope_check(std::string name, Band band, std::span<const double> xs, std::span<const double> ys,
                       std::size_t min_points);

Band band_for(const std::vector<Band>& bands, int order);

nlohmann::json guard_json(const std::optional<GuardDiagnostic>& g);

}  // namespace tslab::detail
