#pragma once

#include <string>
#include <vector>

#include "tslab/generating_table.hpp"

namespace tslab {

enum class AmplitudeMethod { van_vleck, transport_ode };

std::string to_string(AmplitudeMethod m);
AmplitudeMethod amplitude_method_from_string(const std::string& name);

/// First transport amplitude on the entries of a generating table (NaN
/// where the table has no entry or no mixed-derivative stencil).
struct AmplitudeTable {
  AmplitudeMethod method = AmplitudeMethod::van_vleck;
  double s = 0.0, t = 0.0;
  Axis x_axis, y_axis;
  std::vector<double> values;  ///< row-major, same layout as the table

  double operator()(std::size_t i, std::size_t j) const noexcept { return values[i * y_axis.count + j]; }
};

/// van_vleck: a1 = sqrt((t - s) (-Sxy)) from the table's mixed difference.
/// transport_ode: integrates d ln a1/dtau = -(d^2S/dx^2 - 1/(tau - s))/2
/// along the classical path leaving (s, y) with the table's eta*, starting
/// from a1 = 1 at tau = s + 1e-4 (t - s). d^2S/dx^2 along the path is the
/// variational ratio (dxi/deta)/(dx/deta).
/// Throws CausticError when -Sxy <= 0 (or dx/deta <= 0 along the path).
AmplitudeTable amplitude_a1(const PotentialModel& pot, const GeneratingTable& table,
                            AmplitudeMethod method = AmplitudeMethod::van_vleck);

/// Builds the generating table first.
AmplitudeTable amplitude_a1(const PotentialModel& pot, double s, double t, Axis x_axis, Axis y_axis,
                            AmplitudeMethod method = AmplitudeMethod::van_vleck,
                            const TableOptions& options = {});

/// a1 at a single (x, y) by the transport ODE, given the shooting momentum.
double transport_amplitude(const PotentialModel& pot, double s, double t, double y, double eta,
                           int nsteps = 2000);

}  // namespace tslab
