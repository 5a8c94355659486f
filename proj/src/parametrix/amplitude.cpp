#include "tslab/amplitude.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "tslab/errors.hpp"
#include "tslab/strings.hpp"
#include "tslab/parallel.hpp"

namespace tslab {
namespace {

// (x, xi, dx/deta, dxi/deta, ln a1)
using Augmented = std::array<double, 5>;

Augmented rhs(const PotentialModel& pot, double s, double tau, const Augmented& u, bool transport) {
  double g, h;
  pot.grad_hess(tau, u[0], g, h);
  Augmented d{u[1], -g, u[3], -h * u[2], 0.0};
  if (transport) d[4] = -0.5 * (u[3] / u[2] - 1.0 / (tau - s));
  return d;
}

Augmented rk4(const PotentialModel& pot, double s, double tau, double h, const Augmented& u, bool transport) {
  auto shift = [](const Augmented& a, double c, const Augmented& k) {
    Augmented r;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + c * k[i];
    return r;
  };
  const Augmented k1 = rhs(pot, s, tau, u, transport);
  const Augmented k2 = rhs(pot, s, tau + 0.5 * h, shift(u, 0.5 * h, k1), transport);
  const Augmented k3 = rhs(pot, s, tau + 0.5 * h, shift(u, 0.5 * h, k2), transport);
  const Augmented k4 = rhs(pot, s, tau + h, shift(u, h, k3), transport);
  Augmented r;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = u[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return r;
}

}  // namespace

std::string to_string(AmplitudeMethod m) {
  return m == AmplitudeMethod::van_vleck ? "van-vleck" : "transport-ode";
}

AmplitudeMethod amplitude_method_from_string(const std::string& name) {
  if (name == "van-vleck") return AmplitudeMethod::van_vleck;
  if (name == "transport-ode") return AmplitudeMethod::transport_ode;
  throw InvalidArgument("unknown amplitude method '" + name + "'");
}

double transport_amplitude(const PotentialModel& pot, double s, double t, double y, double eta, int nsteps) {
  if (!(t > s)) throw InvalidArgument("transport_amplitude: requires t > s");
  if (nsteps < 2) throw InvalidArgument("transport_amplitude: nsteps must be >= 2");
  const double tau = t - s;
  const double eps = 1e-4 * tau;
  constexpr int kStartSteps = 16;
  Augmented u{y, eta, 0.0, 1.0, 0.0};
  double now = s;
  for (int i = 0; i < kStartSteps; ++i) {
    u = rk4(pot, s, now, eps / kStartSteps, u, false);
    now = s + (i + 1) * (eps / kStartSteps);
  }
  const double h = (t - now) / nsteps;
  const double begin = now;
  for (int i = 0; i < nsteps; ++i) {
    u = rk4(pot, s, now, h, u, true);
    now = begin + (i + 1) * h;
    if (!(u[2] > 0.0))
      throw CausticError("dx/deta vanished along the path from y = " + num(y) + " at tau = " +
                         num(now));
  }
  return std::exp(u[4]);
}

AmplitudeTable amplitude_a1(const PotentialModel& pot, const GeneratingTable& table, AmplitudeMethod method) {
  AmplitudeTable amp;
  amp.method = method;
  amp.s = table.s();
  amp.t = table.t();
  amp.x_axis = table.x_axis();
  amp.y_axis = table.y_axis();
  amp.values.assign(amp.x_axis.count * amp.y_axis.count, std::numeric_limits<double>::quiet_NaN());
  const double tau = table.tau();

  parallel_for(amp.x_axis.count, [&](std::size_t i) {
    for (std::size_t j = table.row_begin(i); j < table.row_end(i); ++j) {
      if (!table.has(i, j)) continue;
      double& out = amp.values[i * amp.y_axis.count + j];
      if (method == AmplitudeMethod::van_vleck) {
        const double sxy = table.Sxy(i, j);
        if (std::isnan(sxy)) continue;
        if (!(-sxy > 0.0))
          throw CausticError("-Sxy = " + num(-sxy) + " <= 0 at (x, y) = (" +
                             num(amp.x_axis.at(i)) + ", " + num(amp.y_axis.at(j)) + ")");
        out = std::sqrt(tau * -sxy);
      } else {
        out = transport_amplitude(pot, table.s(), table.t(), amp.y_axis.at(j), table.eta(i, j));
      }
    }
  });
  return amp;
}

AmplitudeTable amplitude_a1(const PotentialModel& pot, double s, double t, Axis x_axis, Axis y_axis,
                            AmplitudeMethod method, const TableOptions& options) {
  return amplitude_a1(pot, generating_table(pot, s, t, x_axis, y_axis, options), method);
}

}  // namespace tslab
