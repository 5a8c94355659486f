#include "tslab/generating_table.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <ostream>

#include "tslab/errors.hpp"
#include "tslab/strings.hpp"
#include "tslab/parallel.hpp"

namespace tslab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Finite differences along one line of the table. `ok(k)` tells whether
// sample k exists, `f(k)` returns it.
template <class Ok, class F>
double first_difference(const Ok& ok, const F& f, long k, double h) {
  if (ok(k - 1) && ok(k + 1)) return (f(k + 1) - f(k - 1)) / (2.0 * h);
  if (ok(k + 1) && ok(k + 2)) return (-3.0 * f(k) + 4.0 * f(k + 1) - f(k + 2)) / (2.0 * h);
  if (ok(k - 1) && ok(k - 2)) return (3.0 * f(k) - 4.0 * f(k - 1) + f(k - 2)) / (2.0 * h);
  return kNaN;
}

template <class Ok, class F>
double second_difference(const Ok& ok, const F& f, long k, double h) {
  if (ok(k - 1) && ok(k + 1)) return (f(k + 1) - 2.0 * f(k) + f(k - 1)) / (h * h);
  if (ok(k + 1) && ok(k + 2) && ok(k + 3))
    return (2.0 * f(k) - 5.0 * f(k + 1) + 4.0 * f(k + 2) - f(k + 3)) / (h * h);
  if (ok(k - 1) && ok(k - 2) && ok(k - 3))
    return (2.0 * f(k) - 5.0 * f(k - 1) + 4.0 * f(k - 2) - f(k - 3)) / (h * h);
  return kNaN;
}

}  // namespace

GeneratingTable::GeneratingTable(double s, double t, Axis x_axis, Axis y_axis, double eta_window)
    : s_(s),
      t_(t),
      x_axis_(x_axis),
      y_axis_(y_axis),
      eta_window_(eta_window),
      row_begin_(x_axis.count, 0),
      row_end_(x_axis.count, 0) {
  const std::size_t total = x_axis.count * y_axis.count;
  state_.assign(total, 0);
  for (auto* v : {&S_, &eta_, &xi_end_, &Sx_, &Sy_, &Sxx_, &Sxy_, &Syx_, &Syy_}) v->assign(total, kNaN);
}

std::size_t GeneratingTable::entry_count() const noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < x_axis_.count; ++i) c += row_end_[i] - row_begin_[i];
  return c;
}

void GeneratingTable::compute_derivatives() {
  const auto nx = static_cast<long>(x_axis_.count);
  const auto ny = static_cast<long>(y_axis_.count);
  const double hx = x_axis_.step, hy = y_axis_.step;
  auto at = [&](long i, long j) { return static_cast<std::size_t>(i * ny + j); };
  auto exists = [&](long i, long j) { return i >= 0 && i < nx && j >= 0 && j < ny && state_[at(i, j)] != 0; };

  for (long i = 0; i < nx; ++i)
    for (long j = static_cast<long>(row_begin_[i]); j < static_cast<long>(row_end_[i]); ++j) {
      auto ok_y = [&](long k) { return exists(i, k); };
      auto fy = [&](long k) { return S_[at(i, k)]; };
      auto ok_x = [&](long k) { return exists(k, j); };
      auto fx = [&](long k) { return S_[at(k, j)]; };
      Sy_[at(i, j)] = first_difference(ok_y, fy, j, hy);
      Syy_[at(i, j)] = second_difference(ok_y, fy, j, hy);
      Sx_[at(i, j)] = first_difference(ok_x, fx, i, hx);
      Sxx_[at(i, j)] = second_difference(ok_x, fx, i, hx);
    }
  for (long i = 0; i < nx; ++i)
    for (long j = static_cast<long>(row_begin_[i]); j < static_cast<long>(row_end_[i]); ++j) {
      auto ok_x = [&](long k) { return exists(k, j) && !std::isnan(Sy_[at(k, j)]); };
      auto fx = [&](long k) { return Sy_[at(k, j)]; };
      auto ok_y = [&](long k) { return exists(i, k) && !std::isnan(Sx_[at(i, k)]); };
      auto fy = [&](long k) { return Sx_[at(i, k)]; };
      Sxy_[at(i, j)] = ok_x(i) ? first_difference(ok_x, fx, i, hx) : kNaN;
      Syx_[at(i, j)] = ok_y(j) ? first_difference(ok_y, fy, j, hy) : kNaN;
    }
}

namespace {

// Newton shooting specialised for table continuation. Once the miss is
// below kLinearAccept the last shot is corrected to first order instead of
// being repeated; the neglected terms are O(miss^2).
constexpr double kLinearAccept = 1e-7;
constexpr int kMaxIterations = 50;

struct Entry {
  double S, eta, xi;
};

Entry solve_entry(const PotentialModel& pot, double s, double t, double y, double x, double guess,
                  const TableOptions& options) {
  const double tau = t - s;
  double eta = guess;
  for (int it = 0; it < kMaxIterations; ++it) {
    const Shot shot = shoot(pot, s, t, y, eta, options.nsteps);
    const double miss = shot.x - x;
    if (std::abs(shot.dx_deta) <= 1e-7 * std::abs(tau))
      throw CausticError("singular dx/deta for (x, y) = (" + num(x) + ", " + num(y) +
                         "), t - s = " + num(tau));
    const double step = -miss / shot.dx_deta;
    if (std::abs(miss) <= std::max(kLinearAccept, options.tol))
      return Entry{shot.action - shot.xi * miss, eta + step, shot.xi + shot.dxi_deta * step};
    eta += step;
  }
  throw CausticError("Newton did not converge in 50 iterations for (x, y) = (" + num(x) + ", " +
                     num(y) + "), t - s = " + num(tau));
}

}  // namespace

GeneratingTable generating_table(const PotentialModel& pot, double s, double t, Axis x_axis,
                                 Axis y_axis, const TableOptions& options) {
  if (!(t > s)) throw InvalidArgument("generating_table: requires t > s");
  if (x_axis.count == 0 || y_axis.count == 0) throw InvalidArgument("generating_table: empty axis");
  GeneratingTable table(s, t, x_axis, y_axis, options.eta_window);
  const double tau = t - s;
  const auto ny = static_cast<long>(y_axis.count);
  // reversible Hamiltonian, square table: S(x, y) = S(y, x), so
  // eta*(x, y) = -xi(y, x) and only columns j >= i need shooting
  const bool mirror = pot.time_independent() && x_axis.start == y_axis.start &&
                      x_axis.step == y_axis.step && x_axis.count == y_axis.count;
  std::vector<long> lo(x_axis.count), hi(x_axis.count);

  parallel_for(x_axis.count, [&](std::size_t i) {
    const double x = x_axis.at(i);
    const long j0 = mirror ? static_cast<long>(i)
                           : std::clamp(static_cast<long>(std::lround((x - y_axis.start) / y_axis.step)), 0L, ny - 1);
    const std::size_t row = i * y_axis.count;
    auto solve = [&](long j, double guess) {
      const Entry e = solve_entry(pot, s, t, y_axis.at(static_cast<std::size_t>(j)), x, guess, options);
      const std::size_t k = row + static_cast<std::size_t>(j);
      table.S_[k] = e.S;
      table.eta_[k] = e.eta;
      table.xi_end_[k] = e.xi;
      table.state_[k] = 1;
      return e;
    };
    auto outside = [&](const Entry& e) {
      return std::max(std::abs(e.eta), std::abs(e.xi)) > options.eta_window;
    };

    const Entry first = solve(j0, (x - y_axis.at(static_cast<std::size_t>(j0))) / tau);
    lo[i] = hi[i] = j0;
    for (int dir : {+1, -1}) {
      if (mirror && dir < 0) break;
      double e1 = first.eta, e2 = first.eta, e3 = first.eta;
      double m1 = std::max(std::abs(first.eta), std::abs(first.xi));
      std::size_t beyond = outside(first) ? 1 : 0;
      int known = 1;
      for (long j = j0 + dir; j >= 0 && j < ny; j += dir) {
        const double y = y_axis.at(static_cast<std::size_t>(j));
        // polynomial extrapolation of eta* along the row
        double guess = (x - y) / tau;
        if (known >= 3)
          guess = 3.0 * e1 - 3.0 * e2 + e3;
        else if (known == 2)
          guess = 2.0 * e1 - e2;
        const Entry e = solve(j, guess);
        (dir > 0 ? hi[i] : lo[i]) = j;
        ++known;
        e3 = e2;
        e2 = e1;
        e1 = e.eta;
        const double m = std::max(std::abs(e.eta), std::abs(e.xi));
        const bool out = m > options.eta_window;
        const bool receding = m > m1;
        m1 = m;
        if (out && receding) {
          if (++beyond > options.margin) break;
        } else if (!out) {
          beyond = 0;
        }
      }
    }
  });

  if (mirror) {
    const std::size_t n = x_axis.count;
    for (std::size_t i = 0; i < n; ++i) {
      long j = static_cast<long>(i) - 1;
      for (; j >= 0 && hi[static_cast<std::size_t>(j)] >= static_cast<long>(i); --j) {
        const std::size_t k = i * n + static_cast<std::size_t>(j);
        const std::size_t m = static_cast<std::size_t>(j) * n + i;
        table.S_[k] = table.S_[m];
        table.eta_[k] = -table.xi_end_[m];
        table.xi_end_[k] = -table.eta_[m];
        table.state_[k] = 1;
      }
      lo[i] = j + 1;
    }
  }
  for (std::size_t i = 0; i < x_axis.count; ++i) {
    table.row_begin_[i] = static_cast<std::size_t>(lo[i]);
    table.row_end_[i] = static_cast<std::size_t>(hi[i] + 1);
  }

  table.compute_derivatives();
  return table;
}

GeneratingIdentities generating_identities(const GeneratingTable& table) {
  GeneratingIdentities r;
  for (std::size_t i = 1; i + 1 < table.x_axis().count; ++i)
    for (std::size_t j = table.row_begin(i) + 1; j + 1 < table.row_end(i); ++j) {
      if (!table.has(i - 1, j) || !table.has(i + 1, j) || !table.has(i, j - 1) || !table.has(i, j + 1))
        continue;
      r.max_dx_error = std::max(r.max_dx_error, std::abs(table.Sx(i, j) - table.xi_end(i, j)));
      r.max_dy_error = std::max(r.max_dy_error, std::abs(table.Sy(i, j) + table.eta(i, j)));
      if (!std::isnan(table.Sxy(i, j)) && !std::isnan(table.Syx(i, j)))
        r.max_symmetry_error = std::max(r.max_symmetry_error, std::abs(table.Sxy(i, j) - table.Syx(i, j)));
    }
  return r;
}

double hamilton_jacobi_residual(const PotentialModel& pot, const GeneratingTable& table,
                                const TableOptions& options, double dt_rel) {
  const double h = dt_rel * table.tau();
  TableOptions opt = options;
  opt.eta_window = table.eta_window();
  const GeneratingTable plus = generating_table(pot, table.s(), table.t() + h, table.x_axis(), table.y_axis(), opt);
  const GeneratingTable minus = generating_table(pot, table.s(), table.t() - h, table.x_axis(), table.y_axis(), opt);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < table.x_axis().count; ++i)
    for (std::size_t j = table.row_begin(i) + 1; j + 1 < table.row_end(i); ++j) {
      if (!plus.has(i, j) || !minus.has(i, j)) continue;
      const double dSdt = (plus.S(i, j) - minus.S(i, j)) / (2.0 * h);
      const double xi = table.xi_end(i, j);
      const double res = dSdt + 0.5 * xi * xi + pot.value(table.t(), table.x_axis().at(i));
      worst = std::max(worst, std::abs(res));
    }
  return worst;
}

TamenessReport tameness_report(const GeneratingTable& table, double delta_tilde) {
  TamenessReport r;
  r.delta_tilde = delta_tilde;
  const double tau = std::abs(table.tau());
  for (std::size_t i = 0; i < table.x_axis().count; ++i)
    for (std::size_t j = table.row_begin(i); j < table.row_end(i); ++j) {
      if (!table.has(i, j)) continue;
      const double xx = table.Sxx(i, j), xy = table.Sxy(i, j), yy = table.Syy(i, j);
      if (!std::isnan(xx)) r.max_xx = std::max(r.max_xx, tau * std::abs(xx));
      if (!std::isnan(xy)) r.max_xy = std::max(r.max_xy, tau * std::abs(xy));
      if (!std::isnan(yy)) {
        r.max_yy = std::max(r.max_yy, tau * std::abs(yy));
        r.min_det_yy = std::min(r.min_det_yy, tau * std::abs(yy));
      }
    }
  r.pass = std::isfinite(r.min_det_yy) && r.min_det_yy >= delta_tilde;
  return r;
}

void write_csv(std::ostream& out, const GeneratingTable& table) {
  out << "x,y,S,Sxx,Sxy,Syy,converged\n";
  out.precision(17);
  for (std::size_t i = 0; i < table.x_axis().count; ++i)
    for (std::size_t j = 0; j < table.y_axis().count; ++j) {
      out << table.x_axis().at(i) << ',' << table.y_axis().at(j) << ',';
      if (table.has(i, j))
        out << table.S(i, j) << ',' << table.Sxx(i, j) << ',' << table.Sxy(i, j) << ',' << table.Syy(i, j) << ",1\n";
      else
        out << "nan,nan,nan,nan,0\n";
    }
}

}  // namespace tslab
