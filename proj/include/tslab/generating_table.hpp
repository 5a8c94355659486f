#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "tslab/flow.hpp"
#include "tslab/grid.hpp"

namespace tslab {

struct TableOptions {
  double tol = 1e-11;
  int nsteps = kDefaultFlowSteps;
  /// Entries are solved while |eta*| <= eta_window, plus `margin` columns
  /// beyond on each side of every row (for finite-difference stencils).
  double eta_window = std::numeric_limits<double>::infinity();
  std::size_t margin = 3;
};

/// Generating function S(t, s, x, y) of the flow on an (x, y) product grid.
///
/// Each row x_i is solved over a contiguous column range [row_begin, row_end)
/// that covers |eta*| <= eta_window. Stored per entry: the action S, the
/// shooting momentum eta* = -dS/dy, the final momentum xi(t) = dS/dx, and
/// finite-difference Hessian blocks (NaN where no stencil is available).
class GeneratingTable {
 public:
  GeneratingTable(double s, double t, Axis x_axis, Axis y_axis, double eta_window);

  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }
  double tau() const noexcept { return t_ - s_; }
  const Axis& x_axis() const noexcept { return x_axis_; }
  const Axis& y_axis() const noexcept { return y_axis_; }
  double eta_window() const noexcept { return eta_window_; }

  std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * y_axis_.count + j; }
  bool has(std::size_t i, std::size_t j) const noexcept { return state_[index(i, j)] != 0; }
  std::size_t row_begin(std::size_t i) const noexcept { return row_begin_[i]; }
  std::size_t row_end(std::size_t i) const noexcept { return row_end_[i]; }
  std::size_t entry_count() const noexcept;

  double S(std::size_t i, std::size_t j) const noexcept { return S_[index(i, j)]; }
  double eta(std::size_t i, std::size_t j) const noexcept { return eta_[index(i, j)]; }
  double xi_end(std::size_t i, std::size_t j) const noexcept { return xi_end_[index(i, j)]; }
  double Sxx(std::size_t i, std::size_t j) const noexcept { return Sxx_[index(i, j)]; }
  double Sxy(std::size_t i, std::size_t j) const noexcept { return Sxy_[index(i, j)]; }
  double Syy(std::size_t i, std::size_t j) const noexcept { return Syy_[index(i, j)]; }
  /// Mixed derivative taken x-first then y (Sxy is y-first then x).
  double Syx(std::size_t i, std::size_t j) const noexcept { return Syx_[index(i, j)]; }
  /// Centered (or one-sided) finite differences of S.
  double Sx(std::size_t i, std::size_t j) const noexcept { return Sx_[index(i, j)]; }
  double Sy(std::size_t i, std::size_t j) const noexcept { return Sy_[index(i, j)]; }

 private:
  friend GeneratingTable generating_table(const PotentialModel&, double, double, Axis, Axis,
                                          const TableOptions&);
  void compute_derivatives();

  double s_, t_;
  Axis x_axis_, y_axis_;
  double eta_window_;
  std::vector<std::size_t> row_begin_, row_end_;
  std::vector<std::uint8_t> state_;
  std::vector<double> S_, eta_, xi_end_;
  std::vector<double> Sx_, Sy_, Sxx_, Sxy_, Syx_, Syy_;
};

/// Solves the boundary-value problem at every needed (x, y) with Newton
/// continuation along each row. BVP failures propagate as CausticError
/// naming the offending (x, y).
GeneratingTable generating_table(const PotentialModel& pot, double s, double t, Axis x_axis,
                                 Axis y_axis, const TableOptions& options = {});

/// Maximum deviations of the generating identities over entries with a
/// centered stencil: |dS/dx - xi(t)|, |dS/dy + eta*| and |Sxy - Syx|.
struct GeneratingIdentities {
  double max_dx_error = 0.0;
  double max_dy_error = 0.0;
  double max_symmetry_error = 0.0;
};
GeneratingIdentities generating_identities(const GeneratingTable& table);

/// max |dS/dt + (dS/dx)^2/2 + V(t, x)| over interior entries, with dS/dt by
/// a centered difference over t +- dt_rel (t - s) (two extra tables) and
/// dS/dx = xi(t) from the boundary-value solution.
double hamilton_jacobi_residual(const PotentialModel& pot, const GeneratingTable& table,
                                const TableOptions& options = {}, double dt_rel = 1e-4);

struct TamenessReport {
  double max_xx = 0.0;  ///< max |t-s| |Sxx|
  double max_xy = 0.0;
  double max_yy = 0.0;
  double min_det_yy = std::numeric_limits<double>::infinity();  ///< min |t-s| |det Syy|
  double delta_tilde = 0.1;
  bool pass = false;
};
TamenessReport tameness_report(const GeneratingTable& table, double delta_tilde = 0.1);

/// CSV export: x,y,S,Sxx,Sxy,Syy,converged (absent entries carry 0 and nan).
void write_csv(std::ostream& out, const GeneratingTable& table);

}  // namespace tslab
