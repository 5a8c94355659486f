#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tslab/flow.hpp"
#include "tslab/grid.hpp"

namespace tslab {

/// STFT window sampled on a grid, centred at x = 0 (grid index n/2).
/// Samples below 1e-17 of the peak are trimmed, so translates only touch
/// the window's numerical support.
class Window {
 public:
  /// g(x) = pi^{-1/4} e^{-x^2/2}
  static Window gaussian(const GridSpec& grid);
  /// g(x) = sqrt(2) pi^{-1/4} x e^{-x^2/2}
  static Window hermite1(const GridSpec& grid);
  static Window from_function(const GridSpec& grid, const std::function<cplx(double)>& g, std::string label);

  const GridSpec& grid() const noexcept { return grid_; }
  const std::string& label() const noexcept { return label_; }
  double l2_norm() const noexcept { return l2_; }

  /// g(x_j - x_{center}) for grid indices j; zero off the support.
  cplx shifted(std::size_t j, std::size_t center) const noexcept;
  /// Grid index range [first, last) where the window centred at `center`
  /// is nonzero (clipped to the box).
  std::size_t first(std::size_t center) const noexcept;
  std::size_t last(std::size_t center) const noexcept;

 private:
  GridSpec grid_;
  std::string label_;
  std::vector<cplx> values_;  ///< offsets -half..half from the centre
  long long half_ = 0;
  double l2_ = 0.0;
};

/// Product lattice of phase-space nodes (x, xi) with x on grid nodes.
/// Nodes are x-major: index = ix * xis().size() + ik.
class PhaseLattice {
 public:
  /// x-spacing alpha is snapped to the nearest positive multiple of dx; the
  /// xi-spacing beta is used as given. Nodes m*alpha, k*beta within [-R, R].
  static PhaseLattice make(const GridSpec& grid, double alpha, double beta, double radius);

  const GridSpec& grid() const noexcept { return grid_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double radius() const noexcept { return radius_; }
  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<double>& xis() const noexcept { return xis_; }
  const std::vector<std::size_t>& x_indices() const noexcept { return x_index_; }
  std::size_t size() const noexcept { return xs_.size() * xis_.size(); }
  FlowPoint node(std::size_t i) const noexcept { return {xs_[i / xis_.size()], xis_[i % xis_.size()]}; }
  double cell_volume() const noexcept { return alpha_ * beta_; }

 private:
  GridSpec grid_;
  double alpha_ = 0.0, beta_ = 0.0, radius_ = 0.0;
  std::vector<double> xs_, xis_;
  std::vector<std::size_t> x_index_;
};

}  // namespace tslab
