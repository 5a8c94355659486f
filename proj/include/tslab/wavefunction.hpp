#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tslab/grid.hpp"

namespace tslab {

enum class Domain { position, frequency };

/// Complex samples on a GridSpec together with the semiclassical parameter.
///
/// Position-domain samples are indexed like the grid (x_j); frequency-domain
/// samples use the centered ordering (xi increasing). Values are checked to
/// be finite at construction and are immutable afterwards.
class WaveFunction {
 public:
  WaveFunction(GridSpec grid, std::vector<cplx> values, double hbar = 1.0,
               Domain domain = Domain::position);

  /// Samples f(x_j) of a callable.
  static WaveFunction sample(const GridSpec& grid, const std::function<cplx(double)>& f,
                             double hbar = 1.0);

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  const cplx& operator[](std::size_t j) const noexcept { return values_[j]; }
  std::size_t size() const noexcept { return values_.size(); }
  double hbar() const noexcept { return hbar_; }
  Domain domain() const noexcept { return domain_; }

  /// Same metadata, new samples.
  WaveFunction with_values(std::vector<cplx> values) const;
  WaveFunction with_hbar(double hbar) const;

  /// Fraction of sum |f|^2 carried by the outermost 5% shell of the box.
  double boundary_mass_fraction() const;

  /// Throws GuardError("boundary-mass") when boundary_mass_fraction() > tol.
  void require_boundary_mass(double tol, const std::string& context) const;

  /// Fraction of spectral energy at |xi| > cutoff.
  double spectral_mass_beyond(double cutoff) const;

  WaveFunction operator+(const WaveFunction& other) const;
  WaveFunction operator-(const WaveFunction& other) const;
  WaveFunction operator*(cplx s) const;

 private:
  GridSpec grid_;
  std::vector<cplx> values_;
  double hbar_;
  Domain domain_;
};

/// Default boundary-mass tolerance asserted by every operation.
inline constexpr double kBoundaryMassTol = 1e-10;

/// CSV snapshot: index,x,re,im (x is the frequency for Domain::frequency).
void write_csv(std::ostream& out, const WaveFunction& f);

/// Throws InvalidArgument unless grids (and domains) agree.
void require_same_grid(const WaveFunction& a, const WaveFunction& b, const char* context);

}  // namespace tslab
