#include "tslab/wavefunction.hpp"

#include <cmath>
#include <ostream>

#include "tslab/errors.hpp"
#include "tslab/strings.hpp"
#include "tslab/fourier.hpp"
#include "tslab/norms.hpp"

namespace tslab {

WaveFunction::WaveFunction(GridSpec grid, std::vector<cplx> values, double hbar, Domain domain)
    : grid_(grid), values_(std::move(values)), hbar_(hbar), domain_(domain) {
  if (values_.size() != grid_.n)
    throw InvalidArgument("WaveFunction: expected " + std::to_string(grid_.n) + " samples, got " +
                          std::to_string(values_.size()));
  if (!(hbar_ > 0.0 && hbar_ <= 1.0))
    throw InvalidArgument("WaveFunction: hbar must lie in (0, 1]");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidArgument("WaveFunction: non-finite sample");
}

WaveFunction WaveFunction::sample(const GridSpec& grid, const std::function<cplx(double)>& f,
                                  double hbar) {
  std::vector<cplx> v(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j) v[j] = f(grid.x(j));
  return WaveFunction(grid, std::move(v), hbar);
}

WaveFunction WaveFunction::with_values(std::vector<cplx> values) const {
  return WaveFunction(grid_, std::move(values), hbar_, domain_);
}

WaveFunction WaveFunction::with_hbar(double hbar) const {
  return WaveFunction(grid_, values_, hbar, domain_);
}

double WaveFunction::boundary_mass_fraction() const {
  const double edge = 0.95 * grid_.half_width;
  std::vector<double> inner, outer;
  inner.reserve(values_.size());
  outer.reserve(values_.size() / 10 + 1);
  for (std::size_t j = 0; j < values_.size(); ++j) {
    const double w = std::norm(values_[j]);
    const double coord = domain_ == Domain::position ? grid_.x(j) : grid_.xi_centered(j);
    const double limit = domain_ == Domain::position ? edge : 0.95 * grid_.nyquist();
    (std::abs(coord) > limit ? outer : inner).push_back(w);
  }
  const double o = pairwise_sum(outer);
  const double total = o + pairwise_sum(inner);
  return total > 0.0 ? o / total : 0.0;
}

void WaveFunction::require_boundary_mass(double tol, const std::string& context) const {
  const double frac = boundary_mass_fraction();
  if (frac > tol)
    throw GuardError("boundary-mass", context + ": fraction " + num(frac) +
                                          " of |f|^2 in the outer 5% shell exceeds " +
                                          num(tol));
}

double WaveFunction::spectral_mass_beyond(double cutoff) const {
  const WaveFunction spec =
      domain_ == Domain::position ? fourier_transform(*this, Direction::forward) : *this;
  std::vector<double> inner, outer;
  for (std::size_t m = 0; m < spec.size(); ++m) {
    const double w = std::norm(spec[m]);
    (std::abs(grid_.xi_centered(m)) > cutoff ? outer : inner).push_back(w);
  }
  const double o = pairwise_sum(outer);
  const double total = o + pairwise_sum(inner);
  return total > 0.0 ? o / total : 0.0;
}

void require_same_grid(const WaveFunction& a, const WaveFunction& b, const char* context) {
  if (!(a.grid() == b.grid()) || a.domain() != b.domain())
    throw InvalidArgument(std::string(context) + ": grid mismatch");
}

WaveFunction WaveFunction::operator+(const WaveFunction& other) const {
  require_same_grid(*this, other, "WaveFunction::operator+");
  std::vector<cplx> v(values_);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += other.values_[j];
  return with_values(std::move(v));
}

WaveFunction WaveFunction::operator-(const WaveFunction& other) const {
  require_same_grid(*this, other, "WaveFunction::operator-");
  std::vector<cplx> v(values_);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] -= other.values_[j];
  return with_values(std::move(v));
}

WaveFunction WaveFunction::operator*(cplx s) const {
  std::vector<cplx> v(values_);
  for (auto& x : v) x *= s;
  return with_values(std::move(v));
}

void write_csv(std::ostream& out, const WaveFunction& f) {
  out << "index,x,re,im\n";
  out.precision(17);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double c = f.domain() == Domain::position ? f.grid().x(j) : f.grid().xi_centered(j);
    out << j << ',' << c << ',' << f[j].real() << ',' << f[j].imag() << '\n';
  }
}

}  // namespace tslab
