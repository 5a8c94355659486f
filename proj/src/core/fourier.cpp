#include "tslab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "tslab/errors.hpp"

namespace tslab {
namespace {

// Plans are created once per (n, direction) under a lock; execution uses
// the new-array interface on per-thread aligned buffers, which FFTW allows
// concurrently.
struct PlanCache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans;

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex);
    auto key = std::make_pair(n, sign);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE);
    fftw_free(buf);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

struct AlignedBuffer {
  fftw_complex* data = nullptr;
  std::size_t n = 0;
  ~AlignedBuffer() {
    if (data) fftw_free(data);
  }
  fftw_complex* ensure(std::size_t m) {
    if (m != n) {
      if (data) fftw_free(data);
      data = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m));
      n = m;
    }
    return data;
  }
};

}  // namespace

void fft_inplace(std::span<cplx> data, Direction direction) {
  const std::size_t n = data.size();
  const int sign = direction == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan = plan_cache().get(n, sign);
  thread_local AlignedBuffer buffer;
  fftw_complex* buf = buffer.ensure(n);
  std::memcpy(buf, data.data(), sizeof(fftw_complex) * n);
  fftw_execute_dft(plan, buf, buf);
  std::memcpy(static_cast<void*>(data.data()), buf, sizeof(fftw_complex) * n);
}

WaveFunction fourier_transform(const WaveFunction& f, Direction direction) {
  const GridSpec& g = f.grid();
  const std::size_t n = g.n;
  const std::size_t half = n / 2;
  std::vector<cplx> work(n);
  if (direction == Direction::forward) {
    if (f.domain() != Domain::position)
      throw InvalidArgument("fourier_transform: forward expects a position-domain function");
    std::copy(f.values().begin(), f.values().end(), work.begin());
    fft_inplace(work, Direction::forward);
    std::vector<cplx> out(n);
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t k = (m + half) % n;  // fft index of centered index m
      const double sign = ((m + half) % 2 == 0) ? 1.0 : -1.0;  // (-1)^(m - n/2)
      out[m] = g.dx() * sign * work[k];
    }
    return WaveFunction(g, std::move(out), f.hbar(), Domain::frequency);
  }
  if (f.domain() != Domain::frequency)
    throw InvalidArgument("fourier_transform: inverse expects a frequency-domain function");
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t k = (m + half) % n;
    const double sign = ((m + half) % 2 == 0) ? 1.0 : -1.0;
    work[k] = sign * f[m];
  }
  fft_inplace(work, Direction::inverse);
  const double scale = 1.0 / (static_cast<double>(n) * g.dx());
  for (auto& v : work) v *= scale;
  return WaveFunction(g, std::move(work), f.hbar(), Domain::position);
}

WaveFunction apply_multiplier(const WaveFunction& f, const std::function<cplx(double)>& m) {
  if (f.domain() != Domain::position)
    throw InvalidArgument("apply_multiplier: expects a position-domain function");
  const GridSpec& g = f.grid();
  std::vector<cplx> work(f.values().begin(), f.values().end());
  fft_inplace(work, Direction::forward);
  const double scale = 1.0 / static_cast<double>(g.n);
  for (std::size_t k = 0; k < g.n; ++k) work[k] *= m(g.xi_fft(k)) * scale;
  fft_inplace(work, Direction::inverse);
  return f.with_values(std::move(work));
}

std::vector<cplx> fourier_transform_at(const WaveFunction& f, std::span<const double> xi) {
  if (f.domain() != Domain::position)
    throw InvalidArgument("fourier_transform_at: expects a position-domain function");
  const GridSpec& g = f.grid();
  std::vector<cplx> out(xi.size());
  constexpr std::size_t kResync = 64;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const cplx step = std::polar(1.0, -g.dx() * xi[i]);
    cplx acc = 0.0;
    cplx phase;
    for (std::size_t j = 0; j < g.n; ++j) {
      if (j % kResync == 0)
        phase = std::polar(1.0, -g.x(j) * xi[i]);
      else
        phase *= step;
      acc += f[j] * phase;
    }
    out[i] = acc * g.dx();
  }
  return out;
}

std::vector<cplx> interpolate(const WaveFunction& f, std::span<const double> points) {
  if (f.domain() != Domain::position)
    throw InvalidArgument("interpolate: expects a position-domain function");
  const GridSpec& g = f.grid();
  const std::size_t n = g.n;
  const auto half = static_cast<long long>(n / 2);
  std::vector<cplx> y(f.values().begin(), f.values().end());
  fft_inplace(y, Direction::forward);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<cplx> out(points.size());
  constexpr long long kResync = 64;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double u = points[i] + g.half_width;
    const cplx step = std::polar(1.0, u * g.dxi());
    cplx acc = 0.0;
    cplx phase;
    long long count = 0;
    for (long long k = -half + 1; k < half; ++k, ++count) {
      if (count % kResync == 0)
        phase = std::polar(1.0, u * static_cast<double>(k) * g.dxi());
      else
        phase *= step;
      acc += y[static_cast<std::size_t>((k + static_cast<long long>(n)) % static_cast<long long>(n))] * phase;
    }
    acc += y[n / 2] * std::cos(u * static_cast<double>(half) * g.dxi());
    out[i] = acc * inv_n;
  }
  return out;
}

}  // namespace tslab
