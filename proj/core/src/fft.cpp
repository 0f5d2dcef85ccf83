#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "nls4/grid.hpp"

namespace nls4 {

namespace {

std::mutex plan_mutex;

// Plans are made once per (length, sign) with FFTW_ESTIMATE so results do not
// depend on timing measurements.
fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  CVec scratch(static_cast<std::size_t>(n));
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_1d(n, p, p, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan) fail(ErrorKind::numeric_domain, "fftw planner failed for n=" + std::to_string(n));
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void fft_inplace(cplx* data, int n, int sign) {
  fftw_plan plan = plan_for(n, sign);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  if (reinterpret_cast<std::uintptr_t>(data) % 64 == 0) {
    fftw_execute_dft(plan, p, p);
    return;
  }
  CVec tmp(data, data + n);
  auto* q = reinterpret_cast<fftw_complex*>(tmp.data());
  fftw_execute_dft(plan, q, q);
  std::copy(tmp.begin(), tmp.end(), data);
}

void fft_inplace(CVec& data, int sign) { fft_inplace(data.data(), static_cast<int>(data.size()), sign); }

Spectrum to_spectrum(const Field& f) {
  Spectrum s(f.grid);
  s.c = f.u;
  fft_inplace(s.c, -1);
  // x_0 = -L/2 contributes exp(i*pi*k) = (-1)^k; M even keeps the sign per slot.
  const double inv = 1.0 / f.grid.M;
  for (int i = 0; i < f.grid.M; ++i) s.c[i] *= (i & 1) ? -inv : inv;
  return s;
}

Field to_physical(const Spectrum& s) {
  Field f(s.grid);
  f.u = s.c;
  for (int i = 1; i < s.grid.M; i += 2) f.u[i] = -f.u[i];
  fft_inplace(f.u, +1);
  return f;
}

}  // namespace nls4
