#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "nls4/common.hpp"

namespace nls4 {

// Periodic grid on [-L/2, L/2). Coefficient arrays are stored in FFT order:
// slot i holds lattice index k = i for i < M/2 and k = i - M otherwise.
// A nonzero carrier shifts every frequency to 2*pi*(k + carrier)/L; the
// samples then hold the envelope u(x) * exp(-i*2*pi*carrier*x/L).
struct Grid {
  double L = 2.0 * pi;
  int M = 8;
  std::int64_t carrier = 0;

  double dx() const { return L / M; }
  double dxi() const { return 2.0 * pi / L; }
  double x(int j) const { return -0.5 * L + j * dx(); }
  int k_of(int slot) const { return slot < M / 2 ? slot : slot - M; }
  int slot_of(int k) const { return k >= 0 ? k : k + M; }
  double xi_of_k(double k) const { return 2.0 * pi * (k + static_cast<double>(carrier)) / L; }
  double xi(int slot) const { return xi_of_k(k_of(slot)); }
  double carrier_xi() const { return 2.0 * pi * static_cast<double>(carrier) / L; }
  double xi_max() const;

  bool operator==(const Grid&) const = default;
};

Grid make_grid(double L, int M, std::int64_t carrier = 0);

struct Field {
  Grid grid;
  CVec u;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), u(static_cast<std::size_t>(g.M), cplx{}) {}
  Field(const Grid& g, CVec samples);
};

struct Spectrum {
  Grid grid;
  CVec c;

  Spectrum() = default;
  explicit Spectrum(const Grid& g) : grid(g), c(static_cast<std::size_t>(g.M), cplx{}) {}

  cplx& at_k(int k) { return c[static_cast<std::size_t>(grid.slot_of(k))]; }
  const cplx& at_k(int k) const { return c[static_cast<std::size_t>(grid.slot_of(k))]; }
};

struct SymbolFn {
  std::function<cplx(double)> f;
  std::string tag;

  cplx operator()(double xi) const { return f(xi); }
};

Spectrum to_spectrum(const Field& f);
Field to_physical(const Spectrum& s);

// Unnormalized in-place transforms of length n: sign -1 forward, +1 backward.
void fft_inplace(CVec& data, int sign);
void fft_inplace(cplx* data, int n, int sign);

void check_finite(const Field& f, const char* what);

}  // namespace nls4
