#include <cmath>

#include "nls4/grid.hpp"

namespace nls4 {

double Grid::xi_max() const {
  double a = std::abs(xi_of_k(-M / 2));
  double b = std::abs(xi_of_k(M / 2 - 1));
  return a > b ? a : b;
}

Grid make_grid(double L, int M, std::int64_t carrier) {
  if (!(L > 0.0) || !std::isfinite(L)) fail(ErrorKind::invalid_configuration, "grid length L must be positive");
  if (M < 8) fail(ErrorKind::invalid_configuration, "grid modes M must be at least 8");
  if (M % 2 != 0) fail(ErrorKind::invalid_configuration, "grid modes M must be even");
  Grid g;
  g.L = L;
  g.M = M;
  g.carrier = carrier;
  return g;
}

Field::Field(const Grid& g, CVec samples) : grid(g), u(std::move(samples)) {
  if (u.size() != static_cast<std::size_t>(g.M))
    fail(ErrorKind::invalid_configuration, "sample count does not match grid modes");
}

void check_finite(const Field& f, const char* what) {
  for (const auto& v : f.u)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(ErrorKind::numeric_domain, std::string(what) + ": non-finite sample");
}

}  // namespace nls4
