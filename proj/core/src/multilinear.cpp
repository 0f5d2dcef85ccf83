#include "nls4/multilinear.hpp"

namespace nls4 {

std::vector<double> ModeSet::xi() const {
  std::vector<double> out;
  for (int k = -K; k <= K; ++k) out.push_back(k * dxi);
  return out;
}

ModeSet make_modes(const Grid& g, int K) {
  if (K < 1 || K >= g.M / 2) fail(ErrorKind::invalid_configuration, "mode cutoff K must lie in [1, M/2)");
  return ModeSet{K, g.dxi(), g.L};
}

long long hyperplane_terms(int n, int K) {
  long long t = 1;
  for (int i = 0; i < n - 1; ++i) t *= (2LL * K + 1);
  return t;
}

double outside_modes_fraction(const Spectrum& s, int K) {
  double tot = 0.0, out = 0.0;
  for (int i = 0; i < s.grid.M; ++i) {
    double a = std::norm(s.c[i]);
    tot += a;
    if (std::abs(s.grid.k_of(i)) > K) out += a;
  }
  return tot > 0.0 ? out / tot : 0.0;
}

namespace detail {

std::vector<std::vector<cplx>> factor_tables(const std::vector<const Spectrum*>& fields, int K) {
  std::vector<std::vector<cplx>> tab(fields.size(), std::vector<cplx>(2 * K + 1));
  for (std::size_t j = 0; j < fields.size(); ++j) {
    for (int k = -K; k <= K; ++k) {
      tab[j][k + K] = (j % 2 == 0) ? fields[j]->at_k(k) : std::conj(fields[j]->at_k(-k));
    }
  }
  return tab;
}

cplx pairwise_sum(std::vector<cplx>& parts) {
  std::size_t n = parts.size();
  if (n == 0) return 0.0;
  while (n > 1) {
    std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i + half < n; ++i) parts[i] += parts[i + half];
    n = half;
  }
  return parts[0];
}

}  // namespace detail

MultilinearResult lambda_n(int n, const XiSymbol& M, const std::vector<const Spectrum*>& fields, const ModeSet& modes,
                           long long budget) {
  const double d = modes.dxi;
  return lambda_n_lattice(
      n, fields, modes.K,
      [&](const int* k) {
        double xi[6];
        for (int j = 0; j < n; ++j) xi[j] = k[j] * d;
        return M(xi);
      },
      budget);
}

MultilinearResult lambda_n(int n, const XiSymbol& M, const Spectrum& u, const ModeSet& modes, long long budget) {
  std::vector<const Spectrum*> fs(static_cast<std::size_t>(n), &u);
  return lambda_n(n, M, fs, modes, budget);
}

MultilinearResult lambda_n(int n, const XiSymbol& M, const Field& u, const ModeSet& modes, long long budget) {
  Spectrum s = to_spectrum(u);
  return lambda_n(n, M, s, modes, budget);
}

}  // namespace nls4
