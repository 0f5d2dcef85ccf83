#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "nls4/grid.hpp"
#include "nls4/parallel.hpp"

namespace nls4 {

struct ModeSet {
  int K = 0;
  double dxi = 1.0;  // lattice spacing 2*pi/L
  double L = 2.0 * pi;
  std::vector<double> xi() const;
};

ModeSet make_modes(const Grid& g, int K);

struct MultilinearResult {
  cplx value{};
  long long terms = 0;
};

inline constexpr long long default_term_budget = 100'000'000LL;

long long hyperplane_terms(int n, int K);
// Mass outside |k| <= K relative to total; states for the direct sums must be band-limited.
double outside_modes_fraction(const Spectrum& s, int K);

namespace detail {

// Factor table for slot j: c_j(k) for odd positions, conj(c_j(-k)) for even ones.
std::vector<std::vector<cplx>> factor_tables(const std::vector<const Spectrum*>& fields, int K);

cplx pairwise_sum(std::vector<cplx>& parts);

}  // namespace detail

// Direct sum over the truncated hyperplane k_1 + ... + k_n = 0 with |k_i| <= K,
// weight L per tuple, so Lambda_4(1; u) = int |u|^4 for band-limited u.
// sym receives the lattice indices k_1..k_n.
template <class Sym>
MultilinearResult lambda_n_lattice(int n, const std::vector<const Spectrum*>& fields, int K, Sym&& sym,
                                   long long budget = default_term_budget) {
  if (n != 2 && n != 4 && n != 6) fail(ErrorKind::invalid_configuration, "multilinear order must be 2, 4 or 6");
  if (static_cast<int>(fields.size()) != n) fail(ErrorKind::invalid_configuration, "need one field per slot");
  for (const auto* f : fields) {
    if (f->grid.carrier != 0) fail(ErrorKind::invalid_configuration, "multilinear sums need carrier-free grids");
    if (K >= f->grid.M / 2) fail(ErrorKind::invalid_configuration, "mode cutoff exceeds grid resolution");
  }
  const long long terms = hyperplane_terms(n, K);
  if (terms > budget) fail(ErrorKind::term_budget, "hyperplane enumeration of " + std::to_string(terms) + " tuples");
  auto tab = detail::factor_tables(fields, K);
  const double L = fields[0]->grid.L;
  const int W = 2 * K + 1;
  std::vector<cplx> parts(static_cast<std::size_t>(W));
  parallel_for(static_cast<std::size_t>(W), [&](std::size_t i1) {
    std::array<int, 6> k{};
    k[0] = static_cast<int>(i1) - K;
    const cplx f1 = tab[0][i1];
    cplx acc = 0.0;
    if (f1 == cplx{}) {
      parts[i1] = acc;
      return;
    }
    const int inner = n - 2;  // free indices after k_1, before the dependent k_n
    std::array<int, 6> idx{};
    long long count = 1;
    for (int j = 0; j < inner; ++j) count *= W;
    for (long long it = 0; it < count; ++it) {
      int sum = k[0];
      cplx prod = f1;
      for (int j = 0; j < inner; ++j) {
        k[j + 1] = idx[j] - K;
        sum += k[j + 1];
        prod *= tab[j + 1][idx[j]];
      }
      const int kn = -sum;
      if (kn >= -K && kn <= K && prod != cplx{}) {
        k[n - 1] = kn;
        acc += sym(k.data()) * prod * tab[n - 1][kn + K];
      }
      for (int j = inner - 1; j >= 0; --j) {
        if (++idx[j] < W) break;
        idx[j] = 0;
      }
    }
    parts[i1] = acc;
  });
  MultilinearResult r;
  r.value = L * detail::pairwise_sum(parts);
  r.terms = terms;
  return r;
}

using XiSymbol = std::function<cplx(const double* xi)>;

MultilinearResult lambda_n(int n, const XiSymbol& M, const std::vector<const Spectrum*>& fields, const ModeSet& modes,
                           long long budget = default_term_budget);
// Same field in every slot: Lambda_n(M; u) = Lambda_n(M; u, conj u, u, ...).
MultilinearResult lambda_n(int n, const XiSymbol& M, const Spectrum& u, const ModeSet& modes,
                           long long budget = default_term_budget);
MultilinearResult lambda_n(int n, const XiSymbol& M, const Field& u, const ModeSet& modes,
                           long long budget = default_term_budget);

}  // namespace nls4
