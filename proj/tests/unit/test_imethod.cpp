#include <cmath>
#include <random>

#include <doctest.h>

#include "nls4/gwp.hpp"
#include "nls4/imethod.hpp"
#include "nls4/multilinear.hpp"
#include "nls4/symmetries.hpp"

using namespace nls4;

namespace {

Field mode(const Grid& g, int k, cplx a = 1.0) {
  Field f(g);
  for (int j = 0; j < g.M; ++j) f.u[static_cast<std::size_t>(j)] = a * std::polar(1.0, g.xi_of_k(k) * g.x(j));
  return f;
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.u.size(); ++i) m = std::max(m, std::abs(a.u[i] - b.u[i]));
  return m;
}

}  // namespace

TEST_SUITE("imethod") {

TEST_CASE("multiplier profile") {
  for (Interp in : {Interp::log_cubic, Interp::log_quintic}) {
    const IMethodParams p{3.0, -0.5, in};
    CHECK(m_value(p, 0.0) == 1.0);
    CHECK(m_value(p, 4 * p.N) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m_value(p, -4 * p.N) == doctest::Approx(0.5).epsilon(1e-14));
    double prev = 1.0;
    for (int i = 0; i <= 10000; ++i) {
      const double m = m_value(p, i * 1e-3 * p.N);
      CHECK_MESSAGE(m <= prev + 1e-15, "not monotone at " << i);
      prev = m;
    }
  }
  CHECK_THROWS_AS(validate(IMethodParams{0.0, -0.5}), Error);
  CHECK_THROWS_AS(validate(IMethodParams{1.0, 0.5}), Error);
}

TEST_CASE("apply I") {
  const Grid g = make_grid(4 * pi, 128);
  const Field r = random_field(g, 40, 1.0, 3);
  CHECK(max_abs_diff(apply_I(r, {1e6, -0.5}), r) < 1e-14);

  const IMethodParams p{2.0, -0.5};
  const SymbolFn msq{[&](double xi) { return cplx(m_squared(p, xi)); }, "m2"};
  CHECK(max_abs_diff(apply_I(apply_I(r, p), p), apply_symbol(r, msq)) < 1e-13);

  // ||u||_{H^s} <~ ||Iu|| <~ N^{-s} ||u||_{H^s}
  double lo = 0.0, hi = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Field f = random_field(g, 60, 1.0, seed);
    const double iu = sobolev_norm(apply_I(f, p), 0.0), hs = sobolev_norm(f, p.s);
    lo = std::max(lo, hs / iu);
    hi = std::max(hi, iu / (std::pow(p.N, -p.s) * hs));
  }
  MESSAGE("sandwich constants " << lo << " " << hi);
  CHECK(lo <= 1.0 + 1e-12);
  CHECK(hi <= 2.0);
}

TEST_CASE("energy2") {
  const Grid g = make_grid(2 * pi, 64);
  const Field r = random_field(g, 20, 1.0, 5);
  CHECK(energy2(r, {1e6, -0.5}) == doctest::Approx(mass(r)).epsilon(1e-14));
  const IMethodParams p{2.0, -0.5};
  CHECK(energy2(mode(g, 9), p) == doctest::Approx(p.N / 9.0 * 2 * pi).epsilon(1e-13));
  const ModeSet modes = make_modes(g, 20);
  const auto sym = [&](const double* xi) { return cplx(m_value(p, xi[0]) * m_value(p, xi[1])); };
  const cplx l2 = lambda_n(2, sym, r, modes).value;
  CHECK(l2.real() == doctest::Approx(energy2(r, p)).epsilon(1e-12));
  CHECK(std::abs(l2.imag()) < 1e-12 * l2.real());
}

TEST_CASE("quartic symbols") {
  const IMethodParams p{2.0, -0.5};
  CHECK(std::abs(symbol_alpha4(1, 1, 0, -2) - cplx(0, -16)) < 1e-14);
  for (double a : {0.5, 3.0, 11.0}) {
    for (double b : {0.7, 5.0}) {
      CHECK(std::abs(symbol_alpha4(a, -b, b, -a)) == 0.0);
      CHECK(std::abs(symbol_M4(a, -b, b, -a, p)) < 1e-15);
      CHECK(std::abs(symbol_sigma4(a, -b, b, -a, p)) == 0.0);
    }
    CHECK(std::abs(symbol_sigma4(a, a, -a, -a, p)) == 0.0);
  }
  CHECK(symbol_M4(0.5, 1.2, -0.3, -1.4, p) == 0.0);
  CHECK(std::abs(symbol_sigma4(0.5, 1.2, -0.3, -1.4, p)) == 0.0);
  CHECK(std::abs(symbol_sigma4(1, 2, 3, -6, p)) > 0.0);
  CHECK_THROWS_AS(symbol_sigma4(1, 2, 3, 4, p), Error);
}

TEST_CASE("sextic symbol") {
  const IMethodParams p{10.0, -0.5};
  const double low[6] = {0.3, -0.2, 0.5, -0.1, 0.4, -0.9};
  CHECK(std::abs(symbol_M6(low, p)) == 0.0);
  // Depends on xi4, xi5, xi6 only through their sum.
  const double a[6] = {31.0, -4.0, 17.0, 5.0, -60.0, 11.0};
  const double b[6] = {31.0, -4.0, 17.0, -30.0, 2.0, -16.0};
  const double c[6] = {31.0, -4.0, 17.0, 11.0, 5.0, -60.0};
  CHECK(std::abs(symbol_M6(a, p) - symbol_M6(b, p)) < 1e-14 * std::abs(symbol_M6(a, p)));
  CHECK(std::abs(symbol_M6(a, p) - symbol_M6(c, p)) < 1e-14 * std::abs(symbol_M6(a, p)));
  CHECK(std::abs(symbol_M6(a, p)) > 0.0);
}

TEST_CASE("multilinear sums") {
  const Grid g = make_grid(2 * pi, 32);
  const ModeSet modes = make_modes(g, 6);
  const cplx A(0.6, -0.3);
  const auto one = [](const double*) { return cplx(1.0); };
  CHECK(lambda_n(4, one, mode(g, 3, A), modes).value.real() ==
        doctest::Approx(std::pow(std::abs(A), 4) * 2 * pi).epsilon(1e-12));
  const Field r = random_field(g, 6, 1.0, 8);
  const auto even = [](const double* x) { return cplx(1.0 / (1.0 + x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3])); };
  const cplx v = lambda_n(4, even, r, modes).value;
  CHECK(std::abs(v.imag()) < 1e-12 * std::abs(v));
  CHECK(lambda_n(4, one, r, modes).value.real() == doctest::Approx(hamiltonian(r, 1.0).quartic).epsilon(1e-12));
  CHECK_THROWS_AS(lambda_n(6, one, r, modes, 10), Error);
}

TEST_CASE("energy4") {
  const Grid g = make_grid(2 * pi, 32);
  const ModeSet modes = make_modes(g, 5);
  const Field r = random_field(g, 5, 1.0, 2);
  const IMethodParams p{100.0, -0.5};
  CHECK(energy4(r, p, modes) == doctest::Approx(energy2(r, p)).epsilon(1e-15));
  const IMethodParams q{2.0, -0.5};
  const Field small = random_field(g, 5, 0.1, 2);
  const double gap = std::abs(energy4(small, q, modes) - energy2(small, q));
  const double iu = energy2(small, q);
  MESSAGE("|E4-E2| / ||Iu||^4 = " << gap / (iu * iu));
  CHECK(gap > 0.0);
  CHECK(gap / (iu * iu) < 10.0);
}

TEST_CASE("derivative identities on the galerkin oracle") {
  const Grid g = make_grid(8 * pi, 64);
  const ModeSet modes = make_modes(g, 8);
  const IMethodParams p{1.0, -0.5};
  EvolutionConfig cfg;
  cfg.kappa = 0.0;
  const Field r = random_field(g, 8, 0.3, 1);
  const DerivativeIdentity lin = derivative_identity_check(r, p, cfg, modes);
  CHECK(std::abs(lin.dE2_fd) < 1e-9 * energy2(r, p));

  cfg.kappa = 1.0;
  const Grid h = make_grid(8 * pi, 16);
  Spectrum five(h);
  std::mt19937_64 rng(12);
  std::normal_distribution<double> nd;
  for (int k : {-4, -1, 2, 3, 5}) five.at_k(k) = 0.3 * cplx(nd(rng), nd(rng));
  const DerivativeIdentity d = derivative_identity_check(to_physical(five), p, cfg, make_modes(h, 6));
  CHECK(d.defect2 < 1e-6);
  CHECK(d.ratio == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("gwp exponents") {
  const GwpExponents e = gwp_exponents(Rational(-1, 2));
  CHECK(e.lambda_exp == Rational(1, 2));
  CHECK(e.time_exp == Rational(1));
  CHECK(e.growth == Rational(1, 2));
  const GwpParameters z = gwp_parameters(Rational(0), 50.0, 1.0, 0.1);
  CHECK(z.exponents.lambda_exp == Rational(0));
  CHECK(z.exponents.growth == Rational(0));
  CHECK(z.lambda == doctest::Approx(std::pow(10.0, 2.0 / 3.0)));
  CHECK_THROWS_AS(gwp_exponents(Rational(-3, 2)), Error);
  CHECK_THROWS_AS(gwp_exponents(Rational(-1)), Error);
  CHECK_THROWS_AS(gwp_exponents(Rational(1, 4)), Error);
  CHECK(to_rational(-0.75) == Rational(-3, 4));
}

}
