#include <cmath>

#include <doctest.h>

#include "nls4/polynomial.hpp"
#include "nls4/resonance.hpp"

using namespace nls4;

TEST_SUITE("resonance") {

TEST_CASE("polynomial arithmetic") {
  const Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const Polynomial sq = (x + y).pow(2);
  CHECK(sq == x * x + Polynomial::constant(2, 2) * x * y + y * y);
  CHECK((sq - sq).is_zero());
  CHECK(sq.degree() == 2);
  CHECK(sq.evaluate({1.5, -0.5}) == doctest::Approx(1.0));
  CHECK((x.pow(4) - y.pow(4)) == (x - y) * (x + y) * (x * x + y * y));
  CHECK(Polynomial::constant(2, 0).is_zero());
  CHECK_THROWS(Polynomial::constant(1, 1LL << 62) * Polynomial::constant(1, 4));
}

TEST_CASE("signed factorization") {
  const Quad q{1, 2, 3, -6};
  CHECK(resonance_lhs(q) == -1230.0);
  CHECK(resonance_rhs_signed(q) == -1230.0);
  CHECK(factorization_residual(q) == 0.0);
  for (double a : {0.5, 2.0, 7.0}) {
    const Quad p{a, -a, a, -a};
    CHECK(resonance_lhs(p) == 0.0);
    CHECK(resonance_rhs_signed(p) == 0.0);
  }
  CHECK_THROWS_AS(factorization_residual(Quad{1, 2, 3, 4}), Error);
}

TEST_CASE("display pairing holds only in absolute value") {
  const Quad q{1, 1, 0, -2};
  CHECK(resonance_lhs(q) == -16.0);
  CHECK(resonance_rhs_display(q) == 16.0);
  CHECK(factorization_residual_abs(q) == 0.0);
  const SymbolicFactorization s = symbolic_factorization();
  CHECK(s.signed_identity);
  CHECK(s.display_abs_identity);
  CHECK_FALSE(s.display_signed_identity);
  CHECK(s.signed_residual == "0");
}

TEST_CASE("sampled sweep") {
  const SweepReport r = factorization_sweep(20000, 42);
  CHECK(r.samples == 20000);
  CHECK(r.max_rel_signed < 1e-12);
  CHECK(r.max_rel_abs < 1e-12);
  const SweepReport again = factorization_sweep(20000, 42);
  CHECK(again.max_rel_signed == r.max_rel_signed);
  const HyperplaneSample h = make_hyperplane_sample(3.0, -5.5, 0.25);
  CHECK(h.xi[3] == doctest::Approx(2.25));
  CHECK(h.dyadic[1] == 4.0);
}

TEST_CASE("mean value bound") {
  const IMethodParams p{4.0, -0.5};
  const MeanValueReport flat = mean_value_bound_check(p, 2000, 1, 0.1, 3.0);
  CHECK(flat.max_diff1 == 0.0);
  CHECK(flat.max_diff2 == 0.0);
  const MeanValueReport power = mean_value_bound_check(p, 2000, 2, 9.0, 1000.0);
  CHECK(power.sup_rel_err1 < 0.1);
  CHECK(power.sup_rel_err2 < 0.1);
  const MeanValueReport junction = mean_value_bound_check(p, 2000, 3, 3.0, 10.0);
  CHECK(std::isfinite(junction.norm1));
  CHECK(junction.norm1 < 10.0 * power.norm1);
  CHECK(junction.norm2 < 10.0 * power.norm2);
}

TEST_CASE("trilinear counterexample exponents") {
  TrilinearConfig c;
  c.Ns = {16, 32, 64, 128};
  for (auto [s, want, tol] : {std::tuple{0.0, -1.0, 0.15}, {-0.5, 0.0, 0.1}, {-1.0, 1.0, 0.15}}) {
    c.s = s;
    const TrilinearResult r = trilinear_counterexample(c);
    CHECK(r.predicted == doctest::Approx(want));
    CHECK(std::abs(r.fit.slope - want) < tol);
    CHECK(r.diverges == (s < -0.5));
  }
}

}
