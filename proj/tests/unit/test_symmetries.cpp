#include <cmath>

#include <doctest.h>

#include "nls4/fit.hpp"
#include "nls4/symmetries.hpp"

using namespace nls4;

TEST_SUITE("symmetries") {

TEST_CASE("scale transform") {
  const Field f = make_gaussian(make_grid(40, 512), 1.0, 1.5, 0.3, 0.0);
  const ScaledField one = scale_transform(f, 1.0);
  CHECK(one.field.grid == f.grid);
  for (std::size_t i = 0; i < f.u.size(); ++i) CHECK(one.field.u[i] == f.u[i]);
  CHECK(one.time_factor == 1.0);
  CHECK(scale_transform(f, 2.0).time_factor == doctest::Approx(16.0));
  CHECK_THROWS_AS(scale_transform(f, 0.0), Error);
}

TEST_CASE("homogeneous norm scaling") {
  const Field f = make_gaussian(make_grid(40, 512), 1.0, 1.5, 0.3, 0.0);
  for (double s : {-1.0, -0.5, 0.0, 0.5}) {
    std::vector<double> ls{0.5, 1.0, 2.0, 4.0}, ratios;
    for (double l : ls) ratios.push_back(sobolev_norm(scale_transform(f, l).field, s, true) / sobolev_norm(f, s, true));
    CHECK(std::abs(fit_loglog(ls, ratios).slope - (s + 1.5)) < 1e-8);
  }
  for (double l : {0.5, 2.0, 3.0})
    CHECK(std::abs(sobolev_norm(scale_transform(f, l).field, -1.5, true) / sobolev_norm(f, -1.5, true) - 1.0) < 1e-8);
}

TEST_CASE("covariance defect") {
  const Field f = make_gaussian(make_grid(40, 256), 0.5, 2.0, 0.0, 0.0);
  EvolutionConfig c;
  c.dt = 1e-4;
  c.tail_guard = false;
  CHECK(check_scaling_covariance(f, 1.0, c, 0.05).defect < 1e-12);
  const CovarianceReport r = check_scaling_covariance(f, 2.0, c, 0.05);
  CHECK(r.defect <= r.bound() * 1.0000001 + 1e-14);
  CHECK(r.defect < 1e-6);
}

}
