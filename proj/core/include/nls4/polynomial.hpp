#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nls4 {

// Multivariate polynomial with integer coefficients. Monomials are exponent
// vectors of fixed length nvars; zero coefficients are never stored.
class Polynomial {
public:
  using Monomial = std::vector<int>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}
  static Polynomial constant(int nvars, std::int64_t c);
  static Polynomial variable(int nvars, int index);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, std::int64_t>& terms() const { return terms_; }
  int degree() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial pow(int e) const;
  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  double evaluate(const std::vector<double>& x) const;
  std::string to_string() const;

private:
  void add_term(const Monomial& m, std::int64_t c);
  int nvars_;
  std::map<Monomial, std::int64_t> terms_;
};

}  // namespace nls4
