#include <cmath>
#include <sstream>

#include "nls4/common.hpp"
#include "nls4/polynomial.hpp"

namespace nls4 {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::numeric_domain, "polynomial coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::numeric_domain, "polynomial coefficient overflow");
  return r;
}

}  // namespace

Polynomial Polynomial::constant(int nvars, std::int64_t c) {
  Polynomial p(nvars);
  p.add_term(Monomial(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) fail(ErrorKind::invalid_configuration, "variable index out of range");
  Polynomial p(nvars);
  Monomial m(static_cast<std::size_t>(nvars), 0);
  m[static_cast<std::size_t>(index)] = 1;
  p.add_term(m, 1);
  return p;
}

void Polynomial::add_term(const Monomial& m, std::int64_t c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.nvars_ != nvars_) fail(ErrorKind::invalid_configuration, "polynomial variable count mismatch");
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) r.add_term(m, checked_mul(c, -1));
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.nvars_ != nvars_) fail(ErrorKind::invalid_configuration, "polynomial variable count mismatch");
  Polynomial r(nvars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(ma);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      r.add_term(m, checked_mul(ca, cb));
    }
  return r;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) fail(ErrorKind::invalid_configuration, "negative polynomial power");
  Polynomial r = constant(nvars_, 1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

double Polynomial::evaluate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != nvars_) fail(ErrorKind::invalid_configuration, "wrong number of values");
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = static_cast<double>(c);
    for (std::size_t i = 0; i < m.size(); ++i) t *= std::pow(x[i], m[i]);
    acc += t;
  }
  return acc;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    const std::int64_t a = c < 0 ? -c : c;
    bool unit = true;
    for (int e : m) unit = unit && e == 0;
    if (a != 1 || unit) os << a;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      os << "x" << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
    }
    first = false;
  }
  return os.str();
}

}  // namespace nls4
