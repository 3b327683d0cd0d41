#include "torcomb/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "torcomb/error.hpp"

namespace torcomb {

Poly::Poly(std::vector<long long> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(long long coeff, int degree) {
  std::vector<long long> c(degree + 1, 0);
  c[degree] = coeff;
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<long long> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<long long> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i));
  return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<long long> r(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(r));
}

Poly Poly::divide(const Poly& d, Poly* rem) const {
  if (d.is_zero() || d.c_.back() != 1) fail_consistency("polynomial division needs a monic divisor");
  std::vector<long long> r = c_;
  int dd = d.degree();
  if (degree() < dd) {
    if (rem) *rem = *this;
    return Poly();
  }
  std::vector<long long> q(degree() - dd + 1, 0);
  for (int i = degree(); i >= dd; --i) {
    long long lead = r[i];
    if (lead == 0) continue;
    q[i - dd] = lead;
    for (int j = 0; j <= dd; ++j) r[i - dd + j] -= lead * d.c_[j];
  }
  if (rem) *rem = Poly(r);
  return Poly(std::move(q));
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    long long c = c_[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    long long a = c < 0 ? -c : c;
    if (a != 1 || i == 0) os << a;
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

Poly poly_from_h(const std::vector<long long>& h) {
  const int n = static_cast<int>(h.size()) - 1;
  std::vector<long long> c(n + 1, 0);
  for (int i = 0; i <= n; ++i) c[n - i] = h[i];
  return Poly(std::move(c));
}

std::vector<long long> h_from_poly(const Poly& p, int n) {
  if (p.degree() > n) fail_consistency("h-polynomial degree exceeds n");
  std::vector<long long> h(n + 1, 0);
  for (int i = 0; i <= n; ++i) h[i] = p.coeff(n - i);
  return h;
}

}  // namespace torcomb
