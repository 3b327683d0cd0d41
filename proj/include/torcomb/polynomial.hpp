#pragma once

#include <string>
#include <vector>

namespace torcomb {

// Dense integer polynomial in one variable; coeffs[i] multiplies t^i.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<long long> coeffs);
  static Poly monomial(long long coeff, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  long long coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  const std::vector<long long>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  // Exact division by a monic polynomial; remainder returned through `rem`.
  Poly divide(const Poly& monic_divisor, Poly* rem) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<long long> c_;
};

// h-vector (h_0..h_n) as the polynomial sum_i h_i t^{n-i}.
Poly poly_from_h(const std::vector<long long>& h);
// Inverse of poly_from_h for a polynomial of degree at most n.
std::vector<long long> h_from_poly(const Poly& p, int n);

}  // namespace torcomb
