#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "torcomb/complex.hpp"
#include "torcomb/families.hpp"

namespace torcomb {

// Element of Lambda[u_1..u_m] (x) Z[K] / (v_i^2 = u_i v_i = 0), as a sum of monomials
// u_omega v_sigma with omega, sigma disjoint and sigma a face.
class KoszulElement {
 public:
  using Monomial = std::pair<VSet, VSet>;  // (omega, sigma)

  KoszulElement() = default;
  static KoszulElement monomial(const SimplicialComplex& K, VSet omega, VSet sigma, long long coeff = 1);
  static KoszulElement u(const SimplicialComplex& K, int label) { return monomial(K, bit(label), 0); }
  static KoszulElement v(const SimplicialComplex& K, int label) { return monomial(K, 0, bit(label)); }

  const std::map<Monomial, long long>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add_term(VSet omega, VSet sigma, long long coeff);

  KoszulElement operator+(const KoszulElement& o) const;
  KoszulElement operator-(const KoszulElement& o) const;
  KoszulElement scaled(long long c) const;
  bool operator==(const KoszulElement& o) const { return t_ == o.t_; }

  // Single (multidegree, |omega|) shared by all terms; false if inhomogeneous or zero.
  bool homogeneous(VSet* tau, int* q) const;
  std::string to_string() const;

 private:
  std::map<Monomial, long long> t_;
};

KoszulElement koszul_product(const SimplicialComplex& K, const KoszulElement& x, const KoszulElement& y);
KoszulElement koszul_differential(const SimplicialComplex& K, const KoszulElement& x);

// Integral cohomology of the Koszul piece in multidegree tau and outer degree -q:
// H = Z^rank (+) torsion.
struct CohomologyGroup {
  int rank = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1
};
CohomologyGroup koszul_cohomology_group(const SimplicialComplex& K, VSet tau, int q);

// Class of a cocycle: free coordinates in a fixed basis of its cohomology group,
// and residues modulo each torsion invariant factor.
struct ClassCoordinates {
  VSet tau = 0;
  int q = 0;
  std::vector<mpz_class> free;
  std::vector<std::pair<mpz_class, mpz_class>> torsion;  // (residue, modulus)
  bool is_zero() const;
  bool equal_up_to_sign(const ClassCoordinates& o) const;
};
// Throws an input error unless x is a homogeneous cocycle.
ClassCoordinates reduce_mod_coboundaries(const SimplicialComplex& K, const KoszulElement& x);

struct RingGenerator {
  std::string name;
  int neg_q = 0;
  int p2 = 0;
  VSet multidegree = 0;
  KoszulElement representative;
};

struct ProductEntry {
  std::string left, right;
  std::vector<std::pair<std::string, long long>> value;  // integer combination of generators
  std::string expected;                                  // "0" or a generator name, up to sign
  bool conforms = false;
  std::string detail;
};

struct RingPresentation {
  int k = 0;
  std::vector<RingGenerator> generators;
  std::vector<ProductEntry> products;
  int additive_rank = 0;
  bool torsion_free = false;
  bool generators_form_basis = false;
  bool conforms = false;
  std::vector<std::string> mismatches;
};

RingPresentation generator_representatives(const PolygonPresentation& p);
// Variant of Y_i whose outer u factors sit at offsets s_first in block i and
// s_last in block i+k-1 (1-based within each block).
KoszulElement y_representative(const PolygonPresentation& p, int i, int s_first, int s_last);
// u_omega v_sigma for a maximal face sigma.
KoszulElement top_representative(const SimplicialComplex& K, VSet sigma);

RingPresentation product_table(const PolygonPresentation& p);

}  // namespace torcomb
