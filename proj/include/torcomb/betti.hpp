#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "torcomb/complex.hpp"
#include "torcomb/families.hpp"
#include "torcomb/polynomial.hpp"

namespace torcomb {

// Bigraded Betti numbers beta^{-q,2p}, keyed by (-q, 2p). Zero entries are not stored.
class BettiTable {
 public:
  long long get(int neg_q, int p2) const;
  void add(int neg_q, int p2, long long rank);
  const std::map<std::pair<int, int>, long long>& entries() const { return e_; }
  // Sum over 2p of beta^{neg_q, 2p}.
  long long row_total(int neg_q) const;
  // sum_p (sum_q (-1)^q beta^{-q,2p}) t^{2p}
  Poly euler_polynomial() const;
  bool operator==(const BettiTable& o) const { return e_ == o.e_; }
  bool operator!=(const BettiTable& o) const { return !(*this == o); }

 private:
  std::map<std::pair<int, int>, long long> e_;
};

inline constexpr int kKoszulVertexCap = 16;
inline constexpr int kKoszulVertexHardLimit = 24;

// Koszul-complex computation, one multidegree tau at a time. `threads` <= 0 picks the default.
// Refuses (desk-scale error) when m exceeds `vertex_cap`, which may be raised up to the hard limit.
BettiTable koszul_betti(const SimplicialComplex& K, int threads = 0, int vertex_cap = kKoszulVertexCap);
// Same result, visiting the multidegrees in the given order (a permutation of 0..2^m-1).
BettiTable koszul_betti_ordered(const SimplicialComplex& K, const std::vector<VSet>& order);

BettiTable polygon_betti_closed_form(const PolygonPresentation& p);

// Polynomial in the block variables x_1..x_L with integer coefficients.
using BlockMonomial = std::vector<int>;  // exponent per block
using BlockPoly = std::map<BlockMonomial, long long>;

struct ResolutionGenerator {
  std::string name;
  int degree = 0;  // doubled internal degree 2p
};

struct ResolutionStage {
  std::vector<ResolutionGenerator> generators;
  // differential[row][col]: coefficient of previous-stage generator `row` in d(generator col).
  std::vector<std::vector<BlockPoly>> differential;
};

// Stages R^0, R^{-1}, R^{-2}, R^{-3}. Throws a consistency error if d o d != 0
// or a differential entry is not homogeneous of the right degree.
std::vector<ResolutionStage> polygon_minimal_resolution(const PolygonPresentation& p);

std::string block_poly_to_string(const BlockPoly& f);

bool euler_h_identity_check(const SimplicialComplex& K);

}  // namespace torcomb
