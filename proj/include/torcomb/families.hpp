#pragma once

#include <gmpxx.h>

#include <vector>

#include "torcomb/complex.hpp"
#include "torcomb/polynomial.hpp"

namespace torcomb {

// Weighted odd polygon (a_1, ..., a_{2k-1}) encoding an n-polytope with n+3 facets.
class PolygonPresentation {
 public:
  explicit PolygonPresentation(std::vector<int> weights);  // validates

  const std::vector<int>& weights() const { return w_; }
  int size() const { return static_cast<int>(w_.size()); }  // 2k-1
  int k() const { return (size() + 1) / 2; }
  int m() const;
  int n() const { return m() - 3; }

  // Cyclic accessor, 1-based index taken modulo 2k-1.
  int a(int i) const;
  // a_i + ... + a_{i+k-2}
  int phi(int i) const;
  // a_i + ... + a_{i+k-1}
  int psi(int i) const;
  // a_1 + ... + a_i, with eta(0) = 0
  int eta(int i) const;
  // Labels of block i (1-based, cyclic).
  std::vector<int> block(int i) const;

  bool operator==(const PolygonPresentation& o) const { return w_ == o.w_; }

 private:
  std::vector<int> w_;
};

// Lexicographically least rotation/reflection of a weight sequence.
std::vector<int> dihedral_canonical(const std::vector<int>& weights);
bool dihedral_equal(const std::vector<int>& a, const std::vector<int>& b);

SimplicialComplex boundary_simplex(int n);
SimplicialComplex simplex_skeleton(int m, int n);
SimplicialComplex cyclic_dual(int n, int m);

SimplicialComplex polygon_complex(const PolygonPresentation& p);
SimplicialComplex polygon_complex_via_center(const PolygonPresentation& p);
// Polygon complex with explicitly labelled blocks in cyclic order.
SimplicialComplex polygon_complex_from_blocks(int m, const std::vector<std::vector<int>>& blocks);

SimplicialComplex doubling(const SimplicialComplex& K, const std::vector<int>& multiplicities);

// Vertices of K2 outside v2 are appended after K1's labels in increasing order;
// gluing[i] is the vertex of v2 identified with the i-th smallest vertex of v1.
SimplicialComplex connected_sum(const SimplicialComplex& K1, VSet v1, const SimplicialComplex& K2,
                                VSet v2, const std::vector<int>& gluing);

struct FlipRecord {
  int flip_type = 0;
  PolygonPresentation before;
  PolygonPresentation after;
  int position = 0;  // 1-based
  Poly h_change;     // h(after) - h(before)
};

// Applies the flip at 1-based position `pos`; verifies the bistellar exchange and
// the h-change identity, throwing a consistency error when either fails.
FlipRecord polygon_flip(const PolygonPresentation& p, int pos);
// All admissible flips of p, in increasing position order.
std::vector<FlipRecord> admissible_flips(const PolygonPresentation& p);

Poly h_closed_form_poly(const PolygonPresentation& p);
std::vector<long long> h_closed_form(const PolygonPresentation& p);

struct TableDiagram {
  std::vector<mpq_class> a;
  std::vector<mpq_class> b;
  int i() const { return static_cast<int>(a.size()) - 1; }
  int j() const { return static_cast<int>(b.size()) - 1; }
};

// Checks ordering, genericity and nonemptiness (irredundancy is checked by table_vertices).
void validate_table(const TableDiagram& T);
SimplicialComplex table_vertices(const TableDiagram& T);
std::vector<long long> h_via_table(const TableDiagram& T);
PolygonPresentation polygon_from_table(const TableDiagram& T);
TableDiagram table_from_polygon(const PolygonPresentation& p);

// Every presentation with total weight in [min_total, max_total], one per dihedral class.
std::vector<PolygonPresentation> enumerate_presentations(int min_total, int max_total);

}  // namespace torcomb
