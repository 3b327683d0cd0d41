#include <doctest.h>

#include <algorithm>
#include <set>

#include "support.hpp"
#include "torcomb/error.hpp"
#include "torcomb/families.hpp"

using namespace torcomb;
using testsupport::faces_of;

namespace {

std::set<VSet> face_set(const SimplicialComplex& K) {
  return {K.maximal_faces().begin(), K.maximal_faces().end()};
}

SimplicialComplex from_oracle_faces(int m, const oracle::Faces& faces) {
  return SimplicialComplex::from_maximal_faces(m, faces);
}

std::vector<long long> h_of(const SimplicialComplex& K) { return h_vector(K); }

mpq_class q(long num, long den = 1) {
  mpq_class x(num, den);
  x.canonicalize();
  return x;
}

Poly flip_delta(int n, int i) {
  Poly r;
  Poly num = Poly::monomial(1, n + 1 - i) - Poly::monomial(1, i);
  return num.divide(Poly({-1, 1}), &r);
}

}  // namespace

TEST_CASE("boundary simplices and skeletons") {
  CHECK(boundary_simplex(1).maximal_faces() == std::vector<VSet>{bit(1), bit(2)});
  CHECK(boundary_simplex(2).maximal_faces().size() == 3);
  CHECK(boundary_simplex(4).maximal_faces().size() == 5);
  const auto b4 = boundary_simplex(4);
  for (VSet f : b4.maximal_faces()) CHECK(popcount(f) == 4);
  CHECK(simplex_skeleton(5, 3).maximal_faces().size() == 10);
  CHECK(simplex_skeleton(4, 3) == boundary_simplex(3));
  CHECK_THROWS_AS(simplex_skeleton(4, 4), Error);
}

// Facets of C^n(m) by brute-force Gale evenness over all n-subsets.
static std::set<VSet> gale_evenness_facets(int n, int m) {
  std::set<VSet> out;
  for (VSet s = 0; s < (VSet{1} << m); ++s) {
    if (popcount(s) != n) continue;
    bool even = true;
    for (int a = 1; a <= m; ++a)
      for (int b = a + 1; b <= m; ++b) {
        if ((s & bit(a)) || (s & bit(b))) continue;
        int between = 0;
        for (int c = a + 1; c < b; ++c) between += (s & bit(c)) ? 1 : 0;
        if (between % 2) even = false;
      }
    if (even) out.insert(s);
  }
  return out;
}

TEST_CASE("cyclic duals") {
  const auto c25 = cyclic_dual(2, 5);
  CHECK(face_set(c25) == std::set<VSet>{bit(1) | bit(2), bit(2) | bit(3), bit(3) | bit(4), bit(4) | bit(5),
                                        bit(1) | bit(5)});
  // C^3(5) is the bipyramid over a triangle: 6 facets.
  CHECK(cyclic_dual(3, 5).maximal_faces().size() == 6);
  for (int n = 2; n <= 6; ++n)
    for (int m = n + 2; m <= 10; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(face_set(cyclic_dual(n, m)) == gale_evenness_facets(n, m));
    }
}

TEST_CASE("cyclic duals C^{2k-4}(2k-1) are the neighbourly polygon complexes via i -> k i") {
  for (int k = 3; k <= 5; ++k) {
    const int L = 2 * k - 1;
    std::vector<int> perm(L);
    for (int i = 1; i <= L; ++i) perm[i - 1] = (k * i - 1) % L + 1;
    const auto cyc = cyclic_dual(2 * k - 4, L);
    const auto poly = polygon_complex(PolygonPresentation(std::vector<int>(L, 1)));
    CAPTURE(k);
    CHECK(relabel(cyc, perm) == poly);
  }
}

TEST_CASE("polygon complexes: named examples and invalid weights") {
  const auto P = polygon_complex(PolygonPresentation({1, 1, 1, 1, 1}));
  CHECK(face_set(P) != face_set(cyclic_dual(2, 5)));
  for (VSet f : P.maximal_faces()) {
    const auto l = labels_of(f);
    const int gap = l[1] - l[0];
    CHECK((gap == 2 || gap == 3));
  }
  const auto oct = polygon_complex(PolygonPresentation({2, 2, 2}));
  const auto s0 = boundary_simplex(1);
  CHECK(isomorphic(oct, join(join(s0, s0), s0)));
  const PolygonPresentation q({2, 1, 2, 1, 1, 2, 1});
  CHECK(q.m() == 10);
  CHECK(q.n() == 7);
  CHECK(polygon_complex(q).n() == 7);
  CHECK_THROWS_AS(PolygonPresentation({2, 1, 2}), Error);
  CHECK_THROWS_AS(PolygonPresentation({1, 1, 1, 1}), Error);
  CHECK_THROWS_AS(PolygonPresentation({1, 0, 1, 1, 1}), Error);
}

TEST_CASE("polygon complex via the centre: gap examples") {
  const auto P = polygon_complex_via_center(PolygonPresentation({1, 1, 1, 1, 1}));
  CHECK(P.is_face(std::vector<int>{2, 4}));
  CHECK_FALSE(P.is_face(std::vector<int>{4, 5}));
}

TEST_CASE("property: polygon complex agrees with the centre construction and the block oracle") {
  int count = 0;
  for (const auto& p : enumerate_presentations(4, 10)) {
    CAPTURE(p.weights());
    const auto K = polygon_complex(p);
    CHECK(K == polygon_complex_via_center(p));
    CHECK(K == from_oracle_faces(p.m(), oracle::polygon_faces(p.weights())));
    ++count;
  }
  CHECK(count > 50);
}

TEST_CASE("property: neighbourly polygon complexes contain every (k-2)-subset") {
  for (int k = 3; k <= 6; ++k) {
    const int L = 2 * k - 1;
    const auto K = polygon_complex(PolygonPresentation(std::vector<int>(L, 1)));
    bool all = true;
    for (VSet s = 0; s < (VSet{1} << L); ++s)
      if (popcount(s) == k - 2) all &= K.is_face(s);
    CHECK(all);
  }
}

TEST_CASE("doubling") {
  const auto P = polygon_complex(PolygonPresentation({1, 1, 1, 1, 1}));
  CHECK(doubling(P, {1, 1, 1, 1, 1}) == P);
  CHECK(isomorphic(doubling(P, {2, 1, 1, 1, 1}), polygon_complex(PolygonPresentation({2, 1, 1, 1, 1}))));
  // Dimension grows by the sum of (k_i - 1): the doubled segment is a 3-simplex.
  CHECK(doubling(boundary_simplex(1), {2, 2}) == boundary_simplex(3));
  CHECK(doubling(boundary_simplex(2), {1, 2, 1}) == boundary_simplex(3));
  CHECK_THROWS_AS(doubling(P, {1, 1}), Error);
}

TEST_CASE("property: doubling multiplies maximal faces by the product over the complement") {
  const std::vector<std::vector<int>> mults{{2, 1, 1, 1, 1}, {1, 2, 1, 2, 1}, {3, 1, 2, 1, 1}, {2, 2, 2, 1, 1}};
  for (const auto& base : testsupport::sphere_families(6)) {
    if (base.complex.m() != 5) continue;
    for (const auto& mult : mults) {
      long long expected = 0;
      const VSet full = full_set(5);
      for (VSet f : base.complex.maximal_faces()) {
        long long prod = 1;
        for (int j : labels_of(full & ~f)) prod *= mult[j - 1];
        expected += prod;
      }
      const auto D = doubling(base.complex, mult);
      CAPTURE(base.name);
      CHECK(static_cast<long long>(D.maximal_faces().size()) == expected);
      const auto h = h_vector(D);
      for (size_t i = 0; i < h.size(); ++i) CHECK(h[i] == h[h.size() - 1 - i]);
    }
  }
}

TEST_CASE("connected sums") {
  const auto tri = boundary_simplex(2);
  const auto tt = connected_sum(tri, tri.maximal_faces()[0], tri, tri.maximal_faces()[1],
                                labels_of(tri.maximal_faces()[1]));
  CHECK(tt.m() == 4);
  CHECK(f_vector(tt) == std::vector<long long>{1, 4, 4});
  const auto P = polygon_complex(PolygonPresentation({1, 1, 1, 1, 1}));
  const auto octagon = connected_sum(P, P.maximal_faces()[0], P, P.maximal_faces()[2],
                                     labels_of(P.maximal_faces()[2]));
  CHECK(octagon.m() == 8);
  CHECK(octagon.n() == 2);
  CHECK(f_vector(octagon) == std::vector<long long>{1, 8, 8});
  // Cutting off a vertex: an edge of the pentagon becomes a new hexagon facet.
  const auto cut = connected_sum(P, P.maximal_faces()[0], tri, tri.maximal_faces()[0], {1, 2});
  CHECK(cut.m() == 6);
  CHECK(h_vector(cut) == std::vector<long long>{1, 4, 1});
  CHECK_THROWS_AS(connected_sum(P, P.maximal_faces()[0], boundary_simplex(3), boundary_simplex(3).maximal_faces()[0],
                                {1, 2, 3}),
                  Error);
  CHECK_THROWS_AS(connected_sum(P, bit(1), tri, tri.maximal_faces()[0], {1, 2}), Error);
}

TEST_CASE("property: connected sum has count(K1) + count(K2) - 2 maximal faces") {
  const auto spheres = testsupport::sphere_families(7);
  int checked = 0;
  for (const auto& a : spheres)
    for (const auto& b : spheres) {
      if (a.complex.n() < 2 || a.complex.n() != b.complex.n()) continue;
      if (a.complex.m() + b.complex.m() - a.complex.n() > 10) continue;
      const VSet va = a.complex.maximal_faces().back();
      const VSet vb = b.complex.maximal_faces().front();
      const auto S = connected_sum(a.complex, va, b.complex, vb, labels_of(vb));
      CAPTURE(a.name);
      CAPTURE(b.name);
      CHECK(S.maximal_faces().size() == a.complex.maximal_faces().size() + b.complex.maximal_faces().size() - 2);
      CHECK(S.m() == a.complex.m() + b.complex.m() - a.complex.n());
      ++checked;
    }
  CHECK(checked > 20);
}

TEST_CASE("closed-form h-vectors") {
  CHECK(h_closed_form(PolygonPresentation({1, 1, 1, 1, 1})) == std::vector<long long>{1, 3, 1});
  CHECK(h_closed_form(PolygonPresentation({2, 2, 2})) == std::vector<long long>{1, 3, 3, 1});
  const PolygonPresentation q({2, 1, 2, 1, 1, 2, 1});
  CHECK(h_closed_form(q) == h_of(polygon_complex(q)));
}

TEST_CASE("tables: named examples") {
  TableDiagram pent{{q(0), q(3, 5)}, {q(0), q(3, 5)}};
  const auto V = table_vertices(pent);
  CHECK(V.m() == 5);
  CHECK(isomorphic(V, polygon_complex(PolygonPresentation({1, 1, 1, 1, 1}))));
  CHECK(h_via_table(pent) == std::vector<long long>{1, 3, 1});
  CHECK(dihedral_equal(polygon_from_table(pent).weights(), {1, 1, 1, 1, 1}));

  TableDiagram degenerate{{q(0)}, {q(0)}};
  CHECK_THROWS_AS(table_vertices(degenerate), Error);

  TableDiagram on_line{{q(0), q(1, 4), q(1, 2)}, {q(0), q(1, 4), q(1, 2)}};
  CHECK_THROWS_AS(table_vertices(on_line), Error);  // node (1/2, 1/2) lies on the cut line
  TableDiagram seven{{q(0), q(1, 4), q(3, 5)}, {q(0), q(1, 4), q(3, 5)}};
  const auto V7 = table_vertices(seven);
  CHECK(V7.m() == 7);
  CHECK(V7.n() == 4);
  const auto p7 = polygon_from_table(seven);
  CHECK(p7.m() == 7);
  CHECK(isomorphic(V7, polygon_complex(p7)));

  TableDiagram simplex{{q(0), q(2)}, {q(0), q(3)}};
  CHECK_THROWS_AS(table_vertices(simplex), Error);  // only (0,0) below: lines a1, b1 redundant
  CHECK(h_via_table(simplex) == std::vector<long long>{1, 1, 1});

  const auto tp = table_from_polygon(PolygonPresentation({1, 1, 1, 1, 1}));
  CHECK(tp.i() == 1);
  CHECK(tp.j() == 1);
}

TEST_CASE("property: the three h-vector routes agree and are palindromic for all presentations up to weight 10") {
  for (const auto& p : enumerate_presentations(4, 10)) {
    CAPTURE(p.weights());
    const auto hc = h_closed_form(p);
    CHECK(hc == h_of(polygon_complex(p)));
    CHECK(hc == h_via_table(table_from_polygon(p)));
    for (size_t i = 0; i < hc.size(); ++i) CHECK(hc[i] == hc[hc.size() - 1 - i]);
  }
}

TEST_CASE("property: table round trips up to weight 9 give isomorphic complexes") {
  for (const auto& p : enumerate_presentations(4, 9)) {
    CAPTURE(p.weights());
    const auto T = table_from_polygon(p);
    const auto V = table_vertices(T);
    CHECK(isomorphic(V, polygon_complex(p)));
    const auto back = polygon_from_table(T);
    CHECK(dihedral_equal(back.weights(), p.weights()));
    CHECK(oracle::isomorphic(p.m(), faces_of(V), faces_of(polygon_complex(p))));
  }
}

TEST_CASE("flips between the equal-h nine- and seven-block presentations") {
  const PolygonPresentation P({2, 1, 1, 1, 1, 1, 1, 1, 1});
  const PolygonPresentation Q({2, 1, 2, 1, 1, 2, 1});
  CHECK(h_of(polygon_complex(P)) == h_of(polygon_complex(Q)));
  bool found = false;
  for (const auto& rec : admissible_flips(P)) {
    if (dihedral_equal(rec.after.weights(), Q.weights())) {
      found = true;
      CHECK(rec.flip_type == 4);
      CHECK(rec.h_change.is_zero());
    }
  }
  CHECK(found);
  CHECK_THROWS_AS(polygon_flip(PolygonPresentation({1, 1, 1, 1, 1}), 1), Error);
  CHECK_THROWS_AS(polygon_flip(P, 0), Error);
}

TEST_CASE("property: every admissible flip shifts h by the bistellar term, and the inverse flip undoes it") {
  int flips = 0, inverses = 0;
  for (const auto& p : enumerate_presentations(4, 10)) {
    for (const auto& rec : admissible_flips(p)) {
      ++flips;
      CAPTURE(p.weights());
      CAPTURE(rec.position);
      const int n = p.n();
      CHECK(rec.after.n() == n);
      const Poly diff = poly_from_h(h_of(polygon_complex(rec.after))) - poly_from_h(h_of(polygon_complex(p)));
      CHECK(diff == flip_delta(n, rec.flip_type));
      CHECK(diff == rec.h_change);
      bool undone = false;
      for (const auto& back : admissible_flips(rec.after))
        if (back.flip_type == n + 1 - rec.flip_type && dihedral_equal(back.after.weights(), p.weights())) undone = true;
      CHECK(undone);
      inverses += undone ? 1 : 0;
    }
  }
  CHECK(flips > 30);
  CHECK(inverses == flips);
}

TEST_CASE("dihedral canonical form") {
  CHECK(dihedral_equal({1, 2, 3, 4, 5}, {3, 2, 1, 5, 4}));
  CHECK_FALSE(dihedral_equal({1, 1, 2, 2, 2}, {1, 1, 3, 1, 2}));
  CHECK(dihedral_canonical({2, 1, 1}) == dihedral_canonical({1, 2, 1}));
}
