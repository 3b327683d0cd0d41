#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "torcomb/buchstaber.hpp"
#include "torcomb/error.hpp"
#include "torcomb/families.hpp"

using namespace torcomb;
using testsupport::faces_of;

namespace {

SimplicialComplex poly(std::vector<int> w) { return polygon_complex(PolygonPresentation(std::move(w))); }

int sr(const SimplicialComplex& K) { return s_real(K).value; }

// s_R of the skeleton with m vertices whose maximal faces have m - p vertices.
int sr_mp(int m, int p) { return sr(simplex_skeleton(m, m - p)); }

int ceil_log2(int x) {
  int c = 0;
  while ((1 << c) < x) ++c;
  return c;
}

TorusAssignment reduce_mod2(const TorusAssignment& a) {
  TorusAssignment out = a;
  out.ring = Ring::GF2;
  for (auto& v : out.vectors)
    for (auto& x : v) x = ((x % 2) + 2) % 2;
  return out;
}

void check_range_invariants(const SimplicialComplex& K, const SRange& r) {
  CHECK(r.lower >= 1);
  CHECK(r.lower <= r.upper);
  CHECK(r.upper <= r.s_real);
  CHECK(r.upper <= K.m() - K.n());
  CHECK(verify_assignment(K, r.real_certificate));
  CHECK(r.real_certificate.r == K.m() - r.s_real);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->ring == Ring::Int);
  CHECK(verify_assignment(K, *r.certificate));
  CHECK(K.m() - r.certificate->r <= r.lower);
  // s <= s_R: the mod-2 reduction of any integral certificate is a GF(2) certificate.
  CHECK(verify_assignment(K, reduce_mod2(*r.certificate)));
}

}  // namespace

TEST_CASE("certificate verification") {
  const auto P = poly({1, 1, 1, 1, 1});
  // Maximal faces are the diagonals {1,3},{2,4},{3,5},{1,4},{2,5}.
  TorusAssignment a{Ring::GF2, 2, {{1, 0}, {1, 0}, {0, 1}, {0, 1}, {1, 1}}};
  CHECK(verify_assignment(P, a));
  a.vectors[2] = {1, 0};
  CHECK_FALSE(verify_assignment(P, a));
  TorusAssignment wrong_len{Ring::GF2, 2, {{1, 0}}};
  CHECK_FALSE(verify_assignment(P, wrong_len));
  TorusAssignment integral{Ring::Int, 2, {{1, 0}, {1, 0}, {0, 1}, {0, 1}, {1, 1}}};
  CHECK(verify_assignment(P, integral));
  integral.vectors[2] = {1, 2};  // det with vertex 1 is 2
  CHECK_FALSE(verify_assignment(P, integral));
}

TEST_CASE("s_real examples") {
  for (int n = 1; n <= 5; ++n) CHECK(sr(boundary_simplex(n)) == 1);
  CHECK(sr(poly({1, 1, 1, 1, 1})) == 3);
  CHECK(sr(poly({2, 1, 1, 1, 1, 1, 1, 1, 1})) == 2);
  CHECK(sr(poly({2, 1, 2, 1, 1, 2, 1})) == 3);
  const auto nonpure = SimplicialComplex::from_maximal_faces(3, std::vector<std::vector<int>>{{1, 2}, {3}});
  CHECK_THROWS_AS(s_real(nonpure), Error);
  CHECK_THROWS_AS(s_int(nonpure), Error);
}

TEST_CASE("s_int examples") {
  const auto seven = poly({1, 1, 1, 1, 1, 1, 1});
  const auto r7 = s_int(seven);
  CHECK(r7.exact);
  CHECK(r7.lower == 3);
  check_range_invariants(seven, *&r7);
  REQUIRE(r7.matrix_form.has_value());
  for (const auto& row : *r7.matrix_form)
    for (long long x : row) CHECK((x == 0 || x == 1));
  CHECK(verify_matrix_form(seven, *r7.matrix_form));
  // The matrix from the characterisation proof for (1^7).
  RowMatrix proof_rows(7);
  proof_rows[0] = {1, 0, 0};
  proof_rows[3] = {0, 1, 0};
  proof_rows[4] = {0, 0, 1};
  proof_rows[1] = {1, 1, 0};
  proof_rows[2] = {1, 1, 1};
  proof_rows[6] = {0, 1, 1};
  proof_rows[5] = {1, 0, 1};
  CHECK(verify_matrix_form(seven, proof_rows));
  proof_rows[5] = {1, 1, 0};
  CHECK_FALSE(verify_matrix_form(seven, proof_rows));

  const auto nine = poly({1, 1, 1, 1, 1, 1, 1, 1, 1});
  const auto r9 = s_int(nine);
  CHECK(r9.exact);
  CHECK(r9.lower == 2);
  check_range_invariants(nine, r9);

  for (int n = 1; n <= 4; ++n) {
    const auto r = s_int(boundary_simplex(n));
    CHECK(r.exact);
    CHECK(r.lower == 1);
  }

  const auto pent = poly({1, 1, 1, 1, 1});
  const auto rp = s_int(pent);
  CHECK(rp.exact);
  CHECK(rp.lower == 3);
  check_range_invariants(pent, rp);
}

TEST_CASE("lower bound examples") {
  const auto pent = poly({1, 1, 1, 1, 1});
  const auto seven = poly({1, 1, 1, 1, 1, 1, 1});
  const auto q = poly({2, 1, 2, 1, 1, 2, 1});
  CHECK(izmestiev_bound(pent) == 2);
  CHECK(izmestiev_bound(q) == 1);
  for (int n = 1; n <= 5; ++n) CHECK(izmestiev_bound(boundary_simplex(n)) == 1);

  CHECK(aizenberg_bound(pent) == 3);
  CHECK(aizenberg_bound(seven) == 4);
  // n = 1 is excluded: S^0 has no edges, so its 1-skeleton is not complete.
  for (int n = 2; n <= 6; ++n) CHECK(aizenberg_bound(boundary_simplex(n)) == (n + 1) - ceil_log2(n + 2));
  CHECK(aizenberg_bound(boundary_simplex(1)) == 1);

  CHECK(cover_bound(pent) == 2);
  CHECK(cover_bound(boundary_simplex(2)) == 1);
  CHECK(cover_bound(seven) == 1);

  CHECK(flag_bounds(pent) == 3);
  CHECK(flag_bounds(seven) == 1);
  CHECK(flag_bounds(boundary_simplex(2)) == 1);
}

TEST_CASE("skeleton predicates") {
  CHECK(skeleton_s2_predicate(6, 3));
  CHECK_FALSE(skeleton_s2_predicate(5, 3));
  CHECK(skeleton_s3_predicate(7, 3));
  CHECK(sr(simplex_skeleton(7, 3)) >= 3);
  CHECK_THROWS_AS(skeleton_s2_predicate(4, 4), Error);
}

TEST_CASE("property: skeleton predicates agree with direct search") {
  for (int m = 3; m <= 8; ++m)
    for (int n = 2; n <= m - 2; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      const int s = sr(simplex_skeleton(m, n));
      CHECK((s >= 2) == skeleton_s2_predicate(m, n));
      CHECK((s >= 3) == skeleton_s3_predicate(m, n));
    }
}

TEST_CASE("property: skeleton facts for s_R(m, p)") {
  for (int m = 3; m <= 9; ++m)
    for (int p = 1; p <= m - 1; ++p) {
      CAPTURE(m);
      CAPTURE(p);
      const int s = sr_mp(m, p);
      CHECK(s >= 1);
      CHECK(s <= p);
      CHECK((s == p) == (p == 1 || p == m - 1));
      CHECK((s == 1) == (m >= 3 * p - 2));
      if (p >= 2) CHECK(s >= sr_mp(m, p - 1));            // increases with p
      if (m + 1 <= 9 && p <= m - 1) CHECK(sr_mp(m + 1, p) <= s);  // decreases with m
      if ((m - p) % 2 == 0 && m + 1 <= 9) CHECK(sr_mp(m + 1, p) == s);
    }
  for (int m = 3; m <= 9; ++m) {
    const int expect = static_cast<int>(std::floor(m - std::log2(m + 1.0)));
    CHECK(sr_mp(m, m - 2) == expect);
    if (m + 1 <= 10) CHECK(sr_mp(m + 1, m - 2) == expect);
  }
}

TEST_CASE("property: pruned search equals the unpruned oracle on families and random complexes with m <= 6") {
  for (const auto& fam : testsupport::all_families(6)) {
    CAPTURE(fam.name);
    CHECK(sr(fam.complex) == oracle::s_real(fam.complex.m(), faces_of(fam.complex)));
  }
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 4);
    const int n = 1 + static_cast<int>(rng() % (m - 1));
    const auto K = testsupport::random_pure_complex(rng, m, n, 1 + static_cast<int>(rng() % 5));
    CHECK(sr(K) == oracle::s_real(m, faces_of(K)));
  }
}

TEST_CASE("property: bounds sandwich s_R and s_int is consistent on families with m <= 10") {
  for (const auto& fam : testsupport::all_families(10)) {
    const auto& K = fam.complex;
    CAPTURE(fam.name);
    const auto r = s_int(K);
    const int gamma = chromatic_number(K);
    CHECK(izmestiev_bound(K) <= r.s_real);
    CHECK(cover_bound(K) <= r.s_real);
    CHECK(flag_bounds(K) <= r.s_real);
    CHECK(chromatic_skeleton_bound(K) <= r.s_real);
    CHECK(r.s_real <= K.m() - ceil_log2(gamma + 1));
    check_range_invariants(K, r);
  }
}

TEST_CASE("property: exact s = 3 for k <= 4 and s = 2 for the 9-gon") {
  for (const auto& p : enumerate_presentations(5, 10)) {
    if (p.k() > 4) continue;
    const auto r = s_int(polygon_complex(p));
    CAPTURE(p.weights());
    CHECK(r.exact);
    CHECK(r.lower == 3);
    check_range_invariants(polygon_complex(p), r);
  }
  const auto r9 = s_int(poly({1, 1, 1, 1, 1, 1, 1, 1, 1}));
  CHECK(r9.exact);
  CHECK(r9.lower == 2);
}

TEST_CASE("property: doubling preserves s_R") {
  const std::vector<std::vector<int>> mult5{{2, 1, 1, 1, 1}, {1, 2, 1, 2, 1}, {3, 1, 1, 1, 1}, {2, 2, 1, 1, 2},
                                            {1, 1, 3, 2, 1}, {2, 2, 2, 2, 2}};
  for (const auto& fam : testsupport::sphere_families(6)) {
    const auto& K = fam.complex;
    const int base = sr(K);
    std::mt19937_64 rng(K.m() * 1000 + K.maximal_faces().size());
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<int> mult(K.m(), 1);
      int total = K.m();
      while (total < 10 && rng() % 3) {
        mult[rng() % K.m()]++;
        ++total;
      }
      CAPTURE(fam.name);
      CAPTURE(mult);
      CHECK(sr(doubling(K, mult)) == base);
    }
    if (K.m() == 5)
      for (const auto& mult : mult5) CHECK(sr(doubling(K, mult)) == base);
  }
}

TEST_CASE("property: join and connected-sum bounds") {
  const auto small = testsupport::sphere_families(5);
  for (const auto& a : small)
    for (const auto& b : small) {
      if (a.complex.m() + b.complex.m() > 10) continue;
      CAPTURE(a.name);
      CAPTURE(b.name);
      CHECK(sr(join(a.complex, b.complex)) >= sr(a.complex) + sr(b.complex));
      if (a.complex.n() >= 2 && a.complex.n() == b.complex.n() &&
          a.complex.m() + b.complex.m() - a.complex.n() <= 10) {
        const VSet va = a.complex.maximal_faces().front();
        const VSet vb = b.complex.maximal_faces().back();
        const auto S = connected_sum(a.complex, va, b.complex, vb, labels_of(vb));
        CHECK(sr(S) >= sr(a.complex) + sr(b.complex));
      }
    }
}

TEST_CASE("property: flips change s_R by at most one") {
  int flips = 0;
  for (const auto& p : enumerate_presentations(5, 10)) {
    const int before = sr(polygon_complex(p));
    for (const auto& rec : admissible_flips(p)) {
      CAPTURE(p.weights());
      CAPTURE(rec.position);
      CHECK(std::abs(before - sr(polygon_complex(rec.after))) <= 1);
      ++flips;
    }
  }
  CHECK(flips > 30);
}

TEST_CASE("property: link monotonicity m_link - s_R(link) <= m - s_R(K)") {
  for (const auto& fam : testsupport::all_families(9)) {
    const auto& K = fam.complex;
    if (K.n() < 2) continue;
    const int gap = K.m() - sr(K);
    for (int v = 1; v <= K.m(); ++v) {
      const auto lk = link(K, bit(v));
      CAPTURE(fam.name);
      CAPTURE(v);
      CHECK(lk.complex.m() - sr(lk.complex) <= gap);
    }
  }
}

TEST_CASE("property: the search result does not depend on the thread count") {
  const std::vector<SimplicialComplex> cases{poly({2, 1, 2, 1, 1, 2, 1}), poly({2, 1, 1, 1, 1, 1, 1, 1, 1}),
                                             poly({1, 1, 1, 1, 1, 1, 1}), simplex_skeleton(8, 4),
                                             cyclic_dual(4, 9)};
  for (const auto& K : cases) {
    SearchOptions one;
    one.threads = 1;
    const auto base = s_real(K, one);
    for (int t : {2, 3, 8}) {
      SearchOptions many;
      many.threads = t;
      const auto other = s_real(K, many);
      CHECK(other.value == base.value);
      CHECK(other.certificate.vectors == base.certificate.vectors);
    }
  }
}

TEST_CASE("node cap turns into a desk-scale refusal") {
  SearchOptions capped;
  capped.node_cap = 3;
  const auto res = gf2_assignment_search(poly({2, 1, 2, 1, 1, 2, 1}), 7, capped);
  CHECK(res.status == SearchStatus::Incomplete);
  try {
    s_real(poly({2, 1, 1, 1, 1, 1, 1, 1, 1}), capped);
    FAIL("expected a refusal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DeskScale);
  }
}

TEST_CASE("lift through the 0/1 matrix form") {
  const auto K = poly({2, 1, 2, 1, 1, 2, 1});
  const auto real = s_real(K);
  const auto lift = lift_through_matrix_form(K, real.certificate);
  REQUIRE(lift.has_value());
  CHECK(lift->assignment.r == real.certificate.r);
  CHECK(verify_matrix_form(K, lift->matrix_form));
  CHECK(verify_assignment(K, lift->assignment));
  CHECK(verify_assignment(K, reduce_mod2(lift->assignment)));
}

TEST_CASE("Fukukawa-Masuda integer programme") {
  for (int b = 0; b <= 6; ++b) CHECK(fm_mk(2, b) == 3 * b);
  for (int b = 0; b <= 4; ++b) {
    const auto sw = fm_sandwich(3, b);
    const long long v = fm_mk(3, b);
    CAPTURE(b);
    CHECK(sw.lower <= v);
    CHECK(v <= sw.upper);
  }
  CHECK(fm_periodicity_threshold(3) == 3);
  CHECK(fm_mk(3, 6) == 7 + fm_mk(3, 3));
  for (int b = 3; b <= 8; ++b) CHECK(fm_mk(3, b + 3) == 7 + fm_mk(3, b));
  CHECK_THROWS_AS(fm_mk(5, 1), Error);
  CHECK_THROWS_AS(fm_mk(1, 1), Error);
}

TEST_CASE("property: branch-and-bound m_k(b) equals plain enumeration") {
  for (int b = 0; b <= 5; ++b) CHECK(fm_mk(2, b) == oracle::fm_mk(2, b));
  for (int b = 0; b <= 4; ++b) CHECK(fm_mk(3, b) == oracle::fm_mk(3, b));
  for (int b = 0; b <= 1; ++b) CHECK(fm_mk(4, b) == oracle::fm_mk(4, b));
}

TEST_CASE("property: s_R(m, p) = k exactly when m_{k+1}(p-1) < m <= m_k(p-1)") {
  for (int p = 2; p <= 5; ++p)
    for (int m = p + 1; m <= 9; ++m) {
      const int k = sr_mp(m, p);
      CAPTURE(m);
      CAPTURE(p);
      // The programme is computed for k <= 4 only.
      if (k + 1 <= 4) CHECK(fm_mk(k + 1, p - 1) < m);
      if (k >= 2 && k <= 4) CHECK(m <= fm_mk(k, p - 1));
    }
}

TEST_CASE("property: sandwich attainment conditions") {
  for (int k = 2; k <= 4; ++k)
    for (long long b = 0; b <= (k == 4 ? 5 : 10); ++b) {
      const long long half = 1LL << (k - 1);
      const long long R = b % (half - 1);
      int l = 0;
      while (!(half - (half >> l) <= R && R < half - (half >> (l + 1)))) ++l;
      const auto sw = fm_sandwich(k, b);
      const long long v = fm_mk(k, b);
      CAPTURE(k);
      CAPTURE(b);
      CHECK(sw.lower <= v);
      CHECK(v <= sw.upper);
      CHECK((v == sw.lower) == (R - (half - (half >> l)) <= k - l - 2));
      CHECK((v == sw.upper) == (R == half - (half >> l)));
    }
}
