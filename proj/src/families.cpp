#include "torcomb/families.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "torcomb/error.hpp"

namespace torcomb {

PolygonPresentation::PolygonPresentation(std::vector<int> weights) : w_(std::move(weights)) {
  const int len = static_cast<int>(w_.size());
  if (len < 3 || len % 2 == 0)
    fail_input("polygon presentation needs an odd number (>= 3) of weights, got " + std::to_string(len));
  for (int a : w_)
    if (a < 1) fail_input("polygon weights must be positive integers");
  if (len == 3)
    for (int a : w_)
      if (a < 2)
        fail_input(
            "triangle presentations need every weight >= 2: a weight 1 leaves an open half-plane "
            "of the Gale diagram with fewer than two points, so no polytope exists");
  if (m() - 3 < 1) fail_input("polygon presentation needs total weight >= 4 (n >= 1)");
  if (m() > kMaxVertices) fail_input("polygon presentations are limited to total weight 64");
}

int PolygonPresentation::m() const { return std::accumulate(w_.begin(), w_.end(), 0); }

int PolygonPresentation::a(int i) const {
  const int L = size();
  return w_[(((i - 1) % L) + L) % L];
}

int PolygonPresentation::phi(int i) const {
  int s = 0;
  for (int t = 0; t < k() - 1; ++t) s += a(i + t);
  return s;
}

int PolygonPresentation::psi(int i) const {
  int s = 0;
  for (int t = 0; t < k(); ++t) s += a(i + t);
  return s;
}

int PolygonPresentation::eta(int i) const {
  int s = 0;
  for (int t = 1; t <= i; ++t) s += a(t);
  return s;
}

std::vector<int> PolygonPresentation::block(int i) const {
  const int L = size();
  int idx = (((i - 1) % L) + L) % L + 1;
  std::vector<int> out;
  for (int t = 1; t <= a(idx); ++t) out.push_back(eta(idx - 1) + t);
  return out;
}

std::vector<int> dihedral_canonical(const std::vector<int>& w) {
  const int L = static_cast<int>(w.size());
  std::vector<int> best = w;
  for (int r = 0; r < L; ++r)
    for (int dir : {1, -1}) {
      std::vector<int> c(L);
      for (int i = 0; i < L; ++i) c[i] = w[((r + dir * i) % L + L) % L];
      best = std::min(best, c);
    }
  return best;
}

bool dihedral_equal(const std::vector<int>& a, const std::vector<int>& b) {
  return a.size() == b.size() && dihedral_canonical(a) == dihedral_canonical(b);
}

namespace {

constexpr long long kMaxEnumerated = 2'000'000;

long long binom_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kMaxEnumerated * 1000) return r;
  }
  return r;
}

// Calls fn on every k-subset of [m] (as a bitmask) in increasing numeric order.
template <class Fn>
void for_each_subset_of_size(int m, int k, Fn&& fn) {
  if (k == 0) {
    fn(VSet{0});
    return;
  }
  if (k > m) return;
  VSet s = (VSet{1} << k) - 1;
  const VSet limit = full_set(m);
  while (true) {
    fn(s);
    // Gosper's hack
    VSet c = s & (~s + 1);
    VSet r = s + c;
    if (r == 0 || (r & ~limit)) break;
    s = (((r ^ s) >> 2) / c) | r;
    if (s & ~limit) break;
  }
}

void guard_enumeration(int m, int k, const char* what) {
  if (binom_ll(m, k) > kMaxEnumerated)
    fail_desk_scale(std::string(what) + ": too many subsets to enumerate at this size");
}

}  // namespace

SimplicialComplex boundary_simplex(int n) {
  if (n < 1) fail_input("boundary_simplex needs n >= 1");
  return simplex_skeleton(n + 1, n);
}

SimplicialComplex simplex_skeleton(int m, int n) {
  if (n < 1) fail_input("skeleton needs n >= 1");
  if (n >= m) fail_input("skeleton needs n <= m-1 (the full simplex is not a polytope boundary here)");
  if (m > kMaxVertices) fail_input("skeleton limited to 64 vertices");
  guard_enumeration(m, n, "simplex_skeleton");
  std::vector<VSet> faces;
  for_each_subset_of_size(m, n, [&](VSet s) { faces.push_back(s); });
  return SimplicialComplex::from_maximal_faces(m, faces);
}

SimplicialComplex cyclic_dual(int n, int m) {
  if (n < 1) fail_input("cyclic_dual needs n >= 1");
  if (m < n + 1) fail_input("cyclic_dual needs m >= n+1");
  if (m > kMaxVertices) fail_input("cyclic_dual limited to 64 vertices");
  guard_enumeration(m, n, "cyclic_dual");
  std::vector<VSet> faces;
  for_each_subset_of_size(m, n, [&](VSet s) {
    // Between consecutive labels outside s, the number of labels of s must be even.
    int last_out = 0, between = 0;
    bool ok = true;
    for (int v = 1; v <= m && ok; ++v) {
      if (s & bit(v)) {
        ++between;
      } else {
        if (last_out && between % 2) ok = false;
        last_out = v;
        between = 0;
      }
    }
    if (ok) faces.push_back(s);
  });
  return SimplicialComplex::from_maximal_faces(m, faces);
}

SimplicialComplex polygon_complex_from_blocks(int m, const std::vector<std::vector<int>>& blocks) {
  const int L = static_cast<int>(blocks.size());
  const int k = (L + 1) / 2;
  std::vector<VSet> bsets;
  for (const auto& b : blocks) bsets.push_back(vset_from_labels(b));
  std::vector<VSet> forbidden;
  for (int i = 0; i < L; ++i) {
    VSet u = 0;
    for (int t = 0; t < k - 1; ++t) u |= bsets[(i + t) % L];
    forbidden.push_back(u);
  }
  std::vector<VSet> faces;
  for_each_subset_of_size(m, 3, [&](VSet triple) {
    VSet c = full_set(m) & ~triple;
    for (VSet u : forbidden)
      if ((c & u) == u) return;
    faces.push_back(c);
  });
  return SimplicialComplex::from_maximal_faces(m, faces);
}

SimplicialComplex polygon_complex(const PolygonPresentation& p) {
  std::vector<std::vector<int>> blocks;
  for (int i = 1; i <= p.size(); ++i) blocks.push_back(p.block(i));
  return polygon_complex_from_blocks(p.m(), blocks);
}

SimplicialComplex polygon_complex_via_center(const PolygonPresentation& p) {
  const int m = p.m(), L = p.size(), k = p.k();
  std::vector<int> pos(m + 1);
  for (int i = 1; i <= L; ++i)
    for (int v : p.block(i)) pos[v] = i - 1;
  std::vector<VSet> faces;
  for (int x = 1; x <= m; ++x)
    for (int y = x + 1; y <= m; ++y)
      for (int z = y + 1; z <= m; ++z) {
        int q[3] = {pos[x], pos[y], pos[z]};
        std::sort(q, q + 3);
        if (q[0] == q[1] || q[1] == q[2]) continue;
        int g1 = q[1] - q[0], g2 = q[2] - q[1], g3 = L - (q[2] - q[0]);
        if (g1 <= k - 1 && g2 <= k - 1 && g3 <= k - 1)
          faces.push_back(full_set(m) & ~(bit(x) | bit(y) | bit(z)));
      }
  return SimplicialComplex::from_maximal_faces(m, faces);
}

SimplicialComplex doubling(const SimplicialComplex& K, const std::vector<int>& mult) {
  const int m = K.m();
  if (static_cast<int>(mult.size()) != m)
    fail_input("doubling needs one multiplicity per vertex (" + std::to_string(m) + ")");
  for (int k : mult)
    if (k < 1) fail_input("doubling multiplicities must be positive");
  const int total = std::accumulate(mult.begin(), mult.end(), 0);
  if (total > kMaxVertices) fail_input("doubling exceeds 64 vertices");
  std::vector<VSet> blocks(m);
  int next = 1;
  for (int i = 0; i < m; ++i)
    for (int t = 0; t < mult[i]; ++t) blocks[i] |= bit(next++);
  std::vector<VSet> faces;
  for (VSet f : K.maximal_faces()) {
    VSet base = 0;
    std::vector<int> outside;
    for (int i = 0; i < m; ++i) {
      if (f & bit(i + 1))
        base |= blocks[i];
      else
        outside.push_back(i);
    }
    // Keep all but one vertex of every block outside f, in every combination.
    std::vector<VSet> acc{base};
    for (int i : outside) {
      std::vector<VSet> nxt;
      for (VSet partial : acc)
        for (int v : labels_of(blocks[i])) nxt.push_back(partial | (blocks[i] & ~bit(v)));
      acc.swap(nxt);
      if (acc.size() > static_cast<size_t>(kMaxEnumerated)) fail_desk_scale("doubling: too many maximal faces");
    }
    faces.insert(faces.end(), acc.begin(), acc.end());
  }
  return SimplicialComplex::from_maximal_faces(total, faces);
}

SimplicialComplex connected_sum(const SimplicialComplex& K1, VSet v1, const SimplicialComplex& K2,
                                VSet v2, const std::vector<int>& gluing) {
  if (!K1.is_pure() || !K2.is_pure() || K1.n() != K2.n())
    fail_input("connected sum needs pure complexes of the same dimension");
  const auto& f1 = K1.maximal_faces();
  const auto& f2 = K2.maximal_faces();
  if (std::find(f1.begin(), f1.end(), v1) == f1.end()) fail_input("v1 is not a maximal face of K1");
  if (std::find(f2.begin(), f2.end(), v2) == f2.end()) fail_input("v2 is not a maximal face of K2");
  auto l1 = labels_of(v1);
  if (gluing.size() != l1.size()) fail_input("gluing must list one vertex of v2 per vertex of v1");
  VSet glued = 0;
  for (int g : gluing) {
    if (g < 1 || g > K2.m() || !(v2 & bit(g))) fail_input("gluing targets must be vertices of v2");
    glued |= bit(g);
  }
  if (glued != v2) fail_input("gluing must be a bijection v1 -> v2");
  const int m = K1.m() + K2.m() - static_cast<int>(l1.size());
  if (m > kMaxVertices) fail_input("connected sum exceeds 64 vertices");
  std::vector<int> map2(K2.m() + 1, 0);
  for (size_t i = 0; i < l1.size(); ++i) map2[gluing[i]] = l1[i];
  int next = K1.m() + 1;
  for (int v = 1; v <= K2.m(); ++v)
    if (!map2[v]) map2[v] = next++;
  std::vector<VSet> faces;
  for (VSet f : f1)
    if (f != v1) faces.push_back(f);
  for (VSet f : f2) {
    if (f == v2) continue;
    VSet g = 0;
    for (int v : labels_of(f)) g |= bit(map2[v]);
    faces.push_back(g);
  }
  return SimplicialComplex::from_maximal_faces(m, faces);
}

Poly h_closed_form_poly(const PolygonPresentation& p) {
  const int L = p.size();
  Poly num = Poly::monomial(1, p.m()) - Poly::monomial(1, 0);
  for (int i = 1; i <= L; ++i) {
    num = num - Poly::monomial(1, p.psi(i));
    num = num + Poly::monomial(1, p.phi(i));
  }
  const Poly cube = Poly({-1, 3, -3, 1});  // (t-1)^3
  Poly rem;
  Poly q = num.divide(cube, &rem);
  if (!rem.is_zero()) fail_consistency("closed-form h: numerator not divisible by (t-1)^3");
  return q;
}

std::vector<long long> h_closed_form(const PolygonPresentation& p) {
  return h_from_poly(h_closed_form_poly(p), p.n());
}

namespace {

Poly flip_shift(int n, int i) {
  // (t^{n+1-i} - t^i) / (t-1)
  Poly num = Poly::monomial(1, n + 1 - i) - Poly::monomial(1, i);
  Poly rem;
  Poly q = num.divide(Poly({-1, 1}), &rem);
  if (!rem.is_zero()) fail_consistency("flip h-shift not divisible by t-1");
  return q;
}

// Checks that K and K2 differ by exchanging {W\t : t in I} for {W\t : t in W\I}
// with |W| = n+1 and |I| = i.
bool is_bistellar_exchange(const SimplicialComplex& K, const SimplicialComplex& K2, int n, int i) {
  std::set<VSet> a(K.maximal_faces().begin(), K.maximal_faces().end());
  std::set<VSet> b(K2.maximal_faces().begin(), K2.maximal_faces().end());
  std::vector<VSet> removed, added;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(removed));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(added));
  if (removed.empty() || added.empty()) return false;
  VSet W = 0;
  for (VSet f : removed) W |= f;
  VSet W2 = 0;
  for (VSet f : added) W2 |= f;
  if (W != W2 || popcount(W) != n + 1) return false;
  if (static_cast<int>(removed.size()) != i || static_cast<int>(added.size()) != n + 1 - i) return false;
  VSet I = 0, J = 0;
  for (VSet f : removed) {
    if (popcount(W & ~f) != 1 || (f & ~W)) return false;
    I |= W & ~f;
  }
  for (VSet f : added) {
    if (popcount(W & ~f) != 1 || (f & ~W)) return false;
    J |= W & ~f;
  }
  return (I & J) == 0 && (I | J) == W;
}

}  // namespace

FlipRecord polygon_flip(const PolygonPresentation& p, int pos) {
  const int L = p.size(), k = p.k(), m = p.m(), n = p.n();
  if (pos < 1 || pos > L) fail_input("flip position must be in 1.." + std::to_string(L));
  const int P = pos - 1;
  const int Q = (P + k) % L;
  int type = 0;
  for (int t = 1; t <= k - 1; ++t) type += p.a(pos + t);
  if (type < 2 || type > n - 1)
    fail_input("inadmissible flip: type " + std::to_string(type) + " outside 2.." + std::to_string(n - 1));

  // Label-preserving block sequence of the (2k+1)-gon.
  std::vector<std::vector<int>> seq;
  for (int idx = 0; idx < L; ++idx) {
    auto b = p.block((P + idx) % L + 1);
    if (idx == 0) {
      seq.emplace_back(b.begin(), b.end() - 1);
      seq.push_back({b.back()});
    } else if ((P + idx) % L == Q) {
      seq.push_back({b.front()});
      seq.emplace_back(b.begin() + 1, b.end());
    } else {
      seq.push_back(b);
    }
  }
  // Empty vertex at position 0: merge the two vertices opposite to it (k and k+1).
  // Empty vertex at position k+2: merge positions 1 and 2.
  std::vector<int> owner(seq.size());
  std::iota(owner.begin(), owner.end(), 0);
  if (seq[0].empty()) owner[k + 1] = k;
  if (seq[k + 2].empty()) owner[2] = 1;
  std::vector<std::vector<int>> blocks;
  std::vector<int> slot(seq.size(), -1);
  for (size_t t = 0; t < seq.size(); ++t) {
    if (seq[t].empty()) continue;
    int o = owner[t];
    if (slot[o] < 0) {
      slot[o] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    auto& dst = blocks[slot[o]];
    dst.insert(dst.end(), seq[t].begin(), seq[t].end());
  }

  // Rotate so the block containing label 1 comes first.
  size_t first = 0;
  for (size_t t = 0; t < blocks.size(); ++t)
    if (std::find(blocks[t].begin(), blocks[t].end(), 1) != blocks[t].end()) first = t;
  std::rotate(blocks.begin(), blocks.begin() + first, blocks.end());
  std::vector<int> weights;
  for (const auto& b : blocks) weights.push_back(static_cast<int>(b.size()));
  std::optional<PolygonPresentation> after;
  try {
    after.emplace(weights);
  } catch (const Error& e) {
    fail_input(std::string("inadmissible flip: ") + e.what());
  }

  const auto before_complex = polygon_complex(p);
  const auto after_complex = polygon_complex_from_blocks(m, blocks);
  if (!is_bistellar_exchange(before_complex, after_complex, n, type))
    fail_consistency("flip at position " + std::to_string(pos) + " is not a bistellar exchange of type " +
                     std::to_string(type));
  // The labelled result must be a cyclic relabelling of the standard complex.
  const int start = blocks.front().front();
  std::vector<int> shift(m);
  for (int v = 1; v <= m; ++v) shift[v - 1] = ((v - start) % m + m) % m + 1;
  if (relabel(after_complex, shift) != polygon_complex(*after))
    fail_consistency("flip result does not match its presentation");

  Poly change = poly_from_h(h_vector(after_complex)) - poly_from_h(h_vector(before_complex));
  if (!(change == flip_shift(n, type)))
    fail_consistency("h-change of flip at position " + std::to_string(pos) + " is " + change.to_string() +
                     ", expected " + flip_shift(n, type).to_string());
  return FlipRecord{type, p, *after, pos, change};
}

std::vector<FlipRecord> admissible_flips(const PolygonPresentation& p) {
  std::vector<FlipRecord> out;
  for (int pos = 1; pos <= p.size(); ++pos) {
    try {
      out.push_back(polygon_flip(p, pos));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Input) throw;
    }
  }
  return out;
}

void validate_table(const TableDiagram& T) {
  if (T.a.empty() || T.b.empty()) fail_input("table needs at least one line in each family");
  for (size_t t = 1; t < T.a.size(); ++t)
    if (!(T.a[t - 1] < T.a[t])) fail_input("table a-lines must be strictly increasing");
  for (size_t t = 1; t < T.b.size(); ++t)
    if (!(T.b[t - 1] < T.b[t])) fail_input("table b-lines must be strictly increasing");
  for (const auto& x : T.a)
    for (const auto& y : T.b)
      if (x + y == 1) fail_input("table is not generic: a node lies on the cut line");
  if (!(T.a[0] + T.b[0] < 1)) fail_input("table is empty: the node (a0,b0) must lie below the cut line");
  if (T.i() + T.j() < 1) fail_input("degenerate table: dimension n = i+j must be at least 1");
  if (T.i() + T.j() + 3 > kMaxVertices) fail_input("table exceeds 64 facets");
}

SimplicialComplex table_vertices(const TableDiagram& T) {
  validate_table(T);
  const int i = T.i(), j = T.j();
  const int m = i + j + 3;
  auto A = [](int p) { return p + 1; };
  auto B = [i](int q) { return i + 2 + q; };
  const int cut = m;
  std::vector<VSet> triples;
  auto below = [&](int p, int q) { return T.a[p] + T.b[q] < 1; };
  for (int p = 0; p <= i; ++p)
    for (int q = 0; q <= j; ++q)
      if (below(p, q)) triples.push_back(bit(A(p)) | bit(B(q)) | bit(cut));
  for (int p = 0; p <= i; ++p)
    for (int q1 = 0; q1 <= j; ++q1)
      for (int q2 = q1 + 1; q2 <= j; ++q2)
        if (below(p, q1) != below(p, q2)) triples.push_back(bit(A(p)) | bit(B(q1)) | bit(B(q2)));
  for (int q = 0; q <= j; ++q)
    for (int p1 = 0; p1 <= i; ++p1)
      for (int p2 = p1 + 1; p2 <= i; ++p2)
        if (below(p1, q) != below(p2, q)) triples.push_back(bit(A(p1)) | bit(A(p2)) | bit(B(q)));
  VSet used = 0;
  std::vector<VSet> faces;
  for (VSet t : triples) {
    faces.push_back(full_set(m) & ~t);
    used |= faces.back();
  }
  if (used != full_set(m)) {
    int v = labels_of(full_set(m) & ~used).front();
    std::string name = v <= i + 1 ? "a" + std::to_string(v - 1)
                       : v < m    ? "b" + std::to_string(v - i - 2)
                                  : std::string("cut line");
    fail_input("invalid table: redundant facet (" + name + " contains no vertex)");
  }
  return SimplicialComplex::from_maximal_faces(m, faces);
}

std::vector<long long> h_via_table(const TableDiagram& T) {
  validate_table(T);
  const int n = T.i() + T.j();
  Poly num;
  for (int p = 0; p <= T.i(); ++p)
    for (int q = 0; q <= T.j(); ++q)
      if (T.a[p] + T.b[q] < 1) num = num + Poly::monomial(1, n + 1 - (p + q)) - Poly::monomial(1, p + q);
  Poly rem;
  Poly h = num.divide(Poly({-1, 1}), &rem);
  if (!rem.is_zero()) fail_consistency("table h: numerator not divisible by t-1");
  return h_from_poly(h, n);
}

PolygonPresentation polygon_from_table(const TableDiagram& T) {
  table_vertices(T);  // validation including irredundancy
  // Walk along the cut line by increasing x, recording which family each crossing belongs to.
  // Lines crossed outside the grid (left of a0 or below b0) join the class of the cut line.
  enum Kind { kVertical, kHorizontal, kCut };
  std::vector<std::pair<mpq_class, Kind>> crossings;
  for (const auto& x : T.a) crossings.emplace_back(x, kVertical);
  for (const auto& y : T.b) crossings.emplace_back(1 - y, kHorizontal);
  std::sort(crossings.begin(), crossings.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<Kind> kinds;
  for (const auto& [x, kind] : crossings) {
    Kind kd = kind;
    if (kind == kHorizontal && x < T.a.front()) kd = kCut;
    if (kind == kVertical && x > 1 - T.b.front()) kd = kCut;
    kinds.push_back(kd);
  }
  kinds.push_back(kCut);
  std::vector<std::pair<Kind, int>> runs;
  for (Kind kd : kinds) {
    if (!runs.empty() && runs.back().first == kd)
      runs.back().second++;
    else
      runs.emplace_back(kd, 1);
  }
  if (runs.size() > 1 && runs.front().first == runs.back().first) {
    runs.back().second += runs.front().second;
    runs.erase(runs.begin());
  }
  const int L = static_cast<int>(runs.size());
  if (L % 2 == 0 || L < 3) fail_consistency("table walk produced an even number of classes");
  // Consecutive classes along the line are k steps apart on the polygon.
  std::vector<int> weights(L);
  for (int q = 0; q < L; ++q) weights[q] = runs[(2 * q) % L].second;
  return PolygonPresentation(weights);
}

TableDiagram table_from_polygon(const PolygonPresentation& p) {
  const int k = p.k();
  struct Group {
    bool vertical;
    int count;
  };
  std::vector<Group> groups;
  for (int t = 1; t <= k - 1; ++t) {
    groups.push_back({true, p.a(t)});
    groups.push_back({false, p.a(k + t)});
  }
  groups.push_back({true, p.a(k) - 1});
  const int total = p.m();
  TableDiagram T;
  int step = 0;
  for (const auto& g : groups)
    for (int c = 0; c < g.count; ++c) {
      ++step;
      mpq_class x(step, total + 1);
      x.canonicalize();
      if (g.vertical)
        T.a.push_back(x);
      else
        T.b.push_back(1 - x);
    }
  std::sort(T.a.begin(), T.a.end());
  std::sort(T.b.begin(), T.b.end());
  return T;
}

std::vector<PolygonPresentation> enumerate_presentations(int min_total, int max_total) {
  std::vector<PolygonPresentation> out;
  std::set<std::vector<int>> seen;
  for (int total = std::max(min_total, 4); total <= max_total; ++total)
    for (int len = 3; len <= total; len += 2) {
      // compositions of total into len positive parts
      std::vector<int> w(len, 1);
      w[len - 1] = total - (len - 1);
      while (true) {
        bool ok = !(len == 3 && *std::min_element(w.begin(), w.end()) < 2);
        if (ok) {
          auto c = dihedral_canonical(w);
          if (seen.insert(c).second) out.emplace_back(c);
        }
        // next composition: move one unit leftwards in odometer style
        int idx = len - 2;
        while (idx >= 0) {
          int rest = total;
          for (int t = 0; t < idx; ++t) rest -= w[t];
          // w[idx] can grow if the remaining positions after idx can still be >= 1
          if (w[idx] + 1 <= rest - (len - 1 - idx)) {
            w[idx]++;
            int left = rest - w[idx];
            for (int t = idx + 1; t < len - 1; ++t) {
              w[t] = 1;
              --left;
            }
            w[len - 1] = left;
            break;
          }
          --idx;
        }
        if (idx < 0) break;
      }
    }
  return out;
}

}  // namespace torcomb
