#include "torcomb/betti.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "torcomb/error.hpp"
#include "torcomb/linalg.hpp"
#include "torcomb/parallel.hpp"

namespace torcomb {

long long BettiTable::get(int neg_q, int p2) const {
  auto it = e_.find({neg_q, p2});
  return it == e_.end() ? 0 : it->second;
}

void BettiTable::add(int neg_q, int p2, long long rank) {
  if (rank == 0) return;
  long long& slot = e_[{neg_q, p2}];
  slot += rank;
  if (slot == 0) e_.erase({neg_q, p2});
}

long long BettiTable::row_total(int neg_q) const {
  long long total = 0;
  for (const auto& [key, rank] : e_)
    if (key.first == neg_q) total += rank;
  return total;
}

Poly BettiTable::euler_polynomial() const {
  Poly out;
  for (const auto& [key, rank] : e_) {
    const long long sign = (key.first % 2 == 0) ? 1 : -1;
    out = out + Poly::monomial(sign * rank, key.second);
  }
  return out;
}

namespace {

// face[s] for every subset s of [m].
std::vector<char> face_indicator(const SimplicialComplex& K) {
  const int m = K.m();
  std::vector<char> face(size_t{1} << m, 0);
  for (VSet f : K.maximal_faces()) face[f] = 1;
  for (int i = 0; i < m; ++i)
    for (size_t s = 0; s < face.size(); ++s)
      if (!(s >> i & 1u) && face[s | (size_t{1} << i)]) face[s] = 1;
  return face;
}

// Cohomology dimensions of the Koszul piece in multidegree tau, indexed by |omega|.
std::vector<long long> tau_cohomology(VSet tau, const std::vector<char>& face) {
  const int p = popcount(tau);
  std::vector<std::vector<VSet>> by_size(p + 1);  // faces sigma of tau by |sigma|
  for (VSet s = tau;; s = (s - 1) & tau) {
    if (face[s]) by_size[popcount(s)].push_back(s);
    if (s == 0) break;
  }
  for (auto& v : by_size) std::sort(v.begin(), v.end());
  auto index_of = [&](int size, VSet s) {
    const auto& v = by_size[size];
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), s) - v.begin());
  };
  // rank_of[q] = rank of d: C_q -> C_{q-1}, where C_q has |omega| = q.
  std::vector<int> rank_of(p + 2, 0);
  for (int q = 1; q <= p; ++q) {
    const auto& cols = by_size[p - q];
    const auto& rows = by_size[p - q + 1];
    if (cols.empty() || rows.empty()) continue;
    IntMatrix D(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) {
      const VSet sigma = cols[c];
      const VSet omega = tau & ~sigma;
      int pos = 0;
      for (VSet rest = omega; rest; rest &= rest - 1) {
        const VSet i = rest & (~rest + 1);
        ++pos;
        if (!face[sigma | i]) continue;
        D.at(index_of(p - q + 1, sigma | i), static_cast<int>(c)) = (pos % 2 == 1) ? 1 : -1;
      }
    }
    rank_of[q] = rank_q(D);
  }
  std::vector<long long> h(p + 1, 0);
  for (int q = 0; q <= p; ++q)
    h[q] = static_cast<long long>(by_size[p - q].size()) - rank_of[q] - rank_of[q + 1];
  return h;
}

void check_scale(const SimplicialComplex& K, int cap) {
  cap = std::min(cap, kKoszulVertexHardLimit);
  if (K.m() > cap)
    fail_desk_scale("Koszul Betti computation is limited to m <= " + std::to_string(cap) + " (got m = " +
                    std::to_string(K.m()) + ")");
}

void accumulate(BettiTable& table, VSet tau, const std::vector<long long>& h) {
  for (size_t q = 0; q < h.size(); ++q) table.add(-static_cast<int>(q), 2 * popcount(tau), h[q]);
}

}  // namespace

BettiTable koszul_betti(const SimplicialComplex& K, int threads, int vertex_cap) {
  check_scale(K, vertex_cap);
  const auto face = face_indicator(K);
  const size_t count = face.size();
  // Faces of K give acyclic pieces except tau = {} which carries beta^{0,0}.
  std::vector<VSet> work;
  for (size_t tau = 1; tau < count; ++tau)
    if (!face[tau]) work.push_back(tau);
  std::vector<std::vector<long long>> results(work.size());
  parallel_for(work.size(), threads > 0 ? threads : default_thread_count(),
               [&](size_t i) { results[i] = tau_cohomology(work[i], face); });
  BettiTable table;
  table.add(0, 0, 1);
  for (size_t i = 0; i < work.size(); ++i) accumulate(table, work[i], results[i]);
  return table;
}

BettiTable koszul_betti_ordered(const SimplicialComplex& K, const std::vector<VSet>& order) {
  check_scale(K, kKoszulVertexCap);
  const auto face = face_indicator(K);
  if (order.size() != face.size()) fail_input("multidegree order must list every subset once");
  std::vector<char> seen(face.size(), 0);
  BettiTable table;
  for (VSet tau : order) {
    if (tau >= face.size() || seen[tau]) fail_input("multidegree order must list every subset once");
    seen[tau] = 1;
    accumulate(table, tau, tau_cohomology(tau, face));
  }
  return table;
}

BettiTable polygon_betti_closed_form(const PolygonPresentation& p) {
  // For k = 2 the same formulas are the Poincare series of a product of three odd spheres.
  BettiTable t;
  t.add(0, 0, 1);
  for (int l = 1; l <= p.size(); ++l) {
    t.add(-1, 2 * p.phi(l), 1);
    t.add(-2, 2 * p.psi(l), 1);
  }
  t.add(-3, 2 * p.m(), 1);
  return t;
}

namespace {

BlockPoly block_product(const BlockPoly& a, const BlockPoly& b) {
  BlockPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      BlockMonomial mono(ma.size());
      for (size_t i = 0; i < ma.size(); ++i) mono[i] = ma[i] + mb[i];
      long long& c = out[mono];
      c += ca * cb;
      if (c == 0) out.erase(mono);
    }
  return out;
}

void block_add(BlockPoly& acc, const BlockPoly& f) {
  for (const auto& [mono, c] : f) {
    long long& slot = acc[mono];
    slot += c;
    if (slot == 0) acc.erase(mono);
  }
}

// Product x_from * x_{from+1} * ... over `count` consecutive blocks (1-based, cyclic).
BlockPoly block_run(int L, int from, int count, long long coeff = 1) {
  BlockMonomial mono(L, 0);
  for (int t = 0; t < count; ++t) ++mono[((from - 1 + t) % L + L) % L];
  return BlockPoly{{mono, coeff}};
}

}  // namespace

std::string block_poly_to_string(const BlockPoly& f) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : f) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const long long a = c < 0 ? -c : c;
    bool constant = std::all_of(mono.begin(), mono.end(), [](int e) { return e == 0; });
    if (a != 1 || constant) os << a;
    for (size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      os << "x" << i + 1;
      if (mono[i] > 1) os << "^" << mono[i];
    }
  }
  return os.str();
}

std::vector<ResolutionStage> polygon_minimal_resolution(const PolygonPresentation& p) {
  if (p.k() < 3) fail_input("the explicit minimal resolution needs at least 5 blocks");
  const int L = p.size(), k = p.k();
  std::vector<ResolutionStage> st(4);
  st[0].generators = {{"1", 0}};

  for (int i = 1; i <= L; ++i) st[1].generators.push_back({"X" + std::to_string(i), 2 * p.phi(i)});
  st[1].differential.assign(1, std::vector<BlockPoly>(L));
  for (int i = 1; i <= L; ++i) st[1].differential[0][i - 1] = block_run(L, i, k - 1);

  for (int i = 1; i <= L; ++i) st[2].generators.push_back({"Y" + std::to_string(i), 2 * p.psi(i)});
  st[2].differential.assign(L, std::vector<BlockPoly>(L));
  for (int i = 1; i <= L; ++i) {
    const int next = i % L + 1;
    st[2].differential[i - 1][i - 1] = block_run(L, i + k - 1, 1);
    block_add(st[2].differential[next - 1][i - 1], block_run(L, i, 1, -1));
  }

  st[3].generators = {{"Z", 2 * p.m()}};
  st[3].differential.assign(L, std::vector<BlockPoly>(1));
  for (int i = 1; i <= L; ++i) st[3].differential[i - 1][0] = block_run(L, k + i, k - 1);

  // Homogeneity: entry (r, c) has degree deg(c) - deg(r).
  for (int s = 1; s <= 3; ++s) {
    const auto& D = st[s].differential;
    for (size_t r = 0; r < D.size(); ++r)
      for (size_t c = 0; c < D[r].size(); ++c)
        for (const auto& [mono, coeff] : D[r][c]) {
          int deg = 0;
          for (int b = 0; b < L; ++b) deg += mono[b] * p.a(b + 1);
          if (2 * deg != st[s].generators[c].degree - st[s - 1].generators[r].degree)
            fail_consistency("resolution differential is not homogeneous at stage " + std::to_string(s));
        }
  }
  // d o d = 0.
  for (int s = 2; s <= 3; ++s) {
    const auto& A = st[s - 1].differential;
    const auto& B = st[s].differential;
    for (size_t r = 0; r < A.size(); ++r)
      for (size_t c = 0; c < B.front().size(); ++c) {
        BlockPoly acc;
        for (size_t mid = 0; mid < B.size(); ++mid) block_add(acc, block_product(A[r][mid], B[mid][c]));
        if (!acc.empty())
          fail_consistency("resolution differentials do not compose to zero at stage " + std::to_string(s));
      }
  }
  return st;
}

bool euler_h_identity_check(const SimplicialComplex& K) {
  const Poly lhs = koszul_betti(K).euler_polynomial();
  const auto h = h_vector(K);
  Poly h2;
  for (size_t i = 0; i < h.size(); ++i) h2 = h2 + Poly::monomial(h[i], 2 * static_cast<int>(i));
  Poly rhs = h2;
  const Poly factor({1, 0, -1});
  for (int i = 0; i < K.m() - K.n(); ++i) rhs = rhs * factor;
  return lhs == rhs;
}

}  // namespace torcomb
