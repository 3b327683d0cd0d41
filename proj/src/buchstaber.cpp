#include "torcomb/buchstaber.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdint>
#include <mutex>
#include <string>

#include "torcomb/error.hpp"
#include "torcomb/linalg.hpp"
#include "torcomb/parallel.hpp"

namespace torcomb {

namespace {

std::uint64_t pack(const std::vector<long long>& v) {
  std::uint64_t x = 0;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] & 1) x |= std::uint64_t{1} << i;
  return x;
}

std::vector<long long> unpack(std::uint64_t x, int r) {
  std::vector<long long> v(r, 0);
  for (int i = 0; i < r; ++i) v[i] = (x >> i) & 1u;
  return v;
}

int ceil_log2(long long x) {
  int e = 0;
  while ((1LL << e) < x) ++e;
  return e;
}

void require_pure(const SimplicialComplex& K) {
  if (!K.is_pure()) fail_input("Buchstaber invariants need a pure complex");
  if (K.n() >= K.m()) fail_input("Buchstaber invariants need m > n (the full simplex is excluded)");
}

}  // namespace

bool verify_assignment(const SimplicialComplex& K, const TorusAssignment& a) {
  if (static_cast<int>(a.vectors.size()) != K.m()) return false;
  for (const auto& v : a.vectors)
    if (static_cast<int>(v.size()) != a.r) return false;
  for (VSet f : K.maximal_faces()) {
    auto labels = labels_of(f);
    if (a.ring == Ring::GF2) {
      if (a.r > 64) return false;
      std::vector<std::uint64_t> rows;
      for (int v : labels) rows.push_back(pack(a.vectors[v - 1]));
      if (gf2_rank_words(rows) != static_cast<int>(labels.size())) return false;
    } else {
      IntMatrix M(a.r, static_cast<int>(labels.size()));
      for (size_t c = 0; c < labels.size(); ++c)
        for (int i = 0; i < a.r; ++i) M.at(i, static_cast<int>(c)) = static_cast<long>(a.vectors[labels[c] - 1][i]);
      if (!is_part_of_basis(M)) return false;
    }
  }
  return true;
}

bool verify_matrix_form(const SimplicialComplex& K, const RowMatrix& rows) {
  if (static_cast<int>(rows.size()) != K.m() || rows.empty()) return false;
  const int s = static_cast<int>(rows.front().size());
  for (const auto& row : rows)
    if (static_cast<int>(row.size()) != s) return false;
  for (VSet f : K.maximal_faces()) {
    auto outside = labels_of(full_set(K.m()) & ~f);
    IntMatrix M(static_cast<int>(outside.size()), s);
    for (size_t i = 0; i < outside.size(); ++i)
      for (int c = 0; c < s; ++c) M.at(static_cast<int>(i), c) = static_cast<long>(rows[outside[i] - 1][c]);
    if (!is_part_of_basis(M)) return false;
  }
  return true;
}

namespace {

// Backtracking over vertex vectors in GF(2)^r. A vertex either receives a vector
// in the span of the basis vectors introduced so far or the next basis vector;
// every GL(r,2)-orbit of assignments has exactly such a representative.
class Gf2Search {
 public:
  Gf2Search(const SimplicialComplex& K, int r) : K_(K), m_(K.m()), r_(r) {
    const auto& faces = K.maximal_faces();
    nfaces_ = static_cast<int>(faces.size());
    order_ = vertex_order();
    faces_of_.assign(m_, {});
    for (int f = 0; f < nfaces_; ++f)
      for (int v : labels_of(faces[f])) faces_of_[v - 1].push_back(f);
  }

  struct State {
    std::vector<std::uint64_t> basis;  // nfaces * 64, indexed by pivot bit
    std::vector<std::uint64_t> value;  // per vertex
    int dim = 0;
  };

  State initial() const {
    State s;
    s.basis.assign(static_cast<size_t>(nfaces_) * 64, 0);
    s.value.assign(m_, 0);
    return s;
  }

  // Candidates for the vertex at `depth`, in search order.
  void candidates(const State& s, std::vector<std::uint64_t>& out) const {
    out.clear();
    if (s.dim < r_) out.push_back(std::uint64_t{1} << s.dim);
    const std::uint64_t top = std::uint64_t{1} << s.dim;
    for (std::uint64_t x = 1; x < top; ++x) out.push_back(x);
  }

  // Tries to place x at vertex v; on success records undo info and returns true.
  bool place(State& s, int v, std::uint64_t x, std::vector<std::pair<int, int>>& undo) const {
    size_t mark = undo.size();
    for (int f : faces_of_[v]) {
      std::uint64_t* B = &s.basis[static_cast<size_t>(f) * 64];
      std::uint64_t y = x;
      while (y) {
        int hb = 63 - __builtin_clzll(y);
        if (!B[hb]) break;
        y ^= B[hb];
      }
      if (!y) {
        for (size_t t = undo.size(); t > mark; --t) s.basis[static_cast<size_t>(undo[t - 1].first) * 64 + undo[t - 1].second] = 0;
        undo.resize(mark);
        return false;
      }
      int hb = 63 - __builtin_clzll(y);
      B[hb] = y;
      undo.emplace_back(f, hb);
    }
    s.value[v] = x;
    return true;
  }

  void unplace(State& s, int v, std::vector<std::pair<int, int>>& undo, size_t mark) const {
    for (size_t t = undo.size(); t > mark; --t) s.basis[static_cast<size_t>(undo[t - 1].first) * 64 + undo[t - 1].second] = 0;
    undo.resize(mark);
    s.value[v] = 0;
  }

  // Depth-first search from `depth`; returns true on success. Aborts (returning
  // false and setting *aborted) when `stop` becomes true.
  bool dfs(State& s, int depth, std::atomic<long long>& nodes, long long cap, const std::atomic<bool>& stop,
           bool* aborted) const {
    std::vector<std::pair<int, int>> undo;
    return dfs_rec(s, depth, nodes, cap, stop, aborted, undo);
  }

  int m() const { return m_; }
  int r() const { return r_; }
  const std::vector<int>& order() const { return order_; }

 private:
  bool dfs_rec(State& s, int depth, std::atomic<long long>& nodes, long long cap, const std::atomic<bool>& stop,
               bool* aborted, std::vector<std::pair<int, int>>& undo) const {
    if (depth == m_) return true;
    if (stop.load(std::memory_order_relaxed)) {
      *aborted = true;
      return false;
    }
    long long cnt = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (cap > 0 && cnt > cap) {
      *aborted = true;
      return false;
    }
    const int v = order_[depth];
    std::vector<std::uint64_t> cand;
    candidates(s, cand);
    for (std::uint64_t x : cand) {
      size_t mark = undo.size();
      if (!place(s, v, x, undo)) continue;
      const int old_dim = s.dim;
      if (x == (std::uint64_t{1} << s.dim)) ++s.dim;
      if (dfs_rec(s, depth + 1, nodes, cap, stop, aborted, undo)) return true;
      s.dim = old_dim;
      unplace(s, v, undo, mark);
      if (*aborted) return false;
    }
    return false;
  }

  std::vector<int> vertex_order() const {
    const auto& faces = K_.maximal_faces();
    std::vector<int> order;
    VSet placed = 0;
    for (int v : labels_of(faces.front())) {
      order.push_back(v - 1);
      placed |= bit(v);
    }
    while (static_cast<int>(order.size()) < m_) {
      int best = -1;
      long long best_key = -1;
      for (int v = 1; v <= m_; ++v) {
        if (placed & bit(v)) continue;
        long long key = 0;
        for (VSet f : faces)
          if (f & bit(v)) {
            long long overlap = popcount(f & placed);
            key += overlap * overlap;
          }
        if (key > best_key) {
          best_key = key;
          best = v;
        }
      }
      order.push_back(best - 1);
      placed |= bit(best);
    }
    return order;
  }

  const SimplicialComplex& K_;
  int m_, r_, nfaces_ = 0;
  std::vector<int> order_;
  std::vector<std::vector<int>> faces_of_;
};

}  // namespace

SearchResult gf2_assignment_search(const SimplicialComplex& K, int r, const SearchOptions& opt) {
  require_pure(K);
  if (r < 1 || r > 63) fail_input("search dimension must be in 1..63");
  SearchResult res;
  if (r < K.n()) {
    res.status = SearchStatus::Infeasible;
    return res;
  }
  Gf2Search search(K, r);

  // Expand prefixes breadth-first until there are enough independent subtrees.
  struct Prefix {
    Gf2Search::State state;
    int depth;
  };
  std::vector<Prefix> frontier{{search.initial(), 0}};
  const size_t want = static_cast<size_t>(std::max(1, opt.threads)) * 8;
  std::vector<std::uint64_t> cand;
  while (frontier.size() < want) {
    bool expanded = false;
    std::vector<Prefix> next;
    for (auto& p : frontier) {
      if (p.depth == search.m()) {
        next.push_back(std::move(p));
        continue;
      }
      expanded = true;
      const int v = search.order()[p.depth];
      search.candidates(p.state, cand);
      for (std::uint64_t x : cand) {
        Prefix child{p.state, p.depth + 1};
        std::vector<std::pair<int, int>> undo;
        if (!search.place(child.state, v, x, undo)) continue;
        if (x == (std::uint64_t{1} << child.state.dim)) ++child.state.dim;
        next.push_back(std::move(child));
      }
    }
    frontier.swap(next);
    if (!expanded || frontier.empty() || frontier.size() > 4096) break;
  }

  std::atomic<long long> nodes{0};
  std::atomic<size_t> best{SIZE_MAX};
  std::atomic<bool> capped{false};
  std::mutex mu;
  std::vector<std::optional<Gf2Search::State>> solutions(frontier.size());
  // Subtrees above the best success are skipped; lower ones always run to completion,
  // so the reported certificate matches the sequential search.
  parallel_for(frontier.size(), opt.threads, [&](size_t i) {
    if (i > best.load() || capped.load()) return;
    Gf2Search::State s = frontier[i].state;
    bool aborted = false;
    bool ok = search.dfs(s, frontier[i].depth, nodes, opt.node_cap, capped, &aborted);
    if (aborted) {
      capped = true;
      return;
    }
    if (ok) {
      std::lock_guard<std::mutex> lock(mu);
      solutions[i] = std::move(s);
      size_t cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
    }
  });
  res.nodes = nodes.load();
  const size_t b = best.load();
  if (capped.load()) {
    res.status = SearchStatus::Incomplete;
    return res;
  }
  if (b == SIZE_MAX) {
    res.status = SearchStatus::Infeasible;
    return res;
  }
  TorusAssignment cert;
  cert.ring = Ring::GF2;
  cert.r = r;
  for (int v = 0; v < search.m(); ++v) cert.vectors.push_back(unpack(solutions[b]->value[v], r));
  if (!verify_assignment(K, cert)) fail_consistency("GF(2) search produced an invalid certificate");
  res.status = SearchStatus::Feasible;
  res.certificate = std::move(cert);
  return res;
}

TorusAssignment diagonal_certificate(const SimplicialComplex& K) {
  const int m = K.m();
  TorusAssignment a;
  a.ring = Ring::Int;
  a.r = m - 1;
  for (int i = 0; i < m - 1; ++i) {
    std::vector<long long> e(m - 1, 0);
    e[i] = 1;
    a.vectors.push_back(e);
  }
  a.vectors.emplace_back(m - 1, 1);
  return a;
}

SRealResult s_real(const SimplicialComplex& K, const SearchOptions& opt) {
  require_pure(K);
  const int m = K.m(), n = K.n();
  for (int r = n; r <= m - 2; ++r) {
    auto res = gf2_assignment_search(K, r, opt);
    if (res.status == SearchStatus::Incomplete)
      fail_desk_scale("s_real search exceeded the node cap at dimension " + std::to_string(r));
    if (res.status == SearchStatus::Feasible) return {m - r, *res.certificate};
  }
  TorusAssignment cert = diagonal_certificate(K);
  cert.ring = Ring::GF2;
  return {1, cert};
}

std::optional<Lift> lift_through_matrix_form(const SimplicialComplex& K, const TorusAssignment& gf2) {
  const int m = K.m();
  // Dependencies among the vertex vectors: GF(2) kernel of the r x m matrix.
  std::vector<std::uint64_t> cols;  // column i = vector of vertex i packed
  for (const auto& v : gf2.vectors) cols.push_back(pack(v));
  // Reduce rows of Lambda^T: rows indexed by coordinates, bits by vertex.
  std::vector<std::uint64_t> rows(gf2.r, 0);
  for (int i = 0; i < m; ++i)
    for (int c = 0; c < gf2.r; ++c)
      if ((cols[i] >> c) & 1u) rows[c] |= std::uint64_t{1} << i;
  // Reduced row echelon form.
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < m && rank < gf2.r; ++c) {
    int piv = -1;
    for (int r = rank; r < gf2.r; ++r)
      if ((rows[r] >> c) & 1u) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < gf2.r; ++r)
      if (r != rank && ((rows[r] >> c) & 1u)) rows[r] ^= rows[rank];
    pivot_col.push_back(c);
    ++rank;
  }
  const int s = m - rank;
  if (s < 1 || s > 3) return std::nullopt;
  std::vector<bool> is_pivot(m, false);
  for (int c : pivot_col) is_pivot[c] = true;
  RowMatrix M(m, std::vector<long long>(s, 0));
  int j = 0;
  for (int free = 0; free < m; ++free) {
    if (is_pivot[free]) continue;
    M[free][j] = 1;
    for (int r = 0; r < rank; ++r)
      if ((rows[r] >> free) & 1u) M[pivot_col[r]][j] = 1;
    ++j;
  }
  if (!verify_matrix_form(K, M)) return std::nullopt;
  // The assignment is the quotient Z^m -> Z^m / image(M), read off from the kernel of M^T.
  IntMatrix Mt(s, m);
  for (int i = 0; i < m; ++i)
    for (int c = 0; c < s; ++c) Mt.at(c, i) = static_cast<long>(M[i][c]);
  IntMatrix ker = integer_kernel(Mt);
  TorusAssignment a;
  a.ring = Ring::Int;
  a.r = ker.cols();
  for (int i = 0; i < m; ++i) {
    std::vector<long long> v;
    for (int c = 0; c < ker.cols(); ++c) {
      if (!ker.at(i, c).fits_slong_p()) return std::nullopt;
      v.push_back(ker.at(i, c).get_si());
    }
    a.vectors.push_back(v);
  }
  if (!verify_assignment(K, a)) return std::nullopt;
  return Lift{M, a};
}

int izmestiev_bound(const SimplicialComplex& K) { return std::max(1, K.m() - chromatic_number(K)); }

TorusAssignment coloring_certificate(const SimplicialComplex& K) {
  auto col = chromatic_coloring(K);
  if (col.colors >= K.m()) return diagonal_certificate(K);
  TorusAssignment a;
  a.ring = Ring::Int;
  a.r = col.colors;
  for (int v = 0; v < K.m(); ++v) {
    std::vector<long long> e(col.colors, 0);
    e[col.color_of[v]] = 1;
    a.vectors.push_back(e);
  }
  return a;
}

int aizenberg_bound(const SimplicialComplex& K) {
  return K.m() - ceil_log2(static_cast<long long>(chromatic_number(K)) + 1);
}

namespace {

// Lower bound for s of the (n-1)-skeleton on gamma vertices. With gamma = n the
// skeleton is a full simplex and contributes nothing.
int skeleton_term(int gamma, int n) { return gamma > n ? std::max(1, gamma / (n + 1)) : 0; }

}  // namespace

int chromatic_skeleton_bound(const SimplicialComplex& K) {
  require_pure(K);
  const int gamma = chromatic_number(K);
  return std::max(1, K.m() - gamma + skeleton_term(gamma, K.n()));
}

namespace {

struct CoverSearch {
  std::vector<VSet> sets;
  std::vector<int> weight;
  VSet universe;
  int best = INT_MAX;

  void run(VSet covered, int cost) {
    if (cost >= best) return;
    if (covered == universe) {
      best = cost;
      return;
    }
    // Branch on the uncovered element with the fewest covering sets.
    VSet open = universe & ~covered;
    int pick = -1, fewest = INT_MAX;
    for (int v : labels_of(open)) {
      int cnt = 0;
      for (VSet s : sets)
        if (s & bit(v)) ++cnt;
      if (cnt < fewest) {
        fewest = cnt;
        pick = v;
      }
    }
    if (fewest == 0) return;
    for (size_t i = 0; i < sets.size(); ++i)
      if (sets[i] & bit(pick)) run(covered | sets[i], cost + weight[i]);
  }
};

}  // namespace

int cover_bound(const SimplicialComplex& K) {
  auto mnf = minimal_non_faces(K);
  CoverSearch cs;
  cs.universe = full_set(K.m());
  VSet all = 0;
  for (VSet w : mnf) {
    cs.sets.push_back(w);
    cs.weight.push_back(popcount(w) - 1);
    all |= w;
  }
  if (all != cs.universe) return 1;
  cs.run(0, 0);
  return std::max(1, K.m() - cs.best);
}

int flag_bounds(const SimplicialComplex& K) {
  require_pure(K);
  auto mnf = minimal_non_faces(K);
  VSet all = 0;
  for (VSet w : mnf) all |= w;
  if (all != full_set(K.m())) return 1;
  const int m = K.m(), n = K.n();
  const FlagDefect d = flag_defect(K);
  const int k = d.least_k_flag;
  auto ceil_div = [](int a, int b) { return (a + b - 1) / b; };
  int bound = ceil_div(m - n, k) - (k - 2) * n;
  if (d.is_flag) {
    const int gamma = chromatic_number(K);
    bound = std::max(bound, ceil_div(m - n, 2) + skeleton_term(gamma, n));
  }
  return std::max(1, bound);
}

bool skeleton_s2_predicate(int m, int n) {
  if (n < 1 || n > m - 1) fail_input("skeleton predicate needs 1 <= n <= m-1");
  return 2 * m >= 3 * (n + 1);
}

bool skeleton_s3_predicate(int m, int n) {
  if (n < 1 || n > m - 1) fail_input("skeleton predicate needs 1 <= n <= m-1");
  static const int c[7] = {0, 4, 8, 5, 2, 6, 3};
  return 4 * m >= 7 * (n + 1) + c[m % 7];
}

SRange s_int(const SimplicialComplex& K, const SearchOptions& opt) {
  require_pure(K);
  const int m = K.m(), n = K.n();
  SRange out;
  auto real = s_real(K, opt);
  out.s_real = real.value;
  out.real_certificate = real.certificate;
  const int aiz = aizenberg_bound(K);
  out.provenance = {{"s_real", real.value}, {"aizenberg", aiz}, {"m_minus_n", m - n}};
  out.upper = std::min({real.value, aiz, m - n});

  const int izm = izmestiev_bound(K);
  const int chrom = chromatic_skeleton_bound(K);
  const int cover = cover_bound(K);
  const int flag = flag_bounds(K);
  out.provenance.push_back({"izmestiev", izm});
  out.provenance.push_back({"chromatic_skeleton", chrom});
  out.provenance.push_back({"cover", cover});
  out.provenance.push_back({"flag", flag});
  out.lower = std::max({1, izm, chrom, cover, flag});

  TorusAssignment colour = coloring_certificate(K);
  if (!verify_assignment(K, colour)) fail_consistency("colouring certificate failed verification");
  out.certificate = colour;

  std::optional<TorusAssignment> lifted;
  if (real.value <= 3) {
    if (auto lift = lift_through_matrix_form(K, real.certificate)) {
      lifted = lift->assignment;
      out.matrix_form = lift->matrix_form;
    }
  }
  if (!lifted) {
    TorusAssignment direct = real.certificate;
    direct.ring = Ring::Int;
    if (verify_assignment(K, direct)) lifted = direct;
  }
  if (lifted) {
    out.provenance.push_back({"integer_lift", m - lifted->r});
    if (lifted->r < colour.r) out.certificate = lifted;
  }
  out.lower = std::max(out.lower, m - out.certificate->r);
  if (out.lower > out.upper)
    fail_consistency("Buchstaber bounds are inconsistent: lower " + std::to_string(out.lower) + " > upper " +
                     std::to_string(out.upper));
  out.exact = out.lower == out.upper;
  return out;
}

namespace {

struct FmSearch {
  int k;
  long long b;
  int nv;                                // 2^k - 1 variables
  std::vector<std::vector<int>> cons;    // constraint -> variables
  std::vector<std::vector<int>> cons_of; // variable -> constraints
  std::vector<long long> slack;
  long long best = -1;

  long long cap(int v) const {
    long long c = b;
    for (int u : cons_of[v]) c = std::min(c, slack[u]);
    return c;
  }

  void run(int v, long long sum) {
    if (v == nv) {
      best = std::max(best, sum);
      return;
    }
    long long bound = sum;
    for (int w = v; w < nv; ++w) bound += cap(w);
    if (bound <= best) return;
    for (long long x = cap(v); x >= 0; --x) {
      for (int u : cons_of[v]) slack[u] -= x;
      run(v + 1, sum + x);
      for (int u : cons_of[v]) slack[u] += x;
    }
  }
};

}  // namespace

long long fm_mk(int k, long long b) {
  if (k < 2 || k > 4) fail_desk_scale("m_k(b) is computed only for 2 <= k <= 4");
  if (b < 0) fail_input("m_k(b) needs b >= 0");
  if (b > 64) fail_desk_scale("m_k(b) is computed only for b <= 64");
  FmSearch s;
  s.k = k;
  s.b = b;
  s.nv = (1 << k) - 1;
  s.cons.resize(s.nv);
  s.cons_of.resize(s.nv);
  for (int u = 1; u <= s.nv; ++u)
    for (int v = 1; v <= s.nv; ++v)
      if (__builtin_popcount(u & v) % 2 == 0) {
        s.cons[u - 1].push_back(v - 1);
        s.cons_of[v - 1].push_back(u - 1);
      }
  s.slack.assign(s.nv, b);
  s.run(0, 0);
  return s.best;
}

FmSandwich fm_sandwich(int k, long long b) {
  if (k < 2 || k > 30) fail_input("sandwich needs 2 <= k <= 30");
  const long long half = 1LL << (k - 1);
  const long long Q = b / (half - 1), R = b % (half - 1);
  int l = 0;
  while (!(half - (half >> l) <= R && R < half - (half >> (l + 1)))) ++l;
  const long long full = (1LL << k) - 1;
  return {full * Q + R + half - (half >> l), full * Q + 2 * R};
}

long long fm_periodicity_threshold(int k) { return ((1LL << (k - 1)) - 1) * ((1LL << (k - 2)) - 1); }

}  // namespace torcomb
