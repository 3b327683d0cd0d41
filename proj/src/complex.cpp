#include "torcomb/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "torcomb/error.hpp"

namespace torcomb {

VSet vset_from_labels(const std::vector<int>& labels) {
  VSet s = 0;
  for (int v : labels) {
    if (v < 1 || v > kMaxVertices) fail_input("vertex label " + std::to_string(v) + " out of range");
    s |= bit(v);
  }
  return s;
}

std::vector<int> labels_of(VSet s) {
  std::vector<int> out;
  while (s) {
    int b = __builtin_ctzll(s);
    out.push_back(b + 1);
    s &= s - 1;
  }
  return out;
}

bool label_lex_less(VSet a, VSet b) {
  if (a == b) return false;
  // Compare sorted label sequences lexicographically.
  while (a && b) {
    int la = __builtin_ctzll(a), lb = __builtin_ctzll(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0;  // proper prefix sorts first
}

namespace {

void sort_faces(std::vector<VSet>& faces) {
  std::sort(faces.begin(), faces.end(), label_lex_less);
}

void check_m(int m) {
  if (m < 1) fail_input("complex needs m >= 1");
  if (m > kMaxVertices) fail_input("complexes are limited to 64 vertices");
}

}  // namespace

SimplicialComplex SimplicialComplex::from_maximal_faces(int m, const std::vector<VSet>& faces) {
  check_m(m);
  if (faces.empty()) fail_input("complex needs at least one maximal face");
  std::vector<VSet> fs = faces;
  VSet seen = 0;
  for (VSet f : fs) {
    if (f & ~full_set(m)) fail_input("maximal face uses a label outside 1.." + std::to_string(m));
    seen |= f;
  }
  if (seen != full_set(m)) {
    int ghost = labels_of(full_set(m) & ~seen).front();
    fail_input("vertex " + std::to_string(ghost) + " occurs in no maximal face (ghost vertices are not allowed)");
  }
  sort_faces(fs);
  for (size_t i = 1; i < fs.size(); ++i)
    if (fs[i] == fs[i - 1]) fail_input("duplicate maximal face");
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = 0; j < fs.size(); ++j)
      if (i != j && (fs[i] & fs[j]) == fs[i])
        fail_input("listed face is contained in another listed face");
  SimplicialComplex K;
  K.m_ = m;
  K.faces_ = std::move(fs);
  return K;
}

SimplicialComplex SimplicialComplex::from_maximal_faces(int m,
                                                        const std::vector<std::vector<int>>& faces) {
  check_m(m);
  std::vector<VSet> fs;
  for (const auto& f : faces) {
    std::set<int> uniq(f.begin(), f.end());
    if (uniq.size() != f.size()) fail_input("repeated vertex inside a face");
    for (int v : f)
      if (v < 1 || v > m) fail_input("vertex label " + std::to_string(v) + " outside 1.." + std::to_string(m));
    fs.push_back(vset_from_labels(f));
  }
  return from_maximal_faces(m, fs);
}

SimplicialComplex SimplicialComplex::from_generating_faces(int m, const std::vector<VSet>& faces) {
  std::vector<VSet> fs = faces;
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  std::sort(fs.begin(), fs.end(), [](VSet a, VSet b) { return popcount(a) > popcount(b); });
  std::vector<VSet> keep;
  for (VSet f : fs) {
    bool covered = false;
    for (VSet g : keep)
      if ((f & g) == f) {
        covered = true;
        break;
      }
    if (!covered) keep.push_back(f);
  }
  return from_maximal_faces(m, keep);
}

int SimplicialComplex::max_face_size() const {
  int best = 0;
  for (VSet f : faces_) best = std::max(best, popcount(f));
  return best;
}

bool SimplicialComplex::is_pure() const {
  int d = popcount(faces_.front());
  return std::all_of(faces_.begin(), faces_.end(), [d](VSet f) { return popcount(f) == d; });
}

int SimplicialComplex::n() const {
  if (!is_pure()) fail_input("complex is not pure");
  return popcount(faces_.front());
}

bool SimplicialComplex::is_face(VSet s) const {
  if (s & ~full_set(m_)) fail_input("vertex out of range in face query");
  for (VSet f : faces_)
    if ((s & f) == s) return true;
  return false;
}

bool SimplicialComplex::is_face(const std::vector<int>& labels) const {
  for (int v : labels)
    if (v < 1 || v > m_) fail_input("vertex " + std::to_string(v) + " out of range in face query");
  return is_face(vset_from_labels(labels));
}

namespace {

// Enumerates every face once, extending by labels above the current maximum.
template <class Fn>
void for_each_face(const SimplicialComplex& K, Fn&& fn) {
  const int m = K.m();
  // Candidate extensions restricted to faces containing the current face.
  struct Frame {
    VSet face;
    int next;
  };
  std::vector<Frame> stack{{0, 1}};
  fn(VSet{0});
  const auto& mf = K.maximal_faces();
  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (fr.next > m) {
      stack.pop_back();
      continue;
    }
    int v = fr.next++;
    VSet cand = fr.face | bit(v);
    bool ok = false;
    for (VSet f : mf)
      if ((cand & f) == cand) {
        ok = true;
        break;
      }
    if (!ok) continue;
    fn(cand);
    stack.push_back({cand, v + 1});
  }
}

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<long long> f_vector(const SimplicialComplex& K) {
  std::vector<long long> f(K.max_face_size() + 1, 0);
  for_each_face(K, [&](VSet s) { f[popcount(s)]++; });
  return f;
}

std::vector<long long> h_vector(const SimplicialComplex& K) {
  if (!K.is_pure()) fail_input("h undefined for non-pure complex");
  const int n = K.n();
  auto f = f_vector(K);
  // sum_i f_{i-1} (t-1)^{n-i} = sum_i h_i t^{n-i}
  std::vector<long long> h(n + 1, 0);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n - i; ++j) {
      // term t^{j} of (t-1)^{n-i}: C(n-i, j) (-1)^{n-i-j}
      long long c = binom(n - i, j) * (((n - i - j) % 2) ? -1 : 1);
      h[n - j] += f[i] * c;
    }
  }
  return h;
}

std::vector<long long> f_from_h(const std::vector<long long>& h) {
  const int n = static_cast<int>(h.size()) - 1;
  std::vector<long long> f(n + 1, 0);
  // sum_i f_{i-1} t^{n-i} = sum_i h_i (t+1)^{n-i}
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n - i; ++j) f[n - j] += h[i] * binom(n - i, j);
  return f;
}

std::vector<VSet> minimal_non_faces(const SimplicialComplex& K) {
  const int cap = K.max_face_size() + 1;
  std::vector<VSet> out;
  for_each_face(K, [&](VSet s) {
    if (popcount(s) + 1 > cap) return;
    int top = s ? 64 - __builtin_clzll(s) : 0;  // highest label in s
    for (int v = top + 1; v <= K.m(); ++v) {
      VSet w = s | bit(v);
      if (K.is_face(w)) continue;
      bool minimal = true;
      for (VSet rest = s; rest; rest &= rest - 1) {
        VSet drop = rest & (~rest + 1);
        if (!K.is_face(w & ~drop)) {
          minimal = false;
          break;
        }
      }
      if (minimal) out.push_back(w);
    }
  });
  std::sort(out.begin(), out.end(), label_lex_less);
  return out;
}

namespace {

std::vector<VSet> adjacency(const SimplicialComplex& K) {
  std::vector<VSet> adj(K.m(), 0);
  for (VSet f : K.maximal_faces())
    for (int v : labels_of(f)) adj[v - 1] |= f & ~bit(v);
  return adj;
}

int max_clique_rec(const std::vector<VSet>& adj, VSet cand, int size, int best) {
  if (!cand) return std::max(best, size);
  if (size + popcount(cand) <= best) return best;
  while (cand) {
    if (size + popcount(cand) <= best) break;
    int v = __builtin_ctzll(cand);
    cand &= cand - 1;
    best = max_clique_rec(adj, cand & adj[v], size + 1, best);
  }
  return best;
}

std::vector<int> greedy_coloring(const std::vector<VSet>& adj) {
  const int m = static_cast<int>(adj.size());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return popcount(adj[a]) > popcount(adj[b]); });
  std::vector<int> color(m, -1);
  for (int v : order) {
    std::vector<bool> used(m + 1, false);
    for (int u : labels_of(adj[v]))
      if (color[u - 1] >= 0) used[color[u - 1]] = true;
    int c = 0;
    while (used[c]) ++c;
    color[v] = c;
  }
  return color;
}

// DSATUR backtracking for a proper coloring with at most k colors.
bool color_with(const std::vector<VSet>& adj, int k, std::vector<int>& color, int colored) {
  const int m = static_cast<int>(adj.size());
  if (colored == m) return true;
  int pick = -1, best_sat = -1, best_deg = -1;
  for (int v = 0; v < m; ++v) {
    if (color[v] >= 0) continue;
    unsigned long long mask = 0;
    int deg = 0;
    for (int u : labels_of(adj[v])) {
      if (color[u - 1] >= 0)
        mask |= 1ull << color[u - 1];
      else
        ++deg;
    }
    int sat = __builtin_popcountll(mask);
    if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
      pick = v;
      best_sat = sat;
      best_deg = deg;
    }
  }
  unsigned long long used = 0;
  int max_used = -1;
  for (int v = 0; v < m; ++v) max_used = std::max(max_used, color[v]);
  for (int u : labels_of(adj[pick]))
    if (color[u - 1] >= 0) used |= 1ull << color[u - 1];
  // A fresh color is interchangeable with any other unused one: try only the first.
  for (int c = 0; c < k && c <= max_used + 1; ++c) {
    if (used & (1ull << c)) continue;
    color[pick] = c;
    if (color_with(adj, k, color, colored + 1)) return true;
    color[pick] = -1;
  }
  return false;
}

}  // namespace

int clique_number(const SimplicialComplex& K) {
  auto adj = adjacency(K);
  return max_clique_rec(adj, full_set(K.m()), 0, 0);
}

int greedy_color_count(const SimplicialComplex& K) {
  auto c = greedy_coloring(adjacency(K));
  return *std::max_element(c.begin(), c.end()) + 1;
}

Coloring chromatic_coloring(const SimplicialComplex& K) {
  auto adj = adjacency(K);
  const int m = K.m();
  int lower = max_clique_rec(adj, full_set(m), 0, 0);
  auto greedy = greedy_coloring(adj);
  int upper = *std::max_element(greedy.begin(), greedy.end()) + 1;
  Coloring best{upper, greedy};
  for (int k = lower; k < upper; ++k) {
    std::vector<int> color(m, -1);
    if (color_with(adj, k, color, 0)) {
      best = {k, color};
      break;
    }
  }
  return best;
}

int chromatic_number(const SimplicialComplex& K) { return chromatic_coloring(K).colors; }

FlagDefect flag_defect(const SimplicialComplex& K) {
  auto mnf = minimal_non_faces(K);
  FlagDefect d;
  d.is_flag = true;
  d.least_k_flag = 2;
  for (VSet w : mnf) {
    if (popcount(w) != 2) d.is_flag = false;
    d.least_k_flag = std::max(d.least_k_flag, popcount(w));
  }
  return d;
}

Link link(const SimplicialComplex& K, VSet sigma) {
  if (!K.is_face(sigma)) fail_input("link requires a face of the complex");
  std::vector<VSet> parts;
  VSet support = 0;
  for (VSet f : K.maximal_faces())
    if ((f & sigma) == sigma) {
      parts.push_back(f & ~sigma);
      support |= f & ~sigma;
    }
  if (!support) fail_input("link of a maximal face is empty");
  Link L;
  L.labels = labels_of(support);
  std::vector<int> newlabel(K.m() + 1, 0);
  for (size_t i = 0; i < L.labels.size(); ++i) newlabel[L.labels[i]] = static_cast<int>(i) + 1;
  std::vector<VSet> faces;
  for (VSet p : parts) {
    VSet q = 0;
    for (int v : labels_of(p)) q |= bit(newlabel[v]);
    faces.push_back(q);
  }
  L.complex = SimplicialComplex::from_generating_faces(static_cast<int>(L.labels.size()), faces);
  return L;
}

SimplicialComplex join(const SimplicialComplex& A, const SimplicialComplex& B) {
  const int m = A.m() + B.m();
  if (m > kMaxVertices) fail_input("join exceeds 64 vertices");
  std::vector<VSet> faces;
  for (VSet a : A.maximal_faces())
    for (VSet b : B.maximal_faces()) faces.push_back(a | (b << A.m()));
  return SimplicialComplex::from_maximal_faces(m, faces);
}

SimplicialComplex relabel(const SimplicialComplex& K, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != K.m()) fail_input("relabeling has wrong length");
  std::vector<VSet> faces;
  for (VSet f : K.maximal_faces()) {
    VSet g = 0;
    for (int v : labels_of(f)) g |= bit(perm[v - 1]);
    faces.push_back(g);
  }
  return SimplicialComplex::from_maximal_faces(K.m(), faces);
}

namespace {

// Colour refinement on the vertex/maximal-face incidence structure.
std::vector<int> refine_colors(const SimplicialComplex& K, const std::vector<VSet>& extra_sets) {
  const int m = K.m();
  std::vector<int> color(m, 0);
  auto all_sets = [&](auto&& fn) {
    for (VSet f : K.maximal_faces()) fn(f, 0);
    for (VSet f : extra_sets) fn(f, 1);
  };
  for (int round = 0; round < m + 1; ++round) {
    std::vector<std::vector<long long>> sig(m);
    for (int v = 0; v < m; ++v) sig[v].push_back(color[v]);
    all_sets([&](VSet f, int kind) {
      std::vector<int> cs;
      for (int u : labels_of(f)) cs.push_back(color[u - 1]);
      std::sort(cs.begin(), cs.end());
      long long hsh = kind * 1000003LL + popcount(f);
      for (int c : cs) hsh = hsh * 1000033LL + c + 7;
      for (int u : labels_of(f)) sig[u - 1].push_back(hsh);
    });
    for (auto& s : sig) std::sort(s.begin() + 1, s.end());
    std::map<std::vector<long long>, int> ids;
    for (auto& s : sig) ids.emplace(s, 0);
    int next = 0;
    for (auto& kv : ids) kv.second = next++;
    std::vector<int> nc(m);
    for (int v = 0; v < m; ++v) nc[v] = ids[sig[v]];
    int before = *std::max_element(color.begin(), color.end());
    color = nc;
    if (*std::max_element(color.begin(), color.end()) == before) break;
  }
  return color;
}

struct IsoSearch {
  const SimplicialComplex& A;
  const SimplicialComplex& B;
  std::vector<int> colA, colB, order;
  std::vector<int> map;     // A vertex index -> B vertex index or -1
  std::vector<bool> usedB;

  bool search(size_t depth, VSet domain, VSet image) {
    if (depth == order.size()) return true;
    int a = order[depth];
    for (int b = 0; b < B.m(); ++b) {
      if (usedB[b] || colB[b] != colA[a]) continue;
      map[a] = b;
      usedB[b] = true;
      VSet nd = domain | bit(a + 1), ni = image | bit(b + 1);
      if (trace_ok(nd, ni) && search(depth + 1, nd, ni)) return true;
      usedB[b] = false;
      map[a] = -1;
    }
    return false;
  }

  // The mapped traces of A's maximal faces on the domain must coincide with
  // the traces of B's maximal faces on the image, as multisets.
  bool trace_ok(VSet domain, VSet image) const {
    std::vector<VSet> ta, tb;
    for (VSet f : A.maximal_faces()) {
      VSet g = 0;
      for (int v : labels_of(f & domain)) g |= bit(map[v - 1] + 1);
      ta.push_back(g);
    }
    for (VSet f : B.maximal_faces()) tb.push_back(f & image);
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    return ta == tb;
  }
};

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const SimplicialComplex& A,
                                                 const SimplicialComplex& B) {
  if (A.m() != B.m() || A.maximal_faces().size() != B.maximal_faces().size()) return std::nullopt;
  std::vector<int> sa, sb;
  for (VSet f : A.maximal_faces()) sa.push_back(popcount(f));
  for (VSet f : B.maximal_faces()) sb.push_back(popcount(f));
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;

  // Refine A and B jointly so colour ids are comparable.
  const int m = A.m();
  std::vector<VSet> faces;
  for (VSet f : A.maximal_faces()) faces.push_back(f);
  for (VSet f : B.maximal_faces()) faces.push_back(f << m);
  std::vector<int> colA(m, 0), colB(m, 0);
  if (2 * m <= kMaxVertices) {  // otherwise search without colours
    auto U = SimplicialComplex::from_generating_faces(2 * m, faces);
    auto col = refine_colors(U, {});
    for (int v = 0; v < m; ++v) {
      colA[v] = col[v];
      colB[v] = col[v + m];
    }
  }
  auto ca = colA, cb = colB;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca != cb) return std::nullopt;

  IsoSearch s{A, B, colA, colB, {}, std::vector<int>(m, -1), std::vector<bool>(m, false)};
  // Order: smallest colour classes first, then by adjacency to already ordered vertices.
  std::map<int, int> class_size;
  for (int c : colA) class_size[c]++;
  std::vector<bool> placed(m, false);
  VSet placed_set = 0;
  for (int step = 0; step < m; ++step) {
    int best = -1;
    long long best_key = 0;
    for (int v = 0; v < m; ++v) {
      if (placed[v]) continue;
      long long touch = 0;
      for (VSet f : A.maximal_faces())
        if (f & bit(v + 1)) touch += popcount(f & placed_set);
      long long key = touch * 1000 - class_size[colA[v]];
      if (best < 0 || key > best_key) {
        best_key = key;
        best = v;
      }
    }
    placed[best] = true;
    placed_set |= bit(best + 1);
    s.order.push_back(best);
  }
  if (!s.search(0, 0, 0)) return std::nullopt;
  std::vector<int> perm(m);
  for (int v = 0; v < m; ++v) perm[v] = s.map[v] + 1;
  return perm;
}

}  // namespace torcomb
