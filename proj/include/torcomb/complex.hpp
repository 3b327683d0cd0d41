#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace torcomb {

// Vertex subsets of [m] as bitmasks; label v (1-based) is bit v-1.
using VSet = std::uint64_t;
inline constexpr int kMaxVertices = 64;

inline VSet bit(int label) { return VSet{1} << (label - 1); }
inline int popcount(VSet s) { return __builtin_popcountll(s); }
VSet vset_from_labels(const std::vector<int>& labels);
std::vector<int> labels_of(VSet s);
inline VSet full_set(int m) { return m >= 64 ? ~VSet{0} : (VSet{1} << m) - 1; }

// Simplicial complex on [m] stored through its maximal faces.
// Every label 1..m must occur in some maximal face.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // Strict: rejects faces contained in other listed faces, ghost vertices,
  // out-of-range labels and duplicates.
  static SimplicialComplex from_maximal_faces(int m, const std::vector<VSet>& faces);
  static SimplicialComplex from_maximal_faces(int m, const std::vector<std::vector<int>>& faces);
  // Lenient: keeps only the inclusion-maximal members of `faces`.
  static SimplicialComplex from_generating_faces(int m, const std::vector<VSet>& faces);

  int m() const { return m_; }
  const std::vector<VSet>& maximal_faces() const { return faces_; }
  int max_face_size() const;
  bool is_pure() const;
  // Number of vertices of a maximal face; requires purity.
  int n() const;

  bool is_face(VSet s) const;
  bool is_face(const std::vector<int>& labels) const;

  bool operator==(const SimplicialComplex& o) const { return m_ == o.m_ && faces_ == o.faces_; }

 private:
  int m_ = 0;
  std::vector<VSet> faces_;  // sorted ascending by label order
};

// Lexicographic order on sorted label lists.
bool label_lex_less(VSet a, VSet b);

std::vector<long long> f_vector(const SimplicialComplex& K);  // (f_{-1}, f_0, ...)
std::vector<long long> h_vector(const SimplicialComplex& K);  // (h_0, ..., h_n)
std::vector<long long> f_from_h(const std::vector<long long>& h);

std::vector<VSet> minimal_non_faces(const SimplicialComplex& K);

struct Coloring {
  int colors = 0;
  std::vector<int> color_of;  // index label-1, values 0..colors-1
};
Coloring chromatic_coloring(const SimplicialComplex& K);
int chromatic_number(const SimplicialComplex& K);
int clique_number(const SimplicialComplex& K);
int greedy_color_count(const SimplicialComplex& K);

struct FlagDefect {
  bool is_flag = false;
  int least_k_flag = 0;
};
FlagDefect flag_defect(const SimplicialComplex& K);

struct Link {
  SimplicialComplex complex;
  std::vector<int> labels;  // new label i+1 corresponds to old label labels[i]
};
Link link(const SimplicialComplex& K, VSet sigma);

SimplicialComplex join(const SimplicialComplex& A, const SimplicialComplex& B);

// Apply a relabeling: perm[old-1] = new label.
SimplicialComplex relabel(const SimplicialComplex& K, const std::vector<int>& perm);

// Returns perm with relabel(A, perm) == B, if one exists.
std::optional<std::vector<int>> find_isomorphism(const SimplicialComplex& A,
                                                 const SimplicialComplex& B);
inline bool isomorphic(const SimplicialComplex& A, const SimplicialComplex& B) {
  return find_isomorphism(A, B).has_value();
}

}  // namespace torcomb
