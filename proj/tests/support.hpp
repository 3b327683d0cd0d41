#pragma once

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "torcomb/complex.hpp"
#include "torcomb/families.hpp"

namespace testsupport {

inline oracle::Faces faces_of(const torcomb::SimplicialComplex& K) {
  oracle::Faces out;
  for (auto f : K.maximal_faces()) out.push_back(torcomb::labels_of(f));
  return out;
}

struct Named {
  std::string name;
  torcomb::SimplicialComplex complex;
};

// Duals of simple polytopes from every constructor, with at most max_m vertices.
inline std::vector<Named> sphere_families(int max_m) {
  using namespace torcomb;
  std::vector<Named> out;
  for (int n = 1; n + 1 <= max_m; ++n) out.push_back({"simplex" + std::to_string(n), boundary_simplex(n)});
  for (int n = 2; n <= max_m; ++n)
    for (int m = n + 2; m <= max_m; ++m)
      out.push_back({"cyclic(" + std::to_string(n) + "," + std::to_string(m) + ")", cyclic_dual(n, m)});
  for (const auto& p : enumerate_presentations(5, max_m)) {
    std::string name = "polygon(";
    for (int w : p.weights()) name += std::to_string(w) + ",";
    name.back() = ')';
    out.push_back({name, polygon_complex(p)});
  }
  const auto pentagon = polygon_complex(PolygonPresentation({1, 1, 1, 1, 1}));
  if (max_m >= 6) out.push_back({"double(pentagon;2,1,1,1,1)", doubling(pentagon, {2, 1, 1, 1, 1})});
  if (max_m >= 7) out.push_back({"double(pentagon;1,2,1,2,1)", doubling(pentagon, {1, 2, 1, 2, 1})});
  if (max_m >= 6) {
    const auto tri = boundary_simplex(2);
    out.push_back({"pentagon#triangle", connected_sum(pentagon, pentagon.maximal_faces().front(), tri,
                                                      tri.maximal_faces().front(), {1, 2})});
  }
  if (max_m >= 8)
    out.push_back({"pentagon#pentagon", connected_sum(pentagon, pentagon.maximal_faces().front(), pentagon,
                                                      pentagon.maximal_faces().front(), {1, 3})});
  if (max_m >= 7) out.push_back({"pentagon*S0", join(pentagon, boundary_simplex(1))});
  return out;
}

// Sphere families plus simplex skeletons (not spheres in general).
inline std::vector<Named> all_families(int max_m) {
  auto out = sphere_families(max_m);
  for (int m = 3; m <= max_m; ++m)
    for (int n = 1; n <= m - 1; ++n)
      out.push_back({"skeleton(" + std::to_string(m) + "," + std::to_string(n) + ")",
                     torcomb::simplex_skeleton(m, n)});
  return out;
}

// Random complex: random subsets of [m], made inclusion-maximal, with every vertex covered.
inline torcomb::SimplicialComplex random_complex(std::mt19937_64& rng, int m, int max_faces) {
  using namespace torcomb;
  std::uniform_int_distribution<int> count(1, max_faces);
  std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << m) - 1);
  std::vector<VSet> gens;
  const int c = count(rng);
  for (int i = 0; i < c; ++i) gens.push_back(pick(rng));
  for (int v = 1; v <= m; ++v) gens.push_back(bit(v));
  return SimplicialComplex::from_generating_faces(m, gens);
}

// Random pure complex of dimension n-1 on [m] covering all vertices.
inline torcomb::SimplicialComplex random_pure_complex(std::mt19937_64& rng, int m, int n, int faces) {
  using namespace torcomb;
  std::vector<int> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = i + 1;
  std::vector<VSet> gens;
  // One face per chunk guarantees coverage.
  for (int start = 0; start < m; start += n) {
    std::vector<int> f;
    for (int t = 0; t < n; ++t) f.push_back(labels[(start + t) % m]);
    gens.push_back(vset_from_labels(f));
  }
  for (int i = 0; i < faces; ++i) {
    std::shuffle(labels.begin(), labels.end(), rng);
    gens.push_back(vset_from_labels(std::vector<int>(labels.begin(), labels.begin() + n)));
  }
  return SimplicialComplex::from_generating_faces(m, gens);
}

}  // namespace testsupport
