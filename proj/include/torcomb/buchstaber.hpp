#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torcomb/complex.hpp"

namespace torcomb {

enum class Ring { GF2, Int };

// Vertex-to-vector map certifying a free subgroup of rank m - r.
struct TorusAssignment {
  Ring ring = Ring::GF2;
  int r = 0;
  std::vector<std::vector<long long>> vectors;  // one per vertex, length r
};

// GF2: every maximal face's vectors are independent mod 2.
// Int: every maximal face's vectors extend to a basis of Z^r.
bool verify_assignment(const SimplicialComplex& K, const TorusAssignment& a);

// Matrix form: m rows of length s. Valid iff for every maximal face the rows
// outside it span a direct summand of rank s (columns extend to a basis of Z^{m-n}).
using RowMatrix = std::vector<std::vector<long long>>;
bool verify_matrix_form(const SimplicialComplex& K, const RowMatrix& rows);

struct SearchOptions {
  int threads = 1;
  long long node_cap = 0;  // 0 = unlimited
};

enum class SearchStatus { Feasible, Infeasible, Incomplete };

struct SearchResult {
  SearchStatus status = SearchStatus::Incomplete;
  std::optional<TorusAssignment> certificate;
  long long nodes = 0;
};

// Decides whether a GF(2) assignment into dimension r exists.
SearchResult gf2_assignment_search(const SimplicialComplex& K, int r, const SearchOptions& opt = {});

struct SRealResult {
  int value = 0;
  TorusAssignment certificate;
};
// Throws a desk-scale error when the node cap interrupts a needed search.
SRealResult s_real(const SimplicialComplex& K, const SearchOptions& opt = {});

struct SRange {
  int lower = 1;
  int upper = 1;
  bool exact = false;
  int s_real = 0;
  TorusAssignment real_certificate;
  std::optional<TorusAssignment> certificate;  // Int, realises `lower`
  std::optional<RowMatrix> matrix_form;         // 0/1 matrix form behind a lifted certificate
  std::vector<std::pair<std::string, int>> provenance;
};
SRange s_int(const SimplicialComplex& K, const SearchOptions& opt = {});

// Lifts a GF(2) certificate of rank s <= 3 through its 0/1 matrix form.
struct Lift {
  RowMatrix matrix_form;
  TorusAssignment assignment;
};
std::optional<Lift> lift_through_matrix_form(const SimplicialComplex& K, const TorusAssignment& gf2);

int izmestiev_bound(const SimplicialComplex& K);
TorusAssignment coloring_certificate(const SimplicialComplex& K);
TorusAssignment diagonal_certificate(const SimplicialComplex& K);
int aizenberg_bound(const SimplicialComplex& K);
int chromatic_skeleton_bound(const SimplicialComplex& K);
int cover_bound(const SimplicialComplex& K);
int flag_bounds(const SimplicialComplex& K);

bool skeleton_s2_predicate(int m, int n);
bool skeleton_s3_predicate(int m, int n);

long long fm_mk(int k, long long b);
struct FmSandwich {
  long long lower, upper;
};
FmSandwich fm_sandwich(int k, long long b);
long long fm_periodicity_threshold(int k);

}  // namespace torcomb
