#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace torcomb {

// Bit matrix over GF(2), rows packed into 64-bit words.
class GF2Matrix {
 public:
  GF2Matrix(int rows, int cols);
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int r, int c) const;
  void set(int r, int c, bool v);
  const std::vector<std::uint64_t>& row_words(int r) const { return bits_[r]; }
  bool operator==(const GF2Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_; }

 private:
  int rows_, cols_;
  std::vector<std::vector<std::uint64_t>> bits_;
};

int gf2_rank(const GF2Matrix& M);
// Rank of a set of vectors packed into single words (at most 64 coordinates).
int gf2_rank_words(std::vector<std::uint64_t> rows);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, int cols = -1);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  mpz_class& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const mpz_class& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const;
  IntMatrix transpose() const;
  bool is_zero() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<mpz_class> e_;
};

// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class int_det(const IntMatrix& M);

// Rank over the rationals, exact.
int rank_q(const IntMatrix& M);

struct SmithForm {
  std::vector<mpz_class> diagonal;  // length min(rows, cols); d_1 | d_2 | ...; zeros last
  IntMatrix left, right;            // left * M * right = diag, both unimodular (when requested)
};
SmithForm smith_normal_form(const IntMatrix& M, bool with_transforms = false);

// True iff the columns of the r x s matrix extend to a basis of Z^r.
bool is_part_of_basis(const IntMatrix& M);

struct ColumnEchelon {
  int rank = 0;
  IntMatrix reduced;    // M * transform; the first `rank` columns are independent, the rest zero
  IntMatrix transform;  // unimodular
  IntMatrix inverse;    // transform^{-1}
};
ColumnEchelon column_echelon(const IntMatrix& M);

// Basis of the integer kernel {x in Z^cols : M x = 0}, as columns of the result.
IntMatrix integer_kernel(const IntMatrix& M);

}  // namespace torcomb
