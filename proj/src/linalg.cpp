#include "torcomb/linalg.hpp"

#include <algorithm>
#include <utility>

#include "torcomb/error.hpp"

namespace torcomb {

GF2Matrix::GF2Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), bits_(rows, std::vector<std::uint64_t>((cols + 63) / 64, 0)) {
  if (rows < 0 || cols < 0) fail_input("matrix dimensions must be nonnegative");
}

bool GF2Matrix::get(int r, int c) const { return (bits_[r][c / 64] >> (c % 64)) & 1u; }

void GF2Matrix::set(int r, int c, bool v) {
  auto& w = bits_[r][c / 64];
  const std::uint64_t mask = std::uint64_t{1} << (c % 64);
  w = v ? (w | mask) : (w & ~mask);
}

int gf2_rank(const GF2Matrix& M) {
  std::vector<std::vector<std::uint64_t>> rows;
  for (int r = 0; r < M.rows(); ++r) rows.push_back(M.row_words(r));
  const int words = (M.cols() + 63) / 64;
  int rank = 0;
  for (int c = 0; c < M.cols() && rank < M.rows(); ++c) {
    const int w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    int piv = -1;
    for (int r = rank; r < M.rows(); ++r)
      if (rows[r][w] & mask) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < M.rows(); ++r)
      if (r != rank && (rows[r][w] & mask))
        for (int t = 0; t < words; ++t) rows[r][t] ^= rows[rank][t];
    ++rank;
  }
  return rank;
}

int gf2_rank_words(std::vector<std::uint64_t> rows) {
  int rank = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    std::uint64_t v = rows[i];
    if (!v) continue;
    std::uint64_t low = v & (~v + 1);
    ++rank;
    for (size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j] & low) rows[j] ^= v;
  }
  return rank;
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows, int cols) {
  if (cols < 0) cols = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  IntMatrix M(static_cast<int>(rows.size()), cols);
  for (int r = 0; r < M.rows(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols) fail_input("ragged matrix rows");
    for (int c = 0; c < cols; ++c) M.at(r, c) = static_cast<long>(rows[r][c]);
  }
  return M;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) fail_input("matrix product shape mismatch");
  IntMatrix R(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const mpz_class& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        if (o.at(k, j) != 0) R.at(i, j) += a * o.at(k, j);
    }
  return R;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) T.at(j, i) = at(i, j);
  return T;
}

bool IntMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const mpz_class& x) { return x == 0; });
}

mpz_class int_det(const IntMatrix& M) {
  if (M.rows() != M.cols()) fail_input("determinant needs a square matrix");
  const int n = M.rows();
  if (n == 0) return 1;
  IntMatrix A = M;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (A.at(k, k) == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (A.at(r, k) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(A.at(k, c), A.at(piv, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        A.at(i, j) = A.at(i, j) * A.at(k, k) - A.at(i, k) * A.at(k, j);
        mpz_divexact(A.at(i, j).get_mpz_t(), A.at(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      A.at(i, k) = 0;
    }
    prev = A.at(k, k);
  }
  return sign * A.at(n - 1, n - 1);
}

int rank_q(const IntMatrix& M) {
  const int R = M.rows(), C = M.cols();
  std::vector<std::vector<mpz_class>> rows(R, std::vector<mpz_class>(C));
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c) rows[r][c] = M.at(r, c);
  int rank = 0;
  mpz_class q, g;
  for (int c = 0; c < C && rank < R; ++c) {
    // Smallest nonzero pivot keeps the entries small.
    int piv = -1;
    for (int r = rank; r < R; ++r)
      if (rows[r][c] != 0 && (piv < 0 || abs(rows[r][c]) < abs(rows[piv][c]))) piv = r;
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    const mpz_class p = rows[rank][c];
    const bool unit = (p == 1 || p == -1);
    for (int r = rank + 1; r < R; ++r) {
      if (rows[r][c] == 0) continue;
      const mpz_class f = rows[r][c];
      if (unit) {
        q = f * p;  // f / p for p = +-1
        for (int t = c; t < C; ++t)
          if (rows[rank][t] != 0) rows[r][t] -= q * rows[rank][t];
      } else {
        g = 0;
        for (int t = c; t < C; ++t) {
          rows[r][t] = rows[r][t] * p - f * rows[rank][t];
          mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), rows[r][t].get_mpz_t());
        }
        if (g > 1)
          for (int t = c; t < C; ++t) mpz_divexact(rows[r][t].get_mpz_t(), rows[r][t].get_mpz_t(), g.get_mpz_t());
      }
    }
    ++rank;
  }
  return rank;
}

namespace {

struct SnfWork {
  IntMatrix A, L, R;
  bool track;

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < A.cols(); ++c) std::swap(A.at(i, c), A.at(j, c));
    if (track)
      for (int c = 0; c < L.cols(); ++c) std::swap(L.at(i, c), L.at(j, c));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < A.rows(); ++r) std::swap(A.at(r, i), A.at(r, j));
    if (track)
      for (int r = 0; r < R.rows(); ++r) std::swap(R.at(r, i), R.at(r, j));
  }
  // row_i -= q * row_j
  void row_sub(int i, int j, const mpz_class& q) {
    for (int c = 0; c < A.cols(); ++c)
      if (A.at(j, c) != 0) A.at(i, c) -= q * A.at(j, c);
    if (track)
      for (int c = 0; c < L.cols(); ++c)
        if (L.at(j, c) != 0) L.at(i, c) -= q * L.at(j, c);
  }
  // col_i -= q * col_j
  void col_sub(int i, int j, const mpz_class& q) {
    for (int r = 0; r < A.rows(); ++r)
      if (A.at(r, j) != 0) A.at(r, i) -= q * A.at(r, j);
    if (track)
      for (int r = 0; r < R.rows(); ++r)
        if (R.at(r, j) != 0) R.at(r, i) -= q * R.at(r, j);
  }
  void negate_row(int i) {
    for (int c = 0; c < A.cols(); ++c) A.at(i, c) = -A.at(i, c);
    if (track)
      for (int c = 0; c < L.cols(); ++c) L.at(i, c) = -L.at(i, c);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M, bool with_transforms) {
  SnfWork w{M, with_transforms ? IntMatrix::identity(M.rows()) : IntMatrix(),
            with_transforms ? IntMatrix::identity(M.cols()) : IntMatrix(), with_transforms};
  const int rows = M.rows(), cols = M.cols();
  const int dmax = std::min(rows, cols);
  mpz_class q;
  int t = 0;
  for (; t < dmax; ++t) {
    // Pivot: smallest nonzero absolute value in the trailing block.
    int pr = -1, pc = -1;
    for (int r = t; r < rows; ++r)
      for (int c = t; c < cols; ++c)
        if (w.A.at(r, c) != 0 && (pr < 0 || abs(w.A.at(r, c)) < abs(w.A.at(pr, pc)))) {
          pr = r;
          pc = c;
        }
    if (pr < 0) break;
    w.swap_rows(t, pr);
    w.swap_cols(t, pc);
    while (true) {
      bool changed = false;
      for (int r = t + 1; r < rows; ++r) {
        if (w.A.at(r, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), w.A.at(r, t).get_mpz_t(), w.A.at(t, t).get_mpz_t());
        w.row_sub(r, t, q);
        if (w.A.at(r, t) != 0) {
          w.swap_rows(t, r);
          changed = true;
        }
      }
      for (int c = t + 1; c < cols; ++c) {
        if (w.A.at(t, c) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), w.A.at(t, c).get_mpz_t(), w.A.at(t, t).get_mpz_t());
        w.col_sub(c, t, q);
        if (w.A.at(t, c) != 0) {
          w.swap_cols(t, c);
          changed = true;
        }
      }
      if (changed) continue;
      // Row and column t are clear; enforce divisibility of the trailing block.
      int bad = -1;
      for (int r = t + 1; r < rows && bad < 0; ++r)
        for (int c = t + 1; c < cols; ++c)
          if (w.A.at(r, c) != 0 && !mpz_divisible_p(w.A.at(r, c).get_mpz_t(), w.A.at(t, t).get_mpz_t())) {
            bad = r;
            break;
          }
      if (bad < 0) break;
      w.row_sub(t, bad, -1);  // row_t += row_bad
    }
    if (w.A.at(t, t) < 0) w.negate_row(t);
  }
  SmithForm out;
  out.diagonal.assign(dmax, 0);
  for (int i = 0; i < t; ++i) out.diagonal[i] = w.A.at(i, i);
  if (with_transforms) {
    out.left = std::move(w.L);
    out.right = std::move(w.R);
  }
  return out;
}

bool is_part_of_basis(const IntMatrix& M) {
  if (M.cols() > M.rows()) return false;
  if (M.cols() == 0) return true;
  auto snf = smith_normal_form(M);
  for (int i = 0; i < M.cols(); ++i)
    if (snf.diagonal[i] != 1) return false;
  return true;
}

ColumnEchelon column_echelon(const IntMatrix& M) {
  const int rows = M.rows(), cols = M.cols();
  ColumnEchelon E;
  E.reduced = M;
  E.transform = IntMatrix::identity(cols);
  E.inverse = IntMatrix::identity(cols);
  IntMatrix& A = E.reduced;
  IntMatrix& U = E.transform;
  IntMatrix& V = E.inverse;
  mpz_class g, s, tt, xg, yg;
  int rank = 0;
  for (int r = 0; r < rows && rank < cols; ++r) {
    for (int c = rank + 1; c < cols; ++c) {
      const mpz_class x = A.at(r, rank), y = A.at(r, c);
      if (y == 0) continue;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      xg = x / g;
      yg = y / g;
      // columns: p' = s p + t q, q' = -(y/g) p + (x/g) q ; unimodular
      auto mix_cols = [&](IntMatrix& X) {
        for (int i = 0; i < X.rows(); ++i) {
          mpz_class p = X.at(i, rank), q = X.at(i, c);
          if (p == 0 && q == 0) continue;
          X.at(i, rank) = s * p + tt * q;
          X.at(i, c) = xg * q - yg * p;
        }
      };
      mix_cols(A);
      mix_cols(U);
      // inverse rows: p' = (x/g) p + (y/g) q, q' = -t p + s q
      for (int j = 0; j < cols; ++j) {
        mpz_class p = V.at(rank, j), q = V.at(c, j);
        if (p == 0 && q == 0) continue;
        V.at(rank, j) = xg * p + yg * q;
        V.at(c, j) = s * q - tt * p;
      }
    }
    if (A.at(r, rank) != 0) ++rank;
  }
  E.rank = rank;
  return E;
}

IntMatrix integer_kernel(const IntMatrix& M) {
  auto E = column_echelon(M);
  const int cols = M.cols();
  IntMatrix K(cols, cols - E.rank);
  for (int i = 0; i < cols; ++i)
    for (int j = E.rank; j < cols; ++j) K.at(i, j - E.rank) = E.transform.at(i, j);
  return K;
}

}  // namespace torcomb
