#include "torcomb/ring.hpp"

#include <algorithm>
#include <sstream>

#include "torcomb/betti.hpp"
#include "torcomb/error.hpp"
#include "torcomb/linalg.hpp"

namespace torcomb {

KoszulElement KoszulElement::monomial(const SimplicialComplex& K, VSet omega, VSet sigma, long long coeff) {
  if (omega & sigma) fail_input("u and v indices must be disjoint in a Koszul monomial");
  if ((omega | sigma) & ~full_set(K.m())) fail_input("Koszul monomial uses a label outside [m]");
  if (!K.is_face(sigma)) fail_input("v-part of a Koszul monomial must be a face");
  KoszulElement e;
  e.add_term(omega, sigma, coeff);
  return e;
}

void KoszulElement::add_term(VSet omega, VSet sigma, long long coeff) {
  if (coeff == 0) return;
  long long& slot = t_[{omega, sigma}];
  slot += coeff;
  if (slot == 0) t_.erase({omega, sigma});
}

KoszulElement KoszulElement::operator+(const KoszulElement& o) const {
  KoszulElement r = *this;
  for (const auto& [mono, c] : o.t_) r.add_term(mono.first, mono.second, c);
  return r;
}

KoszulElement KoszulElement::operator-(const KoszulElement& o) const { return *this + o.scaled(-1); }

KoszulElement KoszulElement::scaled(long long c) const {
  KoszulElement r;
  for (const auto& [mono, coeff] : t_) r.add_term(mono.first, mono.second, coeff * c);
  return r;
}

bool KoszulElement::homogeneous(VSet* tau, int* q) const {
  if (t_.empty()) return false;
  const VSet t0 = t_.begin()->first.first | t_.begin()->first.second;
  const int q0 = popcount(t_.begin()->first.first);
  for (const auto& [mono, c] : t_)
    if ((mono.first | mono.second) != t0 || popcount(mono.first) != q0) return false;
  *tau = t0;
  *q = q0;
  return true;
}

std::string KoszulElement::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : t_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const long long a = c < 0 ? -c : c;
    if (a != 1 || (mono.first == 0 && mono.second == 0)) os << a;
    // Labels in increasing order, each written as u_i or v_i.
    for (int label : labels_of(mono.first | mono.second)) os << ((mono.first & bit(label)) ? "u" : "v") << label;
  }
  return os.str();
}

namespace {

// Sign of moving u_{omega2} past u_{omega1} into sorted order.
int interleave_sign(VSet omega1, VSet omega2) {
  int inversions = 0;
  for (VSet rest = omega2; rest; rest &= rest - 1) {
    const VSet b = rest & (~rest + 1);
    inversions += popcount(omega1 & ~(b | (b - 1)));  // a in omega1 with a > b
  }
  return inversions % 2 ? -1 : 1;
}

}  // namespace

KoszulElement koszul_product(const SimplicialComplex& K, const KoszulElement& x, const KoszulElement& y) {
  KoszulElement out;
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) {
      const VSet tx = mx.first | mx.second, ty = my.first | my.second;
      if (tx & ty) continue;  // u_i^2 = v_i^2 = u_i v_i = 0
      const VSet sigma = mx.second | my.second;
      if (!K.is_face(sigma)) continue;
      out.add_term(mx.first | my.first, sigma, interleave_sign(mx.first, my.first) * cx * cy);
    }
  return out;
}

KoszulElement koszul_differential(const SimplicialComplex& K, const KoszulElement& x) {
  KoszulElement out;
  for (const auto& [mono, c] : x.terms()) {
    int pos = 0;
    for (VSet rest = mono.first; rest; rest &= rest - 1) {
      const VSet i = rest & (~rest + 1);
      ++pos;
      if (!K.is_face(mono.second | i)) continue;
      out.add_term(mono.first & ~i, mono.second | i, pos % 2 ? c : -c);
    }
  }
  return out;
}

namespace {

// Faces sigma of tau with |sigma| = |tau| - q, sorted.
std::vector<VSet> cochain_basis(const SimplicialComplex& K, VSet tau, int q) {
  std::vector<VSet> basis;
  const int size = popcount(tau) - q;
  if (size < 0) return basis;
  for (VSet s = tau;; s = (s - 1) & tau) {
    if (popcount(s) == size && K.is_face(s)) basis.push_back(s);
    if (s == 0) break;
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

// Matrix of d between two cochain bases of multidegree tau.
IntMatrix differential_matrix(const SimplicialComplex& K, VSet tau, const std::vector<VSet>& from,
                              const std::vector<VSet>& to) {
  IntMatrix D(static_cast<int>(to.size()), static_cast<int>(from.size()));
  for (size_t c = 0; c < from.size(); ++c) {
    const VSet sigma = from[c];
    const auto image = koszul_differential(K, KoszulElement::monomial(K, tau & ~sigma, sigma));
    for (const auto& [mono, coeff] : image.terms()) {
      const auto it = std::lower_bound(to.begin(), to.end(), mono.second);
      D.at(static_cast<int>(it - to.begin()), static_cast<int>(c)) = static_cast<long>(coeff);
    }
  }
  return D;
}

struct PieceReduction {
  std::vector<VSet> basis;
  int kernel_offset = 0;  // rank of d_out
  IntMatrix inverse;      // coordinates change: y = inverse * x
  SmithForm snf;          // of the coboundary lattice inside the kernel
  int image_rank = 0;
};

PieceReduction reduce_piece(const SimplicialComplex& K, VSet tau, int q) {
  PieceReduction R;
  R.basis = cochain_basis(K, tau, q);
  const int c = static_cast<int>(R.basis.size());
  const auto lower = cochain_basis(K, tau, q - 1);
  const auto upper = cochain_basis(K, tau, q + 1);
  const IntMatrix d_out = differential_matrix(K, tau, R.basis, lower);
  const IntMatrix d_in = differential_matrix(K, tau, upper, R.basis);
  ColumnEchelon E = column_echelon(d_out);
  R.kernel_offset = E.rank;
  R.inverse = E.inverse;
  const IntMatrix moved = E.inverse * d_in;
  const int z = c - E.rank;
  IntMatrix B(z, d_in.cols());
  for (int i = 0; i < z; ++i)
    for (int j = 0; j < d_in.cols(); ++j) B.at(i, j) = moved.at(E.rank + i, j);
  for (int i = 0; i < E.rank; ++i)
    for (int j = 0; j < d_in.cols(); ++j)
      if (moved.at(i, j) != 0) fail_consistency("coboundaries fall outside the cocycles (d o d != 0)");
  R.snf = smith_normal_form(B, true);
  for (const auto& d : R.snf.diagonal)
    if (d != 0) ++R.image_rank;
  return R;
}

}  // namespace

CohomologyGroup koszul_cohomology_group(const SimplicialComplex& K, VSet tau, int q) {
  const auto R = reduce_piece(K, tau, q);
  CohomologyGroup g;
  g.rank = static_cast<int>(R.basis.size()) - R.kernel_offset - R.image_rank;
  for (const auto& d : R.snf.diagonal)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

bool ClassCoordinates::is_zero() const {
  for (const auto& c : free)
    if (c != 0) return false;
  for (const auto& t : torsion)
    if (t.first != 0) return false;
  return true;
}

bool ClassCoordinates::equal_up_to_sign(const ClassCoordinates& o) const {
  if (tau != o.tau || q != o.q || free.size() != o.free.size() || torsion.size() != o.torsion.size()) return false;
  for (int sign : {1, -1}) {
    bool same = true;
    for (size_t i = 0; i < free.size() && same; ++i) same = free[i] == sign * o.free[i];
    for (size_t i = 0; i < torsion.size() && same; ++i) {
      mpz_class diff = torsion[i].first - sign * o.torsion[i].first;
      same = mpz_divisible_p(diff.get_mpz_t(), torsion[i].second.get_mpz_t()) != 0;
    }
    if (same) return true;
  }
  return false;
}

ClassCoordinates reduce_mod_coboundaries(const SimplicialComplex& K, const KoszulElement& x) {
  VSet tau = 0;
  int q = 0;
  if (!x.homogeneous(&tau, &q)) fail_input("class reduction needs a nonzero homogeneous element");
  if (!koszul_differential(K, x).is_zero()) fail_input("element is not a cocycle: d x != 0");
  const auto R = reduce_piece(K, tau, q);
  const int c = static_cast<int>(R.basis.size());
  std::vector<mpz_class> xv(c, 0);
  for (const auto& [mono, coeff] : x.terms()) {
    const auto it = std::lower_bound(R.basis.begin(), R.basis.end(), mono.second);
    xv[it - R.basis.begin()] = static_cast<long>(coeff);
  }
  std::vector<mpz_class> y(c, 0);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j) y[i] += R.inverse.at(i, j) * xv[j];
  const int z = c - R.kernel_offset;
  ClassCoordinates out;
  out.tau = tau;
  out.q = q;
  for (int i = 0; i < z; ++i) {
    mpz_class coord = 0;
    for (int j = 0; j < z; ++j) coord += R.snf.left.at(i, j) * y[R.kernel_offset + j];
    if (i < R.image_rank) {
      const mpz_class& d = R.snf.diagonal[i];
      if (d > 1) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), coord.get_mpz_t(), d.get_mpz_t());
        out.torsion.emplace_back(r, d);
      }
    } else {
      out.free.push_back(coord);
    }
  }
  return out;
}

namespace {

// Labels of blocks first..first+count-1 in circular order.
std::vector<int> run_labels(const PolygonPresentation& p, int first, int count) {
  std::vector<int> labels;
  for (int b = 0; b < count; ++b)
    for (int v : p.block(first + b)) labels.push_back(v);
  return labels;
}

KoszulElement uv_monomial(const SimplicialComplex& K, const std::vector<int>& labels, const std::vector<int>& u_labels) {
  VSet omega = 0, sigma = 0;
  for (int v : labels) {
    if (std::find(u_labels.begin(), u_labels.end(), v) != u_labels.end()) omega |= bit(v);
    else sigma |= bit(v);
  }
  // Written order u/v along the run; reorder u's into increasing label order.
  long long sign = 1;
  std::vector<int> written;
  for (int v : labels)
    if (omega & bit(v)) written.push_back(v);
  for (size_t a = 0; a < written.size(); ++a)
    for (size_t b = a + 1; b < written.size(); ++b)
      if (written[a] > written[b]) sign = -sign;
  return KoszulElement::monomial(K, omega, sigma, sign);
}

}  // namespace

KoszulElement y_representative(const PolygonPresentation& p, int i, int s_first, int s_last) {
  const auto K = polygon_complex(p);
  const int k = p.k();
  const auto first_block = p.block(i), last_block = p.block(i + k - 1);
  if (s_first < 1 || s_first > static_cast<int>(first_block.size()) || s_last < 1 ||
      s_last > static_cast<int>(last_block.size()))
    fail_input("u position outside its block");
  return uv_monomial(K, run_labels(p, i, k), {first_block[s_first - 1], last_block[s_last - 1]});
}

KoszulElement top_representative(const SimplicialComplex& K, VSet sigma) {
  return KoszulElement::monomial(K, full_set(K.m()) & ~sigma, sigma);
}

RingPresentation generator_representatives(const PolygonPresentation& p) {
  const auto K = polygon_complex(p);
  const int L = p.size(), k = p.k(), m = p.m();
  RingPresentation rp;
  rp.k = k;
  for (int i = 1; i <= L; ++i) {
    // v ... v u over the run of blocks i..i+k-2
    const auto labels = run_labels(p, i, k - 1);
    RingGenerator g{"X" + std::to_string(i), -1, 2 * p.phi(i), vset_from_labels(labels),
                    uv_monomial(K, labels, {labels.back()})};
    rp.generators.push_back(std::move(g));
  }
  for (int i = 1; i <= L; ++i) {
    const auto labels = run_labels(p, i, k);
    rp.generators.push_back({"Y" + std::to_string(i), -2, 2 * p.psi(i), vset_from_labels(labels),
                             uv_monomial(K, labels, {labels.front(), labels.back()})});
  }
  const VSet sigma = K.maximal_faces().front();
  rp.generators.push_back({"Z", -3, 2 * m, full_set(m), top_representative(K, sigma)});
  for (const auto& g : rp.generators) {
    if (!koszul_differential(K, g.representative).is_zero())
      fail_consistency("generator " + g.name + " is not a cocycle");
    if (reduce_mod_coboundaries(K, g.representative).is_zero())
      fail_consistency("generator " + g.name + " represents the zero class");
  }
  return rp;
}

namespace {

std::string expected_product(int k, int L, char left_kind, int i, char right_kind, int j) {
  auto wrap = [L](int x) { return ((x - 1) % L + L) % L + 1; };
  if (left_kind == 'X' && right_kind == 'Y') return wrap(i + k - 1) == j ? "Z" : "0";
  if (left_kind == 'Y' && right_kind == 'X') return wrap(j + k - 1) == i ? "Z" : "0";
  if (left_kind == 'X' && right_kind == 'X' && k == 2) {
    if (wrap(i + 1) == j) return "Y" + std::to_string(i);
    if (wrap(j + 1) == i) return "Y" + std::to_string(j);
  }
  return "0";
}

}  // namespace

RingPresentation product_table(const PolygonPresentation& p) {
  RingPresentation rp = generator_representatives(p);
  const auto K = polygon_complex(p);
  const int L = p.size(), k = p.k();

  // Additive structure: each generator multidegree's group is spanned by its generators.
  std::map<std::pair<VSet, int>, std::vector<size_t>> by_piece;
  for (size_t g = 0; g < rp.generators.size(); ++g)
    by_piece[{rp.generators[g].multidegree, -rp.generators[g].neg_q}].push_back(g);
  std::map<size_t, ClassCoordinates> coords;
  rp.generators_form_basis = true;
  for (const auto& [piece, members] : by_piece) {
    const auto grp = koszul_cohomology_group(K, piece.first, piece.second);
    if (grp.rank != static_cast<int>(members.size()) || !grp.torsion.empty()) rp.generators_form_basis = false;
    IntMatrix G(grp.rank, static_cast<int>(members.size()));
    for (size_t c = 0; c < members.size(); ++c) {
      coords[members[c]] = reduce_mod_coboundaries(K, rp.generators[members[c]].representative);
      for (int r = 0; r < grp.rank && r < static_cast<int>(coords[members[c]].free.size()); ++r)
        G.at(r, static_cast<int>(c)) = coords[members[c]].free[r];
    }
    if (G.rows() != G.cols() || abs(int_det(G)) != 1) rp.generators_form_basis = false;
  }

  // Betti total and absence of torsion in every multidegree.
  const BettiTable betti = koszul_betti(K);
  rp.additive_rank = 0;
  for (const auto& [key, rank] : betti.entries()) rp.additive_rank += static_cast<int>(rank);
  rp.torsion_free = true;
  for (VSet tau = 1; tau <= full_set(K.m()) && rp.torsion_free; ++tau) {
    if (K.is_face(tau)) continue;
    for (int q = 1; q <= popcount(tau); ++q)
      if (!koszul_cohomology_group(K, tau, q).torsion.empty()) {
        rp.torsion_free = false;
        break;
      }
  }

  auto express = [&](const KoszulElement& prod, std::string* detail) {
    std::vector<std::pair<std::string, long long>> value;
    if (prod.is_zero()) return value;
    VSet tau = 0;
    int q = 0;
    if (!prod.homogeneous(&tau, &q)) {
      *detail = "product is inhomogeneous";
      return value;
    }
    const auto cls = reduce_mod_coboundaries(K, prod);
    if (cls.is_zero()) return value;
    auto it = by_piece.find({tau, q});
    if (it == by_piece.end()) {
      *detail = "nonzero class in multidegree without generators";
      return value;
    }
    // Pieces carry one generator each for the polygon family; solve c = lambda * g.
    if (it->second.size() != 1 || !cls.torsion.empty()) {
      *detail = "class lies in a piece with several generators";
      return value;
    }
    const auto& g = coords[it->second.front()];
    mpz_class lambda = 0;
    bool ok = g.free.size() == cls.free.size();
    for (size_t r = 0; r < g.free.size() && ok; ++r) {
      if (g.free[r] == 0) {
        ok = cls.free[r] == 0;
        continue;
      }
      if (!mpz_divisible_p(cls.free[r].get_mpz_t(), g.free[r].get_mpz_t())) ok = false;
      else {
        mpz_class l = cls.free[r] / g.free[r];
        if (lambda != 0 && l != lambda) ok = false;
        lambda = l;
      }
    }
    if (!ok) {
      *detail = "class is not an integer multiple of the generator";
      return value;
    }
    value.emplace_back(rp.generators[it->second.front()].name, lambda.get_si());
    return value;
  };

  auto check = [&](size_t a, size_t b, const std::string& expected) {
    ProductEntry e;
    e.left = rp.generators[a].name;
    e.right = rp.generators[b].name;
    e.expected = expected;
    const auto prod = koszul_product(K, rp.generators[a].representative, rp.generators[b].representative);
    e.value = express(prod, &e.detail);
    if (!e.detail.empty()) e.conforms = false;
    else if (expected == "0") e.conforms = e.value.empty();
    else e.conforms = e.value.size() == 1 && e.value[0].first == expected &&
                      (e.value[0].second == 1 || e.value[0].second == -1);
    if (!e.conforms) {
      VSet tau = 0;
      int q = 0;
      prod.homogeneous(&tau, &q);
      std::ostringstream os;
      os << e.left << "*" << e.right << " expected " << (expected == "0" ? "0" : "+-" + expected) << ", got ";
      if (e.value.empty()) os << "0";
      else os << e.value[0].second << "*" << e.value[0].first;
      if (!e.detail.empty()) os << " (" << e.detail << ")";
      os << " in multidegree {";
      bool first = true;
      for (int v : labels_of(tau)) {
        os << (first ? "" : ",") << v;
        first = false;
      }
      os << "}";
      rp.mismatches.push_back(os.str());
    }
    rp.products.push_back(std::move(e));
    return rp.products.size() - 1;
  };

  const size_t X0 = 0, Y0 = static_cast<size_t>(L);
  for (int i = 1; i <= L; ++i)
    for (int j = 1; j <= L; ++j) check(X0 + i - 1, X0 + j - 1, expected_product(k, L, 'X', i, 'X', j));
  for (int i = 1; i <= L; ++i)
    for (int j = 1; j <= L; ++j) check(X0 + i - 1, Y0 + j - 1, expected_product(k, L, 'X', i, 'Y', j));
  for (int i = 1; i <= L; ++i)
    for (int j = 1; j <= L; ++j) check(Y0 + j - 1, X0 + i - 1, expected_product(k, L, 'Y', j, 'X', i));
  for (int i = 1; i <= L; ++i)
    for (int j = 1; j <= L; ++j) check(Y0 + i - 1, Y0 + j - 1, "0");

  if (k == 2) {
    // Graded commutativity X_{i+1} X_i = -X_i X_{i+1}, and X1 X2 X3 = +-Z.
    for (int i = 1; i <= L; ++i) {
      const int j = i % L + 1;
      const auto fwd = koszul_product(K, rp.generators[i - 1].representative, rp.generators[j - 1].representative);
      const auto bwd = koszul_product(K, rp.generators[j - 1].representative, rp.generators[i - 1].representative);
      if (!(bwd == fwd.scaled(-1)))
        rp.mismatches.push_back("X" + std::to_string(j) + "*X" + std::to_string(i) + " != -X" + std::to_string(i) +
                                "*X" + std::to_string(j));
    }
    ProductEntry e;
    e.left = "X1*X2";
    e.right = "X3";
    e.expected = "Z";
    const auto triple = koszul_product(
        K, koszul_product(K, rp.generators[0].representative, rp.generators[1].representative),
        rp.generators[2].representative);
    e.value = express(triple, &e.detail);
    e.conforms = e.detail.empty() && e.value.size() == 1 && e.value[0].first == "Z" &&
                 (e.value[0].second == 1 || e.value[0].second == -1);
    if (!e.conforms) rp.mismatches.push_back("X1*X2*X3 is not +-Z");
    rp.products.push_back(std::move(e));
  }

  if (rp.additive_rank != 4 * k) rp.mismatches.push_back("additive rank " + std::to_string(rp.additive_rank) +
                                                         " differs from " + std::to_string(4 * k));
  if (!rp.torsion_free) rp.mismatches.push_back("additive torsion found");
  if (!rp.generators_form_basis) rp.mismatches.push_back("generators do not form a basis of their pieces");
  rp.conforms = rp.mismatches.empty();
  return rp;
}

}  // namespace torcomb
