#include "hft/zmod.hpp"

#include <algorithm>
#include <sstream>

namespace hft {

IMat IMat::identity(size_t n) {
  IMat m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IMat IMat::operator*(const IMat& o) const {
  if (cols != o.rows) fail_internal("matrix shape mismatch in product");
  IMat r(rows, o.cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k) {
      const Int& v = (*this)(i, k);
      if (v == 0) continue;
      for (size_t j = 0; j < o.cols; ++j) r(i, j) += v * o(k, j);
    }
  return r;
}

bool IMat::is_zero() const {
  for (const auto& v : a)
    if (v != 0) return false;
  return true;
}

namespace {

// Elementary operations keeping U*A*V = D, with tracked inverses.
struct Work {
  IMat A, U, V, Ui, Vi;

  explicit Work(const IMat& m)
      : A(m),
        U(IMat::identity(m.rows)),
        V(IMat::identity(m.cols)),
        Ui(IMat::identity(m.rows)),
        Vi(IMat::identity(m.cols)) {}

  void row_sub(size_t i, size_t t, const Int& q) {  // row_i -= q * row_t
    for (size_t j = 0; j < A.cols; ++j) A(i, j) -= q * A(t, j);
    for (size_t j = 0; j < U.cols; ++j) U(i, j) -= q * U(t, j);
    for (size_t r = 0; r < Ui.rows; ++r) Ui(r, t) += q * Ui(r, i);
  }
  void col_sub(size_t j, size_t t, const Int& q) {  // col_j -= q * col_t
    for (size_t i = 0; i < A.rows; ++i) A(i, j) -= q * A(i, t);
    for (size_t i = 0; i < V.rows; ++i) V(i, j) -= q * V(i, t);
    for (size_t c = 0; c < Vi.cols; ++c) Vi(t, c) += q * Vi(j, c);
  }
  void row_swap(size_t i, size_t t) {
    if (i == t) return;
    for (size_t j = 0; j < A.cols; ++j) std::swap(A(i, j), A(t, j));
    for (size_t j = 0; j < U.cols; ++j) std::swap(U(i, j), U(t, j));
    for (size_t r = 0; r < Ui.rows; ++r) std::swap(Ui(r, i), Ui(r, t));
  }
  void col_swap(size_t j, size_t t) {
    if (j == t) return;
    for (size_t i = 0; i < A.rows; ++i) std::swap(A(i, j), A(i, t));
    for (size_t i = 0; i < V.rows; ++i) std::swap(V(i, j), V(i, t));
    for (size_t c = 0; c < Vi.cols; ++c) std::swap(Vi(j, c), Vi(t, c));
  }
  void row_neg(size_t i) {
    for (size_t j = 0; j < A.cols; ++j) A(i, j) = -A(i, j);
    for (size_t j = 0; j < U.cols; ++j) U(i, j) = -U(i, j);
    for (size_t r = 0; r < Ui.rows; ++r) Ui(r, i) = -Ui(r, i);
  }
};

// Quotient rounded to nearest, so the remainder satisfies |r| <= |b|/2.
// Keeps the Euclidean chains short and the transform entries small.
Int ndiv(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  // floor remainder has the sign of b; stepping q by one flips it past zero
  if (abs(r) * 2 > abs(b)) q += 1;
  return q;
}

}  // namespace

SmithNF smith_normal_form(const IMat& A) {
  Work w(A);
  size_t n = std::min(A.rows, A.cols);
  for (size_t t = 0; t < n; ++t) {
    // pick pivot of least absolute value in the remaining block
    size_t pi = t, pj = t;
    Int best = 0;
    for (size_t i = t; i < A.rows; ++i)
      for (size_t j = t; j < A.cols; ++j) {
        const Int& v = w.A(i, j);
        if (v == 0) continue;
        Int av = abs(v);
        if (best == 0 || av < best) {
          best = av;
          pi = i;
          pj = j;
        }
      }
    if (best == 0) break;
    w.row_swap(pi, t);
    w.col_swap(pj, t);
    for (bool dirty = true; dirty;) {
      dirty = false;
      for (size_t i = t + 1; i < A.rows; ++i) {
        if (w.A(i, t) == 0) continue;
        Int q = ndiv(w.A(i, t), w.A(t, t));
        w.row_sub(i, t, q);
        if (w.A(i, t) != 0) {  // remainder becomes the smaller pivot
          w.row_swap(i, t);
          dirty = true;
        }
      }
      for (size_t j = t + 1; j < A.cols; ++j) {
        if (w.A(t, j) == 0) continue;
        Int q = ndiv(w.A(t, j), w.A(t, t));
        w.col_sub(j, t, q);
        if (w.A(t, j) != 0) {
          w.col_swap(j, t);
          dirty = true;
        }
      }
      if (!dirty) {
        // enforce divisibility of the remaining block by the pivot
        for (size_t i = t + 1; i < A.rows && !dirty; ++i)
          for (size_t j = t + 1; j < A.cols && !dirty; ++j)
            if (w.A(i, j) % w.A(t, t) != 0) {
              w.row_sub(t, i, Int(-1));  // row_t += row_i
              dirty = true;
            }
      }
    }
    if (w.A(t, t) < 0) w.row_neg(t);
  }
  return {w.U, w.A, w.V, w.Ui, w.Vi};
}

std::vector<Int> invariant_factors(const IMat& A) {
  SmithNF s = smith_normal_form(A);
  std::vector<Int> out;
  for (size_t i = 0; i < std::min(A.rows, A.cols); ++i)
    if (s.D(i, i) != 0) out.push_back(s.D(i, i));
  return out;
}

std::string FgAbelianGroup::str() const {
  std::ostringstream os;
  bool first = true;
  const char* ring = mode == Coeff::Z ? "Z" : "Z/2";
  if (free_rank > 0) {
    os << ring;
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

FgAbelianGroup group_of_presentation(size_t gens, const IMat& rel, Coeff mode) {
  IMat A(0, gens);
  return homology_of_pair(A, rel, mode);
}

// ---- GF(2) helpers --------------------------------------------------------

namespace {

IMat mod2(const IMat& m) {
  IMat r = m;
  for (auto& v : r.a) {
    v %= 2;
    if (v < 0) v += 2;
  }
  return r;
}

// Column echelon form over F2; returns pivot row per column (-1 for zero col).
std::vector<long> gf2_echelon(IMat& m) {
  std::vector<long> pivots(m.cols, -1);
  size_t col = 0;
  for (size_t row = 0; row < m.rows && col < m.cols; ++row) {
    size_t j = col;
    while (j < m.cols && m(row, j) == 0) ++j;
    if (j == m.cols) continue;
    for (size_t i = 0; i < m.rows; ++i) std::swap(m(i, j), m(i, col));
    for (size_t jj = 0; jj < m.cols; ++jj) {
      if (jj == col || m(row, jj) == 0) continue;
      for (size_t i = 0; i < m.rows; ++i)
        m(i, jj) = (m(i, jj) + m(i, col)) % 2;
    }
    pivots[col] = (long)row;
    ++col;
  }
  return pivots;
}

size_t gf2_rank(const IMat& m0) {
  IMat m = mod2(m0);
  auto p = gf2_echelon(m);
  size_t r = 0;
  for (long v : p)
    if (v >= 0) ++r;
  return r;
}

// Kernel basis of A over F2 as columns of an n x k matrix.
IMat gf2_kernel(const IMat& A0) {
  IMat A = mod2(A0);
  size_t n = A.cols;
  // track column operations on an identity below
  IMat M(A.rows + n, n);
  for (size_t i = 0; i < A.rows; ++i)
    for (size_t j = 0; j < n; ++j) M(i, j) = A(i, j);
  for (size_t j = 0; j < n; ++j) M(A.rows + j, j) = 1;
  // echelonize only by the top block
  size_t col = 0;
  for (size_t row = 0; row < A.rows && col < n; ++row) {
    size_t j = col;
    while (j < n && M(row, j) == 0) ++j;
    if (j == n) continue;
    for (size_t i = 0; i < M.rows; ++i) std::swap(M(i, j), M(i, col));
    for (size_t jj = 0; jj < n; ++jj) {
      if (jj == col || M(row, jj) == 0) continue;
      for (size_t i = 0; i < M.rows; ++i) M(i, jj) = (M(i, jj) + M(i, col)) % 2;
    }
    ++col;
  }
  // columns whose top block is zero span the kernel
  std::vector<size_t> kercols;
  for (size_t j = 0; j < n; ++j) {
    bool zero = true;
    for (size_t i = 0; i < A.rows; ++i)
      if (M(i, j) != 0) zero = false;
    if (zero) kercols.push_back(j);
  }
  IMat K(n, kercols.size());
  for (size_t c = 0; c < kercols.size(); ++c)
    for (size_t i = 0; i < n; ++i) K(i, c) = M(A.rows + i, kercols[c]);
  return K;
}

// Solve K x = b over F2 (K must have full column rank); fails if unsolvable.
std::vector<Int> gf2_solve(const IMat& K, const std::vector<Int>& b) {
  IMat M(K.rows, K.cols + 1);
  for (size_t i = 0; i < K.rows; ++i) {
    for (size_t j = 0; j < K.cols; ++j) M(i, j) = K(i, j);
    M(i, K.cols) = ((b[i] % 2) + 2) % 2;
  }
  // Gaussian elimination (row reduce)
  std::vector<long> pivot_col(K.rows, -1);
  size_t row = 0;
  for (size_t colj = 0; colj < K.cols && row < K.rows; ++colj) {
    size_t i = row;
    while (i < K.rows && M(i, colj) == 0) ++i;
    if (i == K.rows) continue;
    for (size_t j = 0; j <= K.cols; ++j) std::swap(M(i, j), M(row, j));
    for (size_t ii = 0; ii < K.rows; ++ii) {
      if (ii == row || M(ii, colj) == 0) continue;
      for (size_t j = 0; j <= K.cols; ++j) M(ii, j) = (M(ii, j) + M(row, j)) % 2;
    }
    pivot_col[row] = (long)colj;
    ++row;
  }
  std::vector<Int> x(K.cols, 0);
  for (size_t r = 0; r < row; ++r)
    if (pivot_col[r] >= 0) x[pivot_col[r]] = M(r, K.cols);
  for (size_t r = row; r < K.rows; ++r)
    if (M(r, K.cols) != 0) fail_internal("gf2_solve: inconsistent system");
  // verify (also catches rank-deficient K misuse)
  for (size_t i = 0; i < K.rows; ++i) {
    Int acc = 0;
    for (size_t j = 0; j < K.cols; ++j) acc += K(i, j) * x[j];
    if (((acc - b[i]) % 2) != 0) fail_internal("gf2_solve: bad solution");
  }
  return x;
}

}  // namespace

// ---- homology data --------------------------------------------------------

HomologyData::HomologyData(const IMat& A, const IMat& B, Coeff mode)
    : mode_(mode), n_(A.cols) {
  if (B.rows != n_) fail_input("homology pair shape mismatch");
  if (A.rows > 0) {
    IMat AB = A * B;
    bool zero = true;
    for (const Int& v : AB.a)
      if (mode == Coeff::Z2 ? (v % 2 != 0) : (v != 0)) zero = false;
    if (!zero) fail_input("homology pair does not compose to zero");
  }
  group_.mode = mode;
  if (mode == Coeff::Z2) {
    K2_ = gf2_kernel(A);
    size_t k = K2_.cols;
    // express im B in kernel coordinates
    IMat X(k, B.cols);
    for (size_t j = 0; j < B.cols; ++j) {
      std::vector<Int> col(n_);
      for (size_t i = 0; i < n_; ++i) col[i] = B(i, j);
      auto x = gf2_solve(K2_, col);
      for (size_t i = 0; i < k; ++i) X(i, j) = x[i];
    }
    auto pivots = gf2_echelon(X);
    X2_ = X;
    pivot_row_.assign(pivots.begin(), pivots.end());
    row_is_pivot_.assign(k, false);
    for (long p : pivot_row_)
      if (p >= 0) row_is_pivot_[p] = true;
    size_t rk = 0;
    for (long p : pivot_row_)
      if (p >= 0) ++rk;
    group_.free_rank = (unsigned)(k - rk);
    return;
  }
  snfA_ = smith_normal_form(A);
  keridx_.clear();
  for (size_t i = 0; i < n_; ++i) {
    bool zero = (i >= A.rows) || (snfA_.D(i, i) == 0);
    if (zero) keridx_.push_back(i);
  }
  size_t k = keridx_.size();
  // X = (V^-1 B) restricted to kernel rows; other rows must vanish
  IMat Y = snfA_.Vinv * B;
  for (size_t i = 0; i < n_; ++i) {
    bool isker = std::find(keridx_.begin(), keridx_.end(), i) != keridx_.end();
    if (isker) continue;
    for (size_t j = 0; j < B.cols; ++j)
      if (Y(i, j) != 0) fail_internal("im B leaves ker A");
  }
  IMat X(k, B.cols);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < B.cols; ++j) X(i, j) = Y(keridx_[i], j);
  snfX_ = smith_normal_form(X);
  orders_all_.assign(k, Int(0));
  for (size_t i = 0; i < std::min(k, B.cols); ++i) orders_all_[i] = snfX_.D(i, i);
  for (const auto& d : orders_all_) {
    if (d == 0) ++group_.free_rank;
    else if (d >= 2) group_.torsion.push_back(d);
  }
  std::sort(group_.torsion.begin(), group_.torsion.end());
}

std::vector<Int> HomologyData::coords(const std::vector<Int>& c) const {
  if (c.size() != n_) fail_input("cycle has wrong length");
  if (mode_ == Coeff::Z2) {
    auto z = gf2_solve(K2_, c);  // fails if c not a cycle
    // reduce against echelonized relations
    for (size_t j = 0; j < X2_.cols; ++j) {
      long p = pivot_row_[j];
      if (p < 0) continue;
      if (z[p] != 0)
        for (size_t i = 0; i < z.size(); ++i) z[i] = (z[i] + X2_(i, j)) % 2;
    }
    std::vector<Int> out;
    for (size_t i = 0; i < z.size(); ++i)
      if (!row_is_pivot_[i]) out.push_back(z[i]);
    return out;
  }
  // z = Vinv * c restricted to kernel coordinates
  std::vector<Int> full(n_, 0);
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = 0; j < n_; ++j) full[i] += snfA_.Vinv(i, j) * c[j];
  for (size_t i = 0; i < n_; ++i) {
    bool isker = std::find(keridx_.begin(), keridx_.end(), i) != keridx_.end();
    if (!isker && full[i] != 0) fail_input("vector is not a cycle");
  }
  size_t k = keridx_.size();
  std::vector<Int> y(k, 0);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) y[i] += snfX_.U(i, j) * full[keridx_[j]];
  std::vector<Int> out;
  for (size_t i = 0; i < k; ++i) {
    const Int& d = orders_all_[i];
    if (d == 1) continue;  // killed generator
    if (d == 0) out.push_back(y[i]);
    else {
      Int r = y[i] % d;
      if (r < 0) r += d;
      out.push_back(r);
    }
  }
  // canonical order: torsion generators first, then free ones
  std::vector<Int> tors, freec;
  size_t idx = 0;
  for (size_t i = 0; i < k; ++i) {
    const Int& d = orders_all_[i];
    if (d == 1) continue;
    if (d == 0) freec.push_back(out[idx]);
    else tors.push_back(out[idx]);
    ++idx;
  }
  tors.insert(tors.end(), freec.begin(), freec.end());
  return tors;
}

bool HomologyData::is_zero_class(const std::vector<Int>& c) const {
  for (const auto& v : coords(c))
    if (v != 0) return false;
  return true;
}

std::vector<Int> HomologyData::generator_orders() const {
  std::vector<Int> out;
  for (const auto& d : group_.torsion) out.push_back(d);
  for (size_t i = 0; i < group_.free_rank; ++i) out.push_back(0);
  return out;
}

std::vector<std::vector<Int>> HomologyData::generator_reps() const {
  std::vector<std::vector<Int>> tors, freeg;
  if (mode_ == Coeff::Z2) {
    for (size_t i = 0; i < row_is_pivot_.size(); ++i) {
      if (row_is_pivot_[i]) continue;
      std::vector<Int> rep(n_, 0);
      for (size_t r = 0; r < n_; ++r) rep[r] = K2_(r, i);
      freeg.push_back(rep);
    }
    return freeg;
  }
  size_t k = keridx_.size();
  for (size_t i = 0; i < k; ++i) {
    const Int& d = orders_all_[i];
    if (d == 1) continue;
    // rep = K * (Uinv_X e_i), K = columns keridx_ of V
    std::vector<Int> zk(k, 0);
    for (size_t j = 0; j < k; ++j) zk[j] = snfX_.Uinv(j, i);
    std::vector<Int> rep(n_, 0);
    for (size_t r = 0; r < n_; ++r)
      for (size_t j = 0; j < k; ++j) rep[r] += snfA_.V(r, keridx_[j]) * zk[j];
    if (d == 0) freeg.push_back(rep);
    else tors.push_back(rep);
  }
  tors.insert(tors.end(), freeg.begin(), freeg.end());
  return tors;
}

FgAbelianGroup homology_of_pair(const IMat& A, const IMat& B, Coeff mode) {
  return HomologyData(A, B, mode).group();
}

GroupMorphism induced_quotient_map(const IMat& f, const HomologyData& src,
                                   const HomologyData& dst) {
  if (f.cols != src.chain_dim() || f.rows != dst.chain_dim())
    fail_input("chain map shape mismatch");
  GroupMorphism m;
  m.source = src.group();
  m.target = dst.group();
  auto reps = src.generator_reps();
  auto src_orders = src.generator_orders();
  auto dst_orders = dst.generator_orders();
  m.matrix = IMat(dst_orders.size(), reps.size());
  for (size_t g = 0; g < reps.size(); ++g) {
    std::vector<Int> img(dst.chain_dim(), 0);
    for (size_t i = 0; i < f.rows; ++i)
      for (size_t j = 0; j < f.cols; ++j) img[i] += f(i, j) * reps[g][j];
    auto y = dst.coords(img);
    for (size_t i = 0; i < y.size(); ++i) m.matrix(i, g) = y[i];
    // order compatibility: d * image must vanish in the target
    const Int& d = src_orders[g];
    if (d != 0) {
      for (size_t i = 0; i < y.size(); ++i) {
        const Int& dt = dst_orders[i];
        Int v = d * y[i];
        bool ok = (dt == 0) ? (v == 0) : (v % dt == 0);
        if (!ok) fail_internal("induced map violates generator orders");
      }
    }
  }
  return m;
}

GroupMorphism compose(const GroupMorphism& g, const GroupMorphism& f) {
  if (!(g.source == f.target)) fail_input("morphism composition mismatch");
  GroupMorphism out;
  out.source = f.source;
  out.target = g.target;
  out.matrix = g.matrix * f.matrix;
  // normalize torsion coordinates into [0, d)
  std::vector<Int> orders;
  for (const auto& d : g.target.torsion) orders.push_back(d);
  for (size_t i = 0; i < g.target.free_rank; ++i) orders.push_back(0);
  for (size_t i = 0; i < out.matrix.rows; ++i)
    for (size_t j = 0; j < out.matrix.cols; ++j)
      if (orders[i] != 0) {
        Int r = out.matrix(i, j) % orders[i];
        if (r < 0) r += orders[i];
        out.matrix(i, j) = r;
      }
  if (f.source.mode == Coeff::Z2)
    for (auto& v : out.matrix.a) v = ((v % 2) + 2) % 2;
  return out;
}

}  // namespace hft
