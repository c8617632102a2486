#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gorenlab {

using Scalar = std::uint32_t;
using Vector = std::vector<Scalar>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arithmetic in GF(p).  p is assumed prime and below 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = 2) : p_(p) {
    if (p < 2) throw std::invalid_argument("field characteristic must be >= 2");
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("field characteristic must be prime");
  }

  // Skips the primality check; used for fields already validated.
  static PrimeField trusted(std::uint32_t p) {
    PrimeField f;
    f.p_ = p;
    return f;
  }

  std::uint32_t characteristic() const { return p_; }

  Scalar reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }
  Scalar add(Scalar a, Scalar b) const { return (a + b) % p_; }
  Scalar sub(Scalar a, Scalar b) const { return (a + p_ - b) % p_; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Scalar pow(Scalar a, std::uint64_t e) const {
    Scalar r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Scalar inv(Scalar a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero in GF(p)");
    return pow(a, p_ - 2);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

// Dense row-major matrix over GF(p).
class Matrix {
 public:
  Matrix() : Matrix(0, 0, 2) {}
  Matrix(std::size_t rows, std::size_t cols, std::uint32_t p = 2)
      : rows_(rows), cols_(cols), field_(PrimeField::trusted(p)), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n, std::uint32_t p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix zero(std::size_t rows, std::size_t cols, std::uint32_t p) {
    return Matrix(rows, cols, p);
  }
  static Matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols,
                          std::uint32_t p) {
    Matrix m(rows.size(), cols, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = m.field_.reduce(rows[i][j]);
    }
    return m;
  }
  // Columns of the result are the given vectors.
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows, std::uint32_t p) {
    Matrix m(rows, cols.size(), p);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionMismatch("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t prime() const { return field_.characteristic(); }
  const PrimeField& field() const { return field_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Scalar operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Scalar>& data() const { return data_; }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && prime() == o.prime() && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(rows_, cols_, prime());
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.add(data_[k], o.data_[k]);
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(rows_, cols_, prime());
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.sub(data_[k], o.data_[k]);
    return r;
  }
  Matrix scaled(Scalar c) const {
    Matrix r(rows_, cols_, prime());
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.mul(data_[k], c);
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_)
      throw DimensionMismatch("product of " + shape() + " and " + o.shape());
    if (prime() != o.prime()) throw DimensionMismatch("matrices over different fields");
    Matrix r(rows_, o.cols_, prime());
    const std::uint64_t p = prime();
    std::vector<std::uint64_t> acc(o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < cols_; ++k) {
        const std::uint64_t a = (*this)(i, k);
        if (!a) continue;
        const Scalar* orow = &o.data_[k * o.cols_];
        for (std::size_t j = 0; j < o.cols_; ++j) acc[j] = (acc[j] + a * orow[j]) % p;
      }
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = static_cast<Scalar>(acc[j]);
    }
    return r;
  }
  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw DimensionMismatch("vector length mismatch");
    Vector r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc = (acc + std::uint64_t((*this)(i, k)) * v[k]) % prime();
      r[i] = static_cast<Scalar>(acc);
    }
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_, prime());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
    Matrix r(nr, nc, prime());
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix r(rows_, idx.size(), prime());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
    return r;
  }
  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix r(idx.size(), cols_, prime());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
    return r;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || prime() != o.prime())
      throw DimensionMismatch("shape mismatch " + shape() + " vs " + o.shape());
  }

  std::size_t rows_, cols_;
  PrimeField field_;
  std::vector<Scalar> data_;
};

inline Matrix hstack(const std::vector<Matrix>& parts, std::size_t rows, std::uint32_t p) {
  std::size_t cols = 0;
  for (const auto& m : parts) {
    if (m.rows() != rows) throw DimensionMismatch("hstack row mismatch");
    cols += m.cols();
  }
  Matrix r(rows, cols, p);
  std::size_t c = 0;
  for (const auto& m : parts) {
    r.set_block(0, c, m);
    c += m.cols();
  }
  return r;
}

inline Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols, std::uint32_t p) {
  std::size_t rows = 0;
  for (const auto& m : parts) {
    if (m.cols() != cols) throw DimensionMismatch("vstack column mismatch");
    rows += m.rows();
  }
  Matrix r(rows, cols, p);
  std::size_t k = 0;
  for (const auto& m : parts) {
    r.set_block(k, 0, m);
    k += m.rows();
  }
  return r;
}

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

// Reduced row echelon form; pivots scanned left to right.
inline Rref rref(Matrix m) {
  const PrimeField& F = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    Scalar inv = F.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = F.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  return rref(m).rank();
}

// Basis of the null space, one column per basis vector.  Free variables
// in increasing order; each basis vector has a 1 at its free position.
inline Matrix kernel_matrix(const Matrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return Matrix::identity(n, m.prime());
  Rref R = rref(m);
  std::vector<char> is_pivot(n, 0);
  for (auto c : R.pivots) is_pivot[c] = 1;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix K(n, free.size(), m.prime());
  const PrimeField& F = m.field();
  for (std::size_t k = 0; k < free.size(); ++k) {
    K(free[k], k) = 1;
    for (std::size_t r = 0; r < R.pivots.size(); ++r)
      K(R.pivots[r], k) = F.neg(R.reduced(r, free[k]));
  }
  return K;
}

inline std::vector<Vector> kernel_basis(const Matrix& m) {
  Matrix K = kernel_matrix(m);
  std::vector<Vector> out;
  for (std::size_t j = 0; j < K.cols(); ++j) out.push_back(K.column(j));
  return out;
}

// Columns forming a basis of the column space (pivot columns of m).
inline Matrix column_space(const Matrix& m) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0, m.prime());
  return m.select_columns(rref(m).pivots);
}

// Canonical basis of the column space: the transposed rref of m^T.
inline Matrix canonical_column_space(const Matrix& m) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0, m.prime());
  Rref R = rref(m.transpose());
  Matrix b(m.rows(), R.rank(), m.prime());
  for (std::size_t k = 0; k < R.rank(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) b(i, k) = R.reduced(k, i);
  return b;
}

// Solve a x = b.  Returns false when inconsistent.
inline bool solve(const Matrix& a, const Vector& b, Vector& x) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve: rhs length mismatch");
  Matrix aug(a.rows(), a.cols() + 1, a.prime());
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
  Rref R = rref(aug);
  x.assign(a.cols(), 0);
  for (std::size_t r = 0; r < R.pivots.size(); ++r) {
    if (R.pivots[r] == a.cols()) return false;
    x[R.pivots[r]] = R.reduced(r, a.cols());
  }
  return true;
}

// Solve a X = b column by column; throws when some column is inconsistent.
inline Matrix solve_matrix(const Matrix& a, const Matrix& b) {
  if (b.rows() != a.rows()) throw DimensionMismatch("solve: rhs rows mismatch");
  Matrix aug(a.rows(), a.cols() + b.cols(), a.prime());
  aug.set_block(0, 0, a);
  aug.set_block(0, a.cols(), b);
  Rref R = rref(aug);
  Matrix x(a.cols(), b.cols(), a.prime());
  for (std::size_t r = 0; r < R.pivots.size(); ++r) {
    if (R.pivots[r] >= a.cols()) throw std::domain_error("solve: inconsistent system");
    for (std::size_t j = 0; j < b.cols(); ++j) x(R.pivots[r], j) = R.reduced(r, a.cols() + j);
  }
  return x;
}

// L with L b = I for b of full column rank.
inline Matrix left_inverse(const Matrix& b) {
  const std::size_t n = b.rows(), k = b.cols();
  Matrix aug(n, k + n, b.prime());
  aug.set_block(0, 0, b);
  aug.set_block(0, k, Matrix::identity(n, b.prime()));
  Rref R = rref(aug);
  for (std::size_t r = 0; r < k; ++r)
    if (r >= R.pivots.size() || R.pivots[r] != r)
      throw std::domain_error("left_inverse: matrix lacks full column rank");
  return R.reduced.block(0, k, k, n);
}

inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
  return left_inverse(m);
}

inline bool is_invertible(const Matrix& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

// Columns of the identity completing the columns of u to a basis.
inline std::vector<std::size_t> complement_coordinates(const Matrix& u) {
  const std::size_t n = u.rows();
  Matrix aug(n, u.cols() + n, u.prime());
  aug.set_block(0, 0, u);
  aug.set_block(0, u.cols(), Matrix::identity(n, u.prime()));
  Rref R = rref(aug);
  std::vector<std::size_t> out;
  for (auto c : R.pivots)
    if (c >= u.cols()) out.push_back(c - u.cols());
  return out;
}

inline Matrix power(Matrix m, std::uint64_t e) {
  Matrix r = Matrix::identity(m.rows(), m.prime());
  while (e) {
    if (e & 1) r = r * m;
    m = m * m;
    e >>= 1;
  }
  return r;
}

// Integer lattice membership: is target in the Z-span of gens?
inline bool in_integer_span(const std::vector<std::vector<std::int64_t>>& gens,
                            const std::vector<std::int64_t>& target) {
  const std::size_t n = target.size();
  std::vector<std::vector<std::int64_t>> rows = gens;
  // Hermite-style row reduction column by column.
  std::size_t top = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < n && top < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[best][c])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool clean = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        std::int64_t q = rows[i][c] / rows[top][c];
        for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[top][j];
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) {
        pivot_cols.push_back(c);
        ++top;
        break;
      }
    }
  }
  std::vector<std::int64_t> t = target;
  for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
    std::size_t c = pivot_cols[r];
    for (std::size_t cc = 0; cc < c; ++cc)
      if (t[cc] != 0) return false;
    if (t[c] % rows[r][c] != 0) return false;
    std::int64_t q = t[c] / rows[r][c];
    for (std::size_t j = 0; j < n; ++j) t[j] -= q * rows[r][j];
  }
  return std::all_of(t.begin(), t.end(), [](std::int64_t v) { return v == 0; });
}

}  // namespace gorenlab
