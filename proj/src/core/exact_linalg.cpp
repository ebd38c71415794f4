#include "exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace gammadyn {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DomainError("row length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

IntVector IntMatrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return {s.begin(), s.end()};
}

IntVector IntMatrix::col_vector(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vector(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DomainError("matrix product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DomainError("matrix sum shape mismatch");
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DomainError("matrix difference shape mismatch");
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

IntVector IntMatrix::operator*(std::span<const Int> v) const {
  if (v.size() != cols_) throw DomainError("matrix-vector shape mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

IntMatrix IntMatrix::mod(const Int& m) const {
  IntMatrix out = *this;
  for (auto& x : out.data_) x = mod_floor(x, m);
  return out;
}

IntMatrix IntMatrix::pow(const Int& e) const {
  if (!square()) throw DomainError("power of a non-square matrix");
  if (e < 0) throw DomainError("negative matrix power");
  IntMatrix result = identity(rows_), base = *this;
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

IntMatrix IntMatrix::vstack(std::span<const IntMatrix> blocks) {
  if (blocks.empty()) return {};
  std::size_t cols = blocks.front().cols(), rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw DomainError("vstack column mismatch");
    rows += b.rows();
  }
  IntMatrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) out(r0 + i, j) = b(i, j);
    r0 += b.rows();
  }
  return out;
}

IntMatrix IntMatrix::hstack(std::span<const IntMatrix> blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = blocks.front().rows(), cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw DomainError("hstack row mismatch");
    cols += b.cols();
  }
  IntMatrix out(rows, cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, c0 + j) = b(i, j);
    c0 += b.cols();
  }
  return out;
}

IntMatrix IntMatrix::block_diagonal(std::span<const IntMatrix> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  IntMatrix out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

Int determinant(const IntMatrix& m) {
  if (!m.square()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// Gauss-Jordan over Q; nullopt when singular.
std::optional<std::vector<Rat>> rational_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<Rat> a(n * 2 * n);
  auto at = [&](std::size_t i, std::size_t j) -> Rat& { return a[i * 2 * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = m(i, j);
    at(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && at(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(at(p, j), at(c, j));
    Rat inv = 1 / at(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) at(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || at(i, c) == 0) continue;
      Rat f = at(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j) at(i, j) -= f * at(c, j);
    }
  }
  std::vector<Rat> inv(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i * n + j] = at(i, n + j);
  return inv;
}

}  // namespace

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (!m.square()) throw DomainError("inverse of a non-square matrix");
  const Int det = determinant(m);
  if (det != 1 && det != -1) throw DomainError("matrix is not unimodular: det = " + det.get_str());
  auto inv = rational_inverse(m);
  const std::size_t n = m.rows();
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& q = (*inv)[i * n + j];
      if (q.get_den() != 1) throw InvariantError("unimodular inverse is not integral");
      out(i, j) = q.get_num();
    }
  return out;
}

IntMatrix inverse_mod(const IntMatrix& m, const Int& modulus) {
  if (!m.square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  if (modulus == 1) return IntMatrix(n, n);
  const Int det = determinant(m);
  Int det_inv;
  if (det == 0 || mpz_invert(det_inv.get_mpz_t(), det.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw DomainError("matrix is not invertible modulo " + modulus.get_str());
  auto inv = rational_inverse(m);
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat adj = (*inv)[i * n + j] * det;
      adj.canonicalize();
      if (adj.get_den() != 1) throw InvariantError("adjugate is not integral");
      out(i, j) = mod_floor(adj.get_num() * det_inv, modulus);
    }
  return out;
}

std::vector<Int> SNFDecomposition::diagonal() const {
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

std::optional<Int> AbelianGroupStructure::cardinality() const {
  if (free_rank != 0) return std::nullopt;
  Int c = 1;
  for (const auto& t : torsion) c *= t;
  return c;
}

std::string AbelianGroupStructure::to_string() const {
  std::string s;
  for (const auto& t : torsion) s += (s.empty() ? "" : " x ") + ("Z/" + t.get_str());
  if (free_rank > 0) s += (s.empty() ? "" : " x ") + ("Z^" + std::to_string(free_rank));
  return s.empty() ? "0" : s;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// rows (a, b) <- (s*a + t*b, u*a + v*b)
void combine_rows(IntMatrix& m, std::size_t a, std::size_t b, const Int& s, const Int& t, const Int& u,
                  const Int& v) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Int x = m(a, j), y = m(b, j);
    m(a, j) = s * x + t * y;
    m(b, j) = u * x + v * y;
  }
}

void combine_cols(IntMatrix& m, std::size_t a, std::size_t b, const Int& s, const Int& t, const Int& u,
                  const Int& v) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int x = m(i, a), y = m(i, b);
    m(i, a) = s * x + t * y;
    m(i, b) = u * x + v * y;
  }
}

// Brings the first `limit_cols` columns of m to row echelon form by unimodular
// row operations (applied to whole rows), with positive pivots and reduced
// entries above them. Returns the number of pivot rows.
std::size_t echelonize(IntMatrix& m, std::size_t limit_cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit_cols && r < m.rows(); ++c) {
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      if (m(r, c) == 0) {
        swap_rows(m, r, i);
        continue;
      }
      auto [g, s, t] = extended_gcd(m(r, c), m(i, c));
      Int a = m(r, c) / g, b = m(i, c) / g;
      combine_rows(m, r, i, s, t, -b, a);
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0)
      for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      if (m(i, c) == 0) continue;
      Int q = floor_div(m(i, c), m(r, c));
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= q * m(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace

SNFDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SNFDecomposition snf{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
  IntMatrix &U = snf.U, &D = snf.D, &V = snf.V;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (D(i, j) != 0 && (!best || abs(D(i, j)) < abs(D(best->first, best->second)))) best = {i, j};
    if (!best) break;
    swap_rows(D, t, best->first);
    swap_rows(U, t, best->first);
    swap_cols(D, t, best->second);
    swap_cols(V, t, best->second);

    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        if (D(i, t) % D(t, t) == 0) {
          Int q = D(i, t) / D(t, t);
          combine_rows(D, t, i, 1, 0, -q, 1);
          combine_rows(U, t, i, 1, 0, -q, 1);
          continue;
        }
        auto [g, s, x] = extended_gcd(D(t, t), D(i, t));
        Int a = D(t, t) / g, b = D(i, t) / g;
        combine_rows(D, t, i, s, x, -b, a);
        combine_rows(U, t, i, s, x, -b, a);
        changed = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        if (D(t, j) % D(t, t) == 0) {
          Int q = D(t, j) / D(t, t);
          combine_cols(D, t, j, 1, 0, -q, 1);
          combine_cols(V, t, j, 1, 0, -q, 1);
          continue;
        }
        auto [g, s, x] = extended_gcd(D(t, t), D(t, j));
        Int a = D(t, t) / g, b = D(t, j) / g;
        combine_cols(D, t, j, s, x, -b, a);
        combine_cols(V, t, j, s, x, -b, a);
        changed = true;
      }
      if (changed) continue;

      // Divisibility: pull an offending row into the pivot row and repeat.
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < rows && !bad; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (!bad) break;
      combine_rows(D, t, *bad, 1, 1, 0, 1);
      combine_rows(U, t, *bad, 1, 1, 0, 1);
    }
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < rows; ++j) U(t, j) = -U(t, j);
    }
  }
  return snf;
}

AbelianGroupStructure cokernel_structure(const IntMatrix& m) {
  AbelianGroupStructure s;
  std::size_t nonzero = 0;
  for (const auto& d : smith_normal_form(m).diagonal()) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) s.torsion.push_back(d);
  }
  s.free_rank = m.rows() - nonzero;
  return s;
}

IntMatrix hermite_basis(const IntMatrix& generators) {
  IntMatrix h = generators;
  std::size_t r = echelonize(h, h.cols());
  IntMatrix out(r, h.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = h(i, j);
  return out;
}

std::vector<IntVector> hermite_basis(const std::vector<IntVector>& generators, std::size_t ambient_rank) {
  return hermite_basis(IntMatrix::from_rows(generators, ambient_rank)).row_vectors();
}

std::vector<IntVector> integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols(), r = m.rows();
  // [M^T | I]: unimodular row ops on the left block record kernel vectors on the right.
  IntMatrix aug(n, r + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug(i, j) = m(j, i);
    aug(i, r + i) = 1;
  }
  std::size_t pivots = echelonize(aug, r);
  std::vector<IntVector> kernel;
  for (std::size_t i = pivots; i < n; ++i) {
    IntVector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = aug(i, r + j);
    kernel.push_back(std::move(v));
  }
  return hermite_basis(kernel, n);
}

std::vector<IntVector> saturate_lattice(const std::vector<IntVector>& basis, std::size_t ambient_rank) {
  auto complement = integer_kernel(IntMatrix::from_rows(basis, ambient_rank));
  return integer_kernel(IntMatrix::from_rows(complement, ambient_rank));
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& echelon_basis, std::span<const Int> v) {
  if (v.size() != echelon_basis.cols()) throw DomainError("vector length does not match lattice");
  IntVector w(v.begin(), v.end());
  IntVector coords(echelon_basis.rows());
  std::size_t col = 0;
  for (std::size_t i = 0; i < echelon_basis.rows(); ++i) {
    while (col < echelon_basis.cols() && echelon_basis(i, col) == 0) {
      if (w[col] != 0) return std::nullopt;
      ++col;
    }
    if (col == echelon_basis.cols()) break;
    const Int& pivot = echelon_basis(i, col);
    if (w[col] % pivot != 0) return std::nullopt;
    coords[i] = w[col] / pivot;
    if (coords[i] != 0)
      for (std::size_t j = col; j < w.size(); ++j) w[j] -= coords[i] * echelon_basis(i, j);
  }
  for (const auto& x : w)
    if (x != 0) return std::nullopt;
  return coords;
}

bool lattice_contains(const IntMatrix& echelon_basis, std::span<const Int> v) {
  return lattice_coordinates(echelon_basis, v).has_value();
}

AbelianGroupStructure quotient_structure(const IntMatrix& outer, const IntMatrix& inner) {
  IntMatrix coords(inner.rows(), outer.rows());
  for (std::size_t i = 0; i < inner.rows(); ++i) {
    auto c = lattice_coordinates(outer, inner.row(i));
    if (!c) throw DomainError("quotient_structure: generator outside the outer lattice");
    std::copy(c->begin(), c->end(), coords.row(i).begin());
  }
  return cokernel_structure(coords.transpose());
}

std::size_t rank(const IntMatrix& m) { return hermite_basis(m).rows(); }

}  // namespace gammadyn
