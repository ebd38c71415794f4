#pragma once

// Exact integer linear algebra over arbitrary-precision integers.
//
// Lattices are represented by matrices whose ROWS are generators. Every
// basis returned from this module is in row Hermite normal form: echelon,
// positive pivots, entries above each pivot reduced into [0, pivot).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace gammadyn {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool square() const { return rows_ == cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Int> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Int> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  IntVector row_vector(std::size_t r) const;
  IntVector col_vector(std::size_t c) const;
  std::vector<IntVector> row_vectors() const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntVector operator*(std::span<const Int> v) const;
  bool operator==(const IntMatrix& rhs) const = default;

  bool is_zero() const;
  bool is_identity() const;
  IntMatrix mod(const Int& m) const;
  IntMatrix pow(const Int& e) const;  ///< e >= 0

  /// Vertical concatenation (same column count).
  static IntMatrix vstack(std::span<const IntMatrix> blocks);
  /// Horizontal concatenation (same row count).
  static IntMatrix hstack(std::span<const IntMatrix> blocks);
  static IntMatrix block_diagonal(std::span<const IntMatrix> blocks);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

/// Fraction-free (Bareiss) determinant.
Int determinant(const IntMatrix& m);

/// Exact inverse of a unimodular matrix; throws DomainError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Inverse modulo `modulus`; throws DomainError when det is not a unit.
IntMatrix inverse_mod(const IntMatrix& m, const Int& modulus);

struct SNFDecomposition {
  IntMatrix U, D, V;  ///< U * M * V == D
  std::vector<Int> diagonal() const;
};

struct AbelianGroupStructure {
  std::vector<Int> torsion;  ///< elementary divisors > 1, each dividing the next
  std::size_t free_rank = 0;

  bool finite() const { return free_rank == 0; }
  std::optional<Int> cardinality() const;
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  bool operator==(const AbelianGroupStructure&) const = default;
};

SNFDecomposition smith_normal_form(const IntMatrix& m);

/// Structure of Z^rows / (column lattice of m).
AbelianGroupStructure cokernel_structure(const IntMatrix& m);

/// Saturated basis of {v in Z^cols : m v = 0}, Hermite reduced.
std::vector<IntVector> integer_kernel(const IntMatrix& m);

/// Basis of (Q-span of basis) intersected with Z^n, Hermite reduced.
std::vector<IntVector> saturate_lattice(const std::vector<IntVector>& basis, std::size_t ambient_rank);

/// Row Hermite normal form of the lattice spanned by the rows; zero rows dropped.
IntMatrix hermite_basis(const IntMatrix& generators);
std::vector<IntVector> hermite_basis(const std::vector<IntVector>& generators, std::size_t ambient_rank);

/// Coordinates of v in an echelon basis (as produced by hermite_basis), or
/// nullopt when v is not in the lattice.
std::optional<IntVector> lattice_coordinates(const IntMatrix& echelon_basis, std::span<const Int> v);
bool lattice_contains(const IntMatrix& echelon_basis, std::span<const Int> v);

/// Structure of outer / inner, where the rows of `inner` generate a sublattice
/// of the lattice with echelon basis `outer`. Throws DomainError if not a sublattice.
AbelianGroupStructure quotient_structure(const IntMatrix& outer, const IntMatrix& inner);

std::size_t rank(const IntMatrix& m);

}  // namespace gammadyn
