#include <doctest.h>

#include "../support/oracles.hpp"
#include "exact_linalg.hpp"

using namespace gammadyn;

namespace {

AbelianGroupStructure structure(std::vector<long> torsion, std::size_t free_rank) {
  AbelianGroupStructure s;
  for (long t : torsion) s.torsion.push_back(Int(t));
  s.free_rank = free_rank;
  return s;
}

void check_snf(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  CHECK(snf.U * m * snf.V == snf.D);
  CHECK(abs(oracle::det(snf.U)) == 1);
  CHECK(abs(oracle::det(snf.V)) == 1);
  for (std::size_t i = 0; i < snf.D.rows(); ++i)
    for (std::size_t j = 0; j < snf.D.cols(); ++j)
      if (i != j) CHECK(snf.D(i, j) == 0);
  auto d = snf.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (i + 1 < d.size() && d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
    if (d[i] == 0 && i + 1 < d.size()) CHECK(d[i + 1] == 0);
  }
}

}  // namespace

TEST_CASE("smith normal form examples") {
  auto snf = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  CHECK(snf.diagonal() == std::vector<Int>{1, 6});
  check_snf(IntMatrix{{2, 0}, {0, 3}});

  auto zero = smith_normal_form(IntMatrix(2, 2));
  CHECK(zero.D.is_zero());

  CHECK(smith_normal_form(IntMatrix{{1, 1}, {1, 0}}).diagonal() == std::vector<Int>{1, 1});
  check_snf(IntMatrix{{0, 4, 6}, {8, 10, 0}});
  check_snf(IntMatrix(0, 3));
  check_snf(IntMatrix(3, 0));
}

TEST_CASE("smith normal form diagonal equals determinantal divisor ratios") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix m = oracle::random_matrix(rng, r, c, 9);
    if (t % 5 == 0) m(0, 0) = 0;
    check_snf(m);
    auto d = smith_normal_form(m).diagonal();
    auto rows = oracle::rows_of(m);
    for (std::size_t k = 1; k <= d.size(); ++k) {
      mpz_class prev = oracle::determinantal_divisor(rows, k - 1), cur = oracle::determinantal_divisor(rows, k);
      if (cur == 0) CHECK(d[k - 1] == 0);
      else CHECK(d[k - 1] * prev == cur);
    }
  }
}

TEST_CASE("cokernel structure") {
  CHECK(cokernel_structure(IntMatrix{{1, 1}, {1, 0}}).trivial());
  CHECK(cokernel_structure(IntMatrix{{-1, -1}, {1, -1}}) == structure({2}, 0));
  CHECK(cokernel_structure(IntMatrix(2, 0)) == structure({}, 2));
  CHECK(cokernel_structure(IntMatrix{{2, 0}, {0, 0}}) == structure({2}, 1));
  CHECK(cokernel_structure(IntMatrix{{2, 0}, {0, 3}}).to_string() == "Z/6");

  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    IntMatrix m = oracle::random_matrix(rng, 3, 3, 6);
    mpz_class d = abs(oracle::det(m));
    auto s = cokernel_structure(m);
    if (d == 0) CHECK(s.free_rank > 0);
    else CHECK(*s.cardinality() == d);
  }
}

TEST_CASE("integer kernel") {
  CHECK(integer_kernel(IntMatrix::identity(2)).empty());
  auto k = integer_kernel(IntMatrix{{1, 1}, {1, 1}});
  REQUIRE(k.size() == 1);
  CHECK((k[0] == IntVector{1, -1} || k[0] == IntVector{-1, 1}));

  // Stacked g^T - I over the generators of the three-generator example.
  std::vector<IntMatrix> gens{IntMatrix{{2, 1, 0}, {1, 1, 0}, {0, 0, 1}}, IntMatrix{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}},
                              IntMatrix{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}};
  std::vector<IntMatrix> blocks;
  for (const auto& g : gens) blocks.push_back(g.transpose() - IntMatrix::identity(3));
  auto fixed = integer_kernel(IntMatrix::vstack(blocks));
  REQUIRE(fixed.size() == 1);
  CHECK((fixed[0] == IntVector{0, 0, 1} || fixed[0] == IntVector{0, 0, -1}));

  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    IntMatrix m = oracle::random_matrix(rng, 2 + rng() % 2, 4, 5);
    auto basis = integer_kernel(m);
    CHECK(basis.size() == 4 - rank(m));
    for (const auto& v : basis) CHECK(oracle::is_zero_vector(m * v));
    // primitive: saturating the kernel changes nothing
    CHECK(saturate_lattice(basis, 4) == basis);
  }
}

TEST_CASE("lattice saturation") {
  CHECK(saturate_lattice({{2, 4}}, 2) == std::vector<IntVector>{{1, 2}});
  CHECK(saturate_lattice({{2, 0}, {0, 3}}, 2) == std::vector<IntVector>{{1, 0}, {0, 1}});
  CHECK(saturate_lattice({}, 3).empty());

  // Brute force: v is in the saturation iff k v lies in the lattice for some k <= 12.
  std::mt19937_64 rng(8);
  for (int t = 0; t < 25; ++t) {
    std::vector<IntVector> gens = oracle::random_matrix(rng, 2, 3, 4).row_vectors();
    for (auto& g : gens)
      for (auto& x : g) x *= 1 + static_cast<long>(rng() % 3);
    auto sat = saturate_lattice(gens, 3);
    CHECK(saturate_lattice(sat, 3) == sat);
    IntMatrix lattice = hermite_basis(IntMatrix::from_rows(gens, 3));
    IntMatrix sat_basis = hermite_basis(IntMatrix::from_rows(sat, 3));
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b)
        for (long c = -3; c <= 3; ++c) {
          IntVector v{a, b, c};
          bool multiple = false;
          for (long k = 1; k <= 12 && !multiple; ++k) {
            IntVector kv{k * a, k * b, k * c};
            multiple = lattice_contains(lattice, kv);
          }
          if (multiple) CHECK(lattice_contains(sat_basis, v));
        }
    for (const auto& g : gens) CHECK(lattice_contains(sat_basis, g));
  }
}

TEST_CASE("determinant, inverses and quotient structure") {
  CHECK(determinant(IntMatrix{{2, 1}, {1, 1}}) == 1);
  CHECK(unimodular_inverse(IntMatrix{{2, 1}, {1, 1}}) == IntMatrix{{1, -1}, {-1, 2}});
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), DomainError);
  IntMatrix inv = inverse_mod(IntMatrix{{2, 1}, {1, 1}}, Int(7));
  CHECK((inv * IntMatrix{{2, 1}, {1, 1}}).mod(Int(7)).is_identity());

  IntMatrix outer = IntMatrix::identity(2);
  CHECK(quotient_structure(outer, IntMatrix{{2, 0}, {0, 4}}) == structure({2, 4}, 0));
  CHECK(quotient_structure(outer, IntMatrix{{2, 0}}) == structure({2}, 1));
  CHECK_THROWS_AS(quotient_structure(IntMatrix{{2, 0}, {0, 2}}, IntMatrix{{1, 0}}), DomainError);

  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    IntMatrix m = oracle::random_matrix(rng, 4, 4, 7);
    CHECK(determinant(m) == oracle::det(m));
  }
}
