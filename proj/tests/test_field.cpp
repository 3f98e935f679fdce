#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hsa/field.hpp"
#include "hsa/matrix.hpp"
#include "hsa/rng.hpp"
#include "oracles.hpp"

using namespace hsa;

TEST_CASE("field arithmetic matches hand values") {
  const PrimeField f5(5);
  CHECK(f5.add(3, 4) == 2);
  CHECK(f5.div(1, 2) == 3);  // 2*3 = 6 = 1 mod 5
  const PrimeField f7(7);
  CHECK(f7.mul(4, 5) == 6);
  CHECK(f5.sub(1, 3) == 3);
  CHECK(f5.neg(0) == 0);
  CHECK(f5.pow(2, 0) == 1);
  CHECK(f5.pow(2, 13) == f5.mul(f5.mul(f5.pow(2, 6), f5.pow(2, 6)), 2));
}

TEST_CASE("division by zero and composite moduli are rejected") {
  const PrimeField f5(5);
  CHECK_THROWS_AS(f5.inv(0), InvalidOperand);
  CHECK_THROWS_AS(f5.div(3, 0), InvalidOperand);
  CHECK_THROWS_AS(PrimeField(6), InvalidOperand);
  CHECK_THROWS_AS(PrimeField(1), InvalidOperand);
  CHECK_THROWS_AS(PrimeField(0), InvalidOperand);
}

TEST_CASE("group axioms hold on random elements") {
  Rng rng(7);
  for (uint32_t q : {2u, 3u, 5u, 11u, 101u, 65537u}) {
    const PrimeField f(q);
    for (int i = 0; i < 200; ++i) {
      const uint32_t a = rng.below(q), b = rng.below(q);
      CHECK(f.sub(f.add(a, b), b) == a);
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    }
  }
}

TEST_CASE("primality helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(65537));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(49));
  CHECK(next_prime_at_least(10) == 11);
  CHECK(next_prime_at_least(11) == 11);
  CHECK_THROWS_AS(next_prime_at_least(24, 28), SearchExhausted);
}

TEST_CASE("rank on hand-checkable matrices") {
  const PrimeField f(5);
  CHECK(mat_rank(f, Matrix::identity(3)) == 3);
  CHECK(mat_rank(f, Matrix{{1, 2}, {2, 4}}) == 1);
  CHECK(mat_rank(f, Matrix(4, 6)) == 0);  // zero matrix
}

TEST_CASE("rank agrees with the row-space enumeration oracle") {
  const PrimeField f(3);
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = oracle::random_matrix(f, rng, 6, 9);
    CHECK(mat_rank(f, m) == oracle::rank_by_rowspace(f, m));
  }
  // Structured low-rank case: second row is twice the first, then zeros.
  Matrix dup(0, 0);
  dup.append_row({1, 2, 0, 1});
  dup.append_row({2, 1, 0, 2});
  dup.append_row({0, 0, 0, 0});
  CHECK(mat_rank(f, dup) == 1);
  CHECK(mat_rank(f, dup) == oracle::rank_by_rowspace(f, dup));
}

TEST_CASE("rank is invariant under row ops and transposition") {
  const PrimeField f(7);
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix m = oracle::random_matrix(f, rng, 5, 7);
    const size_t r = mat_rank(f, m);
    CHECK(mat_rank(f, transpose(m)) == r);
    Matrix swapped = m;
    swapped.swap_rows(0, 4);
    CHECK(mat_rank(f, swapped) == r);
    Matrix scaled = m;
    const uint32_t s = 1 + rng.below(6);
    for (size_t c = 0; c < scaled.cols(); ++c) {
      scaled.at(2, c) = f.mul(scaled.at(2, c), s);
    }
    CHECK(mat_rank(f, scaled) == r);
  }
}

TEST_CASE("stacked rank bounds") {
  const PrimeField f(5);
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix a = oracle::random_matrix(f, rng, 3, 6);
    const Matrix b = oracle::random_matrix(f, rng, 4, 6);
    const size_t ra = mat_rank(f, a), rb = mat_rank(f, b);
    const size_t rs = mat_rank(f, vstack(a, b));
    CHECK(rs >= std::max(ra, rb));
    CHECK(rs <= ra + rb);
  }
}

TEST_CASE("solve on hand-checkable systems") {
  const PrimeField f(5);
  const Matrix id = Matrix::identity(3);
  Matrix b(3, 2);
  b.at(0, 0) = 4;
  b.at(1, 1) = 2;
  b.at(2, 0) = 1;
  CHECK(mat_solve(f, id, b) == b);

  const Matrix a{{1, 1}, {1, 2}};
  const Matrix rhs{{3}, {4}};
  const Matrix x = mat_solve(f, a, rhs);
  CHECK(x.at(0, 0) == 2);
  CHECK(x.at(1, 0) == 1);
}

TEST_CASE("solve round-trips on random nonsingular systems") {
  const PrimeField f(11);
  Rng rng(13);
  const Matrix a = oracle::random_nonsingular(f, rng, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix b = oracle::random_matrix(f, rng, 4, 1);
    const Matrix x = mat_solve(f, a, b);
    CHECK(mat_mul(f, a, x) == b);
  }
}

TEST_CASE("singular systems are rejected") {
  const PrimeField f(5);
  CHECK_THROWS_AS(mat_solve(f, Matrix{{1, 2}, {2, 4}}, Matrix{{1}, {1}}),
                  SingularMatrix);
  CHECK_THROWS_AS(mat_solve(f, Matrix{{1, 2, 3}, {0, 1, 0}}, Matrix{{1}, {1}}),
                  DimensionMismatch);
}

TEST_CASE("matrix shape errors") {
  Matrix m(0, 0);
  m.append_row({1, 2, 3});
  CHECK_THROWS_AS(m.append_row({1, 2}), DimensionMismatch);
  CHECK_THROWS_AS(vstack(Matrix{{1, 2}}, Matrix{{1, 2, 3}}), DimensionMismatch);
}

TEST_CASE("rng determinism and uniformity") {
  Rng a(77), b(77), c(78);
  for (int i = 0; i < 100; ++i) {
    const uint32_t x = a.below(1000);
    CHECK(x == b.below(1000));
  }
  CHECK(a.stream(1).next_u64() == b.stream(1).next_u64());
  CHECK(a.stream(1).next_u64() != a.stream(2).next_u64());
  CHECK(c.below(1000000) != Rng(77).below(1000000));

  // Coarse uniformity: all residues of a small modulus appear.
  Rng r(5);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[r.below(7)];
  for (int h : hits) CHECK(h > 800);
}
