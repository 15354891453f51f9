#include <cmath>
#include <random>

#include "doctest.h"
#include "dwb/field.hpp"
#include "dwb/jordan.hpp"
#include "dwb/matrix.hpp"
#include "oracles.hpp"

using namespace dwb;

TEST_CASE("prime and extension fields construct; bad moduli are rejected") {
  for (unsigned p : {2u, 3u, 5u, 7u})
    for (unsigned e = 1; e <= 4; ++e) {
      auto F = Field::extension(p, e);
      CHECK(F->q() == static_cast<std::uint32_t>(std::pow(double(p), double(e))));
    }
  CHECK_THROWS_AS(Field::prime_field(4), usage_error);
  CHECK_THROWS_AS(Field::prime_field(1), usage_error);
  // x^2 + 1 = (x+1)^2 over F_2
  CHECK_THROWS_AS(Field::with_modulus(2, {1, 0, 1}), usage_error);
  // non-monic
  CHECK_THROWS_AS(Field::with_modulus(3, {1, 1, 2}), usage_error);
}

TEST_CASE("field arithmetic laws on sampled elements") {
  std::mt19937_64 rng(7);
  for (unsigned p : {2u, 3u, 5u}) {
    for (unsigned e = 1; e <= 3; ++e) {
      auto F = Field::extension(p, e);
      std::uniform_int_distribution<std::uint32_t> pick(0, F->q() - 1);
      for (int t = 0; t < 200; ++t) {
        FElem a = pick(rng), b = pick(rng), c = pick(rng);
        CHECK(F->add(a, b) == F->add(b, a));
        CHECK(F->mul(a, b) == F->mul(b, a));
        CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
        CHECK(F->add(a, F->neg(a)) == 0);
        if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
        // Frobenius fixed field / orbit: a^(p^e) = a
        FElem fr = a;
        for (unsigned i = 0; i < e; ++i) fr = F->frobenius(fr);
        CHECK(fr == a);
        if (e == 1) CHECK(F->frobenius(a) == a);
      }
    }
  }
}

TEST_CASE("rank basics") {
  auto F2 = Field::prime_field(2);
  auto F3 = Field::prime_field(3);
  CHECK(rank(Matrix::identity(F2, 3)) == 3);
  CHECK(rank(Matrix(F3, 2, 2)) == 0);
  CHECK(rank(Matrix::from_rows(F3, {{0, 1}, {0, 0}})) == 1);
}

TEST_CASE("kernel basics") {
  auto F2 = Field::prime_field(2);
  CHECK(kernel_basis(Matrix::identity(F2, 3)).cols() == 0);
  CHECK(kernel_basis(Matrix(F2, 2, 2)).cols() == 2);
  Matrix k = kernel_basis(Matrix::from_rows(F2, {{1, 1}, {0, 0}}));
  REQUIRE(k.cols() == 1);
  CHECK(k(0, 0) == 1);
  CHECK(k(1, 0) == 1);
}

TEST_CASE("rank/kernel invariants on random matrices") {
  std::mt19937_64 rng(11);
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = Field::extension(p, p == 2 ? 2 : 1);
    std::uniform_int_distribution<std::uint32_t> pick(0, F->q() - 1);
    for (int t = 0; t < 50; ++t) {
      unsigned r = 1 + (t % 7), c = 1 + (t * 3 % 8);
      Matrix m(F, r, c);
      for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < c; ++j) m(i, j) = pick(rng);
      unsigned rk = rank(m);
      CHECK(rk == rank(m.transpose()));
      Matrix ker = kernel_basis(m);
      CHECK(ker.cols() + rk == c);
      if (ker.cols() > 0) CHECK(m.mul(ker).is_zero());
      CHECK(rank(ker) == ker.cols());
    }
  }
}

TEST_CASE("solve and inverse") {
  auto F5 = Field::prime_field(5);
  Matrix m = Matrix::from_rows(F5, {{1, 2}, {3, 4}});
  Matrix mi = inverse(m);
  CHECK(m.mul(mi) == Matrix::identity(F5, 2));
  Vec x;
  CHECK(solve(m, {1, 0}, x));
  CHECK(m.apply(x) == Vec{1, 0});
  Matrix sing = Matrix::from_rows(F5, {{1, 2}, {2, 4}});
  CHECK_THROWS_AS(inverse(sing), check_error);
  Vec rhs{1, 0};
  CHECK_FALSE(solve(sing, rhs, x));
}

TEST_CASE("jordan type basics") {
  auto F2 = Field::prime_field(2);
  auto F3 = Field::prime_field(3);
  auto F5 = Field::prime_field(5);
  CHECK(jordan_type(Matrix(F2, 3, 3), 2).parts == std::vector<unsigned>{1, 1, 1});
  // 4x4 shift, p = 5: a single block
  Matrix shift(F5, 4, 4);
  for (unsigned i = 0; i + 1 < 4; ++i) shift(i, i + 1) = 1;
  CHECK(jordan_type(shift, 5).parts == std::vector<unsigned>{4});
  // multiplication by t on the regular module of K[t]/t^p at p = 3
  Matrix t3(F3, 3, 3);
  t3(1, 0) = 1;
  t3(2, 1) = 1;
  CHECK(jordan_type(t3, 3).parts == std::vector<unsigned>{3});
  // not p-nilpotent
  Matrix big(F2, 3, 3);
  big(0, 1) = 1;
  big(1, 2) = 1;
  CHECK_THROWS_AS(jordan_type(big, 2), check_error);
}

TEST_CASE("freeness over the truncated line") {
  auto F2 = Field::prime_field(2);
  auto F3 = Field::prime_field(3);
  Matrix block2(F2, 2, 2);
  block2(0, 1) = 1;
  CHECK(is_free_over_truncated_line(block2, 2));
  CHECK_FALSE(is_free_over_truncated_line(Matrix(F2, 1, 1), 2));
  // [3] (+) [1] at p = 3
  Matrix mixed(F3, 4, 4);
  mixed(0, 1) = 1;
  mixed(1, 2) = 1;
  CHECK_FALSE(is_free_over_truncated_line(mixed, 3));
  // zero-dimensional module is free
  CHECK(is_free_over_truncated_line(Matrix(F3, 0, 0), 3));
}

TEST_CASE("jordan type agrees with the chain-construction oracle") {
  std::mt19937_64 rng(2024);
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = Field::prime_field(p);
    for (int t = 0; t < 60; ++t) {
      unsigned dim = 1 + (t % 12);
      Matrix n = oracles::random_p_nilpotent(F, dim, p, rng);
      Partition lib = jordan_type(n, p);
      Partition orac = oracles::jordan_type_by_chains(n, p);
      CHECK(lib.parts == orac.parts);
      CHECK(lib.sum() == dim);
    }
  }
}

TEST_CASE("dominance order") {
  Partition a{{4}}, b{{2, 2}}, c{{3, 1}}, d{{2, 1, 1}};
  CHECK(dominates(a, b));
  CHECK(dominates(c, b));
  CHECK(dominates(b, d));
  CHECK_FALSE(dominates(b, c));
  CHECK_FALSE(dominates(d, b));
  CHECK(dominates(a, a));
}

TEST_CASE("dimension guard") {
  auto F2 = Field::prime_field(2);
  CHECK_THROWS_AS(Matrix(F2, 5000, 2), usage_error);
}
