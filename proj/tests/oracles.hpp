#pragma once

// Test-only oracles, kept independent of the library code paths they
// check: Jordan types via explicit chain construction, binomials via
// Lucas digits, Heisenberg structure via symbolic 3x3 matrices over a
// truncated polynomial ring, and Betti numbers via closed formulas.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "dwb/jordan.hpp"
#include "dwb/matrix.hpp"

namespace oracles {

/// Jordan type by greedy maximal-height chain construction: repeatedly
/// pick a standard basis vector of maximal height modulo the span of the
/// chains already chosen and split off its chain.  Independent of the
/// rank-difference formula.
dwb::Partition jordan_type_by_chains(const dwb::Matrix& n, unsigned p);

/// Binomial coefficient mod p via base-p digits.
unsigned lucas_binomial(std::uint64_t a, std::uint64_t b, unsigned p);

/// Random p-nilpotent matrix: polynomials in shift blocks with valuation
/// forced above ceil(size/p), conjugated by a random invertible matrix.
dwb::Matrix random_p_nilpotent(const dwb::FieldPtr& field, unsigned dim, unsigned p,
                               std::mt19937_64& rng);

/// Random invertible matrix.
dwb::Matrix random_invertible(const dwb::FieldPtr& field, unsigned dim, std::mt19937_64& rng);

/// Sparse multivariate polynomials over F_p with per-variable truncation
/// x_v^bound = 0, used to run the Heisenberg group law symbolically.
struct TruncPoly {
  dwb::FieldPtr field;
  std::vector<unsigned> bounds;                       // exponent bound per variable
  std::map<std::vector<unsigned>, dwb::FElem> terms;  // exponents -> coefficient

  static TruncPoly variable(const dwb::FieldPtr& f, const std::vector<unsigned>& bounds,
                            unsigned v);
  static TruncPoly constant(const dwb::FieldPtr& f, const std::vector<unsigned>& bounds,
                            dwb::FElem c);
  TruncPoly add(const TruncPoly& o) const;
  TruncPoly sub(const TruncPoly& o) const;
  TruncPoly mul(const TruncPoly& o) const;
  TruncPoly scale(dwb::FElem c) const;
};

/// Entry (i, j) of the product of two 3x3 unipotent matrices with symbolic
/// upper entries; matrices are {a = (0,1), c = (0,2), b = (1,2)} maps.
using UnipotentMat = std::map<std::pair<int, int>, TruncPoly>;

UnipotentMat unipotent_from(const TruncPoly& a, const TruncPoly& b, const TruncPoly& c);
UnipotentMat unipotent_mul(const UnipotentMat& x, const UnipotentMat& y);
UnipotentMat unipotent_inverse(const UnipotentMat& x);

/// Betti numbers of k over a truncated polynomial algebra k[x]/x^m, m >= 2:
/// identically 1.
std::vector<unsigned> betti_truncated_line(unsigned length);

/// Kuenneth convolution of factor Betti sequences.
std::vector<unsigned> betti_convolution(const std::vector<unsigned>& a,
                                        const std::vector<unsigned>& b);

}  // namespace oracles
