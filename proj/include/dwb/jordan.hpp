#pragma once

#include <string>
#include <vector>

#include "dwb/matrix.hpp"

namespace dwb {

/// Weakly decreasing block-size partition of a p-nilpotent operator.
struct Partition {
  std::vector<unsigned> parts;

  unsigned sum() const;
  bool operator==(const Partition& o) const { return parts == o.parts; }
  bool operator!=(const Partition& o) const { return !(*this == o); }
  std::string str() const;
};

/// Dominance order: a <= b iff every prefix sum of a is <= that of b.
/// Only meaningful between partitions of the same total.
bool dominates(const Partition& a, const Partition& b);

/// Block sizes of a square matrix n with n^p = 0, from the rank sequence:
/// #blocks of size >= j equals rank(n^{j-1}) - rank(n^j).
/// Throws check_error when n^p != 0.
Partition jordan_type(const Matrix& n, unsigned p);

/// True iff every block of jordan_type(n, p) has size exactly p
/// (vacuously true in dimension 0): the operator generates a free
/// K[t]/t^p-module structure.
bool is_free_over_truncated_line(const Matrix& n, unsigned p);

}  // namespace dwb
