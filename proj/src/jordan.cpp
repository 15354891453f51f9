#include "dwb/jordan.hpp"

#include <numeric>
#include <sstream>

namespace dwb {

unsigned Partition::sum() const {
  return std::accumulate(parts.begin(), parts.end(), 0u);
}

std::string Partition::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << "]";
  return os.str();
}

bool dominates(const Partition& a, const Partition& b) {
  unsigned pa = 0, pb = 0;
  size_t n = std::max(a.parts.size(), b.parts.size());
  for (size_t i = 0; i < n; ++i) {
    pa += i < a.parts.size() ? a.parts[i] : 0;
    pb += i < b.parts.size() ? b.parts[i] : 0;
    if (pa < pb) return false;
  }
  return true;
}

Partition jordan_type(const Matrix& n, unsigned p) {
  require(n.rows() == n.cols(), "jordan_type needs a square matrix");
  const unsigned d = n.rows();
  // rank sequence r_j = rank(n^j), j = 0..p
  std::vector<unsigned> r(p + 1, 0);
  r[0] = d;
  Matrix power = n;
  for (unsigned j = 1; j <= p; ++j) {
    r[j] = rank(power);
    if (j < p) power = power.mul(n);
  }
  require(r[p] == 0, "matrix is not p-nilpotent (p = " + std::to_string(p) + ")");
  Partition out;
  for (unsigned j = p; j >= 1; --j) {
    unsigned count = (r[j - 1] - r[j]) - (j < p ? (r[j] - r[j + 1]) : 0);
    for (unsigned i = 0; i < count; ++i) out.parts.push_back(j);
  }
  require(out.sum() == d, "jordan block sizes do not sum to the dimension");
  return out;
}

bool is_free_over_truncated_line(const Matrix& n, unsigned p) {
  Partition jt = jordan_type(n, p);
  for (unsigned part : jt.parts)
    if (part != p) return false;
  return true;
}

}  // namespace dwb
