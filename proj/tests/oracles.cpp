#include "oracles.hpp"

#include <algorithm>

using namespace dwb;

namespace oracles {

Partition jordan_type_by_chains(const Matrix& n, unsigned p) {
  const unsigned d = n.rows();
  const FieldPtr F = n.field();
  ColumnSpace chosen(F, d);
  // height of v modulo the chosen span: smallest j with n^j v inside
  std::vector<Matrix> powers{Matrix::identity(F, d)};
  for (unsigned j = 1; j <= p; ++j) powers.push_back(powers.back().mul(n));
  auto height_mod = [&](const Vec& v) -> unsigned {
    for (unsigned j = 0; j <= p; ++j)
      if (chosen.contains(powers[j].apply(v))) return j;
    return p + 1;  // not p-nilpotent
  };
  Partition out;
  while (chosen.dim() < d) {
    unsigned best = 0, best_h = 0;
    for (unsigned i = 0; i < d; ++i) {
      Vec e(d, 0);
      e[i] = 1;
      unsigned h = height_mod(e);
      if (h > best_h) {
        best_h = h;
        best = i;
      }
    }
    if (best_h == 0 || best_h > p) throw check_error("chain oracle: no admissible vector");
    Vec e(d, 0);
    e[best] = 1;
    for (unsigned j = 0; j < best_h; ++j) chosen.insert(powers[j].apply(e));
    out.parts.push_back(best_h);
  }
  std::sort(out.parts.begin(), out.parts.end(), std::greater<unsigned>());
  return out;
}

unsigned lucas_binomial(std::uint64_t a, std::uint64_t b, unsigned p) {
  if (b > a) return 0;
  unsigned result = 1;
  while (a > 0 || b > 0) {
    unsigned da = static_cast<unsigned>(a % p), db = static_cast<unsigned>(b % p);
    if (db > da) return 0;
    // small binomial of digits
    unsigned num = 1, den = 1;
    for (unsigned i = 0; i < db; ++i) {
      num = (num * (da - i)) % p;
      den = (den * (i + 1)) % p;
    }
    // invert den mod p
    unsigned inv = 1;
    for (unsigned k = 0; k < p - 2; ++k) inv = (inv * den) % p;
    result = (result * num % p) * inv % p;
    a /= p;
    b /= p;
  }
  return result;
}

Matrix random_invertible(const FieldPtr& field, unsigned dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, field->q() - 1);
  for (;;) {
    Matrix m(field, dim, dim);
    for (unsigned i = 0; i < dim; ++i)
      for (unsigned j = 0; j < dim; ++j) m(i, j) = static_cast<FElem>(pick(rng));
    if (rank(m) == dim) return m;
  }
}

Matrix random_p_nilpotent(const FieldPtr& field, unsigned dim, unsigned p,
                          std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, field->q() - 1);
  std::uniform_int_distribution<unsigned> pick_block(1, std::max(1u, dim));
  // random block sizes
  std::vector<unsigned> blocks;
  unsigned left = dim;
  while (left > 0) {
    unsigned b = std::min(left, pick_block(rng) % std::min(left, 2 * p) + 1);
    blocks.push_back(b);
    left -= b;
  }
  Matrix m(field, dim, dim);
  unsigned off = 0;
  for (unsigned b : blocks) {
    // polynomial in the size-b shift with valuation >= ceil(b / p)
    unsigned val = (b + p - 1) / p;
    std::vector<FElem> coeff(b, 0);
    for (unsigned j = val; j < b; ++j) coeff[j] = static_cast<FElem>(pick(rng));
    bool nonzero = false;
    for (unsigned j = val; j < b; ++j) nonzero |= coeff[j] != 0;
    if (!nonzero && val < b) coeff[val] = 1;
    for (unsigned j = 1; j < b; ++j)
      if (coeff[j] != 0)
        for (unsigned i = 0; i + j < b; ++i) m(off + i, off + i + j) = coeff[j];
    off += b;
  }
  Matrix s = random_invertible(field, dim, rng);
  return s.mul(m).mul(inverse(s));
}

TruncPoly TruncPoly::variable(const FieldPtr& f, const std::vector<unsigned>& bounds,
                              unsigned v) {
  TruncPoly p{f, bounds, {}};
  std::vector<unsigned> e(bounds.size(), 0);
  e[v] = 1;
  p.terms[e] = 1;
  return p;
}

TruncPoly TruncPoly::constant(const FieldPtr& f, const std::vector<unsigned>& bounds, FElem c) {
  TruncPoly p{f, bounds, {}};
  if (c != 0) p.terms[std::vector<unsigned>(bounds.size(), 0)] = c;
  return p;
}

TruncPoly TruncPoly::add(const TruncPoly& o) const {
  TruncPoly out = *this;
  for (const auto& [e, c] : o.terms) {
    auto [it, fresh] = out.terms.emplace(e, c);
    if (!fresh) {
      it->second = field->add(it->second, c);
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

TruncPoly TruncPoly::sub(const TruncPoly& o) const { return add(o.scale(field->neg(1))); }

TruncPoly TruncPoly::scale(FElem c) const {
  TruncPoly out{field, bounds, {}};
  if (c == 0) return out;
  for (const auto& [e, v] : terms) out.terms[e] = field->mul(v, c);
  return out;
}

TruncPoly TruncPoly::mul(const TruncPoly& o) const {
  TruncPoly out{field, bounds, {}};
  for (const auto& [e1, c1] : terms)
    for (const auto& [e2, c2] : o.terms) {
      std::vector<unsigned> e(bounds.size());
      bool alive = true;
      for (size_t v = 0; v < bounds.size(); ++v) {
        e[v] = e1[v] + e2[v];
        if (e[v] >= bounds[v]) {
          alive = false;
          break;
        }
      }
      if (!alive) continue;
      FElem c = field->mul(c1, c2);
      auto [it, fresh] = out.terms.emplace(e, c);
      if (!fresh) {
        it->second = field->add(it->second, c);
        if (it->second == 0) out.terms.erase(it);
      }
    }
  return out;
}

UnipotentMat unipotent_from(const TruncPoly& a, const TruncPoly& b, const TruncPoly& c) {
  UnipotentMat m;
  m[{0, 1}] = a;
  m[{0, 2}] = c;
  m[{1, 2}] = b;
  return m;
}

namespace {
const TruncPoly& entry(const UnipotentMat& m, int i, int j, const TruncPoly& zero) {
  auto it = m.find({i, j});
  return it == m.end() ? zero : it->second;
}
}  // namespace

UnipotentMat unipotent_mul(const UnipotentMat& x, const UnipotentMat& y) {
  const TruncPoly& a = x.begin()->second;
  TruncPoly zero{a.field, a.bounds, {}};
  UnipotentMat out;
  // strictly-upper entries of the product with unit diagonals
  out[{0, 1}] = entry(x, 0, 1, zero).add(entry(y, 0, 1, zero));
  out[{1, 2}] = entry(x, 1, 2, zero).add(entry(y, 1, 2, zero));
  out[{0, 2}] = entry(x, 0, 2, zero)
                    .add(entry(y, 0, 2, zero))
                    .add(entry(x, 0, 1, zero).mul(entry(y, 1, 2, zero)));
  return out;
}

UnipotentMat unipotent_inverse(const UnipotentMat& x) {
  // (1 + N)^{-1} = 1 - N + N^2 for strictly upper triangular N
  const TruncPoly& a = x.begin()->second;
  TruncPoly zero{a.field, a.bounds, {}};
  TruncPoly A = entry(x, 0, 1, zero), C = entry(x, 0, 2, zero), B = entry(x, 1, 2, zero);
  UnipotentMat out;
  out[{0, 1}] = A.scale(a.field->neg(1));
  out[{1, 2}] = B.scale(a.field->neg(1));
  out[{0, 2}] = C.scale(a.field->neg(1)).add(A.mul(B));
  return out;
}

std::vector<unsigned> betti_truncated_line(unsigned length) {
  return std::vector<unsigned>(length + 1, 1);
}

std::vector<unsigned> betti_convolution(const std::vector<unsigned>& a,
                                        const std::vector<unsigned>& b) {
  std::vector<unsigned> out(std::min(a.size(), b.size()), 0);
  for (size_t n = 0; n < out.size(); ++n)
    for (size_t i = 0; i <= n; ++i) out[n] += a[i] * b[n - i];
  return out;
}

}  // namespace oracles
