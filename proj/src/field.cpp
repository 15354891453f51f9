#include "dwb/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "dwb/errors.hpp"

namespace dwb {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

// Dense polynomial arithmetic over F_p, little-endian, used only while
// building the tables.
using Poly = std::vector<unsigned>;

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, unsigned p) {
  Poly prod(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  const size_t e = mod.size() - 1;  // mod is monic of degree e
  for (size_t d = prod.size(); d-- > e;) {
    unsigned c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (size_t i = 0; i < e; ++i)
      prod[d - e + i] = (prod[d - e + i] + c * (p - mod[i] % p)) % p;
  }
  prod.resize(e);
  return prod;
}

FElem encode(const Poly& c, unsigned p) {
  FElem v = 0;
  for (size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

Poly decode(FElem v, unsigned p, unsigned e) {
  Poly c(e, 0);
  for (unsigned i = 0; i < e; ++i) {
    c[i] = v % p;
    v /= p;
  }
  return c;
}

// Irreducibility by exhausting monic factors of degree <= deg/2.
bool poly_irreducible(const Poly& mod, unsigned p) {
  const unsigned e = static_cast<unsigned>(mod.size()) - 1;
  if (e == 1) return true;
  std::uint64_t half = 1;
  for (unsigned d = 1; 2 * d <= e; ++d) {
    half *= p;
    // candidate monic factor of degree d: half choices of lower coeffs
    for (std::uint64_t lo = 0; lo < half; ++lo) {
      Poly f(d + 1, 0);
      std::uint64_t v = lo;
      for (unsigned i = 0; i < d; ++i) {
        f[i] = static_cast<unsigned>(v % p);
        v /= p;
      }
      f[d] = 1;
      // trial division: reduce mod by f via long division
      Poly rem = mod;
      for (size_t k = rem.size(); k-- > d;) {
        unsigned c = rem[k];
        if (c == 0) continue;
        for (unsigned i = 0; i <= d; ++i) {
          unsigned sub = (c * f[i]) % p;
          rem[k - d + i] = (rem[k - d + i] + p - sub) % p;
        }
      }
      if (std::all_of(rem.begin(), rem.end(), [](unsigned x) { return x == 0; }))
        return false;
    }
  }
  return true;
}

std::vector<unsigned> prime_factors(std::uint64_t n) {
  std::vector<unsigned> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      if (out.empty() || out.back() != d) out.push_back(static_cast<unsigned>(d));
      n /= d;
    }
  if (n > 1) out.push_back(static_cast<unsigned>(n));
  return out;
}

struct TableEntry {
  unsigned p, e;
  std::vector<unsigned> modulus;  // low-to-high, monic
};

const TableEntry kModuli[] = {
    {2, 2, {1, 1, 1}},       {2, 3, {1, 1, 0, 1}},    {2, 4, {1, 1, 0, 0, 1}},
    {3, 2, {2, 2, 1}},       {3, 3, {1, 2, 0, 1}},    {3, 4, {2, 0, 0, 2, 1}},
    {5, 2, {2, 4, 1}},       {5, 3, {3, 3, 0, 1}},    {5, 4, {2, 4, 4, 0, 1}},
    {7, 2, {3, 6, 1}},       {7, 3, {4, 0, 6, 1}},    {7, 4, {3, 4, 5, 0, 1}},
};

}  // namespace

const std::vector<unsigned>& Field::table_modulus(unsigned p, unsigned e) {
  for (const auto& t : kModuli)
    if (t.p == p && t.e == e) return t.modulus;
  throw usage_error("no modulus table entry for p=" + std::to_string(p) +
                    ", e=" + std::to_string(e) + " (table covers p<=7, e in 2..4)");
}

Field::Field(unsigned p, std::vector<unsigned> modulus)
    : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p_)) throw usage_error("field characteristic must be prime, got " + std::to_string(p_));
  if (modulus_.size() < 2) throw usage_error("modulus must have degree >= 1");
  e_ = static_cast<unsigned>(modulus_.size()) - 1;
  if (e_ > 4) throw usage_error("extension degree capped at 4");
  for (auto& c : modulus_) c %= p_;
  if (modulus_.back() != 1) throw usage_error("modulus must be monic");
  if (!poly_irreducible(modulus_, p_))
    throw usage_error("modulus is reducible over F_" + std::to_string(p_));

  std::uint64_t q = 1;
  for (unsigned i = 0; i < e_; ++i) q *= p_;
  q_ = static_cast<std::uint32_t>(q);

  neg_.resize(q_);
  for (FElem a = 0; a < q_; ++a) {
    Poly c = decode(a, p_, e_);
    for (auto& x : c) x = (p_ - x) % p_;
    neg_[a] = encode(c, p_);
  }

  // find a multiplicative generator and fill the log/exp tables
  const std::uint64_t ord = q_ - 1;
  const auto factors = prime_factors(ord);
  log_.assign(q_, 0);
  exp_.assign(2 * ord, 0);
  for (FElem g = 1; g < q_; ++g) {
    Poly gp = decode(g, p_, e_);
    // check order of g equals ord
    bool primitive = true;
    for (unsigned f : factors) {
      Poly acc = {1};
      acc.resize(e_, 0);
      Poly base = gp;
      std::uint64_t k = ord / f;
      while (k) {
        if (k & 1) acc = poly_mul_mod(acc, base, modulus_, p_);
        base = poly_mul_mod(base, base, modulus_, p_);
        k >>= 1;
      }
      if (encode(acc, p_) == 1) {
        primitive = false;
        break;
      }
    }
    if (!primitive) continue;
    Poly acc = {1};
    acc.resize(e_, 0);
    for (std::uint64_t i = 0; i < ord; ++i) {
      FElem v = encode(acc, p_);
      exp_[i] = v;
      exp_[i + ord] = v;
      log_[v] = static_cast<std::uint32_t>(i);
      acc = poly_mul_mod(acc, gp, modulus_, p_);
    }
    if (encode(acc, p_) != 1) throw check_error("generator order mismatch");
    return;
  }
  throw check_error("no multiplicative generator found (modulus reducible?)");
}

FieldPtr Field::prime_field(unsigned p) {
  // modulus x - 0? degree-1 monic: represent F_p as F_p[x]/(x + 0)? use x.
  return FieldPtr(new Field(p, {0, 1}));
}

FieldPtr Field::extension(unsigned p, unsigned e) {
  if (e == 1) return prime_field(p);
  return FieldPtr(new Field(p, table_modulus(p, e)));
}

FieldPtr Field::with_modulus(unsigned p, const std::vector<unsigned>& modulus) {
  if (modulus.size() == 2 && modulus[0] == 0 && modulus[1] == 1) return prime_field(p);
  return FieldPtr(new Field(p, modulus));
}

FElem Field::add(FElem a, FElem b) const {
  if (e_ == 1) {
    FElem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  FElem out = 0, mult = 1;
  for (unsigned i = 0; i < e_; ++i) {
    unsigned s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    out += s * mult;
    mult *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

FElem Field::inv(FElem a) const {
  if (a == 0) throw check_error("division by zero in F_" + std::to_string(q_));
  std::uint64_t ord = q_ - 1;
  return exp_[(ord - log_[a]) % ord];
}

FElem Field::pow(FElem a, unsigned long long k) const {
  if (a == 0) return k == 0 ? 1 : 0;
  std::uint64_t ord = q_ - 1;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (k % ord)) % ord];
}

FElem Field::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<FElem>(r);
}

std::vector<unsigned> Field::coeffs(FElem a) const { return decode(a, p_, e_); }

FElem Field::from_coeffs(const std::vector<unsigned>& c) const {
  if (c.size() > e_) throw usage_error("coefficient vector longer than extension degree");
  Poly padded(e_, 0);
  for (size_t i = 0; i < c.size(); ++i) padded[i] = c[i] % p_;
  return encode(padded, p_);
}

bool Field::same_as(const Field& other) const {
  return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
}

std::string Field::to_string(FElem a) const {
  if (e_ == 1) return std::to_string(a);
  std::ostringstream os;
  os << "[";
  auto c = coeffs(a);
  for (unsigned i = 0; i < e_; ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

}  // namespace dwb
