#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace dwb {

/// Element of a finite field, encoded as an index 0..q-1.  The polynomial
/// sum c_i x^i over F_p is stored as the integer sum c_i p^i, so 0 and 1
/// are the additive and multiplicative identities of every field.
using FElem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// F_{p^e} with a fixed monic modulus, irreducibility checked at
/// construction by brute-force factor search (e <= 4).  Arithmetic runs on
/// discrete-log tables; instances are immutable and shared.
class Field {
public:
  /// Prime field F_p.
  static FieldPtr prime_field(unsigned p);
  /// F_{p^e} with the modulus from the built-in table (p <= 7, e <= 4).
  static FieldPtr extension(unsigned p, unsigned e);
  /// F_{p^e} with an explicit monic modulus, low-to-high coefficients,
  /// length e+1.
  static FieldPtr with_modulus(unsigned p, const std::vector<unsigned>& modulus);
  /// Table lookup used by `extension`; exposed for serialization.
  static const std::vector<unsigned>& table_modulus(unsigned p, unsigned e);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint32_t q() const { return q_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  FElem zero() const { return 0; }
  FElem one() const { return 1; }

  FElem add(FElem a, FElem b) const;
  FElem neg(FElem a) const { return neg_[a]; }
  FElem sub(FElem a, FElem b) const { return add(a, neg_[b]); }
  FElem mul(FElem a, FElem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  FElem inv(FElem a) const;
  FElem div(FElem a, FElem b) const { return mul(a, inv(b)); }
  FElem pow(FElem a, unsigned long long k) const;
  FElem frobenius(FElem a) const { return pow(a, p_); }

  /// Image of an integer under Z -> F_p -> F_{p^e}.
  FElem from_int(long long n) const;
  /// Little-endian digits of the polynomial representation, length e.
  std::vector<unsigned> coeffs(FElem a) const;
  FElem from_coeffs(const std::vector<unsigned>& c) const;

  /// Same p, e and modulus.
  bool same_as(const Field& other) const;

  std::string to_string(FElem a) const;

private:
  Field(unsigned p, std::vector<unsigned> modulus);

  unsigned p_ = 0;
  unsigned e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<FElem> exp_;  // exp_[i] = g^i, doubled to skip a reduction
  std::vector<std::uint32_t> log_;
  std::vector<FElem> neg_;
};

/// True if p is prime (p fits the desk-scale table range).
bool is_prime(unsigned p);

}  // namespace dwb
