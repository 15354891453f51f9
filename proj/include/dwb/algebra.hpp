#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dwb/matrix.hpp"

namespace dwb {

/// Basis element `i` times basis element `j` contains `c` times basis
/// element `k`.  Tensors are kept sorted lexicographically by (i, j, k) so
/// serialization is bit-exact.
struct TensorTriple {
  std::uint32_t i, j, k;
  FElem c;

  friend bool operator<(const TensorTriple& a, const TensorTriple& b) {
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    if (a.k != b.k) return a.k < b.k;
    return a.c < b.c;
  }
  friend bool operator==(const TensorTriple& a, const TensorTriple& b) {
    return a.i == b.i && a.j == b.j && a.k == b.k && a.c == b.c;
  }
};

using SparseTensor = std::vector<TensorTriple>;

/// Sorted sparse coefficient vector.
using SVec = std::vector<std::pair<std::uint32_t, FElem>>;

SVec to_sparse(const Vec& v);
Vec to_dense(const SVec& v, unsigned dim);

/// Designated algebra generator.  The ordered monomials
/// g_1^{e_1} ... g_m^{e_m} with e_i < power_order_i form a basis of every
/// catalog algebra; that family backs the expansion of arbitrary elements
/// through generator actions.
struct Generator {
  std::string label;
  Vec element;
  unsigned power_order;
};

/// Coalgebra + antipode data carried by an algebra.  `coproduct` stores
/// Delta(b_i) = sum c * b_j (x) b_k as triples (i, j, k, c).
struct HopfData {
  SparseTensor coproduct;
  Vec counit;
  Matrix antipode;
};

/// Delta^cop = flip . Delta; applying it twice is the identity.
HopfData co_opposite(const HopfData& hd);

/// Controls construction-time verification: exhaustive up to
/// `exhaustive_limit`, seeded random triples beyond it.
struct CheckPolicy {
  unsigned exhaustive_limit = 64;
  unsigned samples = 10000;
  std::uint64_t seed = 0xD1CEAD5ull;
  bool skip = false;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Element-arithmetic interface shared by the dense (structure tensor)
/// and lazy (smash product) representations.  Implementations are
/// immutable after construction and safe to share across threads.
class Algebra {
public:
  virtual ~Algebra() = default;

  virtual unsigned dim() const = 0;
  virtual const FieldPtr& field() const = 0;
  virtual const std::string& id() const = 0;
  virtual std::string basis_label(unsigned i) const = 0;

  virtual Vec mult(const Vec& x, const Vec& y) const = 0;
  virtual SVec mult_sparse(const SVec& x, const SVec& y) const = 0;
  virtual const Vec& unit() const = 0;
  virtual FElem augment(const Vec& x) const = 0;
  virtual const std::vector<Generator>& generators() const = 0;

  /// Matrix of left multiplication by x acting on the algebra itself.
  virtual Matrix left_mult_matrix(const Vec& x) const = 0;

  /// Matrix by which basis element `idx` acts on a module, given the
  /// actions of this algebra's designated generators.
  virtual Matrix basis_action(unsigned idx, const std::vector<Matrix>& gen_actions) const = 0;

  /// Action of an arbitrary element, through the generator expansion.
  Matrix element_action(const Vec& x, const std::vector<Matrix>& gen_actions) const;

  /// Coproduct of a designated generator as a sparse element of A (x) A,
  /// entries ((j, k), c).  Lazy algebras provide this for their designated
  /// generators only.
  virtual std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>>
  generator_coproduct(unsigned gen_idx) const = 0;

  /// Antipode applied to an element, when the representation carries one.
  virtual Vec antipode(const Vec& x) const = 0;
  virtual bool has_antipode() const = 0;
};

/// Finite-dimensional algebra presented by basis and sparse structure
/// tensor, optionally with Hopf data.  Associativity, unit laws and the
/// augmentation being an algebra map are checked at construction
/// (exhaustively for dim <= 64, on seeded random triples above).
class DenseAlgebra : public Algebra, public std::enable_shared_from_this<DenseAlgebra> {
public:
  DenseAlgebra(std::string id, FieldPtr field, std::vector<std::string> basis_labels,
               SparseTensor mult, Vec unit, Vec augmentation,
               std::vector<Generator> generators, std::optional<HopfData> hopf,
               const CheckPolicy& policy = {});

  unsigned dim() const override { return dim_; }
  const FieldPtr& field() const override { return field_; }
  const std::string& id() const override { return id_; }
  std::string basis_label(unsigned i) const override { return labels_[i]; }
  const std::vector<std::string>& basis_labels() const { return labels_; }

  const SparseTensor& mult_tensor() const { return mult_; }
  Vec mult(const Vec& x, const Vec& y) const override;
  SVec mult_sparse(const SVec& x, const SVec& y) const override;
  /// Product of two basis elements.
  SVec basis_product(unsigned i, unsigned j) const;
  const Vec& unit() const override { return unit_; }
  FElem augment(const Vec& x) const override;
  const Vec& augmentation_covector() const { return augment_; }
  const std::vector<Generator>& generators() const override { return gens_; }

  Matrix left_mult_matrix(const Vec& x) const override;
  Matrix basis_action(unsigned idx, const std::vector<Matrix>& gen_actions) const override;

  /// rho(b_k) for every basis element, from generator actions on a
  /// d-dimensional module.  Dense algebras only; O(dim * d^2) memory.
  std::vector<Matrix> representation(const std::vector<Matrix>& gen_actions) const;

  bool has_hopf() const { return hopf_.has_value(); }
  const HopfData& hopf() const;
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>>
  generator_coproduct(unsigned gen_idx) const override;
  Vec antipode(const Vec& x) const override;
  bool has_antipode() const override { return has_hopf() && hopf_->antipode.rows() == dim_; }

  /// Coproduct of an arbitrary element as sparse A (x) A entries.
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>>
  coproduct_of(const Vec& x) const;

  /// Nilpotency degree of the augmentation ideal: smallest m with
  /// (ker eps)^m = 0, or nullopt when the ideal is not nilpotent.
  std::optional<unsigned> augmentation_nilpotency() const;
  bool is_local() const { return augmentation_nilpotency().has_value(); }

  /// Exponent tuples of the ordered generator monomial family, aligned
  /// with the columns of `monomial_elements`.
  const std::vector<std::vector<unsigned>>& monomial_exponents() const { return mono_exps_; }
  /// Column k = coordinates of basis element k over the monomial family.
  const Matrix& monomial_expansion() const { return mono_expand_; }

  const CheckPolicy& check_policy() const { return policy_; }

private:
  void check_algebra_axioms() const;
  void check_hopf_axioms_internal() const;
  void build_monomial_table();

  std::string id_;
  FieldPtr field_;
  unsigned dim_;
  std::vector<std::string> labels_;
  SparseTensor mult_;
  std::vector<std::uint32_t> pair_offset_;  // lower_bound cache per (i,j) flattened, built when dim <= 1024
  std::vector<SVec> pair_products_;         // basis products, same guard
  Vec unit_;
  Vec augment_;
  std::vector<Generator> gens_;
  std::optional<HopfData> hopf_;
  std::vector<std::vector<unsigned>> mono_exps_;
  Matrix mono_expand_;
  CheckPolicy policy_;
  mutable std::optional<std::optional<unsigned>> aug_nilp_cache_;
};

using DenseAlgebraPtr = std::shared_ptr<const DenseAlgebra>;

/// Violations found by `check_hopf_axioms`; empty report = all axioms hold.
struct AxiomReport {
  std::vector<std::string> violations;
  std::uint64_t seed = 0;
  bool exhaustive = true;
  bool ok() const { return violations.empty(); }
};

/// Coassociativity, counit law, Delta multiplicative, antipode convolution
/// law; exhaustive for dim <= policy.exhaustive_limit, sampled above.
AxiomReport check_hopf_axioms(const DenseAlgebra& a, const CheckPolicy& policy = {});

/// Product of the dual = transpose of the coproduct; coproduct of the dual
/// = transpose of the product.  Requires Hopf data.
DenseAlgebraPtr dual_hopf(const DenseAlgebraPtr& a, const std::string& id,
                          std::vector<Generator> dual_generators,
                          const CheckPolicy& policy = {});

/// Linear map of algebras checked to be multiplicative and unital
/// (exhaustive on basis pairs for source dim <= 64, generator pairs plus
/// seeded samples above).
struct AlgebraMorphism {
  AlgebraPtr source;
  AlgebraPtr target;
  Matrix matrix;  // target dim x source dim

  Vec apply(const Vec& x) const { return matrix.apply(x); }
  bool injective() const;
  bool surjective() const;
};

AlgebraMorphism make_morphism(AlgebraPtr source, AlgebraPtr target, Matrix matrix,
                              const CheckPolicy& policy = {});

/// Composition target <- middle <- source.
AlgebraMorphism compose(const AlgebraMorphism& outer, const AlgebraMorphism& inner);

/// Tensor product algebra A (x) B with componentwise product, Hopf data
/// when both factors carry it; generators are g (x) 1 and 1 (x) g.
/// Basis index = a * dim(B) + b.
DenseAlgebraPtr tensor_algebra(const DenseAlgebraPtr& a, const DenseAlgebraPtr& b,
                               const std::string& id, const CheckPolicy& policy = {});

/// Base change along F_p -> F_{p^e}: identical tensors over the larger
/// field (structure constants of catalog algebras live in the prime field).
DenseAlgebraPtr base_change(const DenseAlgebraPtr& a, const FieldPtr& bigger);

}  // namespace dwb
