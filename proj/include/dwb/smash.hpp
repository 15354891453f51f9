#pragma once

#include "dwb/algebra.hpp"

namespace dwb {

/// Smash product B # H stored lazily by factor data and an action tensor;
/// elements are vectors in B (x) H with flat index f * dim(H) + h and no
/// global structure tensor is materialized.  Products follow
/// (f#h)(f'#h') = sum f (h_1 . f') # h_2 h'.
///
/// The coalgebra structure is the tensor product of the co-opposite
/// coproduct on B and the coproduct of H.  No antipode is stored; duals
/// that need one go through `dense_realization`.
class SmashAlgebra : public Algebra, public std::enable_shared_from_this<SmashAlgebra> {
public:
  /// `action` holds triples (h, f, f_out, c): basis element h of H sends
  /// basis element f of B to sum c * f_out.  Module-algebra axioms
  /// (h.(ff') = sum (h_1.f)(h_2.f'), h.1 = eps(h) 1, unital, compatible
  /// with the H-product) are checked on generators plus seeded samples.
  SmashAlgebra(std::string id, DenseAlgebraPtr b, DenseAlgebraPtr h, SparseTensor action,
               const CheckPolicy& policy = {});

  unsigned dim() const override { return dim_; }
  const FieldPtr& field() const override { return b_->field(); }
  const std::string& id() const override { return id_; }
  std::string basis_label(unsigned i) const override;

  Vec mult(const Vec& x, const Vec& y) const override;
  SVec mult_sparse(const SVec& x, const SVec& y) const override;
  const Vec& unit() const override { return unit_; }
  FElem augment(const Vec& x) const override;
  const std::vector<Generator>& generators() const override { return gens_; }

  Matrix left_mult_matrix(const Vec& x) const override;
  Matrix basis_action(unsigned idx, const std::vector<Matrix>& gen_actions) const override;
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>>
  generator_coproduct(unsigned gen_idx) const override;
  Vec antipode(const Vec& x) const override;
  bool has_antipode() const override { return false; }

  const DenseAlgebraPtr& b_factor() const { return b_; }
  const DenseAlgebraPtr& h_factor() const { return h_; }
  const SparseTensor& action_tensor() const { return action_; }
  unsigned b_gen_count() const { return b_gen_count_; }

  std::uint32_t flat(std::uint32_t f, std::uint32_t h) const { return f * h_->dim() + h; }
  std::uint32_t f_part(std::uint32_t idx) const { return idx / h_->dim(); }
  std::uint32_t h_part(std::uint32_t idx) const { return idx % h_->dim(); }

  /// Action of basis element h of H on basis element f of B.
  SVec act_basis(std::uint32_t h, std::uint32_t f) const;
  /// Action of a sparse H-element on a sparse B-element.
  SVec act(const SVec& h, const SVec& f) const;

  /// Coproduct of the basis element f#h: sum (f_2 # h_1) (x) (f_1 # h_2).
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>>
  basis_coproduct(std::uint32_t idx) const;

private:
  void check_action_axioms(const CheckPolicy& policy) const;

  std::string id_;
  DenseAlgebraPtr b_, h_;
  SparseTensor action_;                    // sorted (h, f, f_out, c)
  std::vector<std::uint32_t> act_offset_;  // per (h, f) slice into action_
  unsigned dim_;
  Vec unit_;
  std::vector<Generator> gens_;
  unsigned b_gen_count_;
};

using SmashAlgebraPtr = std::shared_ptr<const SmashAlgebra>;

SmashAlgebraPtr smash_product(std::string id, DenseAlgebraPtr b, DenseAlgebraPtr h,
                              SparseTensor action, const CheckPolicy& policy = {});

/// Materializes the structure tensor (dimension guard 4096) and re-checks
/// associativity under the construction policy.  Hopf data is the tensor
/// of the co-opposite coproduct on B with the coproduct of H; the antipode
/// candidate S(f#h) = (1#S_H(h)) (S_B(f)#1) is attached when both factors
/// carry one and is validated by the Hopf axiom checks.
DenseAlgebraPtr dense_realization(const SmashAlgebra& s, const CheckPolicy& policy = {},
                                  const std::string& id_override = "");

/// Trivial action tensor h.f = eps(h) f, the smash being plain (x).
SparseTensor trivial_action(const DenseAlgebra& b, const DenseAlgebra& h);

/// Base change of a lazy smash along F_p -> F_{p^e}.
SmashAlgebraPtr base_change(const SmashAlgebraPtr& s, const FieldPtr& bigger);

}  // namespace dwb
