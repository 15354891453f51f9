#pragma once

#include <optional>

#include "dwb/algebra.hpp"

namespace dwb {

/// Finite-dimensional left module over a catalog algebra, stored as one
/// action matrix per designated generator.  The defining relations of the
/// algebra are checked against the induced representation at construction
/// unless the policy skips them (internal constructions).
struct FDModule {
  AlgebraPtr algebra;
  std::string id;
  unsigned dim = 0;
  std::vector<Matrix> actions;  // aligned with algebra->generators()

  const FieldPtr& field() const { return algebra->field(); }
  /// Action of an arbitrary algebra element.
  Matrix action_of(const Vec& x) const { return algebra->element_action(x, actions); }
};

FDModule make_module(AlgebraPtr algebra, std::string id, std::vector<Matrix> actions,
                     const CheckPolicy& policy = {});

/// k with generators acting by their augmentation values.
FDModule trivial_module(AlgebraPtr algebra);
/// The algebra as a left module over itself.
FDModule regular_module(AlgebraPtr algebra);
/// A^rank.
FDModule free_module(AlgebraPtr algebra, unsigned rank);

/// Pullback along an algebra morphism: a source generator g acts by the
/// action of phi(g).
FDModule restrict_along(const AlgebraMorphism& phi, const FDModule& m);

/// Which coproduct drives a tensor product of modules.
enum class CoproductChoice { Hopf, Group };

/// Per-generator coproducts, entries ((j, k), c) over basis pairs.
using GenCoproducts = std::vector<std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>>>;

/// The algebra's own coproduct on its designated generators.
GenCoproducts hopf_generator_coproducts(const Algebra& a);

/// Transport of a reference Hopf structure through a bijective algebra
/// map nu: source -> a, evaluated on the designated generators of `a`:
/// Delta_G(g) = (nu (x) nu) Delta_src(nu^{-1} g).
GenCoproducts transported_generator_coproducts(const Algebra& a, const AlgebraMorphism& nu);

/// Diagonal action through the given generator coproducts; dim = d * d'.
FDModule tensor_modules(const FDModule& m, const FDModule& n, const GenCoproducts& cops,
                        const std::string& id = "");

/// Convenience: tensor with the algebra's stored coproduct.
FDModule tensor_modules(const FDModule& m, const FDModule& n);

/// Dual module: g acts by the transpose of the action of S(g).
FDModule dual_module(const FDModule& m);

FDModule direct_sum(const FDModule& m, const FDModule& n);

/// External tensor over the tensor-product algebra.
FDModule external_tensor(const FDModule& m, const FDModule& n, const DenseAlgebraPtr& tensor_alg);

/// Augmentation ideal nilpotent?  Smash products delegate to their factors.
bool is_local_algebra(const Algebra& a);

/// Projective = free over a local algebra: the canonical map A^t -> M from
/// a lifted basis of M/rad M is bijective iff t * dim A = dim M.
/// Rejects non-local algebras with a check_error.
bool is_projective_local(const FDModule& m);

/// rad M as a column space (A-module closure of the reduced generator
/// images).
Matrix radical_submodule(const FDModule& m);

/// Submodule generated by the given vectors, with its inclusion matrix.
struct Submodule {
  FDModule module;
  Matrix inclusion;  // ambient dim x sub dim
};
Submodule submodule(const FDModule& m, const std::vector<Vec>& vectors,
                    const std::string& id = "");

/// Quotient by a submodule given by its inclusion matrix.
FDModule quotient_module(const FDModule& m, const Matrix& inclusion, const std::string& id = "");

/// Basis of the space of module homomorphisms m -> n.
std::vector<Matrix> hom_space(const FDModule& m, const FDModule& n);

/// An invertible intertwiner, when one exists among seeded combinations of
/// the hom-space basis (exhaustive for small search spaces).
std::optional<Matrix> find_isomorphism(const FDModule& m, const FDModule& n,
                                       std::uint64_t seed = 0xD1CEAD5ull);

/// Splits off free rank-1 direct summands until none is found; returns the
/// core and the number of copies removed.  Deterministic given the seed.
struct FreeSplit {
  FDModule core;
  unsigned free_rank = 0;
};
FreeSplit strip_free_summands(const FDModule& m, std::uint64_t seed = 0xD1CEAD5ull);

/// Base change of a module (and its algebra handle) along F_p -> F_{p^e}.
FDModule base_change_module(const FDModule& m, const AlgebraPtr& algebra_k, const FieldPtr& k);

}  // namespace dwb
