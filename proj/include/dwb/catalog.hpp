#pragma once

#include "dwb/smash.hpp"

namespace dwb {

/// Catalog of group schemes at desk scale: vector groups, the 3x3
/// strictly-upper-triangular unipotent group, and the multiplicative
/// group.  Dimensions are n, 3 and 1 respectively.
struct GroupSchemeSpec {
  enum class Kind { Additive, Heisenberg3, Multiplicative };
  Kind kind = Kind::Additive;
  unsigned n = 1;  // vector-group rank, used by Additive only
  unsigned p = 2;

  unsigned dim_g() const {
    switch (kind) {
      case Kind::Additive: return n;
      case Kind::Heisenberg3: return 3;
      case Kind::Multiplicative: return 1;
    }
    return 0;
  }
  std::string name() const;
};

/// Catalog addresses: "Ga:n=1,p=3,r=1", "Heis3:p=3,r=1", "Gm:p=2,r=2".
struct CatalogKey {
  GroupSchemeSpec g;
  unsigned r = 1;
  std::string str() const;
};
CatalogKey parse_catalog_key(const std::string& id);

/// Monomial index helpers for height-s coordinate algebras: exponent
/// vectors are little-endian per variable with bound p^s, first variable
/// fastest.  Group algebras use the dual basis with the same indexing.
unsigned coord_dim(const GroupSchemeSpec& g, unsigned s);
std::vector<unsigned> coord_exps(const GroupSchemeSpec& g, unsigned s, unsigned idx);
unsigned coord_index(const GroupSchemeSpec& g, unsigned s, const std::vector<unsigned>& exps);

/// k[G_(s)]: truncated coordinate algebra with the group-law coproduct.
/// Additive: x_i primitive.  Heisenberg3: a, b primitive and
/// Delta(c) = c(x)1 + 1(x)c + a(x)b.  Multiplicative: x grouplike with
/// x^{p^s} = 1.  Results are cached per id.
DenseAlgebraPtr coordinate_algebra(const GroupSchemeSpec& g, unsigned s);

/// kG_(s), the linear dual of k[G_(s)].
DenseAlgebraPtr group_algebra(const GroupSchemeSpec& g, unsigned s);

/// Action tensor of kG_(r) on k[G_(s)], s in {r, r+1}, from the
/// conjugation coaction dualized by exact linear algebra:
/// f |-> sum restrict_r(S(f_1) f_3) (x) f_2 paired against the dual basis.
SparseTensor coadjoint_action(const GroupSchemeSpec& g, unsigned r, unsigned s);

/// D(G_(r)) = k[G_(r)] # kG_(r).
SmashAlgebraPtr double_algebra(const GroupSchemeSpec& g, unsigned r);
/// DT(G_(r)) = k[G_(r+1)] # kG_(r), restriction of the height-(r+1)
/// coadjoint action.
SmashAlgebraPtr extended_double(const GroupSchemeSpec& g, unsigned r);

/// The subalgebra of k[G_(r+1)] generated by p^s-th powers of the
/// designated generators, with its inherited Hopf structure; exponents run
/// over p^s * [0, p^{r+1-s}) per variable.  s = 0 gives back the full
/// coordinate algebra.
DenseAlgebraPtr power_subalgebra(const GroupSchemeSpec& g, unsigned r, unsigned s);

struct OSubalgebra {
  DenseAlgebraPtr algebra;  // k[(G^(r))_(1)] (x) kG_(r), co-opposite coordinate leg
  AlgebraMorphism embedding;  // i_O into the extended double
};
/// O(G_(r)) realized inside DT(G_(r)); the embedding is checked injective
/// and the coordinate leg is checked central in DT.
OSubalgebra o_subalgebra(const GroupSchemeSpec& g, unsigned r);

/// q: DT(G_(r)) ->> D(G_(r)) induced by the monomial truncation
/// k[G_(r+1)] ->> k[G_(r)]; surjective, multiplicative, and a coalgebra
/// map on checked generators.
AlgebraMorphism quotient_to_double(const GroupSchemeSpec& g, unsigned r);

struct TwistedSubalgebra {
  SmashAlgebraPtr algebra;    // k[(G^(s))_(r+1-s)] # kG_(r)
  AlgebraMorphism embedding;  // into the extended double
};
/// The tower member at twist s, 0 <= s <= r: s = 0 recovers DT, s = r
/// recovers the coordinate-by-group part of O.
TwistedSubalgebra twisted_subalgebra(const GroupSchemeSpec& g, unsigned r, unsigned s);

/// nu: k((g^(r))_(1) x G_(r)) -> O(G_(r)), the bijective algebra map
/// sending the truncated-symmetric-algebra generators to the reduced
/// p^r-th power generators.  Not a coalgebra map when G is nonabelian.
struct NuIsomorphism {
  DenseAlgebraPtr source;  // truncated symmetric algebra (x) kG_(r), group-scheme Hopf structure
  AlgebraMorphism map;
};
NuIsomorphism nu_isomorphism(const GroupSchemeSpec& g, unsigned r);

/// Quasilogarithm-induced presentation S(g^*)/I_r -> k[G_(r)].
/// Additive kinds use the identity presentation; Heisenberg3 needs p >= 3
/// and uses the degree-2 truncated matrix logarithm.
struct Quasilog {
  DenseAlgebraPtr source;  // truncated symmetric algebra on g^*
  AlgebraMorphism map;     // bijective algebra morphism onto k[G_(r)]
};
Quasilog quasilogarithm(const GroupSchemeSpec& g, unsigned r);

/// Monomial-lift section sigma of k[G_(r+1)] ->> k[G_(r)] and the induced
/// linear map k[G_(r)] (x) k[(G^(r))_(1)] -> k[G_(r+1)], f (x) y |->
/// sigma(f) y.  `block` is that matrix; freeness of the extended double
/// over O is equivalent to it having full rank, blockwise over the group
/// factor.
struct FreenessCertificate {
  Matrix block;
  unsigned expected_rank = 0;
  bool free = false;
};
FreenessCertificate o_freeness_basis(const GroupSchemeSpec& g, unsigned r);

/// Monomial truncation k[G_(s')] ->> k[G_(s)] for s <= s' as index map:
/// returns the target index of source basis element idx, or -1 when the
/// monomial dies.  For the multiplicative kind exponents reduce mod p^s.
int truncate_index(const GroupSchemeSpec& g, unsigned s_from, unsigned s_to, unsigned idx);

}  // namespace dwb
