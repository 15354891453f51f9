#include "dwb/algebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <tuple>

namespace dwb {

SVec to_sparse(const Vec& v) {
  SVec out;
  for (std::uint32_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.emplace_back(i, v[i]);
  return out;
}

Vec to_dense(const SVec& v, unsigned dim) {
  Vec out(dim, 0);
  for (const auto& [i, c] : v) out[i] = c;
  return out;
}

HopfData co_opposite(const HopfData& hd) {
  HopfData out = hd;
  for (auto& t : out.coproduct) std::swap(t.j, t.k);
  std::sort(out.coproduct.begin(), out.coproduct.end());
  return out;
}

Matrix Algebra::element_action(const Vec& x, const std::vector<Matrix>& gen_actions) const {
  require(!gen_actions.empty(), "missing generator actions");
  unsigned d = gen_actions[0].rows();
  const FieldPtr& F = gen_actions[0].field();
  Matrix out(F, d, d);
  for (std::uint32_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    out = out.add(basis_action(i, gen_actions).scale(x[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// DenseAlgebra

namespace {

using TensorSquare = std::map<std::pair<std::uint32_t, std::uint32_t>, FElem>;

void ts_add(TensorSquare& m, std::uint32_t a, std::uint32_t b, FElem c, const Field& F) {
  if (c == 0) return;
  auto [it, fresh] = m.emplace(std::make_pair(a, b), c);
  if (!fresh) {
    it->second = F.add(it->second, c);
    if (it->second == 0) m.erase(it);
  }
}

}  // namespace

DenseAlgebra::DenseAlgebra(std::string id, FieldPtr field, std::vector<std::string> basis_labels,
                           SparseTensor mult, Vec unit, Vec augmentation,
                           std::vector<Generator> generators, std::optional<HopfData> hopf,
                           const CheckPolicy& policy)
    : id_(std::move(id)),
      field_(std::move(field)),
      dim_(static_cast<unsigned>(basis_labels.size())),
      labels_(std::move(basis_labels)),
      mult_(std::move(mult)),
      unit_(std::move(unit)),
      augment_(std::move(augmentation)),
      gens_(std::move(generators)),
      hopf_(std::move(hopf)),
      policy_(policy) {
  require_usage(dim_ <= kMaxMatrixDim, "algebra dimension exceeds guard");
  require(unit_.size() == dim_ && augment_.size() == dim_, "unit/augmentation length mismatch");
  auto canonicalize = [this](SparseTensor& t) {
    std::sort(t.begin(), t.end());
    SparseTensor merged;
    const Field& F = *field_;
    for (const auto& e : t) {
      require(e.i < dim_ && e.j < dim_ && e.k < dim_, "structure tensor index out of range");
      if (!merged.empty() && merged.back().i == e.i && merged.back().j == e.j &&
          merged.back().k == e.k) {
        merged.back().c = F.add(merged.back().c, e.c);
      } else {
        merged.push_back(e);
      }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const TensorTriple& x) { return x.c == 0; }),
                 merged.end());
    t = std::move(merged);
  };
  canonicalize(mult_);
  if (hopf_) canonicalize(hopf_->coproduct);
  if (dim_ <= 1024) {
    pair_offset_.assign(size_t(dim_) * dim_ + 1, 0);
    size_t pos = 0;
    for (size_t cell = 0; cell < size_t(dim_) * dim_; ++cell) {
      pair_offset_[cell] = static_cast<std::uint32_t>(pos);
      while (pos < mult_.size() &&
             size_t(mult_[pos].i) * dim_ + mult_[pos].j == cell)
        ++pos;
    }
    pair_offset_.back() = static_cast<std::uint32_t>(pos);
  }
  build_monomial_table();
  if (!policy_.skip) {
    check_algebra_axioms();
    if (hopf_) check_hopf_axioms_internal();
  }
}

SVec DenseAlgebra::basis_product(unsigned i, unsigned j) const {
  size_t lo, hi;
  if (!pair_offset_.empty()) {
    lo = pair_offset_[size_t(i) * dim_ + j];
    hi = pair_offset_[size_t(i) * dim_ + j + 1];
  } else {
    auto first = std::lower_bound(mult_.begin(), mult_.end(), TensorTriple{i, j, 0, 0});
    auto last = std::lower_bound(mult_.begin(), mult_.end(), TensorTriple{i, j + 1, 0, 0});
    lo = static_cast<size_t>(first - mult_.begin());
    hi = static_cast<size_t>(last - mult_.begin());
  }
  SVec out;
  out.reserve(hi - lo);
  for (size_t t = lo; t < hi; ++t) out.emplace_back(mult_[t].k, mult_[t].c);
  return out;
}

Vec DenseAlgebra::mult(const Vec& x, const Vec& y) const {
  require(x.size() == dim_ && y.size() == dim_, "element length mismatch");
  const Field& F = *field_;
  Vec out(dim_, 0);
  for (const auto& t : mult_) {
    if (x[t.i] == 0 || y[t.j] == 0) continue;
    out[t.k] = F.add(out[t.k], F.mul(F.mul(x[t.i], y[t.j]), t.c));
  }
  return out;
}

SVec DenseAlgebra::mult_sparse(const SVec& x, const SVec& y) const {
  const Field& F = *field_;
  std::map<std::uint32_t, FElem> acc;
  for (const auto& [i, xc] : x)
    for (const auto& [j, yc] : y) {
      FElem xy = F.mul(xc, yc);
      if (xy == 0) continue;
      for (const auto& [k, c] : basis_product(i, j)) {
        auto [it, fresh] = acc.emplace(k, F.mul(xy, c));
        if (!fresh) it->second = F.add(it->second, F.mul(xy, c));
      }
    }
  SVec out;
  for (const auto& [k, c] : acc)
    if (c != 0) out.emplace_back(k, c);
  return out;
}

FElem DenseAlgebra::augment(const Vec& x) const {
  const Field& F = *field_;
  FElem acc = 0;
  for (unsigned i = 0; i < dim_; ++i)
    if (x[i] != 0 && augment_[i] != 0) acc = F.add(acc, F.mul(x[i], augment_[i]));
  return acc;
}

Matrix DenseAlgebra::left_mult_matrix(const Vec& x) const {
  const Field& F = *field_;
  Matrix out(field_, dim_, dim_);
  for (const auto& t : mult_) {
    if (x[t.i] == 0) continue;
    out(t.k, t.j) = F.add(out(t.k, t.j), F.mul(x[t.i], t.c));
  }
  return out;
}

Matrix DenseAlgebra::basis_action(unsigned idx, const std::vector<Matrix>& gen_actions) const {
  require(!mono_exps_.empty(), "algebra has no monomial generator basis");
  require(gen_actions.size() == gens_.size(), "generator action count mismatch");
  const FieldPtr F = gen_actions.empty() ? field_ : gen_actions[0].field();
  unsigned d = gen_actions.empty() ? 0 : gen_actions[0].rows();
  Matrix out(F, d, d);
  for (unsigned m = 0; m < mono_exps_.size(); ++m) {
    FElem c = mono_expand_(m, idx);
    if (c == 0) continue;
    Matrix mono = Matrix::identity(F, d);
    for (size_t g = 0; g < gens_.size(); ++g)
      for (unsigned rep = 0; rep < mono_exps_[m][g]; ++rep) mono = mono.mul(gen_actions[g]);
    out = out.add(mono.scale(c));
  }
  return out;
}

std::vector<Matrix> DenseAlgebra::representation(const std::vector<Matrix>& gen_actions) const {
  require(!mono_exps_.empty(), "algebra has no monomial generator basis");
  require(gen_actions.size() == gens_.size(), "generator action count mismatch");
  const FieldPtr F = gen_actions.empty() ? field_ : gen_actions[0].field();
  unsigned d = gen_actions.empty() ? 0 : gen_actions[0].rows();
  require_usage(double(dim_) * d * d <= 6.7e7, "representation too large to materialize");
  // powers of each generator action up to its order
  std::vector<std::vector<Matrix>> pows(gens_.size());
  for (size_t g = 0; g < gens_.size(); ++g) {
    pows[g].push_back(Matrix::identity(F, d));
    for (unsigned e = 1; e < gens_[g].power_order; ++e)
      pows[g].push_back(pows[g].back().mul(gen_actions[g]));
  }
  std::vector<Matrix> monos(mono_exps_.size());
  for (unsigned m = 0; m < mono_exps_.size(); ++m) {
    Matrix acc = Matrix::identity(F, d);
    for (size_t g = 0; g < gens_.size(); ++g)
      if (mono_exps_[m][g] > 0) acc = acc.mul(pows[g][mono_exps_[m][g]]);
    monos[m] = std::move(acc);
  }
  std::vector<Matrix> rep;
  rep.reserve(dim_);
  for (unsigned k = 0; k < dim_; ++k) {
    Matrix acc(F, d, d);
    for (unsigned m = 0; m < mono_exps_.size(); ++m) {
      FElem c = mono_expand_(m, k);
      if (c != 0) acc = acc.add(monos[m].scale(c));
    }
    rep.push_back(std::move(acc));
  }
  return rep;
}

const HopfData& DenseAlgebra::hopf() const {
  require(hopf_.has_value(), "algebra " + id_ + " carries no Hopf data");
  return *hopf_;
}

std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>>
DenseAlgebra::generator_coproduct(unsigned gen_idx) const {
  require(gen_idx < gens_.size(), "generator index out of range");
  return coproduct_of(gens_[gen_idx].element);
}

std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>>
DenseAlgebra::coproduct_of(const Vec& x) const {
  const Field& F = *field_;
  TensorSquare acc;
  for (const auto& t : hopf().coproduct)
    if (x[t.i] != 0) ts_add(acc, t.j, t.k, F.mul(x[t.i], t.c), F);
  return {acc.begin(), acc.end()};
}

Vec DenseAlgebra::antipode(const Vec& x) const {
  require(has_antipode(), "algebra " + id_ + " carries no antipode");
  return hopf_->antipode.apply(x);
}

std::optional<unsigned> DenseAlgebra::augmentation_nilpotency() const {
  if (aug_nilp_cache_) return *aug_nilp_cache_;
  require_usage(dim_ <= 512, "nilpotency computation guarded at dim 512");
  const Field& F = *field_;
  Matrix cov(field_, 1, dim_);
  for (unsigned i = 0; i < dim_; ++i) cov(0, i) = augment_[i];
  Matrix rad = kernel_basis(cov);
  // I^{m+1} = sum_g I^m * gbar when the ordered generator monomials form a
  // basis (every monomial splits off its rightmost factor); otherwise fall
  // back to products against the whole radical.
  std::vector<Matrix> right_mults;
  if (!mono_exps_.empty()) {
    for (const auto& g : gens_) {
      Vec gbar = g.element;
      FElem e = augment(gbar);
      for (unsigned i = 0; i < dim_; ++i) gbar[i] = F.sub(gbar[i], F.mul(e, unit_[i]));
      Matrix rm(field_, dim_, dim_);
      for (const auto& t : mult_) {
        if (gbar[t.j] == 0) continue;
        rm(t.k, t.i) = F.add(rm(t.k, t.i), F.mul(gbar[t.j], t.c));
      }
      right_mults.push_back(std::move(rm));
    }
  } else {
    require_usage(dim_ <= 128, "nilpotency without a monomial basis guarded at dim 128");
    for (unsigned c = 0; c < rad.cols(); ++c) {
      Vec r = rad.col(c);
      Matrix rm(field_, dim_, dim_);
      for (const auto& t : mult_) {
        if (r[t.j] == 0) continue;
        rm(t.k, t.i) = F.add(rm(t.k, t.i), F.mul(r[t.j], t.c));
      }
      right_mults.push_back(std::move(rm));
    }
  }
  Matrix cur = rad;
  for (unsigned m = 1; m <= dim_ + 1; ++m) {
    if (cur.cols() == 0) {
      aug_nilp_cache_ = std::optional<unsigned>(m);
      return *aug_nilp_cache_;
    }
    ColumnSpace next(field_, dim_);
    for (const auto& rm : right_mults) {
      Matrix img = rm.mul(cur);
      for (unsigned c = 0; c < img.cols(); ++c) next.insert(img.col(c));
    }
    Matrix nb = next.basis();
    if (nb.cols() == cur.cols()) {
      aug_nilp_cache_ = std::optional<unsigned>(std::nullopt);
      return *aug_nilp_cache_;
    }
    cur = nb;
  }
  aug_nilp_cache_ = std::optional<unsigned>(std::nullopt);
  return *aug_nilp_cache_;
}

void DenseAlgebra::build_monomial_table() {
  mono_exps_.clear();
  if (gens_.empty()) return;
  std::uint64_t count = 1;
  for (const auto& g : gens_) {
    require(g.power_order >= 1, "generator power order must be >= 1");
    count *= g.power_order;
    if (count > dim_) return;  // no monomial basis of the right size
  }
  if (count != dim_) return;
  // enumerate exponent tuples, first generator fastest; each monomial is
  // the previous one at the lowest nonzero exponent times that generator
  // on the left, preserving the ordered-product convention
  std::vector<unsigned> exps(gens_.size(), 0);
  std::vector<std::uint64_t> stride(gens_.size(), 1);
  for (size_t g = 1; g < gens_.size(); ++g)
    stride[g] = stride[g - 1] * gens_[g - 1].power_order;
  std::vector<Vec> cols;
  for (std::uint64_t n = 0; n < count; ++n) {
    std::uint64_t v = n;
    for (size_t g = 0; g < gens_.size(); ++g) {
      exps[g] = static_cast<unsigned>(v % gens_[g].power_order);
      v /= gens_[g].power_order;
    }
    mono_exps_.push_back(exps);
    if (n == 0) {
      cols.push_back(unit_);
      continue;
    }
    size_t low = 0;
    while (exps[low] == 0) ++low;
    SVec prod = mult_sparse(to_sparse(gens_[low].element), to_sparse(cols[n - stride[low]]));
    cols.push_back(to_dense(prod, dim_));
  }
  Matrix T = Matrix::from_cols(field_, dim_, cols);
  if (rank(T) != dim_) {
    mono_exps_.clear();
    return;
  }
  mono_expand_ = inverse(T);
}

void DenseAlgebra::check_algebra_axioms() const {
  const Field& F = *field_;
  // unit laws, exhaustively (cheap)
  for (unsigned i = 0; i < dim_; ++i) {
    Vec b(dim_, 0);
    b[i] = 1;
    require(mult(unit_, b) == b, id_ + ": left unit law fails at basis " + std::to_string(i));
    require(mult(b, unit_) == b, id_ + ": right unit law fails at basis " + std::to_string(i));
  }
  require(augment(unit_) == 1, id_ + ": augmentation of the unit is not 1");
  auto check_triple = [&](unsigned i, unsigned j, unsigned k) {
    // (b_i b_j) b_k vs b_i (b_j b_k), sparse route
    SVec bi{{i, 1}}, bj{{j, 1}}, bk{{k, 1}};
    SVec lhs = mult_sparse(mult_sparse(bi, bj), bk);
    SVec rhs = mult_sparse(bi, mult_sparse(bj, bk));
    require(lhs == rhs, id_ + ": associativity fails at (" + std::to_string(i) + "," +
                            std::to_string(j) + "," + std::to_string(k) + ")");
  };
  auto check_pair_aug = [&](unsigned i, unsigned j) {
    FElem lhs = 0;
    for (const auto& [k, c] : basis_product(i, j))
      if (augment_[k] != 0) lhs = F.add(lhs, F.mul(c, augment_[k]));
    require(lhs == F.mul(augment_[i], augment_[j]),
            id_ + ": augmentation is not multiplicative at (" + std::to_string(i) + "," +
                std::to_string(j) + ")");
  };
  if (dim_ <= policy_.exhaustive_limit) {
    for (unsigned i = 0; i < dim_; ++i)
      for (unsigned j = 0; j < dim_; ++j) {
        check_pair_aug(i, j);
        for (unsigned k = 0; k < dim_; ++k) check_triple(i, j, k);
      }
  } else {
    std::mt19937_64 rng(policy_.seed);
    std::uniform_int_distribution<unsigned> pick(0, dim_ - 1);
    for (unsigned s = 0; s < policy_.samples; ++s) {
      unsigned i = pick(rng), j = pick(rng), k = pick(rng);
      check_triple(i, j, k);
      check_pair_aug(i, j);
    }
  }
}

void DenseAlgebra::check_hopf_axioms_internal() const {
  AxiomReport rep = dwb::check_hopf_axioms(*this, policy_);
  if (!rep.ok()) throw check_error(id_ + ": " + rep.violations.front());
}

AxiomReport check_hopf_axioms(const DenseAlgebra& a, const CheckPolicy& policy) {
  AxiomReport rep;
  rep.seed = policy.seed;
  const Field& F = *a.field();
  const unsigned dim = a.dim();
  const HopfData& hd = a.hopf();
  rep.exhaustive = dim <= policy.exhaustive_limit;

  // per-basis coproduct slices
  std::vector<std::vector<TensorTriple>> cop(dim);
  for (const auto& t : hd.coproduct) cop[t.i].push_back(t);

  auto check_element = [&](unsigned i) {
    // counit laws (eps (x) id) Delta = id = (id (x) eps) Delta
    Vec left(dim, 0), right(dim, 0);
    for (const auto& t : cop[i]) {
      if (hd.counit[t.j] != 0) left[t.k] = F.add(left[t.k], F.mul(t.c, hd.counit[t.j]));
      if (hd.counit[t.k] != 0) right[t.j] = F.add(right[t.j], F.mul(t.c, hd.counit[t.k]));
    }
    Vec e(dim, 0);
    e[i] = 1;
    if (left != e)
      rep.violations.push_back("counit law (eps (x) id) fails at basis " + std::to_string(i));
    if (right != e)
      rep.violations.push_back("counit law (id (x) eps) fails at basis " + std::to_string(i));
    // coassociativity
    std::map<std::tuple<unsigned, unsigned, unsigned>, FElem> lhs, rhs;
    for (const auto& t : cop[i]) {
      for (const auto& u : cop[t.j]) {  // Delta on the left leg
        auto key = std::make_tuple(u.j, u.k, t.k);
        FElem add = F.mul(t.c, u.c);
        auto [it, fresh] = lhs.emplace(key, add);
        if (!fresh) it->second = F.add(it->second, add);
      }
      for (const auto& u : cop[t.k]) {  // Delta on the right leg
        auto key = std::make_tuple(t.j, u.j, u.k);
        FElem add = F.mul(t.c, u.c);
        auto [it, fresh] = rhs.emplace(key, add);
        if (!fresh) it->second = F.add(it->second, add);
      }
    }
    for (auto it = lhs.begin(); it != lhs.end();)
      it = it->second == 0 ? lhs.erase(it) : std::next(it);
    for (auto it = rhs.begin(); it != rhs.end();)
      it = it->second == 0 ? rhs.erase(it) : std::next(it);
    if (!(lhs == rhs))
      rep.violations.push_back("coassociativity fails at basis " + std::to_string(i));
    // antipode convolution law m(S (x) id) Delta = unit . eps
    if (a.has_antipode()) {
      Vec conv(dim, 0);
      for (const auto& t : cop[i]) {
        Vec sj(dim, 0);
        for (unsigned r = 0; r < dim; ++r)
          if (hd.antipode(r, t.j) != 0) sj[r] = hd.antipode(r, t.j);
        Vec bk(dim, 0);
        bk[t.k] = 1;
        Vec prod = a.mult(sj, bk);
        for (unsigned r = 0; r < dim; ++r)
          conv[r] = F.add(conv[r], F.mul(t.c, prod[r]));
      }
      Vec expect(dim, 0);
      for (unsigned r = 0; r < dim; ++r) expect[r] = F.mul(hd.counit[i], a.unit()[r]);
      if (conv != expect)
        rep.violations.push_back("antipode convolution law fails at basis " + std::to_string(i));
    }
  };

  auto check_pair = [&](unsigned i, unsigned j) {
    // Delta(b_i b_j) == Delta(b_i) Delta(b_j)
    TensorSquare lhs, rhs;
    for (const auto& [k, c] : a.basis_product(i, j))
      for (const auto& t : cop[k]) ts_add(lhs, t.j, t.k, F.mul(c, t.c), F);
    for (const auto& t : cop[i])
      for (const auto& u : cop[j]) {
        FElem c = F.mul(t.c, u.c);
        for (const auto& [k1, c1] : a.basis_product(t.j, u.j))
          for (const auto& [k2, c2] : a.basis_product(t.k, u.k))
            ts_add(rhs, k1, k2, F.mul(c, F.mul(c1, c2)), F);
      }
    if (!(lhs == rhs))
      rep.violations.push_back("coproduct is not multiplicative at pair (" + std::to_string(i) +
                               "," + std::to_string(j) + ")");
    // counit multiplicative
    FElem l = 0;
    for (const auto& [k, c] : a.basis_product(i, j))
      if (hd.counit[k] != 0) l = F.add(l, F.mul(c, hd.counit[k]));
    if (l != F.mul(hd.counit[i], hd.counit[j]))
      rep.violations.push_back("counit is not multiplicative at pair (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
  };

  // Delta(1) = 1 (x) 1 and eps(1) = 1
  {
    auto d1 = a.coproduct_of(a.unit());
    TensorSquare expect;
    for (unsigned r = 0; r < dim; ++r)
      for (unsigned s = 0; s < dim; ++s)
        ts_add(expect, r, s, F.mul(a.unit()[r], a.unit()[s]), F);
    TensorSquare got(d1.begin(), d1.end());
    if (!(got == expect)) rep.violations.push_back("Delta(1) != 1 (x) 1");
    FElem e1 = 0;
    for (unsigned r = 0; r < dim; ++r)
      if (a.unit()[r] != 0) e1 = F.add(e1, F.mul(a.unit()[r], hd.counit[r]));
    if (e1 != 1) rep.violations.push_back("eps(1) != 1");
  }

  if (rep.exhaustive) {
    for (unsigned i = 0; i < dim && rep.violations.size() < 16; ++i) check_element(i);
    for (unsigned i = 0; i < dim && rep.violations.size() < 16; ++i)
      for (unsigned j = 0; j < dim && rep.violations.size() < 16; ++j) check_pair(i, j);
  } else {
    std::mt19937_64 rng(policy.seed);
    std::uniform_int_distribution<unsigned> pick(0, dim - 1);
    unsigned n = std::max(policy.samples / 10, 100u);
    for (unsigned s = 0; s < n && rep.violations.size() < 16; ++s) {
      check_element(pick(rng));
      check_pair(pick(rng), pick(rng));
    }
  }
  return rep;
}

DenseAlgebraPtr dual_hopf(const DenseAlgebraPtr& a, const std::string& id,
                          std::vector<Generator> dual_generators, const CheckPolicy& policy) {
  const HopfData& hd = a->hopf();
  const unsigned dim = a->dim();
  SparseTensor mult;
  for (const auto& t : hd.coproduct) mult.push_back({t.j, t.k, t.i, t.c});
  SparseTensor cop;
  for (const auto& t : a->mult_tensor()) cop.push_back({t.k, t.i, t.j, t.c});
  HopfData dual_hd;
  dual_hd.coproduct = std::move(cop);
  dual_hd.counit = a->unit();
  dual_hd.antipode = a->has_antipode() ? hd.antipode.transpose() : Matrix();
  std::vector<std::string> labels;
  for (unsigned i = 0; i < dim; ++i) labels.push_back(a->basis_label(i) + "^");
  return std::make_shared<DenseAlgebra>(id, a->field(), std::move(labels), std::move(mult),
                                        hd.counit, a->unit(), std::move(dual_generators),
                                        std::move(dual_hd), policy);
}

bool AlgebraMorphism::injective() const { return rank(matrix) == source->dim(); }
bool AlgebraMorphism::surjective() const { return rank(matrix) == target->dim(); }

AlgebraMorphism make_morphism(AlgebraPtr source, AlgebraPtr target, Matrix matrix,
                              const CheckPolicy& policy) {
  require(matrix.rows() == target->dim() && matrix.cols() == source->dim(),
          "morphism matrix shape mismatch");
  AlgebraMorphism phi{std::move(source), std::move(target), std::move(matrix)};
  if (policy.skip) return phi;
  const Algebra& A = *phi.source;
  const Algebra& B = *phi.target;
  require(phi.matrix.apply(A.unit()) == B.unit(), "morphism does not preserve the unit");
  auto check_pair = [&](const Vec& x, const Vec& y) {
    Vec lhs = phi.matrix.apply(A.mult(x, y));
    Vec rhs = B.mult(phi.matrix.apply(x), phi.matrix.apply(y));
    require(lhs == rhs, "morphism is not multiplicative");
  };
  unsigned dim = A.dim();
  if (dim <= policy.exhaustive_limit) {
    for (unsigned i = 0; i < dim; ++i)
      for (unsigned j = 0; j < dim; ++j) {
        Vec x(dim, 0), y(dim, 0);
        x[i] = 1;
        y[j] = 1;
        check_pair(x, y);
      }
  } else {
    // generator pairs plus seeded random basis pairs
    for (const auto& g : A.generators())
      for (const auto& h : A.generators()) check_pair(g.element, h.element);
    std::mt19937_64 rng(policy.seed);
    std::uniform_int_distribution<unsigned> pick(0, dim - 1);
    for (unsigned s = 0; s < std::max(policy.samples / 10, 100u); ++s) {
      Vec x(dim, 0), y(dim, 0);
      x[pick(rng)] = 1;
      y[pick(rng)] = 1;
      check_pair(x, y);
    }
  }
  return phi;
}

AlgebraMorphism compose(const AlgebraMorphism& outer, const AlgebraMorphism& inner) {
  require(outer.source.get() == inner.target.get() || outer.source->id() == inner.target->id(),
          "morphism composition mismatch");
  return AlgebraMorphism{inner.source, outer.target, outer.matrix.mul(inner.matrix)};
}

DenseAlgebraPtr tensor_algebra(const DenseAlgebraPtr& a, const DenseAlgebraPtr& b,
                               const std::string& id, const CheckPolicy& policy) {
  require(a->field()->same_as(*b->field()), "tensor factors over different fields");
  const Field& F = *a->field();
  const unsigned da = a->dim(), db = b->dim();
  auto flat = [db](unsigned x, unsigned y) { return x * db + y; };
  SparseTensor mult;
  for (const auto& s : a->mult_tensor())
    for (const auto& t : b->mult_tensor())
      mult.push_back({flat(s.i, t.i), flat(s.j, t.j), flat(s.k, t.k), F.mul(s.c, t.c)});
  Vec unit(size_t(da) * db, 0), aug(size_t(da) * db, 0);
  for (unsigned x = 0; x < da; ++x)
    for (unsigned y = 0; y < db; ++y) {
      unit[flat(x, y)] = F.mul(a->unit()[x], b->unit()[y]);
      aug[flat(x, y)] = F.mul(a->augmentation_covector()[x], b->augmentation_covector()[y]);
    }
  std::vector<std::string> labels;
  for (unsigned x = 0; x < da; ++x)
    for (unsigned y = 0; y < db; ++y)
      labels.push_back(a->basis_label(x) + "|" + b->basis_label(y));
  std::vector<Generator> gens;
  for (const auto& g : a->generators()) {
    Vec e(size_t(da) * db, 0);
    for (unsigned x = 0; x < da; ++x)
      for (unsigned y = 0; y < db; ++y) e[flat(x, y)] = F.mul(g.element[x], b->unit()[y]);
    gens.push_back({g.label + "|1", std::move(e), g.power_order});
  }
  for (const auto& g : b->generators()) {
    Vec e(size_t(da) * db, 0);
    for (unsigned x = 0; x < da; ++x)
      for (unsigned y = 0; y < db; ++y) e[flat(x, y)] = F.mul(a->unit()[x], g.element[y]);
    gens.push_back({"1|" + g.label, std::move(e), g.power_order});
  }
  std::optional<HopfData> hopf;
  if (a->has_hopf() && b->has_hopf()) {
    HopfData hd;
    for (const auto& s : a->hopf().coproduct)
      for (const auto& t : b->hopf().coproduct)
        hd.coproduct.push_back({flat(s.i, t.i), flat(s.j, t.j), flat(s.k, t.k), F.mul(s.c, t.c)});
    hd.counit.assign(size_t(da) * db, 0);
    for (unsigned x = 0; x < da; ++x)
      for (unsigned y = 0; y < db; ++y)
        hd.counit[flat(x, y)] = F.mul(a->hopf().counit[x], b->hopf().counit[y]);
    if (a->has_antipode() && b->has_antipode()) {
      hd.antipode = Matrix(a->field(), da * db, da * db);
      for (unsigned x1 = 0; x1 < da; ++x1)
        for (unsigned x2 = 0; x2 < da; ++x2)
          for (unsigned y1 = 0; y1 < db; ++y1)
            for (unsigned y2 = 0; y2 < db; ++y2) {
              FElem c = F.mul(a->hopf().antipode(x1, x2), b->hopf().antipode(y1, y2));
              if (c != 0) hd.antipode(flat(x1, y1), flat(x2, y2)) = c;
            }
    } else {
      hd.antipode = Matrix();
    }
    hopf = std::move(hd);
  }
  return std::make_shared<DenseAlgebra>(id, a->field(), std::move(labels), std::move(mult),
                                        std::move(unit), std::move(aug), std::move(gens),
                                        std::move(hopf), policy);
}

DenseAlgebraPtr base_change(const DenseAlgebraPtr& a, const FieldPtr& bigger) {
  require(bigger->p() == a->field()->p(), "base change must preserve the characteristic");
  require(a->field()->e() == 1, "base change implemented from the prime field");
  if (bigger->e() == 1) return a;
  std::optional<HopfData> hopf;
  if (a->has_hopf()) {
    HopfData hd = a->hopf();
    if (hd.antipode.rows() > 0) {
      Matrix s(bigger, hd.antipode.rows(), hd.antipode.cols());
      s.data() = hd.antipode.data();
      hd.antipode = std::move(s);
    }
    hopf = std::move(hd);
  }
  CheckPolicy skip;
  skip.skip = true;  // tensors already validated over the prime field
  std::vector<std::string> labels;
  for (unsigned i = 0; i < a->dim(); ++i) labels.push_back(a->basis_label(i));
  return std::make_shared<DenseAlgebra>(a->id() + "@F" + std::to_string(bigger->q()), bigger,
                                        std::move(labels), a->mult_tensor(), a->unit(),
                                        a->augmentation_covector(), a->generators(),
                                        std::move(hopf), skip);
}

}  // namespace dwb
