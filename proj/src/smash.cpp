#include "dwb/smash.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace dwb {

SmashAlgebra::SmashAlgebra(std::string id, DenseAlgebraPtr b, DenseAlgebraPtr h,
                           SparseTensor action, const CheckPolicy& policy)
    : id_(std::move(id)), b_(std::move(b)), h_(std::move(h)), action_(std::move(action)) {
  require(b_->field()->same_as(*h_->field()), "smash factors over different fields");
  require(b_->has_hopf() && h_->has_hopf(), "smash factors need Hopf data");
  dim_ = b_->dim() * h_->dim();
  std::sort(action_.begin(), action_.end());
  action_.erase(std::remove_if(action_.begin(), action_.end(),
                               [](const TensorTriple& t) { return t.c == 0; }),
                action_.end());
  const unsigned db = b_->dim(), dh = h_->dim();
  for (const auto& t : action_)
    require(t.i < dh && t.j < db && t.k < db, "action tensor index out of range");
  act_offset_.assign(size_t(dh) * db + 1, 0);
  size_t pos = 0;
  for (size_t cell = 0; cell < size_t(dh) * db; ++cell) {
    act_offset_[cell] = static_cast<std::uint32_t>(pos);
    while (pos < action_.size() && size_t(action_[pos].i) * db + action_[pos].j == cell) ++pos;
  }
  act_offset_.back() = static_cast<std::uint32_t>(pos);

  const Field& F = *b_->field();
  unit_.assign(dim_, 0);
  for (unsigned f = 0; f < db; ++f)
    for (unsigned g = 0; g < dh; ++g) {
      FElem c = F.mul(b_->unit()[f], h_->unit()[g]);
      if (c != 0) unit_[flat(f, g)] = c;
    }
  for (const auto& g : b_->generators()) {
    Vec e(dim_, 0);
    for (unsigned f = 0; f < db; ++f)
      for (unsigned x = 0; x < dh; ++x) {
        FElem c = F.mul(g.element[f], h_->unit()[x]);
        if (c != 0) e[flat(f, x)] = c;
      }
    gens_.push_back({g.label + "#1", std::move(e), g.power_order});
  }
  b_gen_count_ = static_cast<unsigned>(gens_.size());
  for (const auto& g : h_->generators()) {
    Vec e(dim_, 0);
    for (unsigned f = 0; f < db; ++f)
      for (unsigned x = 0; x < dh; ++x) {
        FElem c = F.mul(b_->unit()[f], g.element[x]);
        if (c != 0) e[flat(f, x)] = c;
      }
    gens_.push_back({"1#" + g.label, std::move(e), g.power_order});
  }
  if (!policy.skip) check_action_axioms(policy);
}

std::string SmashAlgebra::basis_label(unsigned i) const {
  return b_->basis_label(f_part(i)) + "#" + h_->basis_label(h_part(i));
}

SVec SmashAlgebra::act_basis(std::uint32_t h, std::uint32_t f) const {
  const unsigned db = b_->dim();
  SVec out;
  for (size_t t = act_offset_[size_t(h) * db + f]; t < act_offset_[size_t(h) * db + f + 1]; ++t)
    out.emplace_back(action_[t].k, action_[t].c);
  return out;
}

SVec SmashAlgebra::act(const SVec& h, const SVec& f) const {
  const Field& F = *b_->field();
  std::map<std::uint32_t, FElem> acc;
  for (const auto& [hi, hc] : h)
    for (const auto& [fj, fc] : f) {
      FElem s = F.mul(hc, fc);
      if (s == 0) continue;
      for (const auto& [k, c] : act_basis(hi, fj)) {
        auto [it, fresh] = acc.emplace(k, F.mul(s, c));
        if (!fresh) it->second = F.add(it->second, F.mul(s, c));
      }
    }
  SVec out;
  for (const auto& [k, c] : acc)
    if (c != 0) out.emplace_back(k, c);
  return out;
}

SVec SmashAlgebra::mult_sparse(const SVec& x, const SVec& y) const {
  const Field& F = *b_->field();
  // per-basis coproduct slices of H
  const auto& cop = h_->hopf().coproduct;
  std::map<std::uint32_t, FElem> acc;
  for (const auto& [xi, xc] : x) {
    const std::uint32_t fx = f_part(xi), hx = h_part(xi);
    auto first = std::lower_bound(cop.begin(), cop.end(), TensorTriple{hx, 0, 0, 0});
    auto last = std::lower_bound(cop.begin(), cop.end(), TensorTriple{hx + 1, 0, 0, 0});
    for (const auto& [yj, yc] : y) {
      const std::uint32_t fy = f_part(yj), hy = h_part(yj);
      const FElem cxy = F.mul(xc, yc);
      if (cxy == 0) continue;
      for (auto it = first; it != last; ++it) {
        // h splits as h1 (x) h2 with coefficient it->c
        SVec moved = act_basis(it->j, fy);           // h1 . f'
        SVec bprod = b_->mult_sparse({{fx, 1}}, moved);  // f (h1 . f')
        SVec hprod = h_->basis_product(it->k, hy);   // h2 h'
        FElem base = F.mul(cxy, it->c);
        for (const auto& [bk, bc] : bprod)
          for (const auto& [hk, hc] : hprod) {
            FElem c = F.mul(base, F.mul(bc, hc));
            if (c == 0) continue;
            std::uint32_t idx = flat(bk, hk);
            auto [slot, fresh] = acc.emplace(idx, c);
            if (!fresh) slot->second = F.add(slot->second, c);
          }
      }
    }
  }
  SVec out;
  for (const auto& [k, c] : acc)
    if (c != 0) out.emplace_back(k, c);
  return out;
}

Vec SmashAlgebra::mult(const Vec& x, const Vec& y) const {
  return to_dense(mult_sparse(to_sparse(x), to_sparse(y)), dim_);
}

FElem SmashAlgebra::augment(const Vec& x) const {
  const Field& F = *b_->field();
  FElem acc = 0;
  for (std::uint32_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    FElem c = F.mul(b_->augmentation_covector()[f_part(i)],
                    h_->augmentation_covector()[h_part(i)]);
    if (c != 0) acc = F.add(acc, F.mul(x[i], c));
  }
  return acc;
}

Matrix SmashAlgebra::left_mult_matrix(const Vec& x) const {
  require_usage(dim_ <= kMaxMatrixDim, "left multiplication matrix exceeds the dense guard");
  Matrix out(field(), dim_, dim_);
  SVec xs = to_sparse(x);
  for (std::uint32_t j = 0; j < dim_; ++j) {
    SVec col = mult_sparse(xs, {{j, 1}});
    for (const auto& [k, c] : col) out(k, j) = c;
  }
  return out;
}

Matrix SmashAlgebra::basis_action(unsigned idx, const std::vector<Matrix>& gen_actions) const {
  require(gen_actions.size() == gens_.size(), "generator action count mismatch");
  std::vector<Matrix> bacts(gen_actions.begin(), gen_actions.begin() + b_gen_count_);
  std::vector<Matrix> hacts(gen_actions.begin() + b_gen_count_, gen_actions.end());
  Matrix fb = b_->basis_action(f_part(idx), bacts);
  Matrix fh = h_->basis_action(h_part(idx), hacts);
  return fb.mul(fh);
}

std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>>
SmashAlgebra::generator_coproduct(unsigned gen_idx) const {
  require(gen_idx < gens_.size(), "generator index out of range");
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>> out;
  if (gen_idx < b_gen_count_) {
    // co-opposite coproduct of the coordinate factor, embedded along f -> f#1
    const auto inner = b_->generator_coproduct(gen_idx);
    const std::uint32_t one_h = 0;  // unit of H is basis element 0 in catalog algebras
    require(h_->unit()[0] == 1, "smash factor H must have basis element 0 as unit");
    for (const auto& [jk, c] : inner)
      out.push_back({{flat(jk.second, one_h), flat(jk.first, one_h)}, c});
  } else {
    const auto inner = h_->generator_coproduct(gen_idx - b_gen_count_);
    const std::uint32_t one_b = 0;
    require(b_->unit()[0] == 1, "smash factor B must have basis element 0 as unit");
    for (const auto& [jk, c] : inner)
      out.push_back({{flat(one_b, jk.first), flat(one_b, jk.second)}, c});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Vec SmashAlgebra::antipode(const Vec&) const {
  throw usage_error("lazy smash carries no antipode; use dense_realization");
}

std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>>
SmashAlgebra::basis_coproduct(std::uint32_t idx) const {
  const Field& F = *b_->field();
  const auto& bcop = b_->hopf().coproduct;
  const auto& hcop = h_->hopf().coproduct;
  const std::uint32_t f = f_part(idx), h = h_part(idx);
  auto bfirst = std::lower_bound(bcop.begin(), bcop.end(), TensorTriple{f, 0, 0, 0});
  auto blast = std::lower_bound(bcop.begin(), bcop.end(), TensorTriple{f + 1, 0, 0, 0});
  auto hfirst = std::lower_bound(hcop.begin(), hcop.end(), TensorTriple{h, 0, 0, 0});
  auto hlast = std::lower_bound(hcop.begin(), hcop.end(), TensorTriple{h + 1, 0, 0, 0});
  std::map<std::pair<std::uint32_t, std::uint32_t>, FElem> acc;
  for (auto bt = bfirst; bt != blast; ++bt)
    for (auto ht = hfirst; ht != hlast; ++ht) {
      // (f_2 # h_1) (x) (f_1 # h_2)
      auto key = std::make_pair(flat(bt->k, ht->j), flat(bt->j, ht->k));
      FElem c = F.mul(bt->c, ht->c);
      auto [it, fresh] = acc.emplace(key, c);
      if (!fresh) it->second = F.add(it->second, c);
    }
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>> out;
  for (const auto& [k, c] : acc)
    if (c != 0) out.emplace_back(k, c);
  return out;
}

void SmashAlgebra::check_action_axioms(const CheckPolicy& policy) const {
  const Field& F = *b_->field();
  const unsigned db = b_->dim(), dh = h_->dim();
  // unital: 1_H . f = f  (catalog H algebras have unit = basis 0)
  SVec hunit = to_sparse(h_->unit());
  for (unsigned f = 0; f < db; ++f) {
    SVec got = act(hunit, {{f, 1}});
    require(got == SVec{{f, 1}}, id_ + ": action is not unital at basis " + std::to_string(f));
  }
  // h . 1_B = eps(h) 1_B for every basis element of H
  SVec bunit = to_sparse(b_->unit());
  for (unsigned h = 0; h < dh; ++h) {
    SVec got = act({{h, 1}}, bunit);
    FElem eps = h_->augmentation_covector()[h];
    SVec expect;
    for (const auto& [i, c] : bunit) {
      FElem x = F.mul(eps, c);
      if (x != 0) expect.emplace_back(i, x);
    }
    require(got == expect, id_ + ": h.1 != eps(h) 1 at H basis " + std::to_string(h));
  }
  // compatibility with the H product: (h h') . f = h . (h' . f)
  auto check_assoc = [&](std::uint32_t h1, std::uint32_t h2, std::uint32_t f) {
    SVec lhs = act(h_->basis_product(h1, h2), {{f, 1}});
    SVec rhs = act({{h1, 1}}, act({{h2, 1}}, {{f, 1}}));
    require(lhs == rhs, id_ + ": action incompatible with the H product");
  };
  // module-algebra law: h . (f f') = sum (h_1 . f)(h_2 . f')
  const auto& hcop = h_->hopf().coproduct;
  auto check_ma = [&](std::uint32_t h, std::uint32_t f1, std::uint32_t f2) {
    SVec lhs = act({{h, 1}}, b_->basis_product(f1, f2));
    auto first = std::lower_bound(hcop.begin(), hcop.end(), TensorTriple{h, 0, 0, 0});
    auto last = std::lower_bound(hcop.begin(), hcop.end(), TensorTriple{h + 1, 0, 0, 0});
    std::map<std::uint32_t, FElem> acc;
    for (auto it = first; it != last; ++it) {
      SVec a = act_basis(it->j, f1);
      SVec b = act_basis(it->k, f2);
      for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b)
          for (const auto& [k, c] : b_->basis_product(ka, kb)) {
            FElem v = F.mul(F.mul(it->c, F.mul(ca, cb)), c);
            if (v == 0) continue;
            auto [slot, fresh] = acc.emplace(k, v);
            if (!fresh) slot->second = F.add(slot->second, v);
          }
    }
    SVec rhs;
    for (const auto& [k, c] : acc)
      if (c != 0) rhs.emplace_back(k, c);
    require(lhs == rhs, id_ + ": module-algebra law fails at (h,f,f') = (" + std::to_string(h) +
                            "," + std::to_string(f1) + "," + std::to_string(f2) + ")");
  };
  std::mt19937_64 rng(policy.seed);
  std::uniform_int_distribution<std::uint32_t> pickb(0, db - 1), pickh(0, dh - 1);
  if (size_t(db) * db * dh <= 1u << 18) {
    for (std::uint32_t h = 0; h < dh; ++h)
      for (std::uint32_t f1 = 0; f1 < db; ++f1)
        for (std::uint32_t f2 = 0; f2 < db; ++f2) check_ma(h, f1, f2);
    for (std::uint32_t h1 = 0; h1 < dh; ++h1)
      for (std::uint32_t h2 = 0; h2 < dh; ++h2)
        for (std::uint32_t f = 0; f < db; ++f) check_assoc(h1, h2, f);
  } else {
    // generator support indices first, then seeded samples
    std::vector<std::uint32_t> hgen, bgen;
    for (const auto& g : h_->generators())
      for (const auto& [i, c] : to_sparse(g.element)) hgen.push_back(i);
    for (const auto& g : b_->generators())
      for (const auto& [i, c] : to_sparse(g.element)) bgen.push_back(i);
    for (auto h : hgen)
      for (auto f1 : bgen)
        for (auto f2 : bgen) check_ma(h, f1, f2);
    for (auto h1 : hgen)
      for (auto h2 : hgen)
        for (auto f : bgen) check_assoc(h1, h2, f);
    for (unsigned s = 0; s < std::max(policy.samples / 10, 200u); ++s) {
      check_ma(pickh(rng), pickb(rng), pickb(rng));
      check_assoc(pickh(rng), pickh(rng), pickb(rng));
    }
  }
}

SmashAlgebraPtr smash_product(std::string id, DenseAlgebraPtr b, DenseAlgebraPtr h,
                              SparseTensor action, const CheckPolicy& policy) {
  return std::make_shared<SmashAlgebra>(std::move(id), std::move(b), std::move(h),
                                        std::move(action), policy);
}

DenseAlgebraPtr dense_realization(const SmashAlgebra& s, const CheckPolicy& policy,
                                  const std::string& id_override) {
  require_usage(s.dim() <= kMaxMatrixDim, "dense realization exceeds the dimension guard");
  const Field& F = *s.field();
  const unsigned dim = s.dim();
  SparseTensor mult;
  for (std::uint32_t i = 0; i < dim; ++i)
    for (std::uint32_t j = 0; j < dim; ++j)
      for (const auto& [k, c] : s.mult_sparse({{i, 1}}, {{j, 1}}))
        mult.push_back({i, j, k, c});
  std::vector<std::string> labels;
  for (unsigned i = 0; i < dim; ++i) labels.push_back(s.basis_label(i));
  Vec aug(dim, 0);
  for (unsigned i = 0; i < dim; ++i) {
    Vec e(dim, 0);
    e[i] = 1;
    aug[i] = s.augment(e);
  }
  const DenseAlgebra& B = *s.b_factor();
  const DenseAlgebra& H = *s.h_factor();
  HopfData hd;
  HopfData bcop = co_opposite(B.hopf());
  const unsigned dh = H.dim();
  for (const auto& bt : bcop.coproduct)
    for (const auto& ht : H.hopf().coproduct) {
      FElem c = F.mul(bt.c, ht.c);
      if (c != 0)
        hd.coproduct.push_back({bt.i * dh + ht.i, bt.j * dh + ht.j, bt.k * dh + ht.k, c});
    }
  hd.counit.assign(dim, 0);
  for (unsigned f = 0; f < B.dim(); ++f)
    for (unsigned h = 0; h < dh; ++h)
      hd.counit[f * dh + h] = F.mul(B.hopf().counit[f], H.hopf().counit[h]);
  if (B.has_antipode() && H.has_antipode()) {
    hd.antipode = Matrix(s.field(), dim, dim);
    for (std::uint32_t f = 0; f < B.dim(); ++f)
      for (std::uint32_t h = 0; h < dh; ++h) {
        // S(f#h) = (1 # S_H(h)) (S_B(f) # 1)
        Vec sb = B.antipode(to_dense(SVec{{f, 1}}, B.dim()));
        Vec sh = H.antipode(to_dense(SVec{{h, 1}}, dh));
        SVec left, right;
        for (std::uint32_t x = 0; x < dh; ++x)
          if (sh[x] != 0) left.emplace_back(s.flat(0, x), sh[x]);
        for (std::uint32_t x = 0; x < B.dim(); ++x)
          if (sb[x] != 0) right.emplace_back(s.flat(x, 0), sb[x]);
        require(B.unit()[0] == 1 && H.unit()[0] == 1, "smash factors must have unit at basis 0");
        SVec prod = s.mult_sparse(left, right);
        for (const auto& [k, c] : prod) hd.antipode(k, f * dh + h) = c;
      }
  } else {
    hd.antipode = Matrix();
  }
  std::vector<Generator> gens;
  for (const auto& g : s.generators()) gens.push_back(g);
  return std::make_shared<DenseAlgebra>(id_override.empty() ? s.id() + ":dense" : id_override,
                                        s.field(), std::move(labels), std::move(mult), s.unit(),
                                        std::move(aug), std::move(gens), std::move(hd), policy);
}

SparseTensor trivial_action(const DenseAlgebra& b, const DenseAlgebra& h) {
  SparseTensor out;
  for (std::uint32_t x = 0; x < h.dim(); ++x) {
    FElem eps = h.augmentation_covector()[x];
    if (eps == 0) continue;
    for (std::uint32_t f = 0; f < b.dim(); ++f) out.push_back({x, f, f, eps});
  }
  return out;
}

SmashAlgebraPtr base_change(const SmashAlgebraPtr& s, const FieldPtr& bigger) {
  if (bigger->e() == 1) return s;
  CheckPolicy skip;
  skip.skip = true;
  return std::make_shared<SmashAlgebra>(s->id() + "@F" + std::to_string(bigger->q()),
                                        base_change(s->b_factor(), bigger),
                                        base_change(s->h_factor(), bigger), s->action_tensor(),
                                        skip);
}

}  // namespace dwb
