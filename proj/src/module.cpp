#include "dwb/module.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "dwb/smash.hpp"

namespace dwb {

namespace {

Matrix kronecker(const Matrix& a, const Matrix& b) {
  const Field& F = *a.field();
  Matrix out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (unsigned i = 0; i < a.rows(); ++i)
    for (unsigned j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (unsigned k = 0; k < b.rows(); ++k)
        for (unsigned l = 0; l < b.cols(); ++l)
          if (b(k, l) != 0) out(i * b.rows() + k, j * b.cols() + l) = F.mul(a(i, j), b(k, l));
    }
  return out;
}

// rho on basis elements needed for validation and tensor products
std::vector<Matrix> full_representation(const FDModule& m) {
  if (auto dense = dynamic_cast<const DenseAlgebra*>(m.algebra.get()))
    return dense->representation(m.actions);
  throw usage_error("full representation requires a dense algebra");
}

void validate_module(const FDModule& m, const CheckPolicy& policy) {
  const Algebra& A = *m.algebra;
  require(m.actions.size() == A.generators().size(), m.id + ": generator action count mismatch");
  for (const auto& act : m.actions)
    require(act.rows() == m.dim && act.cols() == m.dim, m.id + ": action matrix shape mismatch");
  if (policy.skip) return;
  const Field& F = *(m.dim > 0 && !m.actions.empty() ? m.actions[0].field() : A.field());
  if (auto dense = dynamic_cast<const DenseAlgebra*>(&A)) {
    // rho(g . b_k) = rho(g) rho(b_k) for every generator and basis element
    // forces multiplicativity of the whole induced representation
    auto rep = dense->representation(m.actions);
    Matrix unit_act = m.action_of(A.unit());
    require(unit_act == Matrix::identity(unit_act.field(), m.dim),
            m.id + ": unit does not act as the identity");
    for (size_t g = 0; g < A.generators().size(); ++g) {
      const Vec& ge = A.generators()[g].element;
      for (unsigned k = 0; k < A.dim(); ++k) {
        SVec prod = dense->mult_sparse(to_sparse(ge), {{k, 1}});
        Matrix lhs = m.actions[g].mul(rep[k]);
        Matrix rhs(lhs.field(), m.dim, m.dim);
        for (const auto& [idx, c] : prod) rhs = rhs.add(rep[idx].scale(c));
        require(lhs == rhs, m.id + ": defining relations fail on generator " +
                                A.generators()[g].label + " at basis " + std::to_string(k));
      }
    }
  } else if (auto smash = dynamic_cast<const SmashAlgebra*>(&A)) {
    const DenseAlgebra& B = *smash->b_factor();
    const DenseAlgebra& H = *smash->h_factor();
    const unsigned nb = smash->b_gen_count();
    std::vector<Matrix> bacts(m.actions.begin(), m.actions.begin() + nb);
    std::vector<Matrix> hacts(m.actions.begin() + nb, m.actions.end());
    // factor relations
    auto brep = B.representation(bacts);
    auto hrep = H.representation(hacts);
    for (size_t g = 0; g < B.generators().size(); ++g)
      for (unsigned k = 0; k < B.dim(); ++k) {
        SVec prod = B.mult_sparse(to_sparse(B.generators()[g].element), {{k, 1}});
        Matrix lhs = bacts[g].mul(brep[k]);
        Matrix rhs(lhs.field(), m.dim, m.dim);
        for (const auto& [idx, c] : prod) rhs = rhs.add(brep[idx].scale(c));
        require(lhs == rhs, m.id + ": coordinate-leg relations fail");
      }
    for (size_t g = 0; g < H.generators().size(); ++g)
      for (unsigned k = 0; k < H.dim(); ++k) {
        SVec prod = H.mult_sparse(to_sparse(H.generators()[g].element), {{k, 1}});
        Matrix lhs = hacts[g].mul(hrep[k]);
        Matrix rhs(lhs.field(), m.dim, m.dim);
        for (const auto& [idx, c] : prod) rhs = rhs.add(hrep[idx].scale(c));
        require(lhs == rhs, m.id + ": group-leg relations fail");
      }
    // smash compatibility on generator pairs: h (f . m) = sum (h_1.f)(h_2.m)
    const Field& f = *smash->field();
    for (size_t hg = 0; hg < H.generators().size(); ++hg) {
      SVec hel = to_sparse(H.generators()[hg].element);
      for (size_t bg = 0; bg < B.generators().size(); ++bg) {
        SVec fel = to_sparse(B.generators()[bg].element);
        Matrix lhs = hacts[hg].mul(bacts[bg]);
        Matrix rhs(lhs.field(), m.dim, m.dim);
        const auto& hcop = H.hopf().coproduct;
        for (const auto& [hi, hc] : hel) {
          auto first = std::lower_bound(hcop.begin(), hcop.end(),
                                        TensorTriple{hi, 0, 0, 0});
          auto last = std::lower_bound(hcop.begin(), hcop.end(),
                                       TensorTriple{hi + 1, 0, 0, 0});
          for (auto t = first; t != last; ++t) {
            SVec moved = smash->act(SVec{{t->j, 1}}, fel);  // h_1 . f
            Matrix bpart(lhs.field(), m.dim, m.dim);
            for (const auto& [idx, c] : moved) bpart = bpart.add(brep[idx].scale(c));
            rhs = rhs.add(bpart.mul(hrep[t->k]).scale(f.mul(hc, t->c)));
          }
        }
        require(lhs == rhs, m.id + ": smash compatibility fails on generators " +
                                H.generators()[hg].label + ", " + B.generators()[bg].label);
      }
    }
  }
}

}  // namespace

FDModule make_module(AlgebraPtr algebra, std::string id, std::vector<Matrix> actions,
                     const CheckPolicy& policy) {
  FDModule m;
  m.algebra = std::move(algebra);
  m.id = std::move(id);
  m.dim = actions.empty() ? 0 : actions[0].rows();
  m.actions = std::move(actions);
  validate_module(m, policy);
  return m;
}

FDModule trivial_module(AlgebraPtr algebra) {
  std::vector<Matrix> acts;
  for (const auto& g : algebra->generators()) {
    Matrix a(algebra->field(), 1, 1);
    a(0, 0) = algebra->augment(g.element);
    acts.push_back(std::move(a));
  }
  CheckPolicy skip;
  skip.skip = true;
  return make_module(algebra, "k", std::move(acts), skip);
}

FDModule regular_module(AlgebraPtr algebra) {
  std::vector<Matrix> acts;
  for (const auto& g : algebra->generators()) acts.push_back(algebra->left_mult_matrix(g.element));
  CheckPolicy skip;
  skip.skip = true;
  return make_module(algebra, "regular", std::move(acts), skip);
}

FDModule free_module(AlgebraPtr algebra, unsigned rank) {
  FDModule reg = regular_module(algebra);
  FDModule out = reg;
  if (rank == 0) {
    for (auto& a : out.actions) a = Matrix(algebra->field(), 0, 0);
    out.dim = 0;
  }
  for (unsigned i = 1; i < rank; ++i) out = direct_sum(out, reg);
  out.id = "free^" + std::to_string(rank);
  return out;
}

FDModule restrict_along(const AlgebraMorphism& phi, const FDModule& m) {
  require(phi.target.get() == m.algebra.get() || phi.target->id() == m.algebra->id(),
          "restriction target mismatch");
  std::vector<Matrix> acts;
  for (const auto& g : phi.source->generators())
    acts.push_back(m.action_of(phi.apply(g.element)));
  CheckPolicy skip;
  skip.skip = true;
  return make_module(phi.source, m.id + "|" + phi.source->id(), std::move(acts), skip);
}

GenCoproducts hopf_generator_coproducts(const Algebra& a) {
  GenCoproducts out;
  for (unsigned g = 0; g < a.generators().size(); ++g)
    out.push_back(a.generator_coproduct(g));
  return out;
}

GenCoproducts transported_generator_coproducts(const Algebra& a, const AlgebraMorphism& nu) {
  require(nu.target->id() == a.id(), "transport target mismatch");
  const auto* src = dynamic_cast<const DenseAlgebra*>(nu.source.get());
  require(src != nullptr, "transport source must be dense");
  Matrix inv = inverse(nu.matrix);
  const Field& F = *a.field();
  GenCoproducts out;
  for (const auto& g : a.generators()) {
    Vec pre = inv.apply(g.element);
    auto cop = src->coproduct_of(pre);
    // push both legs through nu
    std::map<std::pair<std::uint32_t, std::uint32_t>, FElem> acc;
    for (const auto& [jk, c] : cop) {
      Vec left = nu.matrix.col(jk.first);
      Vec right = nu.matrix.col(jk.second);
      for (std::uint32_t x = 0; x < left.size(); ++x) {
        if (left[x] == 0) continue;
        for (std::uint32_t y = 0; y < right.size(); ++y) {
          if (right[y] == 0) continue;
          FElem v = F.mul(c, F.mul(left[x], right[y]));
          auto [it, fresh] = acc.emplace(std::make_pair(x, y), v);
          if (!fresh) it->second = F.add(it->second, v);
        }
      }
    }
    std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, FElem>> entry;
    for (const auto& [k, c] : acc)
      if (c != 0) entry.emplace_back(k, c);
    out.push_back(std::move(entry));
  }
  return out;
}

FDModule tensor_modules(const FDModule& m, const FDModule& n, const GenCoproducts& cops,
                        const std::string& id) {
  require(m.algebra->id() == n.algebra->id(), "tensor factors over different algebras");
  require(cops.size() == m.algebra->generators().size(), "coproduct table size mismatch");
  // representations on the basis elements appearing in the coproducts
  std::vector<Matrix> acts;
  const FieldPtr F = m.dim && !m.actions.empty() ? m.actions[0].field() : m.algebra->field();
  for (size_t g = 0; g < cops.size(); ++g) {
    Matrix act(F, m.dim * n.dim, m.dim * n.dim);
    for (const auto& [jk, c] : cops[g]) {
      Vec ej(m.algebra->dim(), 0), ek(n.algebra->dim(), 0);
      ej[jk.first] = 1;
      ek[jk.second] = 1;
      Matrix left = m.algebra->element_action(ej, m.actions);
      Matrix right = n.algebra->element_action(ek, n.actions);
      act = act.add(kronecker(left, right).scale(c));
    }
    acts.push_back(std::move(act));
  }
  CheckPolicy skip;
  skip.skip = true;
  return make_module(m.algebra, id.empty() ? m.id + "(x)" + n.id : id, std::move(acts), skip);
}

FDModule tensor_modules(const FDModule& m, const FDModule& n) {
  return tensor_modules(m, n, hopf_generator_coproducts(*m.algebra));
}

FDModule dual_module(const FDModule& m) {
  require(m.algebra->has_antipode(), "dual module needs an antipode");
  std::vector<Matrix> acts;
  for (const auto& g : m.algebra->generators())
    acts.push_back(m.action_of(m.algebra->antipode(g.element)).transpose());
  CheckPolicy skip;
  skip.skip = true;
  return make_module(m.algebra, m.id + "^*", std::move(acts), skip);
}

FDModule direct_sum(const FDModule& m, const FDModule& n) {
  require(m.algebra->id() == n.algebra->id(), "direct sum over different algebras");
  std::vector<Matrix> acts;
  const FieldPtr F = !m.actions.empty() ? m.actions[0].field() : m.algebra->field();
  for (size_t g = 0; g < m.actions.size(); ++g) {
    Matrix a(F, m.dim + n.dim, m.dim + n.dim);
    for (unsigned i = 0; i < m.dim; ++i)
      for (unsigned j = 0; j < m.dim; ++j) a(i, j) = m.actions[g](i, j);
    for (unsigned i = 0; i < n.dim; ++i)
      for (unsigned j = 0; j < n.dim; ++j) a(m.dim + i, m.dim + j) = n.actions[g](i, j);
    acts.push_back(std::move(a));
  }
  CheckPolicy skip;
  skip.skip = true;
  return make_module(m.algebra, m.id + "(+)" + n.id, std::move(acts), skip);
}

FDModule external_tensor(const FDModule& m, const FDModule& n, const DenseAlgebraPtr& tensor_alg) {
  // generators of the tensor algebra are gens(A) (x) 1 then 1 (x) gens(B)
  std::vector<Matrix> acts;
  Matrix idm = Matrix::identity(m.actions.empty() ? m.algebra->field() : m.actions[0].field(),
                                m.dim);
  Matrix idn = Matrix::identity(idm.field(), n.dim);
  for (const auto& a : m.actions) acts.push_back(kronecker(a, idn));
  for (const auto& a : n.actions) acts.push_back(kronecker(idm, a));
  CheckPolicy skip;
  skip.skip = true;
  return make_module(tensor_alg, m.id + "[x]" + n.id, std::move(acts), skip);
}

bool is_local_algebra(const Algebra& a) {
  if (auto smash = dynamic_cast<const SmashAlgebra*>(&a))
    return is_local_algebra(*smash->b_factor()) && is_local_algebra(*smash->h_factor());
  if (auto dense = dynamic_cast<const DenseAlgebra*>(&a))
    return dense->augmentation_nilpotency().has_value();
  return false;
}

Matrix radical_submodule(const FDModule& m) {
  const Field& F = *(m.actions.empty() ? m.algebra->field() : m.actions[0].field());
  const FieldPtr Fp = m.actions.empty() ? m.algebra->field() : m.actions[0].field();
  ColumnSpace space(Fp, m.dim);
  std::vector<Vec> frontier;
  for (size_t g = 0; g < m.actions.size(); ++g) {
    FElem eps = m.algebra->augment(m.algebra->generators()[g].element);
    Matrix reduced = m.actions[g];
    for (unsigned i = 0; i < m.dim; ++i) reduced(i, i) = F.sub(reduced(i, i), eps);
    for (unsigned c = 0; c < m.dim; ++c) {
      Vec v = reduced.col(c);
      if (space.insert(v)) frontier.push_back(std::move(v));
    }
  }
  // close under the generator actions
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& v : frontier)
      for (const auto& act : m.actions) {
        Vec w = act.apply(v);
        if (space.insert(w)) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  return space.basis();
}

bool is_projective_local(const FDModule& m) {
  require(is_local_algebra(*m.algebra),
          "projectivity test requires a local algebra (augmentation ideal nilpotent); got " +
              m.algebra->id());
  if (m.dim == 0) return true;
  Matrix rad = radical_submodule(m);
  unsigned top = m.dim - rad.cols();
  return size_t(top) * m.algebra->dim() == m.dim;
}

Submodule submodule(const FDModule& m, const std::vector<Vec>& vectors, const std::string& id) {
  const FieldPtr F = m.actions.empty() ? m.algebra->field() : m.actions[0].field();
  ColumnSpace space(F, m.dim);
  std::vector<Vec> frontier;
  for (const auto& v : vectors)
    if (space.insert(v)) frontier.push_back(v);
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& v : frontier)
      for (const auto& act : m.actions) {
        Vec w = act.apply(v);
        if (space.insert(w)) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  Matrix incl = space.basis();
  // generator actions in sub coordinates: solve incl * X = act * incl
  std::vector<Matrix> acts;
  for (const auto& act : m.actions) {
    Matrix img = act.mul(incl);
    Matrix x(F, incl.cols(), incl.cols());
    for (unsigned c = 0; c < img.cols(); ++c) {
      Vec sol;
      require(solve(incl, img.col(c), sol), "submodule is not action-closed");
      x.set_col(c, sol);
    }
    acts.push_back(std::move(x));
  }
  CheckPolicy skip;
  skip.skip = true;
  Submodule out;
  out.module = make_module(m.algebra, id.empty() ? m.id + ":sub" : id, std::move(acts), skip);
  out.inclusion = std::move(incl);
  return out;
}

FDModule quotient_module(const FDModule& m, const Matrix& inclusion, const std::string& id) {
  const FieldPtr F = m.actions.empty() ? m.algebra->field() : m.actions[0].field();
  // complete the submodule basis to a basis of the ambient space
  Matrix basis = inclusion;
  std::vector<unsigned> complement;
  {
    ColumnSpace space(F, m.dim);
    for (unsigned c = 0; c < inclusion.cols(); ++c) space.insert(inclusion.col(c));
    for (unsigned i = 0; i < m.dim; ++i) {
      Vec e(m.dim, 0);
      e[i] = 1;
      if (space.insert(e)) complement.push_back(i);
    }
  }
  unsigned q = static_cast<unsigned>(complement.size());
  Matrix full(F, m.dim, m.dim);
  for (unsigned c = 0; c < inclusion.cols(); ++c) full.set_col(c, inclusion.col(c));
  for (unsigned c = 0; c < q; ++c) {
    Vec e(m.dim, 0);
    e[complement[c]] = 1;
    full.set_col(inclusion.cols() + c, e);
  }
  Matrix inv = inverse(full);
  std::vector<Matrix> acts;
  for (const auto& act : m.actions) {
    // action in the adapted basis, lower-right block is the quotient action
    Matrix adapted = inv.mul(act.mul(full));
    Matrix block(F, q, q);
    for (unsigned i = 0; i < q; ++i)
      for (unsigned j = 0; j < q; ++j)
        block(i, j) = adapted(inclusion.cols() + i, inclusion.cols() + j);
    acts.push_back(std::move(block));
  }
  CheckPolicy skip;
  skip.skip = true;
  return make_module(m.algebra, id.empty() ? m.id + ":quot" : id, std::move(acts), skip);
}

std::vector<Matrix> hom_space(const FDModule& m, const FDModule& n) {
  const FieldPtr F = m.actions.empty() ? m.algebra->field() : m.actions[0].field();
  // unknowns T(i,j), i < n.dim, j < m.dim; equations T rho_m(g) = rho_n(g) T
  const unsigned rows = n.dim, cols = m.dim;
  const unsigned unknowns = rows * cols;
  std::vector<Vec> eq_rows;
  const Field& f = *F;
  for (size_t g = 0; g < m.actions.size(); ++g) {
    const Matrix& A = m.actions[g];
    const Matrix& B = n.actions[g];
    for (unsigned i = 0; i < rows; ++i)
      for (unsigned j = 0; j < cols; ++j) {
        Vec row(unknowns, 0);
        // (T A)(i, j) = sum_k T(i,k) A(k,j); (B T)(i,j) = sum_k B(i,k) T(k,j)
        for (unsigned k = 0; k < cols; ++k)
          if (A(k, j) != 0) row[i * cols + k] = f.add(row[i * cols + k], A(k, j));
        for (unsigned k = 0; k < rows; ++k)
          if (B(i, k) != 0) row[k * cols + j] = f.sub(row[k * cols + j], B(i, k));
        eq_rows.push_back(std::move(row));
      }
  }
  Matrix big(F, static_cast<unsigned>(eq_rows.size()), unknowns);
  for (unsigned r = 0; r < eq_rows.size(); ++r)
    for (unsigned c = 0; c < unknowns; ++c) big(r, c) = eq_rows[r][c];
  Matrix ker = kernel_basis(big);
  std::vector<Matrix> out;
  for (unsigned c = 0; c < ker.cols(); ++c) {
    Matrix T(F, rows, cols);
    for (unsigned i = 0; i < rows; ++i)
      for (unsigned j = 0; j < cols; ++j) T(i, j) = ker(i * cols + j, c);
    out.push_back(std::move(T));
  }
  return out;
}

std::optional<Matrix> find_isomorphism(const FDModule& m, const FDModule& n, std::uint64_t seed) {
  if (m.dim != n.dim) return std::nullopt;
  if (m.dim == 0) return Matrix(m.algebra->field(), 0, 0);
  auto basis = hom_space(m, n);
  if (basis.empty()) return std::nullopt;
  const FieldPtr F = basis[0].field();
  const std::uint64_t q = F->q();
  const size_t k = basis.size();
  auto try_combo = [&](const std::vector<FElem>& coeffs) -> std::optional<Matrix> {
    Matrix T(F, n.dim, m.dim);
    for (size_t i = 0; i < k; ++i)
      if (coeffs[i] != 0) T = T.add(basis[i].scale(coeffs[i]));
    if (rank(T) == m.dim) return T;
    return std::nullopt;
  };
  double total = 1;
  for (size_t i = 0; i < k && total <= 4096; ++i) total *= double(q);
  if (total <= 4096) {
    std::vector<FElem> coeffs(k, 0);
    for (std::uint64_t n_ = 1; n_ < static_cast<std::uint64_t>(total); ++n_) {
      std::uint64_t v = n_;
      for (size_t i = 0; i < k; ++i) {
        coeffs[i] = static_cast<FElem>(v % q);
        v /= q;
      }
      if (auto t = try_combo(coeffs)) return t;
    }
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
  for (unsigned trial = 0; trial < 500; ++trial) {
    std::vector<FElem> coeffs(k);
    for (size_t i = 0; i < k; ++i) coeffs[i] = static_cast<FElem>(pick(rng));
    if (auto t = try_combo(coeffs)) return t;
  }
  return std::nullopt;
}

FreeSplit strip_free_summands(const FDModule& m, std::uint64_t seed) {
  FreeSplit out{m, 0};
  const unsigned adim = m.algebra->dim();
  std::mt19937_64 rng(seed);
  bool progress = true;
  while (progress && out.core.dim >= adim) {
    progress = false;
    const FieldPtr F = out.core.actions.empty() ? m.algebra->field()
                                                : out.core.actions[0].field();
    std::uniform_int_distribution<std::uint64_t> pick(0, F->q() - 1);
    auto try_vector = [&](const Vec& v) -> bool {
      Submodule sub = submodule(out.core, {v}, out.core.id + ":cyclic");
      if (sub.module.dim != adim) return false;
      out.core = quotient_module(out.core, sub.inclusion, out.core.id + "/free");
      out.free_rank += 1;
      return true;
    };
    for (unsigned i = 0; i < out.core.dim && !progress; ++i) {
      Vec e(out.core.dim, 0);
      e[i] = 1;
      progress = try_vector(e);
    }
    for (unsigned t = 0; t < 200 && !progress; ++t) {
      Vec v(out.core.dim);
      for (auto& x : v) x = static_cast<FElem>(pick(rng));
      if (std::all_of(v.begin(), v.end(), [](FElem x) { return x == 0; })) continue;
      progress = try_vector(v);
    }
  }
  return out;
}

FDModule base_change_module(const FDModule& m, const AlgebraPtr& algebra_k, const FieldPtr& k) {
  require(k->p() == m.field()->p(), "base change must preserve the characteristic");
  std::vector<Matrix> acts;
  for (const auto& a : m.actions) {
    Matrix b(k, a.rows(), a.cols());
    b.data() = a.data();  // prime-field values embed as constants
    acts.push_back(std::move(b));
  }
  CheckPolicy skip;
  skip.skip = true;
  return make_module(algebra_k, m.id, std::move(acts), skip);
}

}  // namespace dwb
