#include "dwb/catalog.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace dwb {

namespace {

unsigned pow_u(unsigned base, unsigned e) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < e; ++i) {
    v *= base;
    require_usage(v <= (1u << 24), "catalog dimension overflow");
  }
  return static_cast<unsigned>(v);
}

std::vector<std::string> var_names(const GroupSchemeSpec& g) {
  switch (g.kind) {
    case GroupSchemeSpec::Kind::Additive: {
      if (g.n == 1) return {"x"};
      std::vector<std::string> v;
      for (unsigned i = 1; i <= g.n; ++i) v.push_back("x" + std::to_string(i));
      return v;
    }
    case GroupSchemeSpec::Kind::Heisenberg3: return {"a", "b", "c"};
    case GroupSchemeSpec::Kind::Multiplicative: return {"x"};
  }
  return {};
}

std::string monomial_label(const std::vector<std::string>& vars, const std::vector<unsigned>& e) {
  std::string out;
  for (size_t v = 0; v < vars.size(); ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[v];
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out.empty() ? "1" : out;
}

// sparse element of A_left (x) A_right
using TS = std::map<std::pair<std::uint32_t, std::uint32_t>, FElem>;

void ts_add(TS& m, std::uint32_t a, std::uint32_t b, FElem c, const Field& F) {
  if (c == 0) return;
  auto [it, fresh] = m.emplace(std::make_pair(a, b), c);
  if (!fresh) {
    it->second = F.add(it->second, c);
    if (it->second == 0) m.erase(it);
  }
}

TS ts_mult(const DenseAlgebra& left, const DenseAlgebra& right, const TS& x, const TS& y) {
  const Field& F = *left.field();
  TS out;
  for (const auto& [ab, c1] : x)
    for (const auto& [cd, c2] : y) {
      FElem c12 = F.mul(c1, c2);
      if (c12 == 0) continue;
      for (const auto& [l, cl] : left.basis_product(ab.first, cd.first))
        for (const auto& [r, cr] : right.basis_product(ab.second, cd.second))
          ts_add(out, l, r, F.mul(c12, F.mul(cl, cr)), F);
    }
  return out;
}

std::mutex g_cache_mutex;
std::map<std::string, DenseAlgebraPtr>& dense_cache() {
  static std::map<std::string, DenseAlgebraPtr> c;
  return c;
}
std::map<std::string, SmashAlgebraPtr>& smash_cache() {
  static std::map<std::string, SmashAlgebraPtr> c;
  return c;
}

}  // namespace

std::string GroupSchemeSpec::name() const {
  switch (kind) {
    case Kind::Additive: return "Ga:n=" + std::to_string(n) + ",p=" + std::to_string(p);
    case Kind::Heisenberg3: return "Heis3:p=" + std::to_string(p);
    case Kind::Multiplicative: return "Gm:p=" + std::to_string(p);
  }
  return "?";
}

std::string CatalogKey::str() const { return g.name() + ",r=" + std::to_string(r); }

CatalogKey parse_catalog_key(const std::string& id) {
  CatalogKey key;
  auto colon = id.find(':');
  require_usage(colon != std::string::npos, "malformed catalog id: " + id);
  std::string kind = id.substr(0, colon);
  if (kind == "Ga")
    key.g.kind = GroupSchemeSpec::Kind::Additive;
  else if (kind == "Heis3")
    key.g.kind = GroupSchemeSpec::Kind::Heisenberg3;
  else if (kind == "Gm")
    key.g.kind = GroupSchemeSpec::Kind::Multiplicative;
  else
    throw usage_error("unknown group scheme kind: " + kind);
  key.g.n = 1;
  bool have_p = false, have_r = false;
  std::stringstream ss(id.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    require_usage(eq != std::string::npos, "malformed catalog id field: " + item);
    std::string name = item.substr(0, eq);
    unsigned value = 0;
    try {
      value = static_cast<unsigned>(std::stoul(item.substr(eq + 1)));
    } catch (const std::exception&) {
      throw usage_error("malformed catalog id value: " + item);
    }
    if (name == "n")
      key.g.n = value;
    else if (name == "p") {
      key.g.p = value;
      have_p = true;
    } else if (name == "r") {
      key.r = value;
      have_r = true;
    } else
      throw usage_error("unknown catalog id field: " + name);
  }
  require_usage(have_p && have_r, "catalog id needs p and r: " + id);
  require_usage(is_prime(key.g.p), "catalog p must be prime");
  require_usage(key.r >= 1, "catalog r must be >= 1");
  require_usage(key.g.n >= 1 && key.g.n <= 3, "vector-group rank capped at 3");
  return key;
}

unsigned coord_dim(const GroupSchemeSpec& g, unsigned s) {
  return pow_u(pow_u(g.p, s), g.dim_g());
}

std::vector<unsigned> coord_exps(const GroupSchemeSpec& g, unsigned s, unsigned idx) {
  const unsigned bound = pow_u(g.p, s);
  std::vector<unsigned> e(g.dim_g());
  for (unsigned v = 0; v < e.size(); ++v) {
    e[v] = idx % bound;
    idx /= bound;
  }
  return e;
}

unsigned coord_index(const GroupSchemeSpec& g, unsigned s, const std::vector<unsigned>& exps) {
  const unsigned bound = pow_u(g.p, s);
  unsigned idx = 0;
  for (size_t v = exps.size(); v-- > 0;) {
    require(exps[v] < bound, "exponent out of range");
    idx = idx * bound + exps[v];
  }
  return idx;
}

int truncate_index(const GroupSchemeSpec& g, unsigned s_from, unsigned s_to, unsigned idx) {
  require(s_to <= s_from, "truncation raises the height");
  const unsigned bound_to = pow_u(g.p, s_to);
  auto e = coord_exps(g, s_from, idx);
  if (g.kind == GroupSchemeSpec::Kind::Multiplicative) {
    e[0] %= bound_to;
    return static_cast<int>(coord_index(g, s_to, e));
  }
  for (unsigned v = 0; v < e.size(); ++v)
    if (e[v] >= bound_to) return -1;
  return static_cast<int>(coord_index(g, s_to, e));
}

DenseAlgebraPtr coordinate_algebra(const GroupSchemeSpec& g, unsigned s) {
  require_usage(s >= 1, "kernel height must be >= 1");
  const std::string cache_key = "coord[" + g.name() + ",s=" + std::to_string(s) + "]";
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = dense_cache().find(cache_key);
    if (it != dense_cache().end()) return it->second;
  }
  const unsigned p = g.p;
  const unsigned m = g.dim_g();
  const unsigned bound = pow_u(p, s);
  const unsigned dim = coord_dim(g, s);
  require_usage(dim <= kMaxMatrixDim, "coordinate algebra exceeds the dimension guard");
  FieldPtr F = Field::prime_field(p);
  const Field& f = *F;
  const bool mult_kind = g.kind == GroupSchemeSpec::Kind::Multiplicative;

  std::vector<std::string> vars = var_names(g);
  std::vector<std::string> labels(dim);
  for (unsigned i = 0; i < dim; ++i) labels[i] = monomial_label(vars, coord_exps(g, s, i));

  SparseTensor mult;
  for (unsigned i = 0; i < dim; ++i) {
    auto ei = coord_exps(g, s, i);
    for (unsigned j = 0; j < dim; ++j) {
      auto ej = coord_exps(g, s, j);
      std::vector<unsigned> ek(m);
      bool alive = true;
      for (unsigned v = 0; v < m; ++v) {
        ek[v] = ei[v] + ej[v];
        if (ek[v] >= bound) {
          if (mult_kind)
            ek[v] -= bound;
          else {
            alive = false;
            break;
          }
        }
      }
      if (alive) mult.push_back({i, j, coord_index(g, s, ek), 1});
    }
  }

  Vec unit(dim, 0);
  unit[0] = 1;
  Vec aug(dim, 0);
  if (mult_kind)
    std::fill(aug.begin(), aug.end(), FElem{1});
  else
    aug[0] = 1;

  // generator coproducts, extended multiplicatively along the monomial
  // recursion basis(n) = x_low * basis(n - stride(low))
  std::vector<TS> gen_cop(m);
  for (unsigned v = 0; v < m; ++v) {
    std::vector<unsigned> ev(m, 0);
    ev[v] = 1;
    std::uint32_t xi = coord_index(g, s, ev);
    TS d;
    if (mult_kind) {
      ts_add(d, xi, xi, 1, f);
    } else {
      ts_add(d, xi, 0, 1, f);
      ts_add(d, 0, xi, 1, f);
      if (g.kind == GroupSchemeSpec::Kind::Heisenberg3 && v == 2) {
        std::vector<unsigned> ea(m, 0), eb(m, 0);
        ea[0] = 1;
        eb[1] = 1;
        ts_add(d, coord_index(g, s, ea), coord_index(g, s, eb), 1, f);
      }
    }
    gen_cop[v] = std::move(d);
  }

  // antipode images of the generators
  std::vector<Vec> gen_antipode(m, Vec(dim, 0));
  for (unsigned v = 0; v < m; ++v) {
    std::vector<unsigned> ev(m, 0);
    ev[v] = 1;
    std::uint32_t xi = coord_index(g, s, ev);
    if (mult_kind) {
      std::vector<unsigned> inv(m, 0);
      inv[0] = bound - 1;
      gen_antipode[v][coord_index(g, s, inv)] = 1;
    } else {
      gen_antipode[v][xi] = f.neg(1);
      if (g.kind == GroupSchemeSpec::Kind::Heisenberg3 && v == 2) {
        std::vector<unsigned> eab(m, 0);
        eab[0] = 1;
        eab[1] = 1;
        gen_antipode[v][coord_index(g, s, eab)] = 1;  // S(c) = -c + a b
      }
    }
  }

  // assemble the full coproduct and antipode by multiplicativity; a
  // partially built DenseAlgebra is not available yet, so run the monomial
  // recursion on raw product lookups
  auto prod_index = [&](unsigned i, unsigned j) -> int {
    auto ei = coord_exps(g, s, i);
    auto ej = coord_exps(g, s, j);
    std::vector<unsigned> ek(m);
    for (unsigned v = 0; v < m; ++v) {
      ek[v] = ei[v] + ej[v];
      if (ek[v] >= bound) {
        if (mult_kind)
          ek[v] -= bound;
        else
          return -1;
      }
    }
    return static_cast<int>(coord_index(g, s, ek));
  };
  auto ts_mult_raw = [&](const TS& x, const TS& y) {
    TS out;
    for (const auto& [ab, c1] : x)
      for (const auto& [cd, c2] : y) {
        int l = prod_index(ab.first, cd.first);
        int r = prod_index(ab.second, cd.second);
        if (l < 0 || r < 0) continue;
        ts_add(out, static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(r),
               f.mul(c1, c2), f);
      }
    return out;
  };
  auto vec_mult_raw = [&](const Vec& x, const Vec& y) {
    Vec out(dim, 0);
    for (unsigned i = 0; i < dim; ++i) {
      if (x[i] == 0) continue;
      for (unsigned j = 0; j < dim; ++j) {
        if (y[j] == 0) continue;
        int k = prod_index(i, j);
        if (k >= 0) out[k] = f.add(out[k], f.mul(x[i], y[j]));
      }
    }
    return out;
  };

  std::vector<TS> cop(dim);
  std::vector<Vec> antipode_cols(dim);
  cop[0] = TS{{{0, 0}, 1}};
  antipode_cols[0] = unit;
  std::vector<unsigned> stride(m, 1);
  for (unsigned v = 1; v < m; ++v) stride[v] = stride[v - 1] * bound;
  for (unsigned n = 1; n < dim; ++n) {
    auto e = coord_exps(g, s, n);
    unsigned low = 0;
    while (e[low] == 0) ++low;
    cop[n] = ts_mult_raw(gen_cop[low], cop[n - stride[low]]);
    antipode_cols[n] = vec_mult_raw(gen_antipode[low], antipode_cols[n - stride[low]]);
  }
  SparseTensor cop_tensor;
  for (std::uint32_t n = 0; n < dim; ++n)
    for (const auto& [jk, c] : cop[n]) cop_tensor.push_back({n, jk.first, jk.second, c});
  HopfData hd;
  hd.coproduct = std::move(cop_tensor);
  hd.counit = aug;
  hd.antipode = Matrix::from_cols(F, dim, antipode_cols);

  std::vector<Generator> gens;
  for (unsigned v = 0; v < m; ++v) {
    std::vector<unsigned> ev(m, 0);
    ev[v] = 1;
    Vec e(dim, 0);
    e[coord_index(g, s, ev)] = 1;
    if (mult_kind) e[0] = f.neg(1);  // z = x - 1 generates the augmentation ideal
    gens.push_back({mult_kind ? vars[v] + "-1" : vars[v], std::move(e), bound});
  }

  auto out = std::make_shared<DenseAlgebra>(cache_key, F, std::move(labels), std::move(mult),
                                            std::move(unit), std::move(aug), std::move(gens),
                                            std::move(hd));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  dense_cache().emplace(cache_key, out);
  return out;
}

DenseAlgebraPtr group_algebra(const GroupSchemeSpec& g, unsigned s) {
  const std::string cache_key = "group[" + g.name() + ",s=" + std::to_string(s) + "]";
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = dense_cache().find(cache_key);
    if (it != dense_cache().end()) return it->second;
  }
  DenseAlgebraPtr coord = coordinate_algebra(g, s);
  const unsigned m = g.dim_g();
  const unsigned dim = coord->dim();
  std::vector<Generator> gens;
  if (g.kind == GroupSchemeSpec::Kind::Multiplicative) {
    // digit coordinates t_l(a) = l-th base-p digit of a; t_l^p = t_l
    const Field& f = *coord->field();
    for (unsigned l = 0; l < s; ++l) {
      Vec e(dim, 0);
      unsigned pl = pow_u(g.p, l);
      for (unsigned a = 0; a < dim; ++a) e[a] = f.from_int((a / pl) % g.p);
      gens.push_back({"t" + std::to_string(l), std::move(e), g.p});
    }
  } else {
    // dual basis elements at exponent p^l on each variable
    for (unsigned v = 0; v < m; ++v)
      for (unsigned l = 0; l < s; ++l) {
        std::vector<unsigned> ev(m, 0);
        ev[v] = pow_u(g.p, l);
        Vec e(dim, 0);
        e[coord_index(g, s, ev)] = 1;
        std::string label;
        if (g.kind == GroupSchemeSpec::Kind::Heisenberg3)
          label = std::string("E") + var_names(g)[v] + (s > 1 ? std::to_string(l) : "");
        else
          label = "d" + std::to_string(pow_u(g.p, l)) +
                  (m > 1 ? "_" + var_names(g)[v] : "");
        gens.push_back({label, std::move(e), g.p});
      }
  }
  auto out = dual_hopf(coord, cache_key, std::move(gens));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  dense_cache().emplace(cache_key, out);
  return out;
}

SparseTensor coadjoint_action(const GroupSchemeSpec& g, unsigned r, unsigned s) {
  require_usage(s == r || s == r + 1, "coadjoint action restricted to s in {r, r+1}");
  DenseAlgebraPtr As = coordinate_algebra(g, s);
  DenseAlgebraPtr Ar = coordinate_algebra(g, r);
  const Field& f = *As->field();
  const unsigned m = g.dim_g();
  const unsigned dim = As->dim();
  const auto& cop = As->hopf().coproduct;

  auto cop_slice = [&](std::uint32_t i) {
    auto first = std::lower_bound(cop.begin(), cop.end(), TensorTriple{i, 0, 0, 0});
    auto last = std::lower_bound(cop.begin(), cop.end(), TensorTriple{i + 1, 0, 0, 0});
    return std::make_pair(first, last);
  };

  // conjugation tensor on generators: f |-> sum restrict(S(f_1) f_3) (x) f_2
  std::vector<TS> gen_conj(m);
  for (unsigned v = 0; v < m; ++v) {
    std::vector<unsigned> ev(m, 0);
    ev[v] = 1;
    std::uint32_t xv = coord_index(g, s, ev);
    TS acc;
    auto [first, last] = cop_slice(xv);
    for (auto t = first; t != last; ++t) {
      // t: xv -> f' (x) f''; expand the first leg again
      auto [f1b, f1e] = cop_slice(t->j);
      for (auto u = f1b; u != f1e; ++u) {
        // legs: f1 = u->j, f2 = u->k, f3 = t->k
        FElem c = f.mul(t->c, u->c);
        SVec sf1;
        for (unsigned row = 0; row < dim; ++row) {
          FElem a = As->hopf().antipode(row, u->j);
          if (a != 0) sf1.emplace_back(row, a);
        }
        SVec prod13 = As->mult_sparse(sf1, {{t->k, 1}});
        for (const auto& [idx13, c13] : prod13) {
          int ridx = truncate_index(g, s, r, idx13);
          if (ridx < 0) continue;
          ts_add(acc, static_cast<std::uint32_t>(ridx), u->k, f.mul(c, c13), f);
        }
      }
    }
    gen_conj[v] = std::move(acc);
  }

  // extend multiplicatively across the monomial basis
  std::vector<TS> conj(dim);
  conj[0] = TS{{{0, 0}, 1}};
  const unsigned bound = pow_u(g.p, s);
  std::vector<unsigned> stride(m, 1);
  for (unsigned v = 1; v < m; ++v) stride[v] = stride[v - 1] * bound;
  for (unsigned n = 1; n < dim; ++n) {
    auto e = coord_exps(g, s, n);
    unsigned low = 0;
    while (e[low] == 0) ++low;
    conj[n] = ts_mult(*Ar, *As, gen_conj[low], conj[n - stride[low]]);
  }

  SparseTensor action;
  for (std::uint32_t n = 0; n < dim; ++n)
    for (const auto& [hk, c] : conj[n]) action.push_back({hk.first, n, hk.second, c});
  std::sort(action.begin(), action.end());
  return action;
}

SmashAlgebraPtr double_algebra(const GroupSchemeSpec& g, unsigned r) {
  const std::string cache_key = "D[" + g.name() + ",r=" + std::to_string(r) + "]";
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = smash_cache().find(cache_key);
    if (it != smash_cache().end()) return it->second;
  }
  auto out = smash_product(cache_key, coordinate_algebra(g, r), group_algebra(g, r),
                           coadjoint_action(g, r, r));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  smash_cache().emplace(cache_key, out);
  return out;
}

SmashAlgebraPtr extended_double(const GroupSchemeSpec& g, unsigned r) {
  const std::string cache_key = "Dt[" + g.name() + ",r=" + std::to_string(r) + "]";
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = smash_cache().find(cache_key);
    if (it != smash_cache().end()) return it->second;
  }
  auto out = smash_product(cache_key, coordinate_algebra(g, r + 1), group_algebra(g, r),
                           coadjoint_action(g, r, r + 1));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  smash_cache().emplace(cache_key, out);
  return out;
}

DenseAlgebraPtr power_subalgebra(const GroupSchemeSpec& g, unsigned r, unsigned s) {
  require_usage(s <= r, "power subalgebra needs 0 <= s <= r");
  DenseAlgebraPtr big = coordinate_algebra(g, r + 1);
  if (s == 0) return big;
  const std::string cache_key =
      "pow[" + g.name() + ",r=" + std::to_string(r) + ",s=" + std::to_string(s) + "]";
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = dense_cache().find(cache_key);
    if (it != dense_cache().end()) return it->second;
  }
  const Field& f = *big->field();
  const unsigned m = g.dim_g();
  const unsigned ps = pow_u(g.p, s);
  const unsigned sub_bound = pow_u(g.p, r + 1 - s);
  unsigned dim = 1;
  for (unsigned v = 0; v < m; ++v) dim *= sub_bound;
  const bool mult_kind = g.kind == GroupSchemeSpec::Kind::Multiplicative;

  // sub index <-> big index
  std::vector<std::uint32_t> to_big(dim);
  std::map<std::uint32_t, std::uint32_t> to_sub;
  for (unsigned i = 0; i < dim; ++i) {
    std::vector<unsigned> mu(m);
    unsigned v = i;
    for (unsigned x = 0; x < m; ++x) {
      mu[x] = (v % sub_bound) * ps;
      v /= sub_bound;
    }
    to_big[i] = coord_index(g, r + 1, mu);
    to_sub[to_big[i]] = i;
  }
  auto project = [&](std::uint32_t bigidx) -> int {
    auto it = to_sub.find(bigidx);
    return it == to_sub.end() ? -1 : static_cast<int>(it->second);
  };

  SparseTensor mult;
  for (std::uint32_t i = 0; i < dim; ++i)
    for (std::uint32_t j = 0; j < dim; ++j)
      for (const auto& [k, c] : big->basis_product(to_big[i], to_big[j])) {
        int ks = project(k);
        require(ks >= 0, "power subalgebra is not closed under products");
        mult.push_back({i, j, static_cast<std::uint32_t>(ks), c});
      }
  const auto& bigcop = big->hopf().coproduct;
  SparseTensor cop;
  for (std::uint32_t i = 0; i < dim; ++i) {
    auto first = std::lower_bound(bigcop.begin(), bigcop.end(), TensorTriple{to_big[i], 0, 0, 0});
    auto last =
        std::lower_bound(bigcop.begin(), bigcop.end(), TensorTriple{to_big[i] + 1, 0, 0, 0});
    for (auto t = first; t != last; ++t) {
      int j = project(t->j), k = project(t->k);
      require(j >= 0 && k >= 0, "power subalgebra is not a subcoalgebra");
      cop.push_back({i, static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k), t->c});
    }
  }
  Vec unit(dim, 0), aug(dim, 0);
  std::vector<std::string> labels(dim);
  Matrix antipode(big->field(), dim, dim);
  for (unsigned i = 0; i < dim; ++i) {
    unit[i] = big->unit()[to_big[i]];
    aug[i] = big->augmentation_covector()[to_big[i]];
    labels[i] = big->basis_label(to_big[i]);
    Vec scol = big->hopf().antipode.col(to_big[i]);
    for (std::uint32_t row = 0; row < big->dim(); ++row) {
      if (scol[row] == 0) continue;
      int rs = project(row);
      require(rs >= 0, "power subalgebra is not antipode-closed");
      antipode(static_cast<unsigned>(rs), i) = scol[row];
    }
  }
  HopfData hd;
  hd.coproduct = std::move(cop);
  hd.counit = aug;
  hd.antipode = std::move(antipode);
  std::vector<Generator> gens;
  auto vars = var_names(g);
  for (unsigned v = 0; v < m; ++v) {
    std::vector<unsigned> mu(m, 0);
    unsigned sub = 1;
    for (unsigned x = 0; x < v; ++x) sub *= sub_bound;
    Vec e(dim, 0);
    e[sub] = 1;  // exponent p^s on variable v
    std::string label = vars[v] + "^" + std::to_string(ps);
    if (mult_kind) {
      e[0] = f.neg(1);
      label += "-1";
    }
    gens.push_back({label, std::move(e), sub_bound});
  }
  auto out = std::make_shared<DenseAlgebra>(cache_key, big->field(), std::move(labels),
                                            std::move(mult), std::move(unit), std::move(aug),
                                            std::move(gens), std::move(hd));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  dense_cache().emplace(cache_key, out);
  return out;
}

OSubalgebra o_subalgebra(const GroupSchemeSpec& g, unsigned r) {
  SmashAlgebraPtr dt = extended_double(g, r);
  DenseAlgebraPtr y = power_subalgebra(g, r, r);
  DenseAlgebraPtr h = group_algebra(g, r);
  const unsigned dh = h->dim();
  // the coordinate leg must be central: the coadjoint action of every
  // group-algebra basis element on a power monomial is trivial
  for (std::uint32_t hb = 0; hb < dh; ++hb)
    for (std::uint32_t i = 0; i < y->dim(); ++i) {
      // power monomial i corresponds to exponents p^r * mu in k[G_(r+1)]
      std::vector<unsigned> mu(g.dim_g());
      unsigned v = i;
      for (unsigned x = 0; x < g.dim_g(); ++x) {
        mu[x] = (v % g.p) * pow_u(g.p, r);
        v /= g.p;
      }
      std::uint32_t bigidx = coord_index(g, r + 1, mu);
      SVec got = dt->act_basis(hb, bigidx);
      FElem eps = h->augmentation_covector()[hb];
      SVec expect;
      if (eps != 0) expect.emplace_back(bigidx, eps);
      require(got == expect, "coordinate leg of O is not central in the extended double");
    }
  const std::string oid = "O[" + g.name() + ",r=" + std::to_string(r) + "]";
  auto o_lazy = smash_product(oid + ":lazy", y, h, trivial_action(*y, *h));
  DenseAlgebraPtr o = dense_realization(*o_lazy, {}, oid);
  Matrix emb(dt->field(), dt->dim(), o->dim());
  for (std::uint32_t i = 0; i < y->dim(); ++i) {
    std::vector<unsigned> mu(g.dim_g());
    unsigned v = i;
    for (unsigned x = 0; x < g.dim_g(); ++x) {
      mu[x] = (v % g.p) * pow_u(g.p, r);
      v /= g.p;
    }
    std::uint32_t bigidx = coord_index(g, r + 1, mu);
    for (std::uint32_t hb = 0; hb < dh; ++hb)
      emb(dt->flat(bigidx, hb), i * dh + hb) = 1;
  }
  AlgebraMorphism i_o = make_morphism(o, dt, std::move(emb));
  require(i_o.injective(), "i_O is not injective");
  return {o, std::move(i_o)};
}

AlgebraMorphism quotient_to_double(const GroupSchemeSpec& g, unsigned r) {
  SmashAlgebraPtr dt = extended_double(g, r);
  SmashAlgebraPtr d = double_algebra(g, r);
  const unsigned dh = d->h_factor()->dim();
  Matrix q(dt->field(), d->dim(), dt->dim());
  std::vector<bool> hit(d->b_factor()->dim(), false);
  for (std::uint32_t big = 0; big < dt->b_factor()->dim(); ++big) {
    int small = truncate_index(g, r + 1, r, big);
    if (small < 0) continue;
    hit[static_cast<unsigned>(small)] = true;
    for (std::uint32_t hb = 0; hb < dh; ++hb)
      q(d->flat(static_cast<std::uint32_t>(small), hb), dt->flat(big, hb)) = 1;
  }
  for (bool b : hit) require(b, "truncation misses a coordinate basis element");
  return make_morphism(dt, d, std::move(q));
}

TwistedSubalgebra twisted_subalgebra(const GroupSchemeSpec& g, unsigned r, unsigned s) {
  require_usage(s <= r, "twist parameter must satisfy 0 <= s <= r");
  SmashAlgebraPtr dt = extended_double(g, r);
  if (s == 0) {
    Matrix id = Matrix::identity(dt->field(), dt->dim());
    CheckPolicy skip;
    skip.skip = true;
    return {dt, make_morphism(dt, dt, std::move(id), skip)};
  }
  DenseAlgebraPtr bs = power_subalgebra(g, r, s);
  DenseAlgebraPtr h = group_algebra(g, r);
  const unsigned dh = h->dim();
  const unsigned m = g.dim_g();
  const unsigned ps = pow_u(g.p, s);
  const unsigned sub_bound = pow_u(g.p, r + 1 - s);
  // sub <-> big index maps as in power_subalgebra
  std::vector<std::uint32_t> to_big(bs->dim());
  std::map<std::uint32_t, std::uint32_t> to_sub;
  for (std::uint32_t i = 0; i < bs->dim(); ++i) {
    std::vector<unsigned> mu(m);
    unsigned v = i;
    for (unsigned x = 0; x < m; ++x) {
      mu[x] = (v % sub_bound) * ps;
      v /= sub_bound;
    }
    to_big[i] = coord_index(g, r + 1, mu);
    to_sub[to_big[i]] = i;
  }
  SparseTensor action;
  for (std::uint32_t hb = 0; hb < dh; ++hb)
    for (std::uint32_t i = 0; i < bs->dim(); ++i)
      for (const auto& [k, c] : dt->act_basis(hb, to_big[i])) {
        auto it = to_sub.find(k);
        require(it != to_sub.end(), "twisted subalgebra is not action-closed");
        action.push_back({hb, i, it->second, c});
      }
  auto tw = smash_product(
      "Dt^" + std::to_string(s) + "[" + g.name() + ",r=" + std::to_string(r) + "]", bs, h,
      std::move(action));
  Matrix emb(dt->field(), dt->dim(), tw->dim());
  for (std::uint32_t i = 0; i < bs->dim(); ++i)
    for (std::uint32_t hb = 0; hb < dh; ++hb)
      emb(dt->flat(to_big[i], hb), tw->flat(i, hb)) = 1;
  AlgebraMorphism phi = make_morphism(tw, dt, std::move(emb));
  require(phi.injective(), "twisted subalgebra embedding is not injective");
  return {tw, std::move(phi)};
}

NuIsomorphism nu_isomorphism(const GroupSchemeSpec& g, unsigned r) {
  OSubalgebra o = o_subalgebra(g, r);
  const unsigned m = g.dim_g();
  GroupSchemeSpec vec{GroupSchemeSpec::Kind::Additive, m, g.p};
  DenseAlgebraPtr sym = coordinate_algebra(vec, 1);
  DenseAlgebraPtr h = group_algebra(g, r);
  DenseAlgebraPtr source =
      tensor_algebra(sym, h, "nu-src[" + g.name() + ",r=" + std::to_string(r) + "]");
  // nu(X^mu (x) gamma) = ybar^mu # gamma, with ybar the reduced p^r-th
  // power generators of the coordinate leg of O
  const DenseAlgebra& O = *o.algebra;
  const unsigned dh = h->dim();
  const unsigned dy = O.dim() / dh;
  std::vector<Vec> ypow_cols(pow_u(g.p, m));  // images of X-monomials in the y-leg
  // y-leg generator elements live in the smash's B factor; rebuild them
  DenseAlgebraPtr y = power_subalgebra(g, r, r);
  std::vector<Vec> ygens;
  for (const auto& gen : y->generators()) ygens.push_back(gen.element);
  ypow_cols[0] = y->unit();
  for (unsigned n = 1; n < ypow_cols.size(); ++n) {
    unsigned v = n, low = 0;
    std::vector<unsigned> mu(m);
    for (unsigned x = 0; x < m; ++x) {
      mu[x] = v % g.p;
      v /= g.p;
    }
    while (mu[low] == 0) ++low;
    unsigned strd = 1;
    for (unsigned x = 0; x < low; ++x) strd *= g.p;
    ypow_cols[n] = y->mult(ygens[low], ypow_cols[n - strd]);
  }
  Matrix nu(O.field(), O.dim(), source->dim());
  for (unsigned n = 0; n < ypow_cols.size(); ++n)
    for (std::uint32_t hb = 0; hb < dh; ++hb) {
      // source flat index (sym major), target = y-leg vector (x) e_hb
      unsigned src = n * dh + hb;
      for (std::uint32_t yi = 0; yi < dy; ++yi)
        if (ypow_cols[n][yi] != 0) nu(yi * dh + hb, src) = ypow_cols[n][yi];
    }
  AlgebraMorphism map = make_morphism(source, o.algebra, std::move(nu));
  require(rank(map.matrix) == O.dim(), "nu is not bijective");
  return {source, std::move(map)};
}

Quasilog quasilogarithm(const GroupSchemeSpec& g, unsigned r) {
  const unsigned m = g.dim_g();
  require_usage(g.kind != GroupSchemeSpec::Kind::Multiplicative,
                "quasilogarithm catalog covers unipotent kinds only");
  if (g.kind == GroupSchemeSpec::Kind::Heisenberg3)
    require_usage(g.p >= 3, "Heisenberg3 quasilogarithm needs p greater than the nilpotency class 2");
  DenseAlgebraPtr target = coordinate_algebra(g, r);
  GroupSchemeSpec vec{GroupSchemeSpec::Kind::Additive, m, g.p};
  DenseAlgebraPtr source = coordinate_algebra(vec, r);
  const Field& f = *target->field();
  const unsigned dim = target->dim();

  std::vector<Vec> gen_img(m);
  if (g.kind == GroupSchemeSpec::Kind::Additive) {
    for (unsigned v = 0; v < m; ++v) gen_img[v] = target->generators()[v].element;
  } else {
    // truncated matrix logarithm of 1 + N: entries a, b, c - ab/2
    gen_img[0] = target->generators()[0].element;
    gen_img[1] = target->generators()[1].element;
    Vec c = target->generators()[2].element;
    std::vector<unsigned> eab(3, 0);
    eab[0] = 1;
    eab[1] = 1;
    FElem half = f.inv(f.from_int(2));
    c[coord_index(g, r, eab)] = f.neg(half);
    gen_img[2] = std::move(c);
  }
  // multiplicative extension over source monomials
  const unsigned bound = pow_u(g.p, r);
  std::vector<unsigned> stride(m, 1);
  for (unsigned v = 1; v < m; ++v) stride[v] = stride[v - 1] * bound;
  std::vector<Vec> cols(dim);
  cols[0] = target->unit();
  for (unsigned n = 1; n < dim; ++n) {
    auto e = coord_exps(vec, r, n);
    unsigned low = 0;
    while (e[low] == 0) ++low;
    cols[n] = target->mult(gen_img[low], cols[n - stride[low]]);
  }
  Matrix mat = Matrix::from_cols(target->field(), dim, cols);
  AlgebraMorphism map = make_morphism(source, target, std::move(mat));
  require(rank(map.matrix) == dim, "quasilogarithm presentation is not bijective");
  // base point: generator images lie in the augmentation ideal
  for (unsigned v = 0; v < m; ++v)
    require(target->augment(gen_img[v]) == 0, "quasilogarithm image misses the base point");
  // identity differential: image of X_v equals x_v modulo squares of the
  // augmentation ideal (coefficients agree on degree <= 1 monomials)
  for (unsigned v = 0; v < m; ++v) {
    for (unsigned n = 0; n < dim; ++n) {
      auto e = coord_exps(g, r, n);
      unsigned total = 0;
      for (auto x : e) total += x;
      if (total > 1) continue;
      FElem expect = (total == 1 && e[v] == 1) ? 1 : 0;
      require(gen_img[v][n] == expect, "quasilogarithm differential is not the identity");
    }
  }
  return {source, std::move(map)};
}

FreenessCertificate o_freeness_basis(const GroupSchemeSpec& g, unsigned r) {
  DenseAlgebraPtr big = coordinate_algebra(g, r + 1);
  DenseAlgebraPtr small = coordinate_algebra(g, r);
  DenseAlgebraPtr y = power_subalgebra(g, r, r);
  const unsigned m = g.dim_g();
  const unsigned dim = big->dim();
  FreenessCertificate cert;
  cert.expected_rank = dim;
  require(small->dim() * y->dim() == dim, "freeness dimension bookkeeping failed");
  std::vector<Vec> cols;
  for (std::uint32_t i = 0; i < small->dim(); ++i) {
    // sigma lifts the monomial basis of k[G_(r)] along the truncation
    auto e = coord_exps(g, r, i);
    std::uint32_t lift = coord_index(g, r + 1, e);
    for (std::uint32_t yi = 0; yi < y->dim(); ++yi) {
      std::vector<unsigned> mu(m);
      unsigned v = yi;
      for (unsigned x = 0; x < m; ++x) {
        mu[x] = (v % g.p) * pow_u(g.p, r);
        v /= g.p;
      }
      SVec prod = big->mult_sparse({{lift, 1}}, {{coord_index(g, r + 1, mu), 1}});
      cols.push_back(to_dense(prod, dim));
    }
  }
  cert.block = Matrix::from_cols(big->field(), dim, cols);
  cert.free = rank(cert.block) == dim;
  return cert;
}

}  // namespace dwb
