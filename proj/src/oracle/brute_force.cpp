#include "qforms/oracle/brute_force.hpp"

#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>

#include "qforms/common/errors.hpp"
#include "qforms/gfq/linalg.hpp"

namespace qforms::oracle {

using gfq::Elem;
using gfq::kOne;
using gfq::kZero;

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // keep the smallest index as root
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::size_t size_of(std::size_t root) const { return size_[root]; }

  std::size_t components() {
    std::size_t c = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) c += find(i) == i ? 1 : 0;
    return c;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

std::uint64_t checked_pow(std::uint64_t q, std::size_t k, std::uint64_t cap, const char* what) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (r > cap / q) throw LimitExceeded(std::string("brute force: too many ") + what);
    r *= q;
  }
  return r;
}

BigInt gl_size(std::size_t n, std::uint64_t q) {
  BigInt r = 1;
  BigInt qn = ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(n));
  for (std::size_t i = 0; i < n; ++i) r *= qn - ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(i));
  return r;
}

void require_cap(const BigInt& v, std::uint64_t cap, const std::string& what) {
  if (v > BigInt(static_cast<unsigned long>(cap))) {
    throw LimitExceeded(what + " " + v.get_str() + " exceeds brute-force cap " + std::to_string(cap));
  }
}

std::string key_of(const Matrix& m) {
  std::string k(m.data().size(), '\0');
  for (std::size_t i = 0; i < m.data().size(); ++i) k[i] = static_cast<char>(gfq::code(m.data()[i]));
  return k;
}

// Positions (i, j) holding the free coordinates of the kind's matrix space,
// and how the mirrored entry is filled.
struct SpaceLayout {
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  int mirror = 0;  // 0 none, +1 symmetric, -1 skew
};

SpaceLayout layout(std::size_t n, ProductKind kind) {
  SpaceLayout l;
  switch (kind) {
    case ProductKind::Full:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) l.coords.push_back({i, j});
      }
      break;
    case ProductKind::Symmetric:
      l.mirror = 1;
      for (std::size_t i = 0; i < n; ++i) l.coords.push_back({i, i});
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) l.coords.push_back({i, j});
      }
      break;
    case ProductKind::Alternating:
      l.mirror = -1;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) l.coords.push_back({i, j});
      }
      break;
    default:
      throw DomainError("matrix-space layout only exists for full, sym, alt");
  }
  return l;
}

Matrix space_matrix(const SpaceLayout& l, std::size_t n, const FieldRef& field, const std::vector<Elem>& x) {
  Matrix a(field, n, n);
  for (std::size_t k = 0; k < l.coords.size(); ++k) {
    const auto [i, j] = l.coords[k];
    a(i, j) = x[k];
    if (l.mirror == 1) a(j, i) = x[k];
    if (l.mirror == -1) a(j, i) = field->neg(x[k]);
  }
  return a;
}

std::vector<Elem> space_coords(const SpaceLayout& l, const Matrix& a) {
  std::vector<Elem> x(l.coords.size());
  for (std::size_t k = 0; k < l.coords.size(); ++k) x[k] = a(l.coords[k].first, l.coords[k].second);
  return x;
}

std::vector<Elem> decode(std::uint64_t idx, std::size_t len, std::uint64_t q) {
  std::vector<Elem> v(len);
  for (std::size_t k = 0; k < len; ++k) {
    v[k] = Elem{static_cast<std::uint8_t>(idx % q)};
    idx /= q;
  }
  return v;
}

std::uint64_t encode(const std::vector<Elem>& v, std::uint64_t q) {
  std::uint64_t idx = 0;
  for (std::size_t k = v.size(); k-- > 0;) idx = idx * q + gfq::code(v[k]);
  return idx;
}

// Element x_1^{a_1} ... x_n^{a_n} * prod c_ij^{b_ij} of the free group of
// Frattini class 2 over GF(2): a_i in Z_4, b_ij in Z_2, i < j in lex order.
struct Word {
  std::vector<unsigned> a;
  std::vector<unsigned> b;
};

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  // position of (i, j), i < j, in the lex list (0,1), (0,2), ..., (n-2,n-1)
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

Word multiply(const Word& x, const Word& y, std::size_t n) {
  Word z = x;
  for (std::size_t i = 0; i < n; ++i) z.a[i] = (x.a[i] + y.a[i]) % 4;
  for (std::size_t k = 0; k < z.b.size(); ++k) z.b[k] = (x.b[k] + y.b[k]) % 2;
  // Moving x_i^{y_i} left past x_j^{x_j} (j > i) leaves [x_j, x_i]^{x_j y_i}.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t k = pair_index(i, j, n);
      z.b[k] = (z.b[k] + x.a[j] * y.a[i]) % 2;
    }
  }
  return z;
}

}  // namespace

BigInt gaussian_binomial(std::uint64_t q, std::size_t d, std::size_t m) {
  if (m > d) return 0;
  BigInt num = 1, den = 1;
  const unsigned long uq = static_cast<unsigned long>(q);
  for (std::size_t i = 0; i < m; ++i) {
    num *= ipow(uq, static_cast<unsigned long>(d - i)) - 1;
    den *= ipow(uq, static_cast<unsigned long>(i + 1)) - 1;
  }
  return BigInt(num / den);
}

std::vector<Matrix> gl_generators(std::size_t n, const FieldRef& field) {
  std::vector<Matrix> gens;
  for (std::uint32_t c = 1; c < field->q(); ++c) {
    const Elem e{static_cast<std::uint8_t>(c)};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        Matrix t = Matrix::identity(field, n);
        t(i, j) = e;
        gens.push_back(std::move(t));
      }
    }
    if (c > 1 && n > 0) {
      Matrix d = Matrix::identity(field, n);
      d(0, 0) = e;
      gens.push_back(std::move(d));
    }
  }
  if (gens.empty()) gens.push_back(Matrix::identity(field, n));  // trivial group GL(1,2), GL(0,q)
  return gens;
}

std::vector<Matrix> all_invertible(std::size_t n, const FieldRef& field, std::uint64_t cap) {
  require_cap(gl_size(n, field->q()), cap, "|GL|");
  const std::uint64_t q = field->q();
  const std::uint64_t vectors = checked_pow(q, n, std::uint64_t{1} << 40, "vectors");
  std::vector<Matrix> out;
  Matrix cur(field, n, n);
  std::function<void(std::size_t)> rec = [&](std::size_t row) {
    if (row == n) {
      out.push_back(cur);
      return;
    }
    for (std::uint64_t v = 0; v < vectors; ++v) {
      const auto coords = decode(v, n, q);
      for (std::size_t j = 0; j < n; ++j) cur(row, j) = coords[j];
      if (gfq::rank(cur.block(0, 0, row + 1, n)) == row + 1) rec(row + 1);
    }
  };
  rec(0);
  return out;
}

OrbitPartition bf_conj_classes(std::size_t n, const FieldRef& field, const Caps& caps) {
  const auto group = all_invertible(n, field, caps.conj_group);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < group.size(); ++i) index.emplace(key_of(group[i]), i);
  const auto gens = gl_generators(n, field);
  std::vector<Matrix> inv;
  for (const auto& g : gens) inv.push_back(gfq::inverse(g));
  UnionFind uf(group.size());
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (std::size_t g = 0; g < gens.size(); ++g) uf.unite(i, index.at(key_of(gens[g] * group[i] * inv[g])));
  }
  OrbitPartition part;
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (uf.find(i) != i) continue;
    part.representatives.push_back(group[i]);
    part.sizes.push_back(static_cast<unsigned long>(uf.size_of(i)));
  }
  return part;
}

BigInt bf_tensor_orbits(std::size_t n, std::size_t m, const FieldRef& field, ProductKind kind, const Caps& caps) {
  const SpaceLayout l = layout(n, kind);
  const std::size_t d = l.coords.size();
  const std::uint64_t q = field->q();
  require_cap(gl_size(n, q) * gl_size(m, q), caps.group_product, "|GL(n)|*|GL(m)|");
  const std::uint64_t total = checked_pow(q, d * m, caps.objects, "tensors");

  const auto pgens = gl_generators(n, field);
  std::vector<Matrix> pgens_t;
  for (const auto& p : pgens) pgens_t.push_back(p.transpose());
  std::vector<Matrix> qinv;
  for (const auto& h : gl_generators(m, field)) qinv.push_back(gfq::inverse(h));

  UnionFind uf(total);
  for (std::uint64_t t = 0; t < total; ++t) {
    const auto x = decode(t, d * m, q);
    std::vector<Matrix> slices;
    for (std::size_t k = 0; k < m; ++k) {
      slices.push_back(space_matrix(l, n, field, std::vector<Elem>(x.begin() + k * d, x.begin() + (k + 1) * d)));
    }
    for (std::size_t g = 0; g < pgens.size(); ++g) {
      std::vector<Elem> y;
      for (std::size_t k = 0; k < m; ++k) {
        const auto c = space_coords(l, pgens_t[g] * slices[k] * pgens[g]);
        y.insert(y.end(), c.begin(), c.end());
      }
      uf.unite(t, encode(y, q));
    }
    for (const auto& hi : qinv) {
      std::vector<Elem> y;
      for (std::size_t k = 0; k < m; ++k) {
        Matrix acc(field, n, n);
        for (std::size_t j = 0; j < m; ++j) {
          if (hi(k, j) != kZero) acc = acc + slices[j].scaled(hi(k, j));
        }
        const auto c = space_coords(l, acc);
        y.insert(y.end(), c.begin(), c.end());
      }
      uf.unite(t, encode(y, q));
    }
  }
  return static_cast<unsigned long>(uf.components());
}

Matrix frattini2_primal(const Matrix& p) {
  if (p.field().q() != 2) throw DomainError("Frattini class 2 collection is implemented over GF(2) only");
  const std::size_t n = p.rows();
  const std::size_t pairs = n * (n - 1) / 2;
  const std::size_t dim = n + pairs;
  auto image = [&](std::size_t i) {
    Word u{std::vector<unsigned>(n, 0), std::vector<unsigned>(pairs, 0)};
    for (std::size_t j = 0; j < n; ++j) {
      if (p(j, i) == kZero) continue;
      Word xj{std::vector<unsigned>(n, 0), std::vector<unsigned>(pairs, 0)};
      xj.a[j] = 1;
      u = multiply(u, xj, n);
    }
    return u;
  };
  std::vector<Word> u;
  for (std::size_t i = 0; i < n; ++i) u.push_back(image(i));

  Matrix out(p.field_ref(), dim, dim);
  auto put_column = [&](std::size_t col, const Word& w) {
    for (std::size_t i = 0; i < n; ++i) {
      if (w.a[i] % 2 != 0) throw ConsistencyError("collection produced an element outside the Frattini subgroup");
      out(i, col) = (w.a[i] / 2) ? kOne : kZero;
    }
    for (std::size_t k = 0; k < pairs; ++k) out(n + k, col) = w.b[k] ? kOne : kZero;
  };
  for (std::size_t i = 0; i < n; ++i) put_column(i, multiply(u[i], u[i], n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Word uv = multiply(u[i], u[j], n);
      const Word vu = multiply(u[j], u[i], n);
      Word comm{std::vector<unsigned>(n, 0), std::vector<unsigned>(pairs, 0)};
      for (std::size_t i2 = 0; i2 < n; ++i2) {
        if (uv.a[i2] != vu.a[i2]) throw ConsistencyError("words differ outside the commutator subgroup");
      }
      for (std::size_t k = 0; k < pairs; ++k) comm.b[k] = (uv.b[k] + vu.b[k]) % 2;
      put_column(n + pair_index(i, j, n), comm);
    }
  }
  return out;
}

std::vector<Matrix> module_generators(std::size_t n, const FieldRef& field, ProductKind kind) {
  std::vector<Matrix> out;
  const auto gens = gl_generators(n, field);
  if (kind == ProductKind::Frattini2Dual) {
    for (const auto& p : gens) out.push_back(gfq::inverse(frattini2_primal(p)).transpose());
    return out;
  }
  const bool with_v = kind == ProductKind::FrattiniOdd;
  const SpaceLayout l = layout(n, with_v ? ProductKind::Alternating : kind);
  const std::size_t d = l.coords.size();
  const std::size_t dim = d + (with_v ? n : 0);
  for (const auto& p : gens) {
    const Matrix pt = p.transpose();
    Matrix g(field, dim, dim);
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<Elem> e(d, kZero);
      e[k] = kOne;
      const auto img = space_coords(l, pt * space_matrix(l, n, field, e) * p);
      for (std::size_t r = 0; r < d; ++r) g(r, k) = img[r];
    }
    if (with_v) g.set_block(d, d, pt);
    out.push_back(std::move(g));
  }
  return out;
}

BigInt bf_module_tensor_orbits(const std::vector<Matrix>& module_gens, std::size_t m, const Caps& caps) {
  if (module_gens.empty()) throw DomainError("need at least one module generator to fix the dimension");
  const FieldRef field = module_gens.front().field_ref();
  const std::size_t d = module_gens.front().rows();
  const std::uint64_t q = field->q();
  const std::uint64_t total = checked_pow(q, d * m, caps.objects, "tensors");
  const auto wgens = gl_generators(m, field);
  UnionFind uf(total);
  for (std::uint64_t t = 0; t < total; ++t) {
    const auto x = decode(t, d * m, q);
    Matrix xm(field, d, m);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < m; ++k) xm(i, k) = x[i * m + k];
    }
    auto flat = [&](const Matrix& y) {
      std::vector<Elem> v(d * m);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < m; ++k) v[i * m + k] = y(i, k);
      }
      return encode(v, q);
    };
    for (const auto& g : module_gens) uf.unite(t, flat(g * xm));
    for (const auto& h : wgens) uf.unite(t, flat(xm * h.transpose()));
  }
  return static_cast<unsigned long>(uf.components());
}

SubspaceOrbits bf_subspace_orbit_partition(const std::vector<Matrix>& gens, std::size_t m, const Caps& caps) {
  if (gens.empty()) throw DomainError("need at least one generator to fix the dimension");
  const FieldRef field = gens.front().field_ref();
  const std::size_t dim = gens.front().rows();
  const std::uint64_t q = field->q();
  if (m > dim) return {};
  require_cap(gaussian_binomial(q, dim, m), caps.subspaces, "subspace count");

  // Enumerate reduced echelon bases pivot pattern by pivot pattern.
  std::vector<Matrix> spaces;
  std::vector<std::size_t> piv;
  std::function<void(std::size_t)> choose = [&](std::size_t start) {
    if (piv.size() == m) {
      std::vector<std::pair<std::size_t, std::size_t>> free;
      std::vector<bool> is_piv(dim, false);
      for (auto c : piv) is_piv[c] = true;
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = piv[r] + 1; c < dim; ++c) {
          if (!is_piv[c]) free.push_back({r, c});
        }
      }
      const std::uint64_t count = checked_pow(q, free.size(), caps.subspaces, "subspaces");
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        Matrix b(field, m, dim);
        for (std::size_t r = 0; r < m; ++r) b(r, piv[r]) = kOne;
        const auto vals = decode(idx, free.size(), q);
        for (std::size_t k = 0; k < free.size(); ++k) b(free[k].first, free[k].second) = vals[k];
        spaces.push_back(std::move(b));
      }
      return;
    }
    for (std::size_t c = start; c < dim; ++c) {
      piv.push_back(c);
      choose(c + 1);
      piv.pop_back();
    }
  };
  choose(0);

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < spaces.size(); ++i) index.emplace(key_of(spaces[i]), i);
  std::vector<Matrix> gens_t;
  for (const auto& g : gens) gens_t.push_back(g.transpose());
  UnionFind uf(spaces.size());
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (const auto& gt : gens_t) {
      const Matrix img = gfq::row_space(spaces[i] * gt);
      uf.unite(i, index.at(key_of(img)));
    }
  }
  SubspaceOrbits out;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    if (uf.find(i) != i) continue;
    out.representatives.push_back(spaces[i]);
    out.sizes.push_back(uf.size_of(i));
  }
  return out;
}

BigInt bf_subspace_orbits(const std::vector<Matrix>& gens, std::size_t m, const Caps& caps) {
  return static_cast<unsigned long>(bf_subspace_orbit_partition(gens, m, caps).sizes.size());
}

BigInt bf_aut_order(const std::vector<Matrix>& basis, std::size_t n, const FieldRef& field, const Caps& caps) {
  const auto group = all_invertible(n, field, caps.aut_group);
  if (basis.empty()) return static_cast<unsigned long>(group.size());
  Matrix flat(field, basis.size(), n * n);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) flat(k, i * n + j) = basis[k](i, j);
    }
  }
  const std::size_t r = gfq::rank(flat);
  Matrix probe(field, basis.size() + 1, n * n);
  probe.set_block(0, 0, flat);
  std::uint64_t count = 0;
  for (const auto& p : group) {
    const Matrix pt = p.transpose();
    bool ok = true;
    for (const auto& a : basis) {
      const Matrix img = pt * a * p;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) probe(basis.size(), i * n + j) = img(i, j);
      }
      if (gfq::rank(probe) != r) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return static_cast<unsigned long>(count);
}

}  // namespace qforms::oracle
