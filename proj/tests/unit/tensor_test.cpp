#include <algorithm>
#include <functional>

#include "doctest.h"
#include "gen.hpp"
#include "qforms/common/errors.hpp"
#include "qforms/gfq/linalg.hpp"
#include "qforms/glq/classes.hpp"
#include "qforms/oracle/brute_force.hpp"
#include "qforms/tensor/action.hpp"
#include "qforms/tensor/proof.hpp"

using namespace qforms;
using namespace qforms::tensor;
using gfq::Elem;
using gfq::Field;
using gfq::FieldRef;
using gfq::kOne;
using gfq::kZero;

namespace {

// Matrix of the kind's space with the given coordinates, written out by hand.
Matrix space_element(const FieldRef& f, std::size_t n, ProductKind kind, const std::vector<Elem>& c) {
  Matrix a(f, n, n);
  std::size_t t = 0;
  if (kind == ProductKind::Full) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = c[t++];
    return a;
  }
  if (kind == ProductKind::Symmetric)
    for (std::size_t i = 0; i < n; ++i) a(i, i) = c[t++];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = c[t];
      a(j, i) = kind == ProductKind::Symmetric ? c[t] : f->neg(c[t]);
      ++t;
    }
  return a;
}

// Odometer over all vectors of F_q^len.
bool next(std::vector<Elem>& v, std::uint32_t q) {
  for (auto& e : v) {
    if (gfq::code(e) + 1u < q) {
      e = Elem{static_cast<std::uint8_t>(gfq::code(e) + 1)};
      return true;
    }
    e = kZero;
  }
  return false;
}

// Coordinates of a matrix in the kind's space, read off by hand.
std::vector<Elem> space_coords(const Matrix& a, ProductKind kind) {
  const std::size_t n = a.rows();
  std::vector<Elem> c;
  if (kind == ProductKind::Full) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c.push_back(a(i, j));
    return c;
  }
  if (kind == ProductKind::Symmetric)
    for (std::size_t i = 0; i < n; ++i) c.push_back(a(i, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c.push_back(a(i, j));
  return c;
}

// Counts x in F_q^N with sum_t x_t (g_t - e_t) = 0, where g_t is the image of
// the t-th basis tensor; cols[t] holds g_t - e_t.
std::uint64_t count_fixed(const gfq::Field& f, const std::vector<std::vector<Elem>>& cols) {
  const std::size_t len = cols.size();
  std::vector<Elem> x(len, kZero), sum(len);
  std::uint64_t fixed = 0;
  do {
    std::fill(sum.begin(), sum.end(), kZero);
    for (std::size_t t = 0; t < len; ++t) {
      if (x[t] == kZero) continue;
      for (std::size_t r = 0; r < len; ++r) sum[r] = f.add(sum[r], f.mul(x[t], cols[t][r]));
    }
    fixed += std::all_of(sum.begin(), sum.end(), [](Elem e) { return e == kZero; });
  } while (next(x, f.q()));
  return fixed;
}

// Tuples (A_1..A_m) with sum_l (Q^{-1})_{kl} P^T A_l P = A_k, by enumeration.
std::uint64_t literal_square_fixed(const Matrix& p, const Matrix& q, ProductKind kind) {
  const auto& f = p.field_ref();
  const std::size_t n = p.rows(), m = q.rows(), d = module_dim(kind, n);
  const Matrix qi = gfq::inverse(q);
  std::vector<std::vector<Elem>> cols;
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<Elem> e(d, kZero);
    e[c] = kOne;
    const auto img = space_coords(p.transpose() * space_element(f, n, kind, e) * p, kind);
    for (std::size_t l = 0; l < m; ++l) {
      std::vector<Elem> col(d * m);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < m; ++k) col[r * m + k] = f->mul(img[r], qi(k, l));
      col[c * m + l] = f->sub(col[c * m + l], kOne);
      cols.push_back(std::move(col));
    }
  }
  return count_fixed(*f, cols);
}

// D x m arrays X with M X (Q^{-1})^T = X, by enumeration.
std::uint64_t literal_module_fixed(const Matrix& mod, const Matrix& q) {
  const auto& f = mod.field_ref();
  const std::size_t d = mod.rows(), m = q.rows();
  const Matrix qi = gfq::inverse(q);
  std::vector<std::vector<Elem>> cols;
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t l = 0; l < m; ++l) {
      std::vector<Elem> col(d * m);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < m; ++k) col[r * m + k] = f->mul(mod(r, c), qi(k, l));
      col[c * m + l] = f->sub(col[c * m + l], kOne);
      cols.push_back(std::move(col));
    }
  return count_fixed(*f, cols);
}

// (A, v) -> (P^T A P, P^T v) with A alternating, column by column.
Matrix literal_frattini_odd(const Matrix& p) {
  const auto& f = p.field_ref();
  const std::size_t n = p.rows(), w = n * (n - 1) / 2;
  Matrix out(f, w + n, w + n);
  for (std::size_t k = 0; k < w; ++k) {
    std::vector<Elem> e(w, kZero);
    e[k] = kOne;
    const Matrix img = p.transpose() * space_element(f, n, ProductKind::Alternating, e) * p;
    std::size_t t = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) out(t++, k) = img(i, j);
  }
  out.set_block(w, w, p.transpose());
  return out;
}

std::uint64_t upow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) {
    if (r > (std::uint64_t{1} << 40)) return r;  // saturate; only compared against small caps
    r *= b;
  }
  return r;
}

glq::ConjLabel single(const FieldRef& f, unsigned n, std::initializer_list<long long> poly, std::vector<unsigned> parts) {
  return glq::ConjLabel{f, n, {{poly::Poly::from_ints(f, poly), glq::Partition{std::move(parts)}}}};
}

}  // namespace

TEST_CASE("square_action examples") {
  auto z2 = Field::make(2);
  auto z3 = Field::make(3);
  for (auto kind : {ProductKind::Full, ProductKind::Symmetric, ProductKind::Alternating})
    CHECK(square_action(Matrix::identity(z3, 3), kind).is_identity());
  CHECK(square_action(Matrix::from_ints(z2, 2, 2, {0, 1, 1, 1}), ProductKind::Alternating) ==
        Matrix::from_ints(z2, 1, 1, {1}));
  testgen::Gen g(11);
  for (int t = 0; t < 20; ++t) {
    Matrix p = g.invertible(z3, 2);
    CHECK(square_action(p, ProductKind::Alternating) == Matrix::identity(z3, 1).scaled(gfq::determinant(p)));
  }
  CHECK_THROWS_AS(square_action(Matrix(z2, 2, 2), ProductKind::Full), SingularMatrix);
  CHECK_THROWS_AS(square_action(Matrix::identity(z2, 2), ProductKind::FrattiniOdd), DomainError);
}

TEST_CASE("square_action is the congruence action in coordinates") {
  testgen::Gen g(12);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto f = Field::of_order(q);
    for (auto kind : {ProductKind::Full, ProductKind::Symmetric, ProductKind::Alternating}) {
      for (std::size_t n = 1; n <= 4; ++n) {
        const std::size_t d = module_dim(kind, n);
        for (int t = 0; t < 5; ++t) {
          Matrix p = g.invertible(f, n);
          Matrix s = square_action(p, kind);
          std::vector<Elem> c(d);
          for (auto& e : c) e = g.elem(*f);
          Matrix img = s * Matrix::from_codes(f, d, 1, std::span(reinterpret_cast<const std::uint8_t*>(c.data()), d));
          std::vector<Elem> ic(d);
          for (std::size_t i = 0; i < d; ++i) ic[i] = img(i, 0);
          CHECK(space_element(f, n, kind, ic) == p.transpose() * space_element(f, n, kind, c) * p);
          // Right action: S(PR) = S(R) S(P).
          Matrix r = g.invertible(f, n);
          CHECK(square_action(p * r, kind) == square_action(r, kind) * s);
        }
      }
    }
  }
}

TEST_CASE("module_action agrees with the oracle's generator matrices") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto f = Field::of_order(q);
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto gens = oracle::gl_generators(n, f);
      for (auto kind : kAllKinds) {
        if (kind == ProductKind::Frattini2Dual && q != 2) continue;
        if (module_dim(kind, n) == 0) continue;
        const auto want = oracle::module_generators(n, f, kind);
        REQUIRE(want.size() == gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i) CHECK(module_action(gens[i], kind) == want[i]);
      }
    }
  }
}

TEST_CASE("Frattini class 2 primal action matches collection for all of GL(n,2)") {
  auto z2 = Field::make(2);
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& p : oracle::all_invertible(n, z2, 1000)) CHECK(frattini2_primal(p) == oracle::frattini2_primal(p));
  CHECK_THROWS_AS(module_action(Matrix::identity(Field::make(3), 2), ProductKind::Frattini2Dual), DomainError);
}

TEST_CASE("module_action examples") {
  auto z2 = Field::make(2);
  for (auto kind : {ProductKind::FrattiniOdd, ProductKind::Frattini2Dual})
    CHECK(module_action(Matrix::identity(z2, 3), kind).is_identity());
  Matrix swap = Matrix::from_ints(z2, 2, 2, {0, 1, 1, 0});
  Matrix expect = Matrix::from_ints(z2, 3, 3, {0, 1, 0, 1, 0, 0, 0, 0, 1});
  CHECK(frattini2_primal(swap) == expect);
  CHECK(module_action(swap, ProductKind::Frattini2Dual) == expect);
  Matrix a = frattini2_primal(Matrix::from_ints(z2, 2, 2, {1, 1, 0, 1}));
  // s_2 -> s_1 + s_2 + c_12
  CHECK(a(0, 1) == kOne);
  CHECK(a(1, 1) == kOne);
  CHECK(a(2, 1) == kOne);
}

TEST_CASE("Frattini class 2 primal is block lower triangular with the exterior block in the corner") {
  auto z2 = Field::make(2);
  testgen::Gen g(13);
  for (std::size_t n = 2; n <= 5; ++n) {
    const std::size_t w = n * (n - 1) / 2;
    for (int t = 0; t < 10; ++t) {
      Matrix p = g.invertible(z2, n);
      Matrix a = frattini2_primal(p);
      CHECK(a.block(0, n, n, w).is_zero());
      CHECK(a.block(0, 0, n, n) == p);
      CHECK(a.block(n, n, w, w) == square_action(p.transpose(), ProductKind::Alternating));
      // Fixed dual vectors have a wedge part fixed by the dual exterior action.
      Matrix dual = module_action(p, ProductKind::Frattini2Dual);
      Matrix e_dual = gfq::inverse(a.block(n, n, w, w)).transpose();
      Matrix fix = gfq::kernel_basis(gfq::minus_identity(dual));
      for (std::size_t r = 0; r < fix.rows(); ++r) {
        Matrix c = fix.block(r, n, 1, w).transpose();
        CHECK(e_dual * c == c);
      }
    }
  }
}

TEST_CASE("full_action examples") {
  auto z3 = Field::make(3);
  CHECK(full_action(Matrix::identity(z3, 3), Matrix::identity(z3, 2)).is_identity());
  CHECK(full_action(Matrix::identity(z3, 1), Matrix::from_ints(z3, 1, 1, {2})) == Matrix::from_ints(z3, 1, 1, {2}));
  auto z5 = Field::make(5);
  // alpha = 2, alpha^2 = 4, beta = 4: alpha^2 beta = 16 = 1.
  CHECK(full_action(Matrix::from_ints(z5, 1, 1, {4}), Matrix::from_ints(z5, 1, 1, {4})).is_identity());
  CHECK_THROWS_AS(full_action(Matrix::identity(z3, 1), Matrix(z3, 1, 1)), SingularMatrix);
}

TEST_CASE("fixed_dim examples") {
  auto z2 = Field::make(2);
  for (auto kind : kAllKinds) {
    auto r = fixed_dim(Matrix::identity(z2, 3), Matrix::identity(z2, 2), kind);
    CHECK(r.mu == r.d * r.m);
    CHECK(r.nu == 0);
  }
  auto c = fixed_dim(Matrix::from_ints(z2, 2, 2, {0, 1, 1, 1}), Matrix::identity(z2, 1), ProductKind::Alternating);
  CHECK(c.d == 1);
  CHECK(c.mu == 1);
  auto z5 = Field::make(5);
  for (long a = 1; a < 5; ++a)
    for (long b = 1; b < 5; ++b) {
      if ((a * a * b) % 5 == 1) continue;
      Matrix p = Matrix::identity(z5, 3).scaled(z5->from_int(a));
      Matrix q = Matrix::identity(z5, 2).scaled(z5->from_int(b));
      for (auto kind : {ProductKind::Full, ProductKind::Symmetric, ProductKind::Alternating})
        CHECK(fixed_dim(p, q, kind).mu == 0);
    }
}

TEST_CASE("q^mu equals a literal count of fixed tensors") {
  testgen::Gen g(14);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto f = Field::of_order(q);
    for (auto kind : kAllKinds) {
      if (kind == ProductKind::Frattini2Dual && q != 2) continue;
      for (std::size_t n = 1; n <= 4; ++n) {
        for (std::size_t m = 1; m <= 4; ++m) {
          const std::size_t dm = module_dim(kind, n) * m;
          if (dm == 0 || upow(q, dm) > (1u << 16)) continue;
          for (int t = 0; t < 3; ++t) {
            Matrix p = t == 0 ? Matrix::identity(f, n) : g.invertible(f, n);
            Matrix qq = g.invertible(f, m);
            const auto mu = fixed_dim(p, qq, kind).mu;
            std::uint64_t lit = 0;
            if (kind == ProductKind::Frattini2Dual) {
              lit = literal_module_fixed(gfq::inverse(oracle::frattini2_primal(p)).transpose(), qq);
            } else if (kind == ProductKind::FrattiniOdd) {
              lit = literal_module_fixed(literal_frattini_odd(p), qq);
            } else {
              lit = literal_square_fixed(p, qq, kind);
            }
            CHECK(lit == upow(q, mu));
          }
        }
      }
    }
  }
}

TEST_CASE("fixed_dim is a class function") {
  testgen::Gen g(15);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto f = Field::of_order(q);
    for (auto kind : kAllKinds) {
      if (kind == ProductKind::Frattini2Dual && q != 2) continue;
      for (int t = 0; t < 15; ++t) {
        const std::size_t n = 1 + g.below(4), m = 1 + g.below(3);
        Matrix p = g.invertible(f, n), qq = g.invertible(f, m);
        Matrix s = g.invertible(f, n), u = g.invertible(f, m);
        CHECK(fixed_dim(s * p * gfq::inverse(s), u * qq * gfq::inverse(u), kind).mu == fixed_dim(p, qq, kind).mu);
      }
    }
  }
}

TEST_CASE("FrattiniOdd splits into the alternating part and V (x) W") {
  testgen::Gen g(16);
  for (std::uint32_t q : {3u, 5u, 7u, 9u}) {
    auto f = Field::of_order(q);
    for (int t = 0; t < 15; ++t) {
      const std::size_t n = 1 + g.below(4), m = 1 + g.below(3);
      Matrix p = g.invertible(f, n), qq = g.invertible(f, m);
      const auto vw = gfq::nullity(gfq::minus_identity(gfq::kronecker(p, gfq::inverse(qq))));
      CHECK(fixed_dim(p, qq, ProductKind::FrattiniOdd).mu == fixed_dim(p, qq, ProductKind::Alternating).mu + vw);
    }
  }
}

TEST_CASE("proof index set sizes") {
  auto z2 = Field::make(2);
  // (X+1)^4 plus a fixed line, n = m = 5, C = 1, R = 0.
  glq::ConjLabel p{z2, 5, {{poly::Poly::from_ints(z2, {1, 1}), glq::Partition{{4, 1}}}}};
  auto id5 = single(z2, 5, {1, 1}, {1, 1, 1, 1, 1});
  for (auto kind : {ProductKind::Full, ProductKind::Symmetric, ProductKind::Alternating}) {
    auto s = build_proof_index_set(p, id5, kind, Construction::LargeBlockP, 1, 0);
    CHECK(s.block_cut == 3);
    CHECK(s.index_set.size() == 20);
    CHECK(support_avoidance(s));
  }

  // Q one block of size 4, n = 3, in the regime C = 1/2, R = 5/2.
  auto id3 = single(z2, 3, {1, 1}, {1, 1, 1});
  auto j4 = single(z2, 4, {1, 1}, {4});
  auto s2 = build_proof_index_set(id3, j4, ProductKind::Full, Construction::LargeBlockQ, Rational(1, 2), Rational(5, 2));
  CHECK(s2.index_set.size() == 27);
  CHECK(support_avoidance(s2));
  CHECK_THROWS_AS(build_proof_index_set(id3, j4, ProductKind::Full, Construction::LargeBlockQ, 1, 1), DomainError);

  // Q one size-2 block in GL(2,2), P = I; only the structural mode applies.
  auto id2 = single(z2, 2, {1, 1}, {1, 1});
  auto j2 = single(z2, 2, {1, 1}, {2});
  CHECK_THROWS_AS(build_proof_index_set(id2, j2, ProductKind::Full, Construction::ManyBlocksQ, 1, 0), DomainError);
  auto s4 = build_proof_index_set(id2, j2, ProductKind::Full, Construction::ManyBlocksQ, 1, 0, HypothesisMode::Structural);
  CHECK(s4.index_set.size() == s4.d * s4.used);
  CHECK(s4.index_set.size() == 4);
  CHECK(support_avoidance(s4));

  ProofConstructionSpec empty = s4;
  empty.index_set.clear();
  CHECK(support_avoidance(empty));
}

TEST_CASE("proof index sets avoid the fixed space on the enforced sweep") {
  const Rational c = 1, r = 0;
  std::size_t instances = 0;
  for (std::uint32_t q : {2u, 3u}) {
    auto f = Field::make(q);
    for (unsigned n = 1; n <= 5; ++n) {
      const auto labels = glq::enumerate_classes(n, f);
      for (const auto& pl : labels) {
        for (const auto& ql : labels) {
          for (auto con : kAllConstructions) {
            for (auto kind : {ProductKind::Full, ProductKind::Symmetric, ProductKind::Alternating}) {
              ProofConstructionSpec s;
              try {
                s = build_proof_index_set(pl, ql, kind, con, c, r);
              } catch (const DomainError&) {
                break;  // hypothesis does not depend on kind
              }
              ++instances;
              CHECK(std::adjacent_find(s.index_set.begin(), s.index_set.end(), std::greater_equal<>()) ==
                    s.index_set.end());
              if (con == Construction::LargeBlockP)
                CHECK(s.index_set.size() == static_cast<std::size_t>((s.block_cut - 1) * (n - s.block_cut)) * n);
              CHECK(support_avoidance(s));
            }
          }
        }
      }
    }
  }
  CHECK(instances > 0);
}

TEST_CASE("structural proof index sets avoid the fixed space") {
  const Rational c = 1, r = 0;
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto f = Field::of_order(q);
    for (unsigned n = 1; n <= 3; ++n) {
      for (unsigned m = 1; m <= 3; ++m) {
        const auto pls = glq::enumerate_classes(n, f);
        const auto qls = glq::enumerate_classes(m, f);
        for (const auto& pl : pls)
          for (const auto& ql : qls)
            for (auto con : kAllConstructions)
              for (auto kind : {ProductKind::Full, ProductKind::Symmetric, ProductKind::Alternating}) {
                ProofConstructionSpec s;
                try {
                  s = build_proof_index_set(pl, ql, kind, con, c, r, HypothesisMode::Structural);
                } catch (const DomainError&) {
                  continue;
                }
                CHECK(support_avoidance(s));
              }
      }
    }
  }
}
