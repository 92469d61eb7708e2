#include "qforms/tensor/proof.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qforms/common/errors.hpp"
#include "qforms/gfq/linalg.hpp"
#include "qforms/tensor/action.hpp"

namespace qforms::tensor {

using glq::ConjLabel;

namespace {

struct Block {
  Matrix companion;
  std::size_t size = 0;
  bool diagonal = false;   // a 1x1 block
  gfq::Elem eigenvalue{};  // meaningful when diagonal
};

std::vector<Block> blocks_of(const ConjLabel& label) {
  std::vector<Block> out;
  for (const auto& ed : glq::elementary_divisors(label)) {
    Block b;
    b.companion = glq::companion(poly::pow(ed.f, ed.e));
    b.size = b.companion.rows();
    b.diagonal = b.size == 1;
    if (b.diagonal) b.eigenvalue = b.companion(0, 0);
    out.push_back(std::move(b));
  }
  return out;
}

Matrix assemble(const ConjLabel& label, const std::vector<Block>& blocks) {
  Matrix m(label.field, label.n, label.n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    m.set_block(off, off, b.companion);
    off += b.size;
  }
  return m;
}

std::vector<Block> largest_first(std::vector<Block> bs) {
  auto it = std::max_element(bs.begin(), bs.end(), [](const Block& a, const Block& b) { return a.size < b.size; });
  if (it != bs.end()) std::rotate(bs.begin(), it, it + 1);
  return bs;
}

std::vector<Block> long_blocks_first(std::vector<Block> bs) {
  std::stable_partition(bs.begin(), bs.end(), [](const Block& b) { return b.size >= 2; });
  return bs;
}

// One 1x1 block per distinct eigenvalue, then the other 1x1 blocks, then the
// rest. Returns the number of distinct eigenvalues placed up front.
std::size_t eigen_order(std::vector<Block>& bs) {
  std::stable_partition(bs.begin(), bs.end(), [](const Block& b) { return b.diagonal; });
  std::set<std::uint8_t> seen;
  std::stable_partition(bs.begin(), bs.end(), [&](const Block& b) {
    return b.diagonal && seen.insert(gfq::code(b.eigenvalue)).second;
  });
  return seen.size();
}

std::size_t count_long(const std::vector<Block>& bs) {
  return static_cast<std::size_t>(std::count_if(bs.begin(), bs.end(), [](const Block& b) { return b.size >= 2; }));
}

std::size_t largest(const std::vector<Block>& bs) {
  std::size_t l = 0;
  for (const auto& b : bs) l = std::max(l, b.size);
  return l;
}

long floor_of(const Rational& x) {
  BigInt z;
  mpz_fdiv_q(z.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return z.get_si();
}

long ceil_of(const Rational& x) {
  BigInt z;
  mpz_cdiv_q(z.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return z.get_si();
}

[[noreturn]] void reject(const ProofConstructionSpec& s, const std::string& why) {
  std::ostringstream os;
  os << construction_name(s.construction) << " (n=" << s.n << ", m=" << s.m << ", C=" << s.c.get_str()
     << ", R=" << s.r.get_str() << "): " << why;
  throw DomainError(os.str());
}

void push_square(std::vector<std::size_t>& out, std::size_t i, std::size_t j, std::size_t k,
                 const ProofConstructionSpec& s) {
  std::size_t idx = 0;
  if (square_coordinate(i, j, s.n, s.kind, idx)) out.push_back(tensor_index(idx, k, s.m));
}

}  // namespace

std::string_view construction_name(Construction c) {
  switch (c) {
    case Construction::LargeBlockP: return "large-block-p";
    case Construction::LargeBlockQ: return "large-block-q";
    case Construction::ManyBlocksP: return "many-blocks-p";
    case Construction::ManyBlocksQ: return "many-blocks-q";
    case Construction::ManyEigenvaluesP: return "many-eigenvalues-p";
  }
  return "?";
}

Construction parse_construction(std::string_view s) {
  for (auto c : kAllConstructions)
    if (construction_name(c) == s) return c;
  throw DomainError("unknown construction '" + std::string(s) + "'");
}

ProofConstructionSpec build_proof_index_set(const ConjLabel& pl, const ConjLabel& ql, ProductKind kind,
                                            Construction construction, const Rational& c, const Rational& r,
                                            HypothesisMode mode) {
  glq::validate(pl);
  glq::validate(ql);
  if (*pl.field != *ql.field) throw DomainError("P and Q labels live over different fields");
  if (kind != ProductKind::Full && kind != ProductKind::Symmetric && kind != ProductKind::Alternating)
    throw DomainError("constructions are defined for full, sym and alt only");
  if (c <= 0) throw DomainError("C must be positive");

  ProofConstructionSpec s;
  s.construction = construction;
  s.mode = mode;
  s.c = c;
  s.r = r;
  s.kind = kind;
  s.n = pl.n;
  s.m = ql.n;
  s.d = module_dim(kind, s.n);

  const Rational p_len = 1 + c + 1 / c;     // block length bound for P
  const Rational p_cnt = c + 1 / c;         // long-block count bound for P
  const Rational q_len = 2 * c * c + 3;
  const Rational q_cnt = 2 * c * c + 2;
  s.block_cut = ceil_of(p_len);
  s.q_block_cut = ceil_of(q_len);
  s.p_block_count = floor_of(p_cnt) + 1;
  s.q_block_count = floor_of(q_cnt) + 1;
  s.eigen_count = floor_of(p_len) + 1;

  const bool enforce = mode == HypothesisMode::Enforce;
  if (enforce && Rational(static_cast<long>(s.m)) != c * static_cast<long>(s.n) + r)
    reject(s, "m differs from Cn + R");

  auto pb = blocks_of(pl);
  auto qb = blocks_of(ql);
  const long n = static_cast<long>(s.n);
  auto& out = s.index_set;

  switch (construction) {
    case Construction::LargeBlockP: {
      pb = largest_first(std::move(pb));
      const long l = static_cast<long>(largest(pb));
      if (enforce && !(Rational(l) > p_len)) reject(s, "largest block of P is not longer than 1 + C + 1/C");
      if (l < 2) reject(s, "P has no block of size >= 2");
      s.used = std::min(s.block_cut, l);
      // a_i [] a_j (x) b_k with i < used - 1 and j outside {0..used-2} and
      // the last vector l-1 of the block.
      for (long i = 0; i + 1 < s.used; ++i)
        for (long j = s.used - 1; j < n; ++j) {
          if (j == l - 1) continue;
          for (std::size_t k = 0; k < s.m; ++k) push_square(out, i, j, k, s);
        }
      break;
    }
    case Construction::LargeBlockQ: {
      qb = largest_first(std::move(qb));
      const long l = static_cast<long>(largest(qb));
      if (enforce && !(Rational(l) > q_len)) reject(s, "largest block of Q is not longer than 2C^2 + 3");
      if (l < 2) reject(s, "Q has no block of size >= 2");
      s.used = l;
      for (std::size_t i = 0; i < s.d; ++i)
        for (long k = 0; k + 1 < l; ++k) out.push_back(tensor_index(i, k, s.m));
      break;
    }
    case Construction::ManyBlocksP: {
      pb = long_blocks_first(std::move(pb));
      const long cnt = static_cast<long>(count_long(pb));
      if (enforce) {
        if (Rational(static_cast<long>(largest(pb))) > p_len) reject(s, "P has a block longer than 1 + C + 1/C");
        if (!(Rational(cnt) > p_cnt)) reject(s, "P has at most C + 1/C blocks of size >= 2");
      }
      if (cnt < 1) reject(s, "P has no block of size >= 2");
      s.used = std::min(s.p_block_count, cnt);
      std::vector<long> firsts;
      long l = 0;
      for (long b = 0; b < s.used; ++b) {
        firsts.push_back(l);
        l += static_cast<long>(pb[b].size);
      }
      for (long i : firsts)
        for (long j = l; j < n; ++j)
          for (std::size_t k = 0; k < s.m; ++k) push_square(out, i, j, k, s);
      break;
    }
    case Construction::ManyBlocksQ: {
      qb = long_blocks_first(std::move(qb));
      const long cnt = static_cast<long>(count_long(qb));
      if (enforce && !(Rational(cnt) > q_cnt)) reject(s, "Q has at most 2C^2 + 2 blocks of size >= 2");
      if (cnt < 1) reject(s, "Q has no block of size >= 2");
      s.used = std::min(s.q_block_count, cnt);
      std::vector<std::size_t> firsts;
      std::size_t off = 0;
      for (long b = 0; b < s.used; ++b) {
        firsts.push_back(off);
        off += qb[b].size;
      }
      for (std::size_t i = 0; i < s.d; ++i)
        for (auto k : firsts) out.push_back(tensor_index(i, k, s.m));
      break;
    }
    case Construction::ManyEigenvaluesP: {
      const long distinct = static_cast<long>(eigen_order(pb));
      eigen_order(qb);
      const long sv = std::count_if(pb.begin(), pb.end(), [](const Block& b) { return b.diagonal; });
      const long sw = std::count_if(qb.begin(), qb.end(), [](const Block& b) { return b.diagonal; });
      if (enforce) {
        if (Rational(static_cast<long>(count_long(pb))) > p_cnt) reject(s, "P has more than C + 1/C long blocks");
        if (Rational(static_cast<long>(count_long(qb))) > q_cnt) reject(s, "Q has more than 2C^2 + 2 long blocks");
        if (Rational(static_cast<long>(largest(pb))) > p_len) reject(s, "P has a block longer than 1 + C + 1/C");
        if (Rational(static_cast<long>(largest(qb))) > q_len) reject(s, "Q has a block longer than 2C^2 + 3");
        if (!(Rational(distinct) > p_len)) reject(s, "P has at most 1 + C + 1/C distinct diagonal eigenvalues");
      }
      if (sv == 0 || sw == 0) reject(s, "P or Q has no diagonal part");
      // All distinct eigenvalues sit in front; the count is not clamped.
      s.used = distinct;
      const auto& f = *pl.field;
      for (long i = 0; i < distinct; ++i)
        for (long j = distinct; j < sv; ++j)
          for (long k = 0; k < sw; ++k) {
            const auto a = f.mul(f.mul(pb[i].eigenvalue, pb[j].eigenvalue), qb[k].eigenvalue);
            if (a != gfq::kOne) push_square(out, i, j, k, s);
          }
      break;
    }
  }

  s.p = assemble(pl, pb);
  s.q = assemble(ql, qb);
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw ConsistencyError("construction produced a repeated coordinate");
  return s;
}

Matrix natural_action(const Matrix& p, const Matrix& q, ProductKind kind) {
  if (!q.is_square() || !gfq::is_invertible(q)) throw SingularMatrix("Q is singular");
  return gfq::kronecker(square_action(p.transpose(), kind), q);
}

bool support_avoidance(const Matrix& p, const Matrix& q, ProductKind kind, const ProofConstructionSpec& spec) {
  const std::size_t dm = module_dim(kind, p.rows()) * q.rows();
  for (auto i : spec.index_set)
    if (i >= dm) throw DomainError("index set does not fit the module");
  if (spec.index_set.empty()) return true;
  const Matrix fix = gfq::kernel_basis(gfq::minus_identity(natural_action(p, q, kind)));
  const std::size_t mu = fix.rows();
  if (mu == 0) return true;
  // Restrict the fixed-space basis to the coordinates outside the set.
  std::vector<bool> inside(dm, false);
  for (auto i : spec.index_set) inside[i] = true;
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < dm; ++c)
    if (!inside[c]) keep.push_back(c);
  Matrix restricted(p.field_ref(), mu, keep.size());
  for (std::size_t r = 0; r < mu; ++r)
    for (std::size_t c = 0; c < keep.size(); ++c) restricted(r, c) = fix(r, keep[c]);
  return gfq::rank(restricted) == mu;
}

}  // namespace qforms::tensor
