#include "qforms/burnside/engine.hpp"

#include <cstdlib>
#include <sstream>
#include <thread>

#include "qforms/common/errors.hpp"
#include "qforms/gfq/linalg.hpp"
#include "qforms/tensor/action.hpp"

namespace qforms::burnside {

struct BurnsideEngine::PClass {
  BigInt size;
  gfq::Matrix module;
  poly::Poly charpoly;
  // Irreducible index -> dim ker f^e(A) for e = 1..multiplicity of f in the
  // characteristic polynomial; beyond that the kernel no longer grows.
  std::map<std::size_t, std::vector<unsigned>> kernels;

  unsigned kernel_dim(std::size_t irr, unsigned e) const {
    auto it = kernels.find(irr);
    if (it == kernels.end()) return 0;
    const auto& v = it->second;
    return v[std::min<std::size_t>(e, v.size()) - 1];
  }
};

namespace {

// Runs body(i) for i in [0, count) on `threads` workers with a fixed
// strided assignment, so worker t always sees the same indices.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0u);
    return;
  }
  std::vector<std::jthread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) body(i, t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

unsigned default_threads() {
  if (const char* env = std::getenv("QFORMS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BurnsideEngine::BurnsideEngine(unsigned n, FieldRef field, ProductKind kind, unsigned threads)
    : n_(n), field_(std::move(field)), kind_(kind), d_(qforms::module_dim(kind, n)),
      threads_(threads == 0 ? default_threads() : threads), gl_n_(glq::gl_order(n, field_->q())) {
  if (n == 0) throw DomainError("n must be at least 1");
  if (kind == ProductKind::Frattini2Dual && field_->q() != 2)
    throw DomainError("the frattini2 module exists over GF(2) only");
  const auto labels = glq::enumerate_classes(n, field_);
  p_.resize(labels.size());
  parallel_for(labels.size(), threads_, [&](std::size_t i, unsigned) {
    PClass& pc = p_[i];
    pc.size = glq::class_size(labels[i]);
    pc.module = tensor::module_action(glq::rnf_matrix(labels[i]), kind_);
    pc.charpoly = poly::charpoly(pc.module);
  });
}

BurnsideEngine::~BurnsideEngine() = default;

std::string BurnsideEngine::describe(unsigned m) const {
  std::ostringstream os;
  os << "kind=" << kind_name(kind_) << " n=" << n_ << " m=" << m << " q=" << field_->q();
  return os.str();
}

std::size_t BurnsideEngine::irreducible_index(const poly::Poly& f) const {
  auto it = irr_index_.find(f);
  if (it == irr_index_.end()) throw ConsistencyError("irreducible " + f.to_string() + " not indexed");
  return it->second;
}

void BurnsideEngine::ensure_degree(unsigned deg) {
  if (deg <= degree_done_) return;
  const std::size_t first_new = irreducibles_.size();
  for (unsigned k = degree_done_ + 1; k <= deg; ++k) {
    for (auto& f : poly::monic_irreducibles_of_degree(field_, static_cast<int>(k), true)) {
      irr_index_.emplace(f, irreducibles_.size());
      irreducibles_.push_back(std::move(f));
    }
  }
  degree_done_ = deg;
  const std::size_t last = irreducibles_.size();
  parallel_for(p_.size(), threads_, [&](std::size_t i, unsigned) {
    PClass& pc = p_[i];
    if (pc.charpoly.degree() < 1) return;
    for (std::size_t j = first_new; j < last; ++j) {
      const poly::Poly& f = irreducibles_[j];
      if (f.degree() > pc.charpoly.degree()) break;
      poly::Poly rest = pc.charpoly;
      unsigned mult = 0;
      for (;;) {
        auto dm = poly::divmod(rest, f);
        if (!dm.rem.is_zero()) break;
        rest = std::move(dm.quot);
        ++mult;
      }
      if (mult == 0) continue;
      const gfq::Matrix g = poly::evaluate(f, pc.module);
      gfq::Matrix power = g;
      std::vector<unsigned> dims;
      for (unsigned e = 1; e <= mult; ++e) {
        dims.push_back(static_cast<unsigned>(gfq::nullity(power)));
        if (e < mult) power = power * g;
      }
      pc.kernels.emplace(j, std::move(dims));
    }
  });
}

const std::vector<BurnsideEngine::QClass>& BurnsideEngine::q_classes(unsigned m) {
  auto it = q_cache_.find(m);
  if (it != q_cache_.end()) return it->second;
  ensure_degree(m);
  std::vector<QClass> out;
  for (const auto& l : glq::enumerate_classes(m, field_)) {
    QClass qc;
    qc.size = glq::class_size(l);
    for (const auto& ed : glq::elementary_divisors(l)) qc.divisors.emplace_back(irreducible_index(ed.f), ed.e);
    out.push_back(std::move(qc));
  }
  return q_cache_.emplace(m, std::move(out)).first->second;
}

BurnsideSum BurnsideEngine::burnside_sum(unsigned m) {
  std::lock_guard lock(mutex_);
  if (auto it = sum_cache_.find(m); it != sum_cache_.end()) return it->second;

  BurnsideSum s;
  if (m == 0) {
    for (const auto& pc : p_) s.numerator += pc.size;
    s.class_pairs = p_.size();
  } else {
    const auto& qs = q_classes(m);
    const std::size_t top = d_ * m;
    std::vector<BigInt> qpow(top + 1);
    for (std::size_t k = 0; k <= top; ++k) qpow[k] = ipow(static_cast<unsigned long>(field_->q()), k);

    std::vector<BigInt> partial(threads_);
    parallel_for(p_.size(), threads_, [&](std::size_t i, unsigned t) {
      const PClass& pc = p_[i];
      // Sum of |C_Q| grouped by mu.
      std::vector<BigInt> bucket(top + 1);
      for (const auto& qc : qs) {
        std::size_t mu = 0;
        for (const auto& [irr, e] : qc.divisors) mu += pc.kernel_dim(irr, e);
        bucket[mu] += qc.size;
      }
      BigInt acc;
      for (std::size_t k = 0; k <= top; ++k)
        if (bucket[k] != 0) acc += bucket[k] * qpow[k];
      partial[t] += acc * pc.size;
    });
    for (const auto& v : partial) s.numerator += v;
    s.class_pairs = p_.size() * qs.size();
  }
  const BigInt order = gl_n_ * glq::gl_order(m, field_->q());
  if (s.numerator % order != 0)
    throw ConsistencyError("Burnside sum not divisible by the group order (" + describe(m) + ")");
  sum_cache_.emplace(m, s);
  return s;
}

BigInt BurnsideEngine::tensor_orbits(unsigned m) {
  const BurnsideSum s = burnside_sum(m);
  return BigInt(s.numerator / (gl_n_ * glq::gl_order(m, field_->q())));
}

BigInt BurnsideEngine::subspace_orbits(unsigned m) {
  if (m == 0) return 1;
  if (m > d_) return 0;
  BigInt diff = tensor_orbits(m) - tensor_orbits(m - 1);
  if (diff < 0) throw ConsistencyError("negative rank stratum (" + describe(m) + ")");
  return diff;
}

Rational BurnsideEngine::avg_aut(unsigned m) {
  const BigInt qdm = ipow(static_cast<unsigned long>(field_->q()), d_ * m);
  Rational direct(burnside_sum(m).numerator, qdm);
  direct.canonicalize();
  Rational via_orbits(tensor_orbits(m) * gl_n_ * glq::gl_order(m, field_->q()), qdm);
  via_orbits.canonicalize();
  if (direct != via_orbits) throw ConsistencyError("average automorphism order disagrees (" + describe(m) + ")");
  return direct;
}

BigInt tensor_orbits(unsigned n, unsigned m, const FieldRef& field, ProductKind kind, unsigned threads) {
  return BurnsideEngine(n, field, kind, threads).tensor_orbits(m);
}

BigInt subspace_orbits(unsigned n, unsigned m, const FieldRef& field, ProductKind kind, unsigned threads) {
  if (m > qforms::module_dim(kind, n)) return 0;
  return BurnsideEngine(n, field, kind, threads).subspace_orbits(m);
}

Rational avg_aut(unsigned n, unsigned m, const FieldRef& field, ProductKind kind, unsigned threads) {
  return BurnsideEngine(n, field, kind, threads).avg_aut(m);
}

Rational k_constant(unsigned m, std::uint64_t q) {
  Rational k(ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(m) * m), glq::gl_order(m, q));
  k.canonicalize();
  return k;
}

}  // namespace qforms::burnside
