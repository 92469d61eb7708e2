#include "qforms/randspace/survey.hpp"

#include <exception>
#include <limits>
#include <thread>

#include "qforms/burnside/engine.hpp"
#include "qforms/common/errors.hpp"
#include "qforms/gfq/linalg.hpp"
#include "qforms/glq/classes.hpp"
#include "qforms/oracle/brute_force.hpp"

namespace qforms::randspace {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// Matrix of the kind's space with the given coordinates.
gfq::Matrix space_matrix(const gfq::FieldRef& f, std::size_t n, ProductKind kind, std::span<const gfq::Elem> c) {
  gfq::Matrix a(f, n, n);
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

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGamma;
  return mix(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t v = next();
    if (v < limit) return v % bound;
  }
}

std::uint64_t SplitMix64::derive(std::uint64_t master, std::uint64_t index) {
  return mix(master ^ mix(index + kGamma));
}

gfq::Matrix sample_subspace(std::size_t dim, std::size_t m, const gfq::FieldRef& field, std::uint64_t seed) {
  if (m > dim) throw DomainError("subspace dimension exceeds the ambient dimension");
  if (m == 0) return gfq::Matrix(field, 0, dim);
  SplitMix64 rng(seed);
  for (;;) {
    gfq::Matrix a(field, m, dim);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < dim; ++j) a(i, j) = gfq::Elem{static_cast<std::uint8_t>(rng.below(field->q()))};
    auto e = gfq::rref(std::move(a));
    if (e.rank() == m) return e.rref;
  }
}

AutSurveyReport aut_survey(unsigned n, unsigned m, const gfq::FieldRef& field, ProductKind kind, std::uint64_t trials,
                           std::uint64_t seed, unsigned threads) {
  if (kind != ProductKind::Full && kind != ProductKind::Symmetric && kind != ProductKind::Alternating)
    throw DomainError("automorphism survey takes full, sym or alt");
  const std::size_t d = module_dim(kind, n);
  if (m > d) throw DomainError("m exceeds the dimension of the matrix space");
  const std::uint64_t q = field->q();
  const oracle::Caps caps;
  if (glq::gl_order(n, q) > caps.aut_group)
    throw LimitExceeded("|GL(" + std::to_string(n) + "," + std::to_string(q) + ")| exceeds the automorphism cap");

  AutSurveyReport r;
  r.n = n;
  r.m = m;
  r.q = field->q();
  r.kind = kind;
  r.trials = trials;
  r.seed = seed;
  r.threshold = burnside::k_constant(m, q) * static_cast<unsigned long>(q - 1);

  std::vector<BigInt> orders(trials);
  const unsigned workers = std::max(1u, threads == 0 ? burnside::default_threads() : threads);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned t) {
    try {
      for (std::uint64_t i = t; i < trials; i += workers) {
        const gfq::Matrix basis = sample_subspace(d, m, field, SplitMix64::derive(seed, i));
        std::vector<gfq::Matrix> mats;
        for (std::size_t k = 0; k < m; ++k) mats.push_back(space_matrix(field, n, kind, basis.row(k)));
        orders[i] = oracle::bf_aut_order(mats, n, field, caps);
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run, t);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::uint64_t small = 0;
  const BigInt gl = glq::gl_order(n, q);
  for (const auto& o : orders) {
    ++r.histogram[o];
    if (Rational(o) <= r.threshold) ++small;
    if (gl % o != 0) throw ConsistencyError("automorphism order " + to_decimal(o) + " does not divide |GL|");
  }
  r.fraction_small = trials ? Rational(static_cast<unsigned long>(small), static_cast<unsigned long>(trials)) : Rational(0);
  r.fraction_small.canonicalize();
  if (small == 0 && trials > 0)
    r.warnings.push_back("no sample reached the threshold; n is far below the range where small automorphism groups dominate");
  return r;
}

std::vector<std::string> trend_warnings(const std::vector<AutSurveyReport>& by_q) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < by_q.size(); ++i) {
    if (by_q[i].fraction_small < by_q[i - 1].fraction_small)
      out.push_back("fraction_small drops from q=" + std::to_string(by_q[i - 1].q) + " (" +
                    to_decimal(by_q[i - 1].fraction_small) + ") to q=" + std::to_string(by_q[i].q) + " (" +
                    to_decimal(by_q[i].fraction_small) + ")");
  }
  return out;
}

}  // namespace qforms::randspace
