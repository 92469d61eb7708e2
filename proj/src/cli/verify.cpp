#include "qforms/cli/verify.hpp"

#include <sstream>

#include "qforms/burnside/engine.hpp"
#include "qforms/census/groups.hpp"
#include "qforms/common/errors.hpp"
#include "qforms/glq/classes.hpp"
#include "qforms/oracle/brute_force.hpp"
#include "qforms/tensor/proof.hpp"

namespace qforms::cli {

namespace {

using gfq::Field;

class Recorder {
 public:
  explicit Recorder(std::string suite) { r_.suite = std::move(suite); }

  void check(bool ok, const std::string& what) {
    ++r_.checks;
    if (!ok) r_.failures.push_back(what);
  }

  SuiteReport take() { return std::move(r_); }

 private:
  SuiteReport r_;
};

std::string tag(std::string_view kind, unsigned n, unsigned m, std::uint32_t q) {
  std::ostringstream os;
  os << kind << " n=" << n << " m=" << m << " q=" << q;
  return os.str();
}

bool small_enough(std::uint32_t q, std::size_t dm) {
  return ipow(static_cast<unsigned long>(q), dm) <= 65536;
}

void oracle_suite(Recorder& rec, unsigned threads) {
  for (auto kind : kAllKinds) {
    for (std::uint32_t q : {2u, 3u}) {
      if (kind == ProductKind::Frattini2Dual && q != 2) continue;
      if (kind == ProductKind::FrattiniOdd && q != 3) continue;
      auto f = Field::make(q);
      for (unsigned n = 1; n <= 3; ++n) {
        burnside::BurnsideEngine eng(n, f, kind, threads);
        const std::size_t d = eng.module_dim();
        const bool square = kind == ProductKind::Full || kind == ProductKind::Symmetric || kind == ProductKind::Alternating;
        for (unsigned m = 1; m <= 2; ++m) {
          if (d == 0 || !small_enough(q, d * m)) continue;
          const auto gens = oracle::module_generators(n, f, kind);
          const BigInt want = square ? oracle::bf_tensor_orbits(n, m, f, kind) : oracle::bf_module_tensor_orbits(gens, m);
          rec.check(eng.tensor_orbits(m) == want, "tensor orbits " + tag(kind_name(kind), n, m, q));
          if (m <= d)
            rec.check(eng.subspace_orbits(m) == oracle::bf_subspace_orbits(gens, m),
                      "subspace orbits " + tag(kind_name(kind), n, m, q));
        }
      }
    }
  }
}

void integrality_suite(Recorder& rec, unsigned threads) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto f = Field::of_order(q);
    for (auto kind : kAllKinds) {
      if (kind == ProductKind::Frattini2Dual && q != 2) continue;
      for (unsigned n = 1; n <= 5; ++n) {
        burnside::BurnsideEngine eng(n, f, kind, threads);
        for (unsigned m = 0; m <= 4; ++m) {
          bool ok = true;
          try {
            eng.burnside_sum(m);
          } catch (const ConsistencyError&) {
            ok = false;
          }
          rec.check(ok, "integrality " + tag(kind_name(kind), n, m, q));
        }
      }
    }
  }
}

void bounds_suite(Recorder& rec) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto f = Field::of_order(q);
    for (unsigned n = 1; n <= 4; ++n) {
      BigInt total = 0;
      for (const auto& l : glq::enumerate_classes(n, f)) {
        total += glq::class_size(l);
        rec.check(glq::log_bound_check(l), "class-size exponent bound " + l.to_string());
        for (unsigned k = 0; k <= 2; ++k) {
          const auto a = glq::almost_scalar_check(l, k);
          if (a.applies) rec.check(a.tight && a.envelope, "almost-scalar bound k=" + std::to_string(k) + " " + l.to_string());
        }
      }
      rec.check(total == glq::gl_order(n, q), "class sizes sum to |GL(" + std::to_string(n) + "," + std::to_string(q) + ")|");
    }
  }
  for (unsigned n = 2; n <= 5; ++n) {
    const unsigned long c2 = n * (n - 1) / 2;
    burnside::BurnsideEngine eng(n, Field::make(3), ProductKind::Alternating);
    for (unsigned m = 1; m <= c2; ++m) {
      const BigInt s = eng.subspace_orbits(m);
      const bool lower = ipow(3ul, m * (c2 - m)) <= s * ipow(3ul, static_cast<unsigned long>(n) * n);
      const bool upper = s <= ipow(3ul, m * (c2 - m + 1));
      rec.check(lower && upper, "stratum envelope p=3 n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
}

void proofs_suite(Recorder& rec) {
  for (std::uint32_t q : {2u, 3u}) {
    auto f = Field::make(q);
    for (unsigned n = 1; n <= 5; ++n) {
      const auto labels = glq::enumerate_classes(n, f);
      for (const auto& pl : labels)
        for (const auto& ql : labels)
          for (auto con : tensor::kAllConstructions)
            for (auto kind : {ProductKind::Full, ProductKind::Symmetric, ProductKind::Alternating}) {
              tensor::ProofConstructionSpec s;
              try {
                s = tensor::build_proof_index_set(pl, ql, kind, con, 1, 0);
              } catch (const DomainError&) {
                break;
              }
              const std::string what = std::string(tensor::construction_name(con)) + " " + std::string(kind_name(kind)) +
                                       " P=" + pl.to_string() + " Q=" + ql.to_string();
              rec.check(tensor::support_avoidance(s), "avoidance " + what);
              if (con == tensor::Construction::LargeBlockP) {
                const auto expect = static_cast<std::size_t>((s.block_cut - 1) * (static_cast<long>(n) - s.block_cut)) * s.m;
                rec.check(s.index_set.size() == expect, "index set size " + what);
              }
            }
    }
  }
}

}  // namespace

SuiteReport run_suite(std::string_view name, unsigned threads) {
  Recorder rec{std::string(name)};
  if (name == "oracle") {
    oracle_suite(rec, threads);
  } else if (name == "integrality") {
    integrality_suite(rec, threads);
  } else if (name == "bounds") {
    bounds_suite(rec);
  } else if (name == "proofs") {
    proofs_suite(rec);
  } else {
    throw DomainError("unknown suite '" + std::string(name) + "'");
  }
  return rec.take();
}

}  // namespace qforms::cli
