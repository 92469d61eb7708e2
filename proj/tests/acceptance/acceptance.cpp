// Acceptance checks, one PASS/FAIL line per criterion. With --criterion N
// only that one runs. Exit status is nonzero when any selected check fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "qforms/burnside/engine.hpp"
#include "qforms/census/groups.hpp"
#include "qforms/cli/cli.hpp"
#include "qforms/common/errors.hpp"
#include "qforms/glq/classes.hpp"
#include "qforms/oracle/brute_force.hpp"
#include "qforms/tensor/proof.hpp"

using namespace qforms;
using gfq::Field;

namespace {

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 32) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void note(std::string s) { notes_.push_back(std::move(s)); }

  bool passed() const { return failed_ == 0 && count_ > 0; }
  std::string summary() const {
    std::string s = std::to_string(count_) + " checks";
    if (failed_) s += ", " + std::to_string(failed_) + " failed";
    return s;
  }
  std::string details() const {
    std::string s;
    for (const auto& f : failures_) s += "    fail: " + f + "\n";
    for (const auto& n : notes_) s += "    " + n + "\n";
    return s;
  }

 private:
  std::size_t count_ = 0, failed_ = 0;
  std::vector<std::string> failures_, notes_;
};

std::string at(ProductKind kind, unsigned n, unsigned m, std::uint32_t q) {
  std::ostringstream os;
  os << kind_name(kind) << " n=" << n << " m=" << m << " q=" << q;
  return os.str();
}

constexpr ProductKind kSquareKinds[] = {ProductKind::Full, ProductKind::Symmetric, ProductKind::Alternating};

// (kind, n, m, q) with q^{dm} <= 2^16 over the small oracle grid.
template <class F>
void oracle_sweep(F&& f) {
  for (auto kind : kSquareKinds)
    for (std::uint32_t q : {2u, 3u})
      for (unsigned n = 1; n <= 3; ++n)
        for (unsigned m = 1; m <= 2; ++m)
          if (ipow(q, module_dim(kind, n) * m) <= 65536) f(kind, n, m, q);
}

void tensor_oracle(Check& c) {
  oracle_sweep([&](ProductKind kind, unsigned n, unsigned m, std::uint32_t q) {
    auto f = Field::make(q);
    c.expect(burnside::tensor_orbits(n, m, f, kind) == oracle::bf_tensor_orbits(n, m, f, kind), at(kind, n, m, q));
  });
  auto z2 = Field::make(2);
  c.expect(burnside::tensor_orbits(2, 1, z2, ProductKind::Full) == 6, "anchor full 2 1 2 = 6");
  c.expect(burnside::tensor_orbits(2, 1, z2, ProductKind::Alternating) == 2, "anchor alt 2 1 2 = 2");
}

void subspace_oracle(Check& c) {
  const oracle::Caps caps;
  auto compare = [&](ProductKind kind, unsigned n, unsigned m, std::uint32_t q) {
    auto f = Field::make(q);
    const std::size_t d = module_dim(kind, n);
    if (m > d) {
      c.expect(burnside::subspace_orbits(n, m, f, kind) == 0, at(kind, n, m, q) + " above the dimension");
      return;
    }
    if (oracle::gaussian_binomial(q, d, m) > caps.subspaces) {
      c.note("skipped " + at(kind, n, m, q) + ": Grassmannian above the oracle cap");
      return;
    }
    const auto gens = oracle::module_generators(n, f, kind);
    c.expect(burnside::subspace_orbits(n, m, f, kind) == oracle::bf_subspace_orbits(gens, m), at(kind, n, m, q));
  };
  oracle_sweep(compare);
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned m = 1; m <= 2; ++m) {
      compare(ProductKind::FrattiniOdd, n, m, 3);
      compare(ProductKind::Frattini2Dual, n, m, 2);
    }
  auto z2 = Field::make(2);
  c.expect(burnside::subspace_orbits(3, 1, z2, ProductKind::Alternating) == 1, "anchor alt 3 1 2 = 1");
  c.expect(burnside::subspace_orbits(2, 1, z2, ProductKind::Frattini2Dual) == 3, "anchor frattini2 lines n=2 = 3");
}

void integrality(Check& c) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto f = Field::of_order(q);
    for (auto kind : kAllKinds) {
      if (kind == ProductKind::Frattini2Dual && q != 2) continue;  // only defined in characteristic 2
      for (unsigned n = 1; n <= 5; ++n) {
        burnside::BurnsideEngine eng(n, f, kind);
        for (unsigned m = 0; m <= 4; ++m) {
          bool ok = true;
          try {
            const auto s = eng.burnside_sum(m);
            ok = s.numerator % (glq::gl_order(n, q) * glq::gl_order(m, q)) == 0;
          } catch (const ConsistencyError&) {
            ok = false;
          }
          c.expect(ok, at(kind, n, m, q));
        }
      }
    }
  }
}

void conjugacy(Check& c) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto f = Field::of_order(q);
    for (unsigned n = 1; n <= 4; ++n) {
      const auto labels = glq::enumerate_classes(n, f);
      BigInt total = 0;
      for (const auto& l : labels) {
        total += glq::class_size(l);
        c.expect(glq::log_bound_check(l), "size exponent bound " + l.to_string());
      }
      c.expect(total == glq::gl_order(n, q), "sizes sum to |GL(" + std::to_string(n) + "," + std::to_string(q) + ")|");
      if (n <= 2) {
        const auto bf = oracle::bf_conj_classes(n, f);
        c.expect(bf.sizes.size() == labels.size(), "class count n=" + std::to_string(n) + " q=" + std::to_string(q));
      }
    }
  }
  const std::vector<BigInt> xs{2, 3, 4, 5, 7, 8};
  for (unsigned n = 1; n <= 3; ++n) {
    std::vector<BigInt> ys;
    for (const auto& x : xs)
      ys.push_back(static_cast<unsigned long>(glq::enumerate_classes(n, Field::of_order(x.get_ui())).size()));
    const auto coeffs = glq::interpolate(xs, ys);
    bool ok = coeffs.size() > n && coeffs[n] == 1;
    for (std::size_t i = n + 1; i < coeffs.size(); ++i) ok = ok && coeffs[i] == 0;
    c.expect(ok, "class count is monic of degree " + std::to_string(n) + " in q");
  }
}

void group_census(Check& c) {
  c.expect(census::f_h_total(2, 2).total == 2, "H p=2 ell=2 = 2");
  c.expect(census::f_h_total(2, 3).total == 4, "H p=2 ell=3 = 4");
  c.expect(census::f_b_total(3, 2).total == 1, "B p=3 ell=2 = 1");
  c.expect(census::f_b_total(3, 3).total == 2, "B p=3 ell=3 = 2");
  for (unsigned n = 2; n <= 5; ++n) {
    const unsigned long c2 = n * (n - 1) / 2;
    for (unsigned m = 1; m <= c2; ++m) {
      const BigInt s = census::f_b_stratum(n, m, 3);
      // 3^{m(c2-m) - n^2} <= s, cleared of the negative exponent.
      const bool lower = ipow(3ul, m * (c2 - m)) <= s * ipow(3ul, static_cast<unsigned long>(n) * n);
      const bool upper = s <= ipow(3ul, m * (c2 - m + 1));
      c.expect(lower && upper, "stratum envelope n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
}

void average_order(Check& c) {
  c.expect(burnside::avg_aut(1, 1, Field::make(2), ProductKind::Full) == 1, "avg_aut full 1 1 2 = 1");
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto f = Field::of_order(q);
    for (auto kind : kAllKinds) {
      if (kind == ProductKind::Frattini2Dual && q != 2) continue;
      for (unsigned n = 1; n <= 5; ++n) {
        burnside::BurnsideEngine eng(n, f, kind);
        for (unsigned m = 0; m <= 4; ++m)
          c.expect(eng.avg_aut(m) >= Rational(q - 1), "avg_aut >= q-1 at " + at(kind, n, m, q));
      }
    }
  }
  auto z3 = Field::make(3);
  for (auto kind : kSquareKinds) {
    std::ostringstream trail;
    trail << kind_name(kind) << " excess at m=n, q=3:";
    Rational prev;
    for (unsigned n = 2; n <= 5; ++n) {
      const Rational excess = burnside::avg_aut(n, n, z3, kind) - 2;
      trail << ' ' << excess.get_d();
      if (n > 2) c.expect(excess < prev, std::string(kind_name(kind)) + " excess decreases to n=" + std::to_string(n));
      prev = excess;
    }
    c.note(trail.str());
  }
}

void proof_constructions(Check& c) {
  std::size_t instances = 0;
  for (std::uint32_t q : {2u, 3u}) {
    auto f = Field::make(q);
    for (unsigned n = 1; n <= 5; ++n) {
      const auto labels = glq::enumerate_classes(n, f);
      for (const auto& pl : labels)
        for (const auto& ql : labels)
          for (auto con : tensor::kAllConstructions)
            for (auto kind : kSquareKinds) {
              tensor::ProofConstructionSpec s;
              try {
                s = tensor::build_proof_index_set(pl, ql, kind, con, 1, 0);
              } catch (const DomainError&) {
                break;  // out of hypothesis for every kind
              }
              ++instances;
              const std::string what = std::string(tensor::construction_name(con)) + " " +
                                       std::string(kind_name(kind)) + " " + pl.to_string() + " " + ql.to_string();
              c.expect(tensor::support_avoidance(s), what);
              if (con == tensor::Construction::LargeBlockP) {
                const long d1 = s.block_cut;
                c.expect(s.index_set.size() == static_cast<std::size_t>((d1 - 1) * (static_cast<long>(n) - d1)) * s.m,
                         "index set size " + what);
              }
            }
    }
  }
  c.note(std::to_string(instances) + " in-hypothesis instances");
}

void saturation(Check& c) {
  std::set<std::tuple<int, unsigned, std::uint32_t>> seen;
  oracle_sweep([&](ProductKind kind, unsigned n, unsigned, std::uint32_t q) {
    if (!seen.insert({static_cast<int>(kind), n, q}).second) return;
    burnside::BurnsideEngine eng(n, Field::make(q), kind);
    const unsigned d = static_cast<unsigned>(eng.module_dim());
    for (unsigned m = d; m <= d + 2; ++m)
      c.expect(eng.tensor_orbits(m) == eng.tensor_orbits(d), "saturation " + at(kind, n, m, q));
    for (unsigned m = 0; m <= std::max(2u, d + 1); ++m) {
      BigInt sum = 0;
      for (unsigned r = 0; r <= std::min(m, d); ++r) sum += eng.subspace_orbits(r);
      c.expect(sum == eng.tensor_orbits(m), "telescoping " + at(kind, n, m, q));
    }
  });
}

std::string result_body(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  if (cli::execute(args, out, err) != 0) return "error: " + out.str();
  auto r = cli::Json::parse(out.str());
  return r["params"].dump() + r["result"].dump();
}

void determinism(Check& c) {
  const std::vector<std::vector<std::string>> commands{
      {"orbits", "tensors", "--kind", "full", "--n", "3", "--m", "3", "--q", "3"},
      {"orbits", "subspaces", "--kind", "alt", "--n", "5", "--m", "3", "--q", "3"},
      {"orbits", "subspaces", "--kind", "frattini2", "--n", "4", "--m", "2", "--q", "2"},
      {"avg-aut", "--kind", "sym", "--n", "4", "--m", "3", "--q", "4"},
      {"groups", "--family", "B", "--p", "3", "--ell", "7"},
      {"groups", "--family", "H", "--p", "2", "--ell", "8"},
      {"algebras", "--n", "3", "--m", "2", "--q", "5"},
      {"classes", "--n", "3", "--q", "4"},
      {"sample", "--kind", "alt", "--n", "4", "--m", "2", "--q", "2", "--trials", "64", "--seed", "11"},
  };
  for (const auto& cmd : commands) {
    std::string first;
    for (const char* threads : {"1", "1", "2", "3", "8"}) {
      auto args = cmd;
      args.insert(args.end(), {"--no-cache", "--threads", threads});
      const std::string body = result_body(args);
      if (first.empty()) first = body;
      c.expect(body.rfind("error", 0) != 0 && body == first, cmd.front() + " with --threads " + threads);
    }
  }
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "tensor orbits match brute force", tensor_oracle},
      {2, "subspace orbits match brute force", subspace_oracle},
      {3, "Burnside sums are integral", integrality},
      {4, "conjugacy classes", conjugacy},
      {5, "group census anchors and stratum envelope", group_census},
      {6, "average automorphism order", average_order},
      {7, "proof index sets avoid the fixed space", proof_constructions},
      {8, "saturation and telescoping", saturation},
      {9, "determinism across reruns and thread counts", determinism},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }

  int failed = 0, ran = 0;
  for (const auto& cr : all) {
    if (only && cr.id != only) continue;
    ++ran;
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (c.passed() ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.title << " [" << c.summary()
              << ", " << secs << " s]\n"
              << c.details() << std::flush;
    if (!c.passed()) ++failed;
  }
  if (ran == 0) {
    std::cerr << "no such criterion\n";
    return 2;
  }
  return failed ? 1 : 0;
}
