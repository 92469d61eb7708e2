#include "qforms/cli/cli.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qforms/burnside/engine.hpp"
#include "qforms/census/groups.hpp"
#include "qforms/cli/verify.hpp"
#include "qforms/common/errors.hpp"
#include "qforms/glq/classes.hpp"
#include "qforms/randspace/survey.hpp"

namespace qforms::cli {

namespace {

// ---------------------------------------------------------------- cache file

class LockedFile {
 public:
  LockedFile(const std::filesystem::path& path, int flags, int lock) {
    fd_ = ::open(path.c_str(), flags | O_CLOEXEC, 0644);
    if (fd_ < 0) return;
    while (::flock(fd_, lock) != 0) {
      if (errno != EINTR) {
        ::close(fd_);
        fd_ = -1;
        return;
      }
    }
  }
  ~LockedFile() {
    if (fd_ >= 0) ::close(fd_);  // closing releases the lock
  }
  LockedFile(const LockedFile&) = delete;
  LockedFile& operator=(const LockedFile&) = delete;

  bool ok() const { return fd_ >= 0; }

  std::string read_all() const {
    std::string data;
    char buf[1 << 14];
    for (;;) {
      const ssize_t k = ::read(fd_, buf, sizeof buf);
      if (k < 0 && errno == EINTR) continue;
      if (k <= 0) break;
      data.append(buf, static_cast<std::size_t>(k));
    }
    return data;
  }

  bool write_all(std::string_view s) const {
    while (!s.empty()) {
      const ssize_t k = ::write(fd_, s.data(), s.size());
      if (k < 0 && errno == EINTR) continue;
      if (k <= 0) return false;
      s.remove_prefix(static_cast<std::size_t>(k));
    }
    return true;
  }

 private:
  int fd_ = -1;
};

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  ::gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------- requests

struct Options {
  std::optional<unsigned> n, m, ell, e;
  std::optional<std::uint32_t> q, p;
  std::string kind = "full";
  std::string family;
  std::string object;
  std::string suite;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool csv = false;
  bool no_cache = false;
  std::string cache_path;
};

struct Outcome {
  Json result;
  std::size_t class_pairs = 0;
  int exit_code = kOk;
};

struct Request {
  std::string command;
  Json params;
  bool cacheable = true;
  std::function<Outcome()> run;
};

unsigned need(const std::optional<unsigned>& v, const char* flag) {
  if (!v) throw DomainError(std::string("missing required flag ") + flag);
  return *v;
}

gfq::FieldRef field_of(const Options& o) {
  if (o.q) {
    auto f = gfq::Field::of_order(*o.q);
    if ((o.p && *o.p != f->p()) || (o.e && *o.e != f->e()))
      throw DomainError("--q disagrees with --p/--e");
    return f;
  }
  if (!o.p) throw DomainError("missing field: give --q or --p [--e]");
  return gfq::Field::make(*o.p, o.e.value_or(1));
}

std::string canonical_kind(const std::string& s) { return std::string(kind_name(parse_kind(s))); }

std::string count_str(const BigInt& v) { return to_decimal(v); }

std::string stratum_name(unsigned n, unsigned m) {
  return "(" + std::to_string(n) + "," + std::to_string(m) + ")";
}

Json strata_json(const census::GroupCensusRecord& rec, ProductKind kind) {
  Json s = Json::object();
  // n descending; strata with m above the module dimension are empty.
  for (auto it = rec.strata.rbegin(); it != rec.strata.rend(); ++it) {
    const auto [n, m] = it->first;
    if (m > module_dim(kind, n)) continue;
    s[stratum_name(n, m)] = count_str(it->second);
  }
  return s;
}

Request classes_request(const Options& o) {
  const unsigned n = need(o.n, "--n");
  auto f = field_of(o);
  Request r{"classes", Json{{"command", "classes"}, {"n", n}, {"q", f->q()}}, true, {}};
  r.run = [n, f] {
    Outcome out;
    Json list = Json::array();
    for (const auto& l : glq::enumerate_classes(n, f))
      list.push_back(Json{{"label", l.to_string()}, {"size", count_str(glq::class_size(l))}});
    out.result = Json{{"count", std::to_string(list.size())}, {"classes", std::move(list)}};
    return out;
  };
  return r;
}

Request orbits_request(const Options& o) {
  const unsigned n = need(o.n, "--n"), m = need(o.m, "--m");
  auto f = field_of(o);
  const ProductKind kind = parse_kind(o.kind);
  const bool tensors = o.object == "tensors";
  Request r{"orbits",
            Json{{"command", "orbits"}, {"object", o.object}, {"kind", kind_name(kind)}, {"n", n}, {"m", m}, {"q", f->q()}},
            true,
            {}};
  const unsigned threads = o.threads;
  r.run = [=] {
    burnside::BurnsideEngine eng(n, f, kind, threads);
    Outcome out;
    const BigInt c = tensors ? eng.tensor_orbits(m) : eng.subspace_orbits(m);
    if (tensors || m <= eng.module_dim()) out.class_pairs = eng.burnside_sum(m).class_pairs;
    out.result = Json{{"count", count_str(c)}};
    return out;
  };
  return r;
}

Request avg_aut_request(const Options& o) {
  const unsigned n = need(o.n, "--n"), m = need(o.m, "--m");
  auto f = field_of(o);
  const ProductKind kind = parse_kind(o.kind);
  Request r{"avg-aut",
            Json{{"command", "avg-aut"}, {"kind", kind_name(kind)}, {"n", n}, {"m", m}, {"q", f->q()}},
            true,
            {}};
  const unsigned threads = o.threads;
  r.run = [=] {
    burnside::BurnsideEngine eng(n, f, kind, threads);
    Outcome out;
    out.result = Json{{"h", to_decimal(eng.avg_aut(m))}};
    out.class_pairs = eng.burnside_sum(m).class_pairs;
    return out;
  };
  return r;
}

Request groups_request(const Options& o) {
  if (o.family != "B" && o.family != "H") throw DomainError("--family must be B or H");
  if (!o.p) throw DomainError("missing required flag --p");
  const std::uint32_t p = *o.p;
  const bool b = o.family == "B";
  const unsigned threads = o.threads;
  Json params{{"command", "groups"}, {"family", o.family}, {"p", p}};

  if (o.n && (o.m || o.ell)) {
    const unsigned n = *o.n;
    if (o.m && o.ell && *o.m + n != *o.ell) throw DomainError("--n + --m must equal --ell");
    if (!o.m && *o.ell < n) throw DomainError("--ell must be at least --n");
    const unsigned m = o.m ? *o.m : *o.ell - n;
    params["n"] = n;
    params["m"] = m;
    Request r{"groups", std::move(params), true, {}};
    r.run = [=] {
      Outcome out;
      out.result = Json{{"count", count_str(b ? census::f_b_stratum(n, m, p, threads) : census::f_h_stratum(n, m, p, threads))}};
      return out;
    };
    return r;
  }
  if (!o.ell) throw DomainError("groups needs --ell, or --n with --m");
  const unsigned ell = *o.ell;
  params["ell"] = ell;
  Request r{"groups", std::move(params), true, {}};
  r.run = [=] {
    const auto rec = b ? census::f_b_total(p, ell, threads) : census::f_h_total(p, ell, threads);
    const ProductKind kind = b ? ProductKind::Alternating : (p == 2 ? ProductKind::Frattini2Dual : ProductKind::FrattiniOdd);
    Outcome out;
    out.result = Json{{"total", count_str(rec.total)}, {"strata", strata_json(rec, kind)}};
    return out;
  };
  return r;
}

Request algebras_request(const Options& o) {
  const unsigned n = need(o.n, "--n"), m = need(o.m, "--m");
  auto f = field_of(o);
  Request r{"algebras", Json{{"command", "algebras"}, {"n", n}, {"m", m}, {"q", f->q()}}, true, {}};
  const unsigned threads = o.threads;
  r.run = [=] {
    Outcome out;
    out.result = Json{{"count", count_str(census::cube_zero_stratum(n, m, f, threads))}};
    return out;
  };
  return r;
}

Request verify_request(const Options& o) {
  Request r{"verify", Json{{"command", "verify"}, {"suite", o.suite}}, false, {}};
  const std::string suite = o.suite;
  const unsigned threads = o.threads;
  r.run = [=] {
    const SuiteReport rep = run_suite(suite, threads);
    Outcome out;
    out.result = Json{{"suite", rep.suite},
                      {"checks", std::to_string(rep.checks)},
                      {"passed", rep.passed()},
                      {"failures", rep.failures}};
    out.exit_code = rep.passed() ? kOk : kConsistency;
    return out;
  };
  return r;
}

Request sample_request(const Options& o) {
  const unsigned n = need(o.n, "--n"), m = need(o.m, "--m");
  auto f = field_of(o);
  const ProductKind kind = parse_kind(o.kind);
  // Seeds travel as strings so 64-bit values survive any JSON reader.
  Request r{"sample",
            Json{{"command", "sample"},
                 {"kind", kind_name(kind)},
                 {"n", n},
                 {"m", m},
                 {"q", f->q()},
                 {"trials", std::to_string(o.trials)},
                 {"seed", std::to_string(o.seed)}},
            true,
            {}};
  const std::uint64_t trials = o.trials, seed = o.seed;
  const unsigned threads = o.threads;
  r.run = [=] {
    const auto rep = randspace::aut_survey(n, m, f, kind, trials, seed, threads);
    Json hist = Json::object();
    for (const auto& [order, k] : rep.histogram) hist[count_str(order)] = std::to_string(k);
    Outcome out;
    out.result = Json{{"fraction_small", to_decimal(rep.fraction_small)},
                      {"threshold", to_decimal(rep.threshold)},
                      {"generator", rep.generator},
                      {"asymptotic_regime_reached", rep.asymptotic_regime_reached},
                      {"histogram", std::move(hist)},
                      {"warnings", rep.warnings}};
    return out;
  };
  return r;
}

// ---------------------------------------------------------------- output

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
  out << '\n';
}

// Parameter columns, then either one row of scalar results or, for results
// holding a table, one row per item.
void write_csv(std::ostream& out, const std::string& command, const Json& params, const Json& result) {
  std::vector<std::string> head, base;
  for (const auto& [k, v] : params.items()) {
    if (k == "command") continue;
    head.push_back(k);
    base.push_back(scalar_text(v));
  }
  auto rows_with = [&](std::vector<std::string> extra_head, const std::vector<std::vector<std::string>>& rows) {
    auto h = head;
    h.insert(h.end(), extra_head.begin(), extra_head.end());
    write_row(out, h);
    for (const auto& r : rows) {
      auto line = base;
      line.insert(line.end(), r.begin(), r.end());
      write_row(out, line);
    }
  };

  std::vector<std::vector<std::string>> rows;
  if (command == "classes") {
    for (const auto& c : result.at("classes")) rows.push_back({c.at("label").get<std::string>(), c.at("size").get<std::string>()});
    rows_with({"item", "count"}, rows);
  } else if (command == "groups" && result.contains("strata")) {
    rows.push_back({"total", result.at("total").get<std::string>()});
    for (const auto& [k, v] : result.at("strata").items()) rows.push_back({k, v.get<std::string>()});
    rows_with({"item", "count"}, rows);
  } else if (command == "sample") {
    for (const auto& [k, v] : result.at("histogram").items()) rows.push_back({k, v.get<std::string>()});
    rows_with({"item", "count"}, rows);
  } else if (command == "verify") {
    rows.push_back({result.at("checks").get<std::string>(), result.at("passed").get<bool>() ? "true" : "false"});
    rows_with({"checks", "passed"}, rows);
  } else {
    std::vector<std::string> h, r;
    for (const auto& [k, v] : result.items()) {
      h.push_back(k);
      r.push_back(scalar_text(v));
    }
    rows_with(h, {r});
  }
}

int error_exit(std::ostream& out, int code, std::string_view kind, const std::string& message) {
  out << Json{{"error", Json{{"kind", kind}, {"message", message}}}, {"exit_code", code}}.dump() << '\n';
  return code;
}

// ---------------------------------------------------------------- parser

struct Parser {
  CLI::App app{"Counting orbits of bilinear maps over finite fields, and the p-groups they classify", "qforms"};
  Options o;
  std::function<Request(const Options&)> build;

  CLI::App* sub(const char* name, const char* desc, Request (*make)(const Options&)) {
    auto* s = app.add_subcommand(name, desc);
    s->fallthrough();
    s->callback([this, make] { build = make; });
    return s;
  }

  static void field_flags(CLI::App* s, Options& o) {
    s->add_option("--q", o.q, "Field order");
    s->add_option("--p", o.p, "Field characteristic");
    s->add_option("--e", o.e, "Extension degree");
  }

  Parser() {
    app.require_subcommand(1);
    app.add_flag("--json", "JSON report (default)");
    app.add_flag("--csv", o.csv, "CSV table instead of JSON");
    app.add_flag("--no-cache", o.no_cache, "Neither read nor write the result cache");
    app.add_option("--cache-path", o.cache_path, "Cache file (default $QFORMS_CACHE or ./census-cache.jsonl)");
    app.add_option("--threads", o.threads, "Worker threads, 0 = automatic");

    auto* c = sub("classes", "Conjugacy classes of GL(n, q) with their sizes", classes_request);
    c->add_option("--n", o.n)->required();
    field_flags(c, o);

    auto* orb = sub("orbits", "Orbits of tensors or of subspaces of the module", orbits_request);
    orb->add_option("object", o.object, "tensors or subspaces")->required()->check(CLI::IsMember({"tensors", "subspaces"}));
    orb->add_option("--kind", o.kind, "full, sym, alt, frattini-odd, frattini2");
    orb->add_option("--n", o.n)->required();
    orb->add_option("--m", o.m)->required();
    field_flags(orb, o);

    auto* av = sub("avg-aut", "Average automorphism group order", avg_aut_request);
    av->add_option("--kind", o.kind);
    av->add_option("--n", o.n)->required();
    av->add_option("--m", o.m)->required();
    field_flags(av, o);

    auto* g = sub("groups", "p-groups of class 2 (B: exponent p, H: Frattini class 2)", groups_request);
    g->add_option("--family", o.family)->required();
    g->add_option("--p", o.p)->required();
    g->add_option("--ell", o.ell, "log_p of the group order");
    g->add_option("--n", o.n, "Rank of the Frattini quotient");
    g->add_option("--m", o.m, "ell - n");

    auto* al = sub("algebras", "Cube-zero commutative algebras", algebras_request);
    al->add_option("--n", o.n)->required();
    al->add_option("--m", o.m)->required();
    field_flags(al, o);

    auto* v = sub("verify", "Run a verification suite", verify_request);
    v->add_option("--suite", o.suite)->required()->check(CLI::IsMember({"oracle", "integrality", "bounds", "proofs"}));

    auto* s = sub("sample", "Automorphism orders of random subspaces", sample_request);
    s->add_option("--kind", o.kind);
    s->add_option("--n", o.n)->required();
    s->add_option("--m", o.m)->required();
    s->add_option("--trials", o.trials);
    s->add_option("--seed", o.seed);
    field_flags(s, o);
  }
};

std::filesystem::path cache_path_for(const Options& o) {
  if (!o.cache_path.empty()) return o.cache_path;
  if (const char* env = std::getenv("QFORMS_CACHE"); env && *env) return env;
  return "census-cache.jsonl";
}

}  // namespace

std::string cache_key(const Json& params, std::string_view engine_version) {
  nlohmann::json canon = nlohmann::json::parse(params.dump());
  if (canon.contains("kind") && canon["kind"].is_string())
    canon["kind"] = canonical_kind(canon["kind"].get<std::string>());
  return nlohmann::json{{"engine", engine_version}, {"params", canon}}.dump();
}

std::optional<Json> ResultCache::find(const std::string& key) const {
  LockedFile f(path_, O_RDONLY, LOCK_SH);
  if (!f.ok()) return std::nullopt;
  std::istringstream in(f.read_all());
  std::string line;
  while (std::getline(in, line)) {
    Json e = Json::parse(line, nullptr, false);
    if (e.is_discarded() || !e.is_object()) continue;
    const auto k = e.find("key");
    if (k != e.end() && k->is_string() && *k == key) return e;
  }
  return std::nullopt;
}

void ResultCache::append(const std::string& key, const Json& params, const Json& entry) const {
  LockedFile f(path_, O_WRONLY | O_CREAT | O_APPEND, LOCK_EX);
  if (!f.ok()) throw std::runtime_error("cannot open cache " + path_.string() + ": " + std::strerror(errno));
  Json line{{"key", key}, {"params", params}, {"timestamp", utc_timestamp()}};
  for (const auto& [k, v] : entry.items()) line[k] = v;
  if (!f.write_all(line.dump() + "\n")) throw std::runtime_error("short write to cache " + path_.string());
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Parser parser;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    parser.app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << parser.app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    err << parser.app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return error_exit(out, kUsage, "usage", e.what());
  }

  const Options& o = parser.o;
  try {
    const auto start = std::chrono::steady_clock::now();
    Request req = parser.build(o);
    std::optional<ResultCache> cache;
    if (req.cacheable && !o.no_cache) cache.emplace(cache_path_for(o));
    const std::string key = cache_key(req.params);

    Outcome outcome;
    bool hit = false;
    if (cache) {
      if (auto e = cache->find(key)) {
        outcome.result = (*e)["result"];
        outcome.class_pairs = (*e).value("class_pairs", std::size_t{0});
        hit = true;
      }
    }
    if (!hit) {
      outcome = req.run();
      if (cache && outcome.exit_code == kOk) {
        try {
          cache->append(key, req.params, Json{{"result", outcome.result}, {"class_pairs", outcome.class_pairs}});
        } catch (const std::runtime_error& e) {
          err << "warning: " << e.what() << '\n';
        }
      }
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

    if (o.csv) {
      write_csv(out, req.command, req.params, outcome.result);
    } else {
      Json report{{"params", req.params},
                  {"result", outcome.result},
                  {"meta",
                   Json{{"class_pairs", std::to_string(outcome.class_pairs)},
                        {"elapsed_ms", elapsed},
                        {"engine_version", kEngineVersion},
                        {"cache_hit", hit}}}};
      out << report.dump() << '\n';
    }
    return outcome.exit_code;
  } catch (const LimitExceeded& e) {
    return error_exit(out, kLimit, "limit", e.what());
  } catch (const ConsistencyError& e) {
    return error_exit(out, kConsistency, "consistency", e.what());
  } catch (const DomainError& e) {
    return error_exit(out, kUsage, "domain", e.what());
  } catch (const std::exception& e) {
    return error_exit(out, kConsistency, "internal", e.what());
  }
}

}  // namespace qforms::cli
