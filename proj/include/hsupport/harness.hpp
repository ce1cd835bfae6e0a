#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "hsupport/error.hpp"
#include "hsupport/exact.hpp"
#include "hsupport/gen.hpp"
#include "hsupport/heuristics.hpp"
#include "hsupport/model.hpp"

namespace hsupport {

enum class Algorithm { MstApprox, MstIter, LocalSearch, Exact };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::MstApprox: return "mst-approx";
    case Algorithm::MstIter: return "mst-iter";
    case Algorithm::LocalSearch: return "local-search";
    case Algorithm::Exact: return "exact";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "mst-approx") return Algorithm::MstApprox;
  if (s == "mst-iter") return Algorithm::MstIter;
  if (s == "local-search") return Algorithm::LocalSearch;
  if (s == "exact") return Algorithm::Exact;
  throw InvalidArgument("unknown algorithm '" + std::string(s) + "'");
}

/// MST-based heuristics only produce unrestricted supports.
inline bool supports_constraints(Algorithm a, const ConstraintSet& c) {
  if (a == Algorithm::MstApprox || a == Algorithm::MstIter) return c == ConstraintSet::U();
  return true;
}

struct TrialConfig {
  std::size_t n = 20;
  std::size_t k = 2;
  DegreeScheme scheme = DegreeScheme::Even;
  Algorithm algorithm = Algorithm::MstIter;
  ConstraintSet constraints;
  std::uint64_t seed = 0;
  ExactLimits limits;
};

enum class TrialStatus { Ok, Infeasible, Limits };

inline std::string to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::Ok: return "ok";
    case TrialStatus::Infeasible: return "infeasible";
    case TrialStatus::Limits: return "limits";
  }
  return "?";
}

struct TrialRecord {
  std::size_t trial_id = 0;
  TrialConfig config;
  TrialStatus status = TrialStatus::Ok;
  std::optional<double> length;  // present iff status == Ok
  double time_ms = 0.0;
  std::size_t rounds = 0;
  std::optional<bool> proven_optimal;  // exact solver only
};

/// Raised when a solver returns a support that violates its constraints.
class ValidationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Generates the instance from (n, k, scheme, seed), runs the solver and
/// validates the output. Only the solve call is timed.
inline TrialRecord run_trial(const TrialConfig& cfg) {
  if (!supports_constraints(cfg.algorithm, cfg.constraints)) {
    throw InvalidArgument(to_string(cfg.algorithm) + " does not support constraints " +
                          cfg.constraints.label());
  }
  Rng rng(cfg.seed);
  const Hypergraph h = generate(cfg.n, cfg.k, cfg.scheme, rng);

  TrialRecord rec;
  rec.config = cfg;
  SupportGraph support;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (cfg.algorithm) {
      case Algorithm::MstApprox: {
        auto r = mst_approximation(h);
        support = std::move(r.support);
        rec.rounds = r.rounds_or_passes;
        break;
      }
      case Algorithm::MstIter: {
        auto r = mst_iteration(h);
        support = std::move(r.support);
        rec.rounds = r.rounds_or_passes;
        break;
      }
      case Algorithm::LocalSearch: {
        auto r = local_search(h, cfg.constraints);
        support = std::move(r.support);
        rec.rounds = r.rounds_or_passes;
        break;
      }
      case Algorithm::Exact: {
        auto r = solve_exact(h, cfg.constraints, cfg.limits);
        support = std::move(r.support);
        rec.rounds = r.nodes_explored;
        rec.proven_optimal = r.proven_optimal;
        if (!r.proven_optimal) rec.status = TrialStatus::Limits;
        break;
      }
    }
  } catch (const Infeasible&) {
    rec.status = TrialStatus::Infeasible;
  } catch (const EmptyCore&) {
    rec.status = TrialStatus::Infeasible;
  } catch (const LimitsExceeded&) {
    rec.status = TrialStatus::Limits;
    rec.proven_optimal = false;
  }
  const std::chrono::duration<double, std::milli> el = std::chrono::steady_clock::now() - start;
  rec.time_ms = el.count();

  if (rec.status == TrialStatus::Infeasible) return rec;
  if (!satisfies(support, h, cfg.constraints)) {
    throw ValidationFailure(to_string(cfg.algorithm) + "/" + cfg.constraints.label() +
                            " returned an invalid support (seed " + std::to_string(cfg.seed) +
                            ")");
  }
  if (rec.status == TrialStatus::Ok) rec.length = total_length(support, h);
  return rec;
}

/// Runs `trials` seeds of every template; trial t uses seed base_seed + t.
/// Records come back ordered by (template, trial) whatever the parallelism.
inline std::vector<TrialRecord> run_grid(const std::vector<TrialConfig>& templates,
                                         std::size_t trials, std::uint64_t base_seed,
                                         std::size_t parallel = 1) {
  if (trials == 0) throw InvalidArgument("need at least one trial");
  const std::size_t total = templates.size() * trials;
  std::vector<TrialRecord> out(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      TrialConfig cfg = templates[i / trials];
      cfg.seed = base_seed + i % trials;
      try {
        out[i] = run_trial(cfg);
        out[i].trial_id = i;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(parallel, total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

inline constexpr std::string_view kCsvHeader =
    "trial_id,seed,n,k,scheme,algorithm,constraints,status,length,time_ms,rounds,"
    "proven_optimal";

inline std::string to_csv(const std::vector<TrialRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  char buf[64];
  for (const auto& r : records) {
    const auto& c = r.config;
    out += std::to_string(r.trial_id) + ',' + std::to_string(c.seed) + ',' +
           std::to_string(c.n) + ',' + std::to_string(c.k) + ',' + to_string(c.scheme) + ',' +
           to_string(c.algorithm) + ',' + c.constraints.label() + ',' + to_string(r.status) +
           ',';
    if (r.length) {
      std::snprintf(buf, sizeof buf, "%.6f", *r.length);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, "%.3f", r.time_ms);
    out += ',';
    out += buf;
    out += ',' + std::to_string(r.rounds) + ',';
    if (r.proven_optimal) out += *r.proven_optimal ? "true" : "false";
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

/// Linear-interpolation percentile, q in [0, 1]. Sorts a copy.
inline double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("percentile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

struct Distribution {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double p90 = 0.0;
  double p95 = 0.0;
  double p99 = 0.0;
  double max = 0.0;

  static Distribution of(const std::vector<double>& v) {
    Distribution d;
    d.count = v.size();
    if (v.empty()) return d;
    double sum = 0.0;
    for (double x : v) sum += x;
    d.mean = sum / static_cast<double>(v.size());
    d.median = percentile(v, 0.5);
    d.p90 = percentile(v, 0.9);
    d.p95 = percentile(v, 0.95);
    d.p99 = percentile(v, 0.99);
    d.max = *std::max_element(v.begin(), v.end());
    return d;
  }
};

/// "algorithm/constraints", e.g. "local-search/PT".
inline std::string solver_label(Algorithm a, const ConstraintSet& c) {
  return to_string(a) + "/" + c.label();
}

struct GroupKey {
  std::size_t n = 0;
  std::size_t k = 0;
  DegreeScheme scheme = DegreeScheme::Even;
  friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
};

struct GroupStats {
  GroupKey key;
  std::string solver;
  std::size_t trials = 0;  // all statuses
  Distribution length;     // ok trials only
};

/// Paired comparison of solver A against solver B on identical instances.
struct PairStats {
  std::optional<GroupKey> key;  // nullopt: pooled over all groups
  std::string a;
  std::string b;
  Distribution ratio;       // length(A) / length(B)
  double win_rate = 0.0;    // A strictly shorter; ties are not wins
  double not_worse_rate = 0.0;  // A no longer than B (1e-9 relative slack)
  double equal_rate = 0.0;      // lengths equal within 1e-9 relative
};

struct SummaryStats {
  std::vector<GroupStats> groups;
  std::vector<PairStats> pairs;
};

inline std::vector<std::pair<std::string, std::string>> default_pairs() {
  std::vector<std::pair<std::string, std::string>> p = {
      {"mst-iter/U", "mst-approx/U"},
      {"local-search/U", "mst-iter/U"},
  };
  for (const char* c : {"U", "T", "P", "PT"}) {
    p.emplace_back(std::string("local-search/") + c, std::string("exact/") + c);
  }
  return p;
}

inline SummaryStats summarize(
    const std::vector<TrialRecord>& records,
    const std::vector<std::pair<std::string, std::string>>& pairs = default_pairs()) {
  if (records.empty()) throw InvalidArgument("nothing to summarize");
  SummaryStats out;

  std::map<std::pair<GroupKey, std::string>, std::vector<double>> lengths;
  std::map<std::pair<GroupKey, std::string>, std::size_t> counts;
  // (group, seed, solver) -> length
  std::map<std::tuple<GroupKey, std::uint64_t, std::string>, double> by_seed;
  for (const auto& r : records) {
    const GroupKey key{r.config.n, r.config.k, r.config.scheme};
    const std::string label = solver_label(r.config.algorithm, r.config.constraints);
    ++counts[{key, label}];
    auto& bucket = lengths[{key, label}];
    if (r.length) {
      bucket.push_back(*r.length);
      by_seed[{key, r.config.seed, label}] = *r.length;
    }
  }
  for (const auto& [k, count] : counts) {
    out.groups.push_back({k.first, k.second, count, Distribution::of(lengths[k])});
  }

  std::vector<GroupKey> keys;
  for (const auto& g : out.groups) {
    if (keys.empty() || keys.back() != g.key) keys.push_back(g.key);
  }

  for (const auto& [a, b] : pairs) {
    struct Acc {
      std::vector<double> ratios;
      std::size_t wins = 0, not_worse = 0, equal = 0;
    };
    Acc pooled;
    std::vector<std::pair<GroupKey, Acc>> per_group;
    for (const GroupKey& key : keys) {
      Acc acc;
      for (const auto& [tk, la] : by_seed) {
        if (std::get<0>(tk) != key || std::get<2>(tk) != a) continue;
        auto it = by_seed.find({key, std::get<1>(tk), b});
        if (it == by_seed.end()) continue;
        const double lb = it->second;
        const double slack = 1e-9 * std::max(1.0, std::abs(lb));
        acc.ratios.push_back(lb > 0 ? la / lb : 1.0);
        if (la < lb - slack) ++acc.wins;
        if (la <= lb + slack) ++acc.not_worse;
        if (std::abs(la - lb) <= slack) ++acc.equal;
      }
      if (acc.ratios.empty()) continue;
      pooled.ratios.insert(pooled.ratios.end(), acc.ratios.begin(), acc.ratios.end());
      pooled.wins += acc.wins;
      pooled.not_worse += acc.not_worse;
      pooled.equal += acc.equal;
      per_group.emplace_back(key, std::move(acc));
    }
    auto emit = [&](std::optional<GroupKey> key, const Acc& acc) {
      const double n = static_cast<double>(acc.ratios.size());
      out.pairs.push_back({key, a, b, Distribution::of(acc.ratios), double(acc.wins) / n,
                           double(acc.not_worse) / n, double(acc.equal) / n});
    };
    for (const auto& [key, acc] : per_group) emit(key, acc);
    if (!pooled.ratios.empty()) emit(std::nullopt, pooled);
  }
  return out;
}

inline std::string format_summary(const SummaryStats& s) {
  std::ostringstream out;
  char buf[256];
  out << "# lengths\n";
  std::snprintf(buf, sizeof buf, "%4s %2s %-5s %-16s %6s %10s %10s %10s %10s %10s\n", "n",
                "k", "deg", "solver", "trials", "mean", "median", "p90", "p95", "p99");
  out << buf;
  for (const auto& g : s.groups) {
    std::snprintf(buf, sizeof buf, "%4zu %2zu %-5s %-16s %6zu %10.3f %10.3f %10.3f %10.3f %10.3f\n",
                  g.key.n, g.key.k, to_string(g.key.scheme).c_str(), g.solver.c_str(), g.trials,
                  g.length.mean, g.length.median, g.length.p90, g.length.p95, g.length.p99);
    out << buf;
  }
  out << "# paired ratios A/B\n";
  for (const auto& p : s.pairs) {
    std::string where = "all";
    if (p.key) {
      where = "n=" + std::to_string(p.key->n) + " k=" + std::to_string(p.key->k) + " " +
              to_string(p.key->scheme);
    }
    std::snprintf(buf, sizeof buf,
                  "%-18s %-16s vs %-16s pairs=%zu mean=%.4f p95=%.4f max=%.4f win=%.1f%% "
                  "not-worse=%.1f%% equal=%.1f%%\n",
                  where.c_str(), p.a.c_str(), p.b.c_str(), p.ratio.count, p.ratio.mean,
                  p.ratio.p95, p.ratio.max, 100 * p.win_rate, 100 * p.not_worse_rate,
                  100 * p.equal_rate);
    out << buf;
  }
  return out.str();
}

}  // namespace hsupport
