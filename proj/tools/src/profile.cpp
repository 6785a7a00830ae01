#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

#include "bor/besov_orlicz.hpp"
#include "bor/error.hpp"
#include "bor/path_gen.hpp"
#include "bor_cli/cli.hpp"
#include "bor_cli/report.hpp"
#include "commands.hpp"

namespace bor::cli {
namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Runs body(i) for i in [0, count) on up to `threads` workers; results are indexed, so order is irrelevant.
template <class Body>
void parallel_for(std::size_t count, std::size_t threads, Body body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

int cmd_profile(const ProfileOptions& o, std::ostream& out, std::ostream&) {
  const auto t0 = std::chrono::steady_clock::now();
  if (o.seeds == 0) throw DomainError("profile: --seeds must be at least 1");
  if (o.min_log2 < 1 || o.min_log2 > o.max_log2 || o.max_log2 > 24) {
    throw DomainError("profile: need 1 <= min-log2 <= max-log2 <= 24");
  }
  if (o.q.empty()) throw DomainError("profile: at least one q is required");
  std::vector<double> qs;
  for (const auto& s : o.q) qs.push_back(parse_number(s));
  for (double q : qs) RegularityParams{o.alpha, o.beta, q}.validate();

  const std::size_t levels = o.max_log2 - o.min_log2 + 1;
  // value[(seed * levels + level) * qs.size() + qi]
  std::vector<double> value(o.seeds * levels * qs.size());
  const std::size_t threads = o.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.threads;
  parallel_for(o.seeds * levels, threads, [&](std::size_t job) {
    const std::size_t s = job / levels, l = job % levels;
    DriverSpec spec;
    spec.kind = DriverKind::brownian;
    spec.n_steps = std::size_t{1} << (o.min_log2 + l);
    spec.horizon = o.horizon;
    spec.seed = o.first_seed + s;
    const SampledPath w = simulate_bm(spec);
    // one dyadic pass; every q is an l^q aggregate of the same terms
    const NormReport r = seminorm_dyadic(w, RegularityParams{o.alpha, o.beta, kInfinity});
    for (std::size_t qi = 0; qi < qs.size(); ++qi) value[job * qs.size() + qi] = lq_aggregate(r.dyadic_terms, qs[qi]);
  });

  std::ostringstream csv;
  csv << "seed,steps,q,seminorm\n";
  json table = json::array();
  char buf[64];
  for (std::size_t s = 0; s < o.seeds; ++s) {
    for (std::size_t l = 0; l < levels; ++l) {
      for (std::size_t qi = 0; qi < qs.size(); ++qi) {
        const double v = value[(s * levels + l) * qs.size() + qi];
        std::snprintf(buf, sizeof buf, "%.16e", v);
        csv << (o.first_seed + s) << ',' << (std::size_t{1} << (o.min_log2 + l)) << ',' << o.q[qi] << ',' << buf
            << '\n';
        table.push_back({{"seed", o.first_seed + s},
                         {"steps", std::size_t{1} << (o.min_log2 + l)},
                         {"q", o.q[qi]},
                         {"seminorm", number(v)}});
      }
    }
  }
  write_atomic(resolve_output(o.csv), csv.str());

  json medians = json::array();
  json summary = json::object();
  for (std::size_t qi = 0; qi < qs.size(); ++qi) {
    std::vector<double> per_level;
    for (std::size_t l = 0; l < levels; ++l) {
      std::vector<double> col;
      for (std::size_t s = 0; s < o.seeds; ++s) col.push_back(value[(s * levels + l) * qs.size() + qi]);
      per_level.push_back(median(col));
      medians.push_back({{"q", o.q[qi]}, {"steps", std::size_t{1} << (o.min_log2 + l)}, {"median", number(per_level.back())}});
    }
    const auto [lo, hi] = std::minmax_element(per_level.begin(), per_level.end());
    bool increasing = true;
    for (std::size_t l = 1; l < levels; ++l) increasing = increasing && per_level[l] > per_level[l - 1];
    summary[o.q[qi]] = {{"max_over_min", number(*hi / *lo)}, {"strictly_increasing", increasing}};
  }

  json config{{"command", "profile"},    {"seeds", o.seeds},   {"first_seed", o.first_seed}, {"min_log2", o.min_log2},
              {"max_log2", o.max_log2},  {"alpha", o.alpha},   {"beta", o.beta},             {"q", o.q},
              {"horizon", o.horizon},    {"csv", o.csv}};
  json results{{"medians", medians}, {"summary", summary}, {"table", table}};
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string text =
      make_report(config, results, {{"warnings", json::array()}, {"elapsed_seconds", elapsed}, {"threads", threads}})
          .dump(2) +
      "\n";
  if (o.report.empty()) out << text;
  else write_atomic(resolve_output(o.report), text);
  return kExitOk;
}

}  // namespace bor::cli
