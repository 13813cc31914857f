#include "thetavfa/bench.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace thetavfa {

namespace {

struct Job {
  std::string family;
  int n;
  std::string spec;
};

}  // namespace

BenchResult run_bench(const BenchSpec& spec, const RunConfig& config,
                      const std::function<void(const ExperimentRecord&)>& progress) {
  config.validate();
  if (spec.count < 1) throw ConfigError("bench count must be at least 1");
  std::vector<Job> jobs;
  for (const auto& family : spec.families) {
    for (int n : spec.sizes) {
      for (int k = 0; k < spec.count; ++k) {
        jobs.push_back({family, n,
                        family + ":n=" + std::to_string(n) + ",seed=" + std::to_string(config.seed + k)});
      }
    }
  }

  BenchResult result;
  result.records.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      try {
        const Instance inst = generate_instance(jobs[k].spec);
        const OracleResult oracle = oracle_alpha(inst, config.oracle);
        SolveOutcome out = solve_instance(inst, config, oracle);
        result.records[k] = std::move(out.record);
        if (progress) {
          std::lock_guard<std::mutex> lock(mu);
          progress(result.records[k]);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
        return;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(config.threads, static_cast<int>(jobs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::string> methods;
  switch (config.method) {
    case Method::Lookahead:
      methods = {"lookahead"};
      break;
    case Method::Greedy:
      methods = {"greedy"};
      break;
    case Method::BensonYe:
      methods = {"by"};
      break;
    case Method::All:
      methods = {"lookahead", "greedy", "by"};
      break;
  }

  for (std::size_t start = 0; start < jobs.size(); start += static_cast<std::size_t>(spec.count)) {
    for (const auto& method : methods) {
      BenchRow row;
      row.family = jobs[start].family;
      row.n = jobs[start].n;
      row.count = spec.count;
      row.method = method;
      for (int k = 0; k < spec.count; ++k) {
        const auto& r = result.records[start + static_cast<std::size_t>(k)];
        const double w = r.weights.at(method);
        if (r.alpha) {
          ++row.verified;
          if (std::abs(w - *r.alpha) <= kWeightTol) ++row.optimal;
        }
        row.mean_sdp_seconds += r.sdp_seconds / spec.count;
        row.mean_rounding_seconds += r.rounding_seconds.at(method) / spec.count;
        const long calls = r.vfa_calls.at(method);
        row.max_vfa_calls = std::max(row.max_vfa_calls, calls);
        row.max_call_constant = std::max(row.max_call_constant, static_cast<double>(calls) / std::pow(r.n, 3));
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

std::string bench_csv(const BenchResult& result) {
  std::ostringstream out;
  out << "# schema: thetavfa.bench/1\n";
  out << "family,n,graphs,method,verified,optimal,optimal_percent,mean_sdp_s,mean_rounding_s,max_vfa_calls,"
         "max_calls_over_n3\n";
  for (const auto& r : result.rows) {
    out << r.family << ',' << r.n << ',' << r.count << ',' << r.method << ',' << r.verified << ',' << r.optimal
        << ',';
    if (r.verified > 0) {
      out << r.optimal_percent();
    } else {
      out << "unverified";
    }
    out << ',' << r.mean_sdp_seconds << ',' << r.mean_rounding_seconds << ',' << r.max_vfa_calls << ','
        << r.max_call_constant << '\n';
  }
  return out.str();
}

std::string bench_jsonl(const BenchResult& result) {
  std::string out;
  for (const auto& r : result.records) {
    out += record_to_json(r);
    out += '\n';
  }
  return out;
}

}  // namespace thetavfa
