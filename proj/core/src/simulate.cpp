#include "rcsg/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rcsg {

namespace {

// 53-bit uniform in [0,1); spelled out so results are identical across
// standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int sample_cdf(const std::vector<double>& cdf, double r) {
  for (std::size_t i = 0; i < cdf.size(); ++i)
    if (r < cdf[i]) return static_cast<int>(i);
  return -1;  // beyond the assigned mass
}

// Pre-resolved sampling tables: per-vertex CDFs for probabilistic choices and
// for both players' mixed moves.
struct Sampler {
  std::vector<std::vector<double>> prob_cdf;
  std::vector<std::vector<int>> prob_target;
  std::vector<std::vector<double>> sigma_cdf, tau_cdf;

  Sampler(const VertexTable& table, const RsmStrategy& sigma, const RsmStrategy& tau) {
    int n = table.size();
    prob_cdf.resize(static_cast<std::size_t>(n));
    prob_target.resize(static_cast<std::size_t>(n));
    sigma_cdf.resize(static_cast<std::size_t>(n));
    tau_cdf.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      if (table.kind(v) == VertexKind::Probabilistic ||
          table.kind(v) == VertexKind::ReturnPort) {
        double acc = 0.0;
        for (const auto& e : table.prob_out(v)) {
          acc += e.p.to_double();
          prob_cdf[static_cast<std::size_t>(v)].push_back(acc);
          prob_target[static_cast<std::size_t>(v)].push_back(e.target);
        }
      } else if (table.kind(v) == VertexKind::Play) {
        auto cdf = [](std::vector<double> probs) {
          double acc = 0.0;
          for (double& p : probs) {
            acc += p;
            p = acc;
          }
          if (!probs.empty()) probs.back() = 1.0;  // close rounding gaps
          return probs;
        };
        sigma_cdf[static_cast<std::size_t>(v)] =
            cdf(aligned_distribution(sigma, table.id(v), table.moves1(v)));
        tau_cdf[static_cast<std::size_t>(v)] =
            cdf(aligned_distribution(tau, table.id(v), table.moves2(v)));
      }
    }
  }
};

PlayOutcome run_play(const VertexTable& table, const Sampler& s, int start,
                     long max_steps, std::mt19937_64& rng) {
  std::vector<int> stack;  // pending return ports
  int v = start;
  long steps = 0;
  while (true) {
    if (table.kind(v) == VertexKind::Exit && stack.empty()) return PlayOutcome::Terminated;
    if (steps >= max_steps) return PlayOutcome::Censored;
    switch (table.kind(v)) {
      case VertexKind::Exit:
        v = stack.back();
        stack.pop_back();
        break;
      case VertexKind::CallPort:
        stack.push_back(table.call_return(v));
        v = table.call_entry(v);
        break;
      case VertexKind::Probabilistic:
      case VertexKind::ReturnPort: {
        const auto& cdf = s.prob_cdf[static_cast<std::size_t>(v)];
        if (cdf.empty()) return PlayOutcome::Absorbed;
        int pick = sample_cdf(cdf, uniform01(rng));
        if (pick < 0) return PlayOutcome::Absorbed;  // substochastic residue
        v = s.prob_target[static_cast<std::size_t>(v)][static_cast<std::size_t>(pick)];
        break;
      }
      case VertexKind::Play: {
        int i = sample_cdf(s.sigma_cdf[static_cast<std::size_t>(v)], uniform01(rng));
        int j = sample_cdf(s.tau_cdf[static_cast<std::size_t>(v)], uniform01(rng));
        v = table.play_target(v, i, j);
        break;
      }
    }
    ++steps;
  }
}

}  // namespace

PlayOutcome sample_play(const VertexTable& table, const RsmStrategy& sigma,
                        const RsmStrategy& tau, const std::string& start,
                        long max_steps, std::mt19937_64& rng) {
  if (max_steps <= 0) throw std::invalid_argument("sample_play: max_steps must be > 0");
  Sampler s(table, sigma, tau);
  return run_play(table, s, table.index(start), max_steps, rng);
}

SimEstimate estimate_termination(const VertexTable& table, const RsmStrategy& sigma,
                                 const RsmStrategy& tau, const std::string& start,
                                 const SimOptions& opts) {
  if (opts.samples <= 0) throw std::invalid_argument("estimate_termination: samples must be > 0");
  if (opts.max_steps <= 0) throw std::invalid_argument("estimate_termination: max_steps must be > 0");
  Sampler s(table, sigma, tau);
  int start_idx = table.index(start);
  std::mt19937_64 rng(opts.seed);

  SimEstimate est;
  est.samples = opts.samples;
  for (long i = 0; i < opts.samples; ++i) {
    switch (run_play(table, s, start_idx, opts.max_steps, rng)) {
      case PlayOutcome::Terminated:
        ++est.terminated;
        break;
      case PlayOutcome::Absorbed:
        ++est.absorbed;
        break;
      case PlayOutcome::Censored:
        ++est.step_censored;
        break;
    }
  }
  est.estimate = static_cast<double>(est.terminated) / static_cast<double>(est.samples);
  est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) /
                            static_cast<double>(est.samples));
  return est;
}

}  // namespace rcsg
