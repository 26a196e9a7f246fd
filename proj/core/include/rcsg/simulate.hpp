#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "rcsg/model.hpp"
#include "rcsg/strategy.hpp"

namespace rcsg {

/// One trajectory of the global game under fixed r-SM strategies.
enum class PlayOutcome {
  Terminated,  // reached the exit of the start vertex's component, stack empty
  Absorbed,    // stuck in a value-0 sink (dead vertex or substochastic mass)
  Censored,    // still running after max_steps transitions
};

struct SimOptions {
  long samples = 100'000;
  long max_steps = 10'000;
  std::uint64_t seed = 0;
};

/// Statistical estimate of a termination probability. Runs that were
/// censored or absorbed count as non-terminating, so the estimator is biased
/// low by at most the true probability mass beyond max_steps.
struct SimEstimate {
  long samples = 0;
  long terminated = 0;
  long absorbed = 0;
  long step_censored = 0;
  double estimate = 0.0;   // terminated / samples
  double std_error = 0.0;  // binomial standard error
};

/// Samples one play of the global game from <empty stack, start>:
/// probabilistic vertices draw a successor, play vertices draw both players'
/// moves independently from sigma and tau, call ports push, exits pop.
/// Throws std::invalid_argument if a reached play vertex has no strategy or
/// the support is illegal.
PlayOutcome sample_play(const VertexTable& table, const RsmStrategy& sigma,
                        const RsmStrategy& tau, const std::string& start,
                        long max_steps, std::mt19937_64& rng);

/// Repeats sample_play `samples` times with a dedicated generator seeded from
/// opts.seed; identical inputs give identical estimates.
SimEstimate estimate_termination(const VertexTable& table, const RsmStrategy& sigma,
                                 const RsmStrategy& tau, const std::string& start,
                                 const SimOptions& opts = {});

}  // namespace rcsg
