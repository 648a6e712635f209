#pragma once

#include <cstdint>
#include <vector>

#include "vodsim/rng.hpp"

namespace vodsim {

struct WorkloadConfig {
  int num_movies = 1;
  double zipf_skew = 0.271;
  double aggregate_rate = 0.0;  // requests per second, all movies combined
  double sim_duration_s = 0.0;
  std::uint64_t seed = 1;
};

/// Normalized power-law popularity vector: q[m] = m^-s / sum_j j^-s for ranks
/// m = 1..num_movies (index 0 is rank 1, the most popular movie).
/// Throws std::invalid_argument for num_movies < 1 or skew < 0.
std::vector<double> zipf_popularity(int num_movies, double skew);

/// Splits an aggregate request rate across movies by popularity.
std::vector<double> per_movie_rates(const std::vector<double>& popularity,
                                    double aggregate_rate);

/// P[T > t] = exp(-rate * t) for an exponential holding time.
double survival_prob(double rate, double t);

}  // namespace vodsim
