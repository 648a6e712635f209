#include "vodsim/workload.hpp"

#include <cmath>
#include <stdexcept>

namespace vodsim {

std::vector<double> zipf_popularity(int num_movies, double skew) {
  if (num_movies < 1) {
    throw std::invalid_argument("zipf_popularity: num_movies must be >= 1");
  }
  if (skew < 0.0) {
    throw std::invalid_argument("zipf_popularity: skew must be >= 0");
  }
  std::vector<double> q(static_cast<std::size_t>(num_movies));
  double norm = 0.0;
  for (int m = 1; m <= num_movies; ++m) {
    const double w = std::pow(static_cast<double>(m), -skew);
    q[static_cast<std::size_t>(m - 1)] = w;
    norm += w;
  }
  for (double& x : q) x /= norm;
  return q;
}

std::vector<double> per_movie_rates(const std::vector<double>& popularity,
                                    double aggregate_rate) {
  std::vector<double> rates(popularity.size());
  for (std::size_t i = 0; i < popularity.size(); ++i) {
    rates[i] = popularity[i] * aggregate_rate;
  }
  return rates;
}

double survival_prob(double rate, double t) {
  return std::exp(-rate * t);
}

}  // namespace vodsim
