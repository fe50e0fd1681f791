#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "probprog/random.hpp"

namespace probprog {

// Value drawn from a Distribution: integer (Bernoulli/Categorical index),
// real (UniformContinuous), or simplex point (SymmetricDirichlet).
using Value = std::variant<std::int64_t, double, std::vector<double>>;

// Bernoulli keeps the log probability of success alongside p so observation
// scores like Bernoulli(e^{-c}) contribute exactly -c without an exp/log
// round trip.
class Bernoulli {
public:
    explicit Bernoulli(double p);
    static Bernoulli from_log_p(double log_p);

    double p() const { return p_; }
    double log_p() const { return log_p_; }

private:
    Bernoulli() = default;
    double p_ = 0.0;
    double log_p_ = 0.0;
};

// Finite distribution over indices 0..k-1. Weights are validated to sum to 1
// within 1e-9 and stored renormalized.
class Categorical {
public:
    explicit Categorical(std::vector<double> weights);

    // Accepts any nonnegative weights with positive total and normalizes.
    static Categorical from_unnormalized(std::vector<double> weights);

    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return weights_.size(); }

private:
    Categorical() = default;
    std::vector<double> weights_;
};

// Dirichlet(1, ..., 1) on the k-simplex; the uniform prior over probability
// vectors used for policies.
class SymmetricDirichlet {
public:
    explicit SymmetricDirichlet(std::size_t k);
    std::size_t k() const { return k_; }

private:
    std::size_t k_ = 0;
};

class UniformContinuous {
public:
    UniformContinuous(double lo, double hi);
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_ = 0.0, hi_ = 1.0;
};

using Distribution =
    std::variant<Bernoulli, Categorical, SymmetricDirichlet, UniformContinuous>;

// Log probability (discrete) or log density (continuous) of value under dist.
// Values outside the support, including type mismatches, give -infinity.
double log_density(const Distribution& dist, const Value& value);

Value sample(const Distribution& dist, RandomSource& rng);

std::string describe(const Distribution& dist);
std::string describe(const Value& value);

} // namespace probprog
