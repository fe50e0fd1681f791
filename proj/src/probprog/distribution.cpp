#include "probprog/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace probprog {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kSimplexTol = 1e-9;

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

Bernoulli::Bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("Bernoulli: p must lie in [0,1]");
    p_ = p;
    log_p_ = std::log(p);
}

Bernoulli Bernoulli::from_log_p(double log_p) {
    if (!(log_p <= 0.0))
        throw std::invalid_argument("Bernoulli: log_p must be <= 0");
    Bernoulli b;
    b.log_p_ = log_p;
    b.p_ = std::exp(log_p);
    return b;
}

Categorical::Categorical(std::vector<double> weights) {
    if (weights.empty())
        throw std::invalid_argument("Categorical: empty weight vector");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("Categorical: weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kSimplexTol)
        throw std::invalid_argument("Categorical: weights must sum to 1 within 1e-9");
    for (double& w : weights) w /= sum;
    weights_ = std::move(weights);
}

Categorical Categorical::from_unnormalized(std::vector<double> weights) {
    if (weights.empty())
        throw std::invalid_argument("Categorical: empty weight vector");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("Categorical: weights must be nonnegative");
        sum += w;
    }
    if (!(sum > 0.0))
        throw std::invalid_argument("Categorical: total weight must be positive");
    for (double& w : weights) w /= sum;
    Categorical c;
    c.weights_ = std::move(weights);
    return c;
}

SymmetricDirichlet::SymmetricDirichlet(std::size_t k) : k_(k) {
    if (k < 1)
        throw std::invalid_argument("SymmetricDirichlet: dimension must be >= 1");
}

UniformContinuous::UniformContinuous(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo < hi))
        throw std::invalid_argument("UniformContinuous: requires lo < hi");
}

double log_density(const Distribution& dist, const Value& value) {
    struct Visitor {
        const Value& value;

        double operator()(const Bernoulli& d) const {
            const auto* v = std::get_if<std::int64_t>(&value);
            if (!v || (*v != 0 && *v != 1)) return kNegInf;
            if (*v == 1) return d.log_p();
            return d.p() < 1.0 ? std::log1p(-d.p()) : kNegInf;
        }

        double operator()(const Categorical& d) const {
            const auto* v = std::get_if<std::int64_t>(&value);
            if (!v || *v < 0 || static_cast<std::size_t>(*v) >= d.size())
                return kNegInf;
            double w = d.weights()[static_cast<std::size_t>(*v)];
            return w > 0.0 ? std::log(w) : kNegInf;
        }

        double operator()(const SymmetricDirichlet& d) const {
            const auto* v = std::get_if<std::vector<double>>(&value);
            if (!v || v->size() != d.k()) return kNegInf;
            double sum = 0.0;
            for (double x : *v) {
                if (!(x > 0.0)) return kNegInf; // open simplex only
                sum += x;
            }
            if (std::abs(sum - 1.0) > kSimplexTol) return kNegInf;
            // Uniform density on the simplex is (k-1)!.
            return std::lgamma(static_cast<double>(d.k()));
        }

        double operator()(const UniformContinuous& d) const {
            const auto* v = std::get_if<double>(&value);
            if (!v || *v < d.lo() || *v > d.hi()) return kNegInf;
            return -std::log(d.hi() - d.lo());
        }
    };
    return std::visit(Visitor{value}, dist);
}

Value sample(const Distribution& dist, RandomSource& rng) {
    struct Visitor {
        RandomSource& rng;

        Value operator()(const Bernoulli& d) const {
            return Value{static_cast<std::int64_t>(rng.next_uniform() < d.p() ? 1 : 0)};
        }

        Value operator()(const Categorical& d) const {
            double u = rng.next_uniform();
            double acc = 0.0;
            std::int64_t last_positive = 0;
            for (std::size_t i = 0; i < d.size(); ++i) {
                double w = d.weights()[i];
                if (w > 0.0) last_positive = static_cast<std::int64_t>(i);
                acc += w;
                if (u < acc) return Value{static_cast<std::int64_t>(i)};
            }
            return Value{last_positive}; // guard against rounding at u ~ 1
        }

        Value operator()(const SymmetricDirichlet& d) const {
            // Gamma(1,1) draws are exponentials; normalize to the simplex.
            std::vector<double> v(d.k());
            double sum = 0.0;
            for (double& x : v) {
                x = -std::log1p(-rng.next_uniform());
                if (x < 1e-300) x = 1e-300; // keep strictly interior
                sum += x;
            }
            for (double& x : v) x /= sum;
            return Value{std::move(v)};
        }

        Value operator()(const UniformContinuous& d) const {
            return Value{d.lo() + rng.next_uniform() * (d.hi() - d.lo())};
        }
    };
    return std::visit(Visitor{rng}, dist);
}

std::string describe(const Distribution& dist) {
    struct Visitor {
        std::string operator()(const Bernoulli& d) const {
            return "Bernoulli(" + format_double(d.p()) + ")";
        }
        std::string operator()(const Categorical& d) const {
            std::string s = "Categorical(";
            for (std::size_t i = 0; i < d.size(); ++i) {
                if (i) s += ',';
                s += format_double(d.weights()[i]);
            }
            return s + ")";
        }
        std::string operator()(const SymmetricDirichlet& d) const {
            return "SymmetricDirichlet(" + std::to_string(d.k()) + ")";
        }
        std::string operator()(const UniformContinuous& d) const {
            return "UniformContinuous(" + format_double(d.lo()) + "," +
                   format_double(d.hi()) + ")";
        }
    };
    return std::visit(Visitor{}, dist);
}

std::string describe(const Value& value) {
    struct Visitor {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(const std::vector<double>& v) const {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) s += ',';
                s += format_double(v[i]);
            }
            return s;
        }
    };
    return std::visit(Visitor{}, value);
}

} // namespace probprog
