#include "ctp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <thread>

#include "ctp/dfs.hpp"

namespace ctp {

EvalReport evaluate(const CtpSpec& spec, const Policy& policy, std::size_t rollouts,
                    std::uint64_t master_seed, unsigned threads) {
    if (rollouts < 2)
        throw std::invalid_argument("evaluate: need at least 2 rollouts");
    if (threads == 0) threads = 1;

    // One slot per rollout; aggregation below walks them in index order, so
    // the partitioning into threads cannot change the result.
    std::vector<std::optional<double>> distances(rollouts);
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            probprog::RandomSource rng = probprog::RandomSource::derived(master_seed, r);
            Instance instance = draw_instance(spec, rng);
            if (!is_connected(spec, instance)) continue;
            distances[r] = stdfs(spec, instance, policy, rng).distance;
        }
    };

    if (threads <= 1) {
        worker(0, rollouts);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (rollouts + threads - 1) / threads;
        for (unsigned i = 0; i < threads; ++i) {
            std::size_t begin = std::min<std::size_t>(i * chunk, rollouts);
            std::size_t end = std::min<std::size_t>(begin + chunk, rollouts);
            if (begin < end) pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    EvalReport report;
    double sum = 0.0;
    for (const auto& d : distances) {
        if (d) {
            ++report.rollouts_used;
            sum += *d;
        } else {
            ++report.rollouts_rejected;
        }
    }
    if (report.rollouts_used == 0)
        throw InfeasibleEvaluationError("evaluate: no connected instance drawn");

    const double n = static_cast<double>(report.rollouts_used);
    report.mean_cost = sum / n;
    double ss = 0.0;
    for (const auto& d : distances)
        if (d) ss += (*d - report.mean_cost) * (*d - report.mean_cost);
    const double sd = report.rollouts_used > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    const double half = 1.96 * sd / std::sqrt(n);
    report.ci_lo = report.mean_cost - half;
    report.ci_hi = report.mean_cost + half;
    return report;
}

namespace {

// Exhaustive expectation over walk branches; mirrors the stdfs rules but
// shares no code with it, so the two can check each other.
class WalkTree {
public:
    WalkTree(const CtpSpec& spec, const Policy& policy, const std::vector<bool>& open)
        : spec_(spec), policy_(policy), open_(open) {}

    double expected_from_start() {
        visited_ = {spec_.s()};
        stack_.clear();
        return expected_at(spec_.s());
    }

private:
    static constexpr std::size_t kBranchBudget = 1'000'000;

    double expected_at(int v) {
        if (v == spec_.t()) return 0.0;

        std::vector<int> admissible;
        const auto& incident = spec_.incident_edges(v);
        for (int eid : incident) {
            if (!open_[spec_.edge_index(eid)]) continue;
            if (visited_.count(spec_.far_endpoint(spec_.edge(eid), v))) continue;
            admissible.push_back(eid);
        }

        if (admissible.empty()) {
            if (stack_.empty()) return 0.0; // dead end with nothing to unwind
            auto [parent, eid] = stack_.back();
            stack_.pop_back();
            double result = spec_.edge(eid).weight + expected_at(parent);
            stack_.emplace_back(parent, eid);
            return result;
        }

        double total = 0.0;
        std::vector<double> mass(admissible.size());
        for (std::size_t i = 0; i < admissible.size(); ++i) {
            auto it = std::lower_bound(incident.begin(), incident.end(), admissible[i]);
            mass[i] = policy_.at(spec_, v)[static_cast<std::size_t>(it - incident.begin())];
            total += mass[i];
        }
        if (total <= 1e-12)
            throw ZeroMassError("oracle: policy mass vanishes at node " +
                                std::to_string(v));

        double expectation = 0.0;
        for (std::size_t i = 0; i < admissible.size(); ++i) {
            if (mass[i] <= 0.0) continue;
            if (++branches_ > kBranchBudget)
                throw OracleTooLargeError("oracle: walk tree exceeds branch budget");
            const Edge& e = spec_.edge(admissible[i]);
            int far = spec_.far_endpoint(e, v);
            visited_.insert(far);
            stack_.emplace_back(v, admissible[i]);
            expectation += (mass[i] / total) * (e.weight + expected_at(far));
            stack_.pop_back();
            visited_.erase(far);
        }
        return expectation;
    }

    const CtpSpec& spec_;
    const Policy& policy_;
    const std::vector<bool>& open_;
    std::set<int> visited_;
    std::vector<std::pair<int, int>> stack_;
    std::size_t branches_ = 0;
};

} // namespace

double exact_expected_cost(const CtpSpec& spec, const Policy& policy) {
    const std::size_t m = spec.edge_count();
    if (m > 12)
        throw OracleTooLargeError("oracle: instance enumeration needs |E| <= 12");

    double prob_connected = 0.0;
    double weighted_cost = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        double prob = 1.0;
        Instance instance;
        instance.open.resize(m);
        for (std::size_t e = 0; e < m; ++e) {
            bool open = (mask >> e) & 1;
            instance.open[e] = open;
            prob *= open ? spec.edges()[e].p_open : 1.0 - spec.edges()[e].p_open;
        }
        if (prob == 0.0) continue;
        if (!is_connected(spec, instance)) continue;
        WalkTree tree(spec, policy, instance.open);
        prob_connected += prob;
        weighted_cost += prob * tree.expected_from_start();
    }
    if (prob_connected <= 0.0)
        throw InfeasibleEvaluationError("oracle: connectivity has probability zero");
    return weighted_cost / prob_connected;
}

LearningCurve learning_curve(const CtpSpec& spec, const LearnConfig& config,
                             std::size_t rollouts, std::uint64_t master_seed,
                             ExtractMethod method, unsigned threads) {
    if (config.checkpoints.empty())
        throw std::invalid_argument("learning_curve: need at least one checkpoint");

    LearnResult learned = learn(spec, config, method);
    LearningCurve curve;
    curve.points.reserve(learned.checkpoint_policies.size());
    for (const auto& [iteration, policy] : learned.checkpoint_policies)
        curve.points.emplace_back(iteration,
                                  evaluate(spec, policy, rollouts, master_seed, threads));
    return curve;
}

} // namespace ctp
