#include <charconv>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ctp/evaluation.hpp"
#include "ctp/generator.hpp"
#include "ctp/render.hpp"
#include "ctp/serialize.hpp"
#include "probprog/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<std::size_t> parse_checkpoints(const std::string& list) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos < list.size()) {
        std::size_t comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        std::size_t value = 0;
        auto begin = list.data() + pos;
        auto end = list.data() + comma;
        auto res = std::from_chars(begin, end, value);
        if (res.ec != std::errc{} || res.ptr != end)
            throw CLI::ValidationError("--checkpoints",
                                       "expected comma-separated iteration counts");
        out.push_back(value);
        pos = comma + 1;
    }
    return out;
}

std::string checkpoints_str(const std::vector<std::size_t>& cps) {
    std::string s;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(cps[i]);
    }
    return s;
}

ctp::StRule parse_st_rule(const std::string& text) {
    if (text == "max") return ctp::StRule::max_euclidean();
    if (text == "random") return ctp::StRule::random();
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--st", "expected max, random, or s,t node ids");
    int s = 0, t = 0;
    auto r1 = std::from_chars(text.data(), text.data() + comma, s);
    auto r2 = std::from_chars(text.data() + comma + 1, text.data() + text.size(), t);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} ||
        r1.ptr != text.data() + comma || r2.ptr != text.data() + text.size())
        throw CLI::ValidationError("--st", "expected max, random, or s,t node ids");
    return ctp::StRule::explicit_pair(s, t);
}

ctp::ExtractMethod parse_method(const std::string& text) {
    if (text == "map-sample") return ctp::ExtractMethod::MapSample;
    if (text == "posterior-mean") return ctp::ExtractMethod::PosteriorMean;
    throw CLI::ValidationError("--method", "expected map-sample or posterior-mean");
}

struct Options {
    std::string spec_path, policy_path, out_path, st = "max", method = "map-sample";
    std::string checkpoints;
    std::size_t nodes = 20, iters = 10'000, rollouts = 1'000;
    double p_open = 1.0, scale = 1.0, burn_in = 0.10;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

int run_gen(const Options& opt) {
    ctp::CtpSpec spec =
        ctp::generate_spec(opt.nodes, opt.p_open, opt.seed, parse_st_rule(opt.st));
    ctp::save_spec(spec, opt.out_path);
    std::cerr << "# gen seed=" << opt.seed << " nodes=" << opt.nodes
              << " p_open=" << format_double(opt.p_open) << " st=" << opt.st
              << " spec_hash=" << ctp::spec_hash(spec) << "\n";
    return kExitOk;
}

ctp::LearnConfig make_config(const Options& opt) {
    ctp::LearnConfig config;
    config.iterations = opt.iters;
    config.burn_in_fraction = opt.burn_in;
    config.cost_scale = opt.scale;
    config.checkpoints = parse_checkpoints(opt.checkpoints);
    config.seed = opt.seed;
    return config;
}

void echo_config(const char* cmd, const ctp::LearnConfig& config,
                 const std::string& hash) {
    std::cerr << "# " << cmd << " seed=" << config.seed
              << " iters=" << config.iterations
              << " scale=" << format_double(config.cost_scale)
              << " burn_in=" << format_double(config.burn_in_fraction)
              << " checkpoints=" << checkpoints_str(config.checkpoints)
              << " spec_hash=" << hash << "\n";
}

int run_learn(const Options& opt) {
    ctp::CtpSpec spec = ctp::load_spec(opt.spec_path);
    ctp::LearnConfig config = make_config(opt);
    ctp::LearnResult result = ctp::learn(spec, config);
    ctp::save_posterior(ctp::make_posterior_file(spec, config, result.posterior),
                        opt.out_path);
    echo_config("learn", config, ctp::spec_hash(spec));
    return kExitOk;
}

int run_eval(const Options& opt) {
    ctp::CtpSpec spec = ctp::load_spec(opt.spec_path);
    ctp::PosteriorFile posterior = ctp::load_posterior(opt.policy_path);
    if (posterior.spec_hash != ctp::spec_hash(spec))
        throw ctp::FileFormatError("eval: posterior spec_hash does not match spec");
    ctp::Policy policy = posterior.policy(spec, parse_method(opt.method));
    ctp::EvalReport report =
        ctp::evaluate(spec, policy, opt.rollouts, opt.seed, opt.threads);
    ctp::write_file(opt.out_path, ctp::report_to_json(report, posterior.spec_hash,
                                                      opt.seed, opt.method));
    std::cerr << "# eval seed=" << opt.seed << " rollouts=" << opt.rollouts
              << " method=" << opt.method << " threads=" << opt.threads
              << " spec_hash=" << posterior.spec_hash << "\n";
    return kExitOk;
}

int run_curve(const Options& opt) {
    ctp::CtpSpec spec = ctp::load_spec(opt.spec_path);
    ctp::LearnConfig config = make_config(opt);
    ctp::LearningCurve curve = ctp::learning_curve(
        spec, config, opt.rollouts, opt.seed, parse_method(opt.method), opt.threads);
    ctp::write_file(opt.out_path, ctp::curve_to_csv(curve));
    echo_config("curve", config, ctp::spec_hash(spec));
    return kExitOk;
}

int run_render(const Options& opt) {
    ctp::CtpSpec spec = ctp::load_spec(opt.spec_path);
    ctp::PosteriorFile posterior = ctp::load_posterior(opt.policy_path);
    ctp::write_file(opt.out_path, ctp::render_policy(spec, posterior));
    std::cerr << "# render spec_hash=" << posterior.spec_hash << "\n";
    return kExitOk;
}

int run_oracle(const Options& opt) {
    ctp::CtpSpec spec = ctp::load_spec(opt.spec_path);
    ctp::PosteriorFile posterior = ctp::load_posterior(opt.policy_path);
    if (posterior.spec_hash != ctp::spec_hash(spec))
        throw ctp::FileFormatError("oracle: posterior spec_hash does not match spec");
    ctp::Policy policy = posterior.policy(spec, parse_method(opt.method));
    std::cout << format_double(ctp::exact_expected_cost(spec, policy)) << "\n";
    std::cerr << "# oracle method=" << opt.method
              << " spec_hash=" << posterior.spec_hash << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic travel policies for the Canadian Traveller Problem"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* gen = app.add_subcommand("gen", "Generate a random problem spec");
    gen->add_option("--nodes", opt.nodes, "Number of nodes")->required();
    gen->add_option("--p-open", opt.p_open, "Edge traversability probability")->required();
    gen->add_option("--seed", opt.seed, "Random seed")->required();
    gen->add_option("--st", opt.st, "Endpoint rule: max, random, or s,t");
    gen->add_option("-o,--out", opt.out_path, "Output spec file")->required();

    CLI::App* learn = app.add_subcommand("learn", "Learn a policy posterior");
    learn->add_option("--spec", opt.spec_path, "Problem spec file")->required();
    learn->add_option("--iters", opt.iters, "MH iterations");
    learn->add_option("--scale", opt.scale, "Cost scale sigma");
    learn->add_option("--burn-in", opt.burn_in, "Burn-in fraction");
    learn->add_option("--checkpoints", opt.checkpoints, "Comma-separated iterations");
    learn->add_option("--seed", opt.seed, "Random seed")->required();
    learn->add_option("-o,--out", opt.out_path, "Output posterior file")->required();

    CLI::App* eval = app.add_subcommand("eval", "Evaluate a policy by Monte Carlo");
    eval->add_option("--spec", opt.spec_path, "Problem spec file")->required();
    eval->add_option("--policy", opt.policy_path, "Posterior file")->required();
    eval->add_option("--method", opt.method, "map-sample or posterior-mean");
    eval->add_option("--rollouts", opt.rollouts, "Number of instance draws")->required();
    eval->add_option("--seed", opt.seed, "Master seed")->required();
    eval->add_option("--threads", opt.threads, "Worker threads");
    eval->add_option("-o,--out", opt.out_path, "Output report file")->required();

    CLI::App* curve = app.add_subcommand("curve", "Learning curve over checkpoints");
    curve->add_option("--spec", opt.spec_path, "Problem spec file")->required();
    curve->add_option("--iters", opt.iters, "MH iterations");
    curve->add_option("--checkpoints", opt.checkpoints, "Comma-separated iterations")
        ->required();
    curve->add_option("--rollouts", opt.rollouts, "Rollouts per checkpoint")->required();
    curve->add_option("--seed", opt.seed, "Seed for both learning and evaluation")
        ->required();
    curve->add_option("--scale", opt.scale, "Cost scale sigma");
    curve->add_option("--burn-in", opt.burn_in, "Burn-in fraction");
    curve->add_option("--method", opt.method, "map-sample or posterior-mean");
    curve->add_option("--threads", opt.threads, "Worker threads");
    curve->add_option("-o,--out", opt.out_path, "Output CSV file")->required();

    CLI::App* render = app.add_subcommand("render", "Render a policy as DOT");
    render->add_option("--spec", opt.spec_path, "Problem spec file")->required();
    render->add_option("--posterior", opt.policy_path, "Posterior file")->required();
    render->add_option("-o,--out", opt.out_path, "Output DOT file")->required();

    CLI::App* oracle = app.add_subcommand("oracle", "Exact expected cost (small specs)");
    oracle->add_option("--spec", opt.spec_path, "Problem spec file")->required();
    oracle->add_option("--policy", opt.policy_path, "Posterior file")->required();
    oracle->add_option("--method", opt.method, "map-sample or posterior-mean");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (gen->parsed()) return run_gen(opt);
        if (learn->parsed()) return run_learn(opt);
        if (eval->parsed()) return run_eval(opt);
        if (curve->parsed()) return run_curve(opt);
        if (render->parsed()) return run_render(opt);
        if (oracle->parsed()) return run_oracle(opt);
    } catch (const probprog::ModelInfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const probprog::RunawayProgramError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ctp::GenerationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ctp::InfeasibleEvaluationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ctp::OracleTooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
