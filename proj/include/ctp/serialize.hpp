#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "ctp/evaluation.hpp"
#include "ctp/learner.hpp"
#include "ctp/spec.hpp"

namespace ctp {

// Malformed or inconsistent file content; message names the offending field.
struct FileFormatError : std::runtime_error {
    explicit FileFormatError(const std::string& what) : std::runtime_error(what) {}
};

// FNV-1a over the canonical JSON form, as a 16-digit hex string. Identifies
// the spec a posterior or report was computed from.
std::string spec_hash(const CtpSpec& spec);

std::string spec_to_json(const CtpSpec& spec);
CtpSpec spec_from_json(const std::string& text);

CtpSpec load_spec(const std::string& path);
void save_spec(const CtpSpec& spec, const std::string& path);

// Posterior file: header (spec hash, config, seed, sample count, best score)
// plus per node the canonical edge-id list and mean / variance / best-sample
// vectors.
struct PosteriorFile {
    std::string spec_hash;
    LearnConfig config;
    std::size_t sample_count = 0;
    double best_log_joint = 0.0;
    std::vector<int> node_ids;                       // spec order
    std::vector<std::vector<int>> edge_ids;          // canonical per node
    std::vector<std::vector<double>> mean;
    std::vector<std::vector<double>> variance;
    std::vector<std::vector<double>> best;

    Policy policy(const CtpSpec& spec, ExtractMethod method) const;
};

PosteriorFile make_posterior_file(const CtpSpec& spec, const LearnConfig& config,
                                  const PolicyPosterior& posterior);
std::string posterior_to_json(const PosteriorFile& file);
PosteriorFile posterior_from_json(const std::string& text);
PosteriorFile load_posterior(const std::string& path);
void save_posterior(const PosteriorFile& file, const std::string& path);

std::string report_to_json(const EvalReport& report, const std::string& spec_hash,
                           std::uint64_t seed, const std::string& method);
EvalReport report_from_json(const std::string& text);

// CSV with header iteration,mean_cost,ci_lo,ci_hi,rollouts_used,rollouts_rejected.
std::string curve_to_csv(const LearningCurve& curve);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace ctp
