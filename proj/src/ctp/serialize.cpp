#include "ctp/serialize.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ctp {

using nlohmann::json;

namespace {

void require_fields(const json& obj, std::initializer_list<const char*> fields,
                    const std::string& where) {
    if (!obj.is_object()) throw FileFormatError(where + ": expected an object");
    for (const char* f : fields)
        if (!obj.contains(f))
            throw FileFormatError(where + ": missing field \"" + f + "\"");
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* f : fields)
            if (key == f) known = true;
        if (!known)
            throw FileFormatError(where + ": unknown field \"" + key + "\"");
    }
}

double number_field(const json& obj, const char* field, const std::string& where) {
    const json& v = obj.at(field);
    if (!v.is_number())
        throw FileFormatError(where + ": field \"" + field + "\" must be a number");
    return v.get<double>();
}

int int_field(const json& obj, const char* field, const std::string& where) {
    const json& v = obj.at(field);
    if (!v.is_number_integer())
        throw FileFormatError(where + ": field \"" + field + "\" must be an integer");
    return v.get<int>();
}

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<double> double_vector(const json& v, const std::string& where) {
    if (!v.is_array()) throw FileFormatError(where + ": expected an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number()) throw FileFormatError(where + ": expected numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

} // namespace

std::string spec_hash(const CtpSpec& spec) {
    const std::string text = spec_to_json(spec);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf, 16);
}

std::string spec_to_json(const CtpSpec& spec) {
    json doc;
    doc["s"] = spec.s();
    doc["t"] = spec.t();
    doc["nodes"] = json::array();
    for (const Node& n : spec.nodes())
        doc["nodes"].push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}});
    doc["edges"] = json::array();
    for (const Edge& e : spec.edges())
        doc["edges"].push_back({{"id", e.id},
                                {"u", e.u},
                                {"v", e.v},
                                {"weight", e.weight},
                                {"p_open", e.p_open}});
    return doc.dump(2) + "\n";
}

CtpSpec spec_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FileFormatError(std::string("spec: invalid JSON: ") + e.what());
    }
    require_fields(doc, {"nodes", "edges", "s", "t"}, "spec");

    std::vector<Node> nodes;
    for (const json& n : doc.at("nodes")) {
        require_fields(n, {"id", "x", "y"}, "spec.nodes");
        nodes.push_back({int_field(n, "id", "spec.nodes"),
                         number_field(n, "x", "spec.nodes"),
                         number_field(n, "y", "spec.nodes")});
    }
    std::vector<Edge> edges;
    for (const json& e : doc.at("edges")) {
        require_fields(e, {"id", "u", "v", "weight", "p_open"}, "spec.edges");
        edges.push_back({int_field(e, "id", "spec.edges"),
                         int_field(e, "u", "spec.edges"),
                         int_field(e, "v", "spec.edges"),
                         number_field(e, "weight", "spec.edges"),
                         number_field(e, "p_open", "spec.edges")});
    }
    try {
        return CtpSpec(std::move(nodes), std::move(edges),
                       int_field(doc, "s", "spec"), int_field(doc, "t", "spec"));
    } catch (const SpecError& e) {
        throw FileFormatError(e.what());
    }
}

CtpSpec load_spec(const std::string& path) { return spec_from_json(read_file(path)); }

void save_spec(const CtpSpec& spec, const std::string& path) {
    write_file(path, spec_to_json(spec));
}

Policy PosteriorFile::policy(const CtpSpec& spec, ExtractMethod method) const {
    if (node_ids.size() != spec.node_count())
        throw FileFormatError("posterior: node count does not match spec");
    Policy out;
    out.node_probs.resize(spec.node_count());
    for (std::size_t i = 0; i < node_ids.size(); ++i) {
        std::size_t vi = spec.node_index(node_ids[i]);
        if (edge_ids[i] != spec.incident_edges(node_ids[i]))
            throw FileFormatError("posterior: edge list mismatch at node " +
                                  std::to_string(node_ids[i]));
        if (method == ExtractMethod::MapSample) {
            out.node_probs[vi] = best[i];
        } else {
            double sum = 0.0;
            for (double m : mean[i]) sum += m;
            std::vector<double> probs;
            probs.reserve(mean[i].size());
            for (double m : mean[i]) probs.push_back(m / sum);
            out.node_probs[vi] = std::move(probs);
        }
    }
    validate_policy(spec, out);
    return out;
}

PosteriorFile make_posterior_file(const CtpSpec& spec, const LearnConfig& config,
                                  const PolicyPosterior& posterior) {
    PosteriorFile file;
    file.spec_hash = ctp::spec_hash(spec);
    file.config = config;
    file.sample_count = posterior.sample_count();
    file.best_log_joint = posterior.best_log_joint();
    for (const Node& n : spec.nodes()) {
        file.node_ids.push_back(n.id);
        file.edge_ids.push_back(spec.incident_edges(n.id));
    }
    file.mean = posterior.mean();
    file.variance = posterior.variance();
    file.best = posterior.best_policy().node_probs;
    return file;
}

std::string posterior_to_json(const PosteriorFile& file) {
    json doc;
    doc["spec_hash"] = file.spec_hash;
    doc["config"] = {{"iterations", file.config.iterations},
                     {"burn_in_fraction", file.config.burn_in_fraction},
                     {"cost_scale", file.config.cost_scale},
                     {"checkpoints", file.config.checkpoints},
                     {"seed", file.config.seed}};
    doc["sample_count"] = file.sample_count;
    doc["best_log_joint"] = file.best_log_joint;
    doc["nodes"] = json::array();
    for (std::size_t i = 0; i < file.node_ids.size(); ++i)
        doc["nodes"].push_back({{"node", file.node_ids[i]},
                                {"edges", file.edge_ids[i]},
                                {"mean", file.mean[i]},
                                {"variance", file.variance[i]},
                                {"best", file.best[i]}});
    return doc.dump(2) + "\n";
}

PosteriorFile posterior_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FileFormatError(std::string("posterior: invalid JSON: ") + e.what());
    }
    require_fields(doc,
                   {"spec_hash", "config", "sample_count", "best_log_joint", "nodes"},
                   "posterior");
    const json& cfg = doc.at("config");
    require_fields(cfg, {"iterations", "burn_in_fraction", "cost_scale", "checkpoints", "seed"},
                   "posterior.config");

    PosteriorFile file;
    file.spec_hash = doc.at("spec_hash").get<std::string>();
    file.config.iterations = cfg.at("iterations").get<std::size_t>();
    file.config.burn_in_fraction = number_field(cfg, "burn_in_fraction", "posterior.config");
    file.config.cost_scale = number_field(cfg, "cost_scale", "posterior.config");
    file.config.checkpoints = cfg.at("checkpoints").get<std::vector<std::size_t>>();
    file.config.seed = cfg.at("seed").get<std::uint64_t>();
    file.sample_count = doc.at("sample_count").get<std::size_t>();
    file.best_log_joint = number_field(doc, "best_log_joint", "posterior");

    for (const json& n : doc.at("nodes")) {
        require_fields(n, {"node", "edges", "mean", "variance", "best"}, "posterior.nodes");
        file.node_ids.push_back(int_field(n, "node", "posterior.nodes"));
        file.edge_ids.push_back(n.at("edges").get<std::vector<int>>());
        file.mean.push_back(double_vector(n.at("mean"), "posterior.mean"));
        file.variance.push_back(double_vector(n.at("variance"), "posterior.variance"));
        file.best.push_back(double_vector(n.at("best"), "posterior.best"));
    }
    return file;
}

PosteriorFile load_posterior(const std::string& path) {
    return posterior_from_json(read_file(path));
}

void save_posterior(const PosteriorFile& file, const std::string& path) {
    write_file(path, posterior_to_json(file));
}

std::string report_to_json(const EvalReport& report, const std::string& spec_hash,
                           std::uint64_t seed, const std::string& method) {
    json doc;
    doc["mean_cost"] = report.mean_cost;
    doc["ci_lo"] = report.ci_lo;
    doc["ci_hi"] = report.ci_hi;
    doc["rollouts_used"] = report.rollouts_used;
    doc["rollouts_rejected"] = report.rollouts_rejected;
    doc["spec_hash"] = spec_hash;
    doc["seed"] = seed;
    doc["method"] = method;
    return doc.dump(2) + "\n";
}

EvalReport report_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FileFormatError(std::string("report: invalid JSON: ") + e.what());
    }
    require_fields(doc,
                   {"mean_cost", "ci_lo", "ci_hi", "rollouts_used", "rollouts_rejected",
                    "spec_hash", "seed", "method"},
                   "report");
    EvalReport report;
    report.mean_cost = number_field(doc, "mean_cost", "report");
    report.ci_lo = number_field(doc, "ci_lo", "report");
    report.ci_hi = number_field(doc, "ci_hi", "report");
    report.rollouts_used = doc.at("rollouts_used").get<std::size_t>();
    report.rollouts_rejected = doc.at("rollouts_rejected").get<std::size_t>();
    return report;
}

std::string curve_to_csv(const LearningCurve& curve) {
    std::ostringstream out;
    out << "iteration,mean_cost,ci_lo,ci_hi,rollouts_used,rollouts_rejected\n";
    for (const auto& [iteration, report] : curve.points) {
        out << iteration << ',' << format_double(report.mean_cost) << ','
            << format_double(report.ci_lo) << ',' << format_double(report.ci_hi) << ','
            << report.rollouts_used << ',' << report.rollouts_rejected << '\n';
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileFormatError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileFormatError("cannot write file: " + path);
    out << content;
}

} // namespace ctp
