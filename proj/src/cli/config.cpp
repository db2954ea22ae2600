#include "config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "tfgkp/common.hpp"

namespace tfgkp::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kExperiments = {"codeword",  "error-rate",    "scaling-scan",
                                            "loss-demo", "rotation-scan", "hom-scan"};

std::pair<long, long> line_column(const std::string& text, std::size_t byte) {
    long line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

class Extractor {
  public:
    Extractor(const json& node, std::string where, std::vector<std::string>& issues,
              std::set<std::string> allowed)
        : node_(node), where_(std::move(where)), issues_(issues) {
        if (!node_.is_object()) {
            issues_.push_back(where_ + " must be an object");
            return;
        }
        for (const auto& item : node_.items())
            if (!allowed.count(item.key()))
                issues_.push_back("unknown key '" + item.key() + "' in " + where_);
    }

    bool has(const std::string& key) const {
        return node_.is_object() && node_.contains(key);
    }

    const json* get(const std::string& key) const {
        return has(key) ? &node_.at(key) : nullptr;
    }

    void number(const std::string& key, double& out) const {
        if (const json* v = get(key)) {
            if (v->is_number())
                out = v->get<double>();
            else
                issues_.push_back(where_ + "." + key + " must be a number");
        }
    }

    void integer(const std::string& key, long& out) const {
        if (const json* v = get(key)) {
            if (v->is_number_integer())
                out = v->get<long>();
            else
                issues_.push_back(where_ + "." + key + " must be an integer");
        }
    }

    void unsigned_integer(const std::string& key, std::uint64_t& out, bool& present) const {
        if (const json* v = get(key)) {
            if (v->is_number_unsigned() || (v->is_number_integer() && v->get<long long>() >= 0)) {
                out = v->get<std::uint64_t>();
                present = true;
            } else {
                issues_.push_back(where_ + "." + key + " must be a nonnegative integer");
            }
        }
    }

    void text(const std::string& key, std::string& out) const {
        if (const json* v = get(key)) {
            if (v->is_string())
                out = v->get<std::string>();
            else
                issues_.push_back(where_ + "." + key + " must be a string");
        }
    }

    void number_list(const std::string& key, std::vector<double>& out) const {
        if (const json* v = get(key)) {
            if (!v->is_array()) {
                issues_.push_back(where_ + "." + key + " must be an array of numbers");
                return;
            }
            out.clear();
            for (const auto& e : *v) {
                if (!e.is_number()) {
                    issues_.push_back(where_ + "." + key + " must contain only numbers");
                    return;
                }
                out.push_back(e.get<double>());
            }
        }
    }

    void integer_list(const std::string& key, std::vector<long>& out) const {
        if (const json* v = get(key)) {
            if (!v->is_array()) {
                issues_.push_back(where_ + "." + key + " must be an array of integers");
                return;
            }
            out.clear();
            for (const auto& e : *v) {
                if (!e.is_number_integer()) {
                    issues_.push_back(where_ + "." + key + " must contain only integers");
                    return;
                }
                out.push_back(e.get<long>());
            }
        }
    }

    void string_list(const std::string& key, std::vector<std::string>& out) const {
        if (const json* v = get(key)) {
            if (!v->is_array()) {
                issues_.push_back(where_ + "." + key + " must be an array of strings");
                return;
            }
            out.clear();
            for (const auto& e : *v) {
                if (!e.is_string()) {
                    issues_.push_back(where_ + "." + key + " must contain only strings");
                    return;
                }
                out.push_back(e.get<std::string>());
            }
        }
    }

    const json& node() const { return node_; }
    bool is_object() const { return node_.is_object(); }

  private:
    const json& node_;
    std::string where_;
    std::vector<std::string>& issues_;
};

void check_params(ExperimentConfig& cfg, std::vector<std::string>& issues) {
    try {
        cfg.params = CodeParams::make(cfg.params.n, cfg.params.omega0, cfg.params.delta,
                                      cfg.params.kappa);
    } catch (const ValidationError& e) {
        for (const auto& s : e.issues) issues.push_back("params: " + s);
    }
}

}  // namespace

boost::rational<long> parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    std::size_t used = 0;
    long p = 0, q = 1;
    try {
        p = std::stol(text.substr(0, slash), &used);
    } catch (const std::exception&) {
        throw DomainError("bad rational literal '" + text + "'");
    }
    if (used != (slash == std::string::npos ? text.size() : slash))
        throw DomainError("bad rational literal '" + text + "'");
    if (slash != std::string::npos) {
        try {
            q = std::stol(text.substr(slash + 1), &used);
        } catch (const std::exception&) {
            throw DomainError("bad rational literal '" + text + "'");
        }
        if (used != text.size() - slash - 1 || q == 0)
            throw DomainError("bad rational literal '" + text + "'");
    }
    return {p, q};
}

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        throw ValidationError({"syntax error at line " + std::to_string(line) +
                               ", column " + std::to_string(col)});
    }

    std::vector<std::string> issues;
    ExperimentConfig cfg;
    Extractor top(root, "config", issues,
                  {"experiment", "seed", "output", "params", "sigmaG", "grid", "trials",
                   "syndrome", "noise", "deltas", "ns", "codeword", "hom", "rotation",
                   "loss"});

    top.text("experiment", cfg.experiment);
    if (cfg.experiment.empty())
        issues.push_back("config.experiment is required");
    else if (!kExperiments.count(cfg.experiment))
        issues.push_back("unknown experiment '" + cfg.experiment + "'");

    top.unsigned_integer("seed", cfg.seed, cfg.hasSeed);
    top.text("output", cfg.output);

    if (const json* p = top.get("params")) {
        Extractor params(*p, "params", issues, {"n", "omega0", "delta", "kappa"});
        if (params.is_object()) {
            params.integer("n", cfg.params.n);
            params.number("omega0", cfg.params.omega0);
            params.number("delta", cfg.params.delta);
            params.number("kappa", cfg.params.kappa);
        }
    }
    check_params(cfg, issues);

    cfg.sigmaG = cfg.params.omega0;
    top.number("sigmaG", cfg.sigmaG);
    if (!(cfg.sigmaG > 0.0)) issues.push_back("sigmaG must be positive");

    if (const json* g = top.get("grid")) {
        Extractor grid(*g, "grid", issues, {"count", "span"});
        if (grid.is_object()) {
            long count = static_cast<long>(cfg.grid.count);
            grid.integer("count", count);
            if (count < 2)
                issues.push_back("grid.count must be at least 2");
            else
                cfg.grid.count = static_cast<std::size_t>(count);
            grid.number("span", cfg.grid.span);
            if (cfg.grid.span < 0.0) issues.push_back("grid.span must be nonnegative");
        }
    }

    top.integer("trials", cfg.trials);
    if (cfg.trials < 1) issues.push_back("trials must be at least 1");

    std::string syndrome = "sampled";
    top.text("syndrome", syndrome);
    if (syndrome == "exact")
        cfg.syndrome = SyndromeMode::exact;
    else if (syndrome == "sampled")
        cfg.syndrome = SyndromeMode::sampled;
    else
        issues.push_back("syndrome must be 'exact' or 'sampled'");

    if (const json* nz = top.get("noise")) {
        Extractor noise(*nz, "noise", issues,
                        {"omegaStd", "timeStd", "activeModes", "fixed"});
        if (noise.is_object()) {
            noise.number("omegaStd", cfg.noise.perModeOmegaStd);
            noise.number("timeStd", cfg.noise.perModeTimeStd);
            noise.integer_list("activeModes", cfg.noise.activeModes);
            if (const json* fx = noise.get("fixed")) {
                if (!fx->is_array()) {
                    issues.push_back("noise.fixed must be an array");
                } else {
                    for (const auto& e : *fx) {
                        Extractor entry(e, "noise.fixed[]", issues, {"mode", "dOmega", "dT"});
                        LocalDisplacement d;
                        if (entry.is_object()) {
                            entry.integer("mode", d.mode);
                            entry.number("dOmega", d.dOmega);
                            entry.number("dT", d.dT);
                        }
                        cfg.noise.fixedDisplacements.push_back(d);
                    }
                }
            }
            if (cfg.noise.perModeOmegaStd < 0.0 || cfg.noise.perModeTimeStd < 0.0)
                issues.push_back("noise standard deviations must be nonnegative");
            if (cfg.noise.stochastic() && !cfg.noise.fixedDisplacements.empty())
                issues.push_back("noise: stochastic widths and fixed displacements are exclusive");
            for (long m : cfg.noise.activeModes)
                if (m < 1 || m > cfg.params.n)
                    issues.push_back("noise.activeModes entry " + std::to_string(m) +
                                     " outside 1.." + std::to_string(cfg.params.n));
            for (const auto& d : cfg.noise.fixedDisplacements)
                if (d.mode < 1 || d.mode > cfg.params.n)
                    issues.push_back("noise.fixed mode " + std::to_string(d.mode) +
                                     " outside 1.." + std::to_string(cfg.params.n));
        }
    }

    cfg.deltas = {cfg.params.delta};
    top.number_list("deltas", cfg.deltas);
    if (cfg.deltas.empty()) issues.push_back("deltas must not be empty");
    for (double d : cfg.deltas) {
        try {
            CodeParams::make(cfg.params.n, cfg.params.omega0, d, cfg.params.kappa);
        } catch (const ValidationError& e) {
            for (const auto& s : e.issues)
                issues.push_back("deltas entry " + std::to_string(d) + ": " + s);
        }
    }

    top.integer_list("ns", cfg.ns);
    if (cfg.ns.empty()) issues.push_back("ns must not be empty");
    for (long n : cfg.ns)
        if (!is_power_of_two(n))
            issues.push_back("ns entry " + std::to_string(n) + " is not a power of two");

    if (const json* cw = top.get("codeword")) {
        Extractor codeword(*cw, "codeword", issues, {"k", "domain"});
        if (codeword.is_object()) {
            long k = cfg.codeword.k;
            codeword.integer("k", k);
            if (k != 0 && k != 1)
                issues.push_back("codeword.k must be 0 or 1");
            else
                cfg.codeword.k = static_cast<int>(k);
            codeword.text("domain", cfg.codeword.domain);
            if (cfg.codeword.domain != "frequency" && cfg.codeword.domain != "time")
                issues.push_back("codeword.domain must be 'frequency' or 'time'");
        }
    }

    if (const json* h = top.get("hom")) {
        Extractor hom(*h, "hom", issues, {"k", "tauMaxOverT0", "points"});
        if (hom.is_object()) {
            long k = cfg.hom.k;
            hom.integer("k", k);
            if (k != 0 && k != 1)
                issues.push_back("hom.k must be 0 or 1");
            else
                cfg.hom.k = static_cast<int>(k);
            hom.number("tauMaxOverT0", cfg.hom.tauMaxOverT0);
            if (!(cfg.hom.tauMaxOverT0 > 0.0))
                issues.push_back("hom.tauMaxOverT0 must be positive");
            hom.integer("points", cfg.hom.points);
            if (cfg.hom.points < 2) issues.push_back("hom.points must be at least 2");
        }
    }
    if (cfg.experiment == "hom-scan" && cfg.params.n != 2)
        issues.push_back("hom-scan requires params.n = 2");

    cfg.rotation.sigmas = {0.5 * cfg.params.omega0, cfg.params.omega0,
                           2.0 * cfg.params.omega0};
    if (const json* r = top.get("rotation")) {
        Extractor rotation(*r, "rotation", issues, {"thetas", "sigmas", "count"});
        if (rotation.is_object()) {
            rotation.number_list("thetas", cfg.rotation.thetas);
            rotation.number_list("sigmas", cfg.rotation.sigmas);
            long count = static_cast<long>(cfg.rotation.count);
            rotation.integer("count", count);
            if (count < 512)
                issues.push_back("rotation.count must be at least 512");
            else
                cfg.rotation.count = static_cast<std::size_t>(count);
        }
    }
    for (double t : cfg.rotation.thetas)
        if (!(std::abs(t) < kPi / 2.0))
            issues.push_back("rotation theta " + std::to_string(t) +
                             " must satisfy |theta| < pi/2");
    for (double s : cfg.rotation.sigmas)
        if (!(s > 0.0))
            issues.push_back("rotation sigma " + std::to_string(s) + " must be positive");

    if (const json* l = top.get("loss")) {
        Extractor loss(*l, "loss", issues, {"scheme", "etas"});
        if (loss.is_object()) {
            std::string scheme = "singleShot";
            loss.text("scheme", scheme);
            if (scheme == "singleShot")
                cfg.loss.scheme = LossScheme::singleShot;
            else if (scheme == "pairwise")
                cfg.loss.scheme = LossScheme::pairwise;
            else
                issues.push_back("loss.scheme must be 'singleShot' or 'pairwise'");
            loss.string_list("etas", cfg.loss.etas);
        }
    }
    if (!cfg.loss.etas.empty()) {
        LossConfig lc;
        lc.n = cfg.params.n;
        lc.scheme = cfg.loss.scheme;
        bool parsed = true;
        for (const auto& s : cfg.loss.etas) {
            try {
                lc.etas.push_back(parse_rational(s));
            } catch (const DomainError& e) {
                issues.push_back(std::string("loss.etas: ") + e.what());
                parsed = false;
            }
        }
        if (parsed) {
            try {
                validate_loss_config(lc);
            } catch (const ValidationError& e) {
                for (const auto& s : e.issues) issues.push_back("loss: " + s);
            } catch (const DomainError& e) {
                issues.push_back(std::string("loss: ") + e.what());
            }
        }
    }

    if (!issues.empty()) throw ValidationError(issues);
    return cfg;
}

std::string effective_dump(const ExperimentConfig& c) {
    json j;
    j["experiment"] = c.experiment;
    j["seed"] = c.seed;
    // The destination is not an experiment parameter; reports must not change
    // with where they are written.
    j["params"] = {{"n", c.params.n},
                   {"omega0", c.params.omega0},
                   {"delta", c.params.delta},
                   {"kappa", c.params.kappa}};
    j["sigmaG"] = c.sigmaG;
    j["grid"] = {{"count", c.grid.count}, {"span", c.grid.span}};
    j["trials"] = c.trials;
    j["syndrome"] = c.syndrome == SyndromeMode::exact ? "exact" : "sampled";
    json fixed = json::array();
    for (const auto& d : c.noise.fixedDisplacements)
        fixed.push_back({{"mode", d.mode}, {"dOmega", d.dOmega}, {"dT", d.dT}});
    j["noise"] = {{"omegaStd", c.noise.perModeOmegaStd},
                  {"timeStd", c.noise.perModeTimeStd},
                  {"activeModes", c.noise.activeModes},
                  {"fixed", fixed}};
    j["deltas"] = c.deltas;
    j["ns"] = c.ns;
    j["codeword"] = {{"k", c.codeword.k}, {"domain", c.codeword.domain}};
    j["hom"] = {{"k", c.hom.k},
                {"tauMaxOverT0", c.hom.tauMaxOverT0},
                {"points", c.hom.points}};
    j["rotation"] = {{"thetas", c.rotation.thetas},
                     {"sigmas", c.rotation.sigmas},
                     {"count", c.rotation.count}};
    j["loss"] = {{"scheme", c.loss.scheme == LossScheme::singleShot ? "singleShot"
                                                                    : "pairwise"},
                 {"etas", c.loss.etas}};
    return j.dump();
}

}  // namespace tfgkp::cli
