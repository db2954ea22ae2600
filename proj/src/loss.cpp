#include "tfgkp/loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "tfgkp/wavefunction.hpp"

namespace tfgkp {

namespace {

using Rat = boost::rational<long>;

bool square_root_of(long n, long& r) {
    r = std::llround(std::sqrt(static_cast<double>(n)));
    return r * r == n;
}

double angular_distance(double a, double b) {
    return std::abs(centered_mod(a - b, 2.0 * kPi));
}

bool is_integer(const Rat& x) { return x.denominator() == 1; }

bool is_even_integer(const Rat& x) {
    return x.denominator() == 1 && x.numerator() % 2 == 0;
}

std::string rat_str(const Rat& x) {
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

// Greedy lexicographic numerator search on the denominator-q grid.
bool search_single_shot(long n, long r, long q, std::vector<Rat>& out) {
    const long period = 2 * q;
    const long cap = 8 * q + n;
    std::set<long> used;
    std::vector<long> ps;
    long sum = 0;
    for (long i = 0; i < n; ++i) {
        bool found = false;
        for (long p = ps.empty() ? 1 : ps.back() + 1; p <= cap; ++p) {
            const long res = (r * p) % period;
            if (res == 0 || used.count(res)) continue;
            if (i == n - 1 && (r * (sum + p)) % q != 0) continue;
            ps.push_back(p);
            used.insert(res);
            sum += p;
            found = true;
            break;
        }
        if (!found) return false;
    }
    out.clear();
    for (long p : ps) out.emplace_back(p, q);
    return true;
}

bool search_pairwise(long n, long r, long q, std::vector<Rat>& out) {
    const long cap = 8 * q + n;
    std::vector<long> ps;
    for (long i = 0; i < n; ++i) {
        bool found = false;
        for (long p = 1; p <= cap; ++p) {
            if ((r * p) % q == 0) continue;
            if (i > 0 && (r * (ps.back() + p)) % q != 0) continue;
            ps.push_back(p);
            found = true;
            break;
        }
        if (!found) return false;
    }
    out.clear();
    for (long p : ps) out.emplace_back(p, q);
    return true;
}

double detection_angle(const Rat& eta, double rootN) {
    return -kPi * rootN * boost::rational_cast<double>(eta);
}

double firing_angle(const Rat& eta, double rootN) {
    return -2.0 * kPi * rootN * boost::rational_cast<double>(eta);
}

}  // namespace

std::vector<double> LossConfig::eta_values() const {
    std::vector<double> v;
    v.reserve(etas.size());
    for (const auto& e : etas) v.push_back(boost::rational_cast<double>(e));
    return v;
}

LossConfig build_eta_config(long n, LossScheme scheme) {
    if (n < 1 || !is_power_of_two(n))
        throw DomainError("photon count must be a power of two");
    LossConfig cfg;
    cfg.n = n;
    cfg.scheme = scheme;
    if (n == 1) {
        cfg.etas = {Rat(1)};
        validate_loss_config(cfg);
        return cfg;
    }
    long r = 0;
    if (square_root_of(n, r)) {
        std::vector<long> grid = {1, 2, 4, 8, 16};
        for (long q = 17; q <= 256; ++q) grid.push_back(q);
        for (long q : grid) {
            const bool ok = scheme == LossScheme::singleShot
                                ? search_single_shot(n, r, q, cfg.etas)
                                : search_pairwise(n, r, q, cfg.etas);
            if (ok) {
                validate_loss_config(cfg);
                return cfg;
            }
        }
        throw DomainError("eta search budget exhausted for n = " + std::to_string(n));
    }
    // Irrational sqrt(n): integer constraints force exact rational cancellation.
    if (scheme == LossScheme::singleShot) {
        const long q = std::min<long>(n, 16);
        for (long j = 1; j < n; ++j) cfg.etas.emplace_back(j, q);
        cfg.etas.emplace_back(-n * (n - 1) / 2, q);
    } else {
        for (long j = 0; j < n; ++j) cfg.etas.emplace_back(j % 2 == 0 ? 1 : -1, 4);
    }
    validate_loss_config(cfg);
    return cfg;
}

void validate_loss_config(const LossConfig& config) {
    std::vector<std::string> issues;
    if (config.n < 1 || !is_power_of_two(config.n))
        issues.push_back("photon count must be a power of two");
    if (static_cast<long>(config.etas.size()) != config.n)
        issues.push_back("eta vector length " + std::to_string(config.etas.size()) +
                         " does not match n = " + std::to_string(config.n));
    if (!issues.empty()) throw ValidationError(issues);

    long r = 0;
    const bool square = square_root_of(config.n, r);
    const double rootN = std::sqrt(static_cast<double>(config.n));
    const auto& e = config.etas;

    if (config.scheme == LossScheme::singleShot) {
        Rat sum(0);
        for (const auto& x : e) sum += x;
        const bool sumOk = square ? is_integer(sum * r) : sum == Rat(0);
        if (!sumOk)
            issues.push_back("single-shot sum condition fails: sum = " + rat_str(sum));
        for (std::size_t j = 0; j < e.size(); ++j) {
            const bool unit = square ? is_even_integer(e[j] * r) : e[j] == Rat(0);
            if (unit)
                issues.push_back("eta " + std::to_string(j + 1) +
                                 " has undetectable unit phase");
            for (std::size_t i = 0; i < j; ++i) {
                const bool equal =
                    square ? is_even_integer((e[j] - e[i]) * r) : e[j] == e[i];
                if (equal)
                    issues.push_back("etas " + std::to_string(i + 1) + " and " +
                                     std::to_string(j + 1) + " share a phase");
            }
        }
        for (std::size_t j = 0; j < e.size() && config.n > 1; ++j) {
            const double aj = detection_angle(e[j], rootN);
            double sep = angular_distance(aj, 0.0);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i != j) sep = std::min(sep, angular_distance(aj, detection_angle(e[i], rootN)));
            if (sep <= 1e-6)
                issues.push_back("phase separation below 1e-6 rad at eta " +
                                 std::to_string(j + 1));
        }
    } else {
        for (std::size_t j = 0; j + 1 < e.size(); ++j) {
            const Rat pair = e[j] + e[j + 1];
            const bool ok = square ? is_integer(pair * r) : pair == Rat(0);
            if (!ok)
                issues.push_back("pairwise condition fails at pair (" +
                                 std::to_string(j + 1) + "," + std::to_string(j + 2) +
                                 "): sum = " + rat_str(pair));
        }
        for (std::size_t j = 0; j < e.size(); ++j) {
            const bool unit = square ? is_integer(e[j] * r) : e[j] == Rat(0);
            if (unit)
                issues.push_back("eta " + std::to_string(j + 1) +
                                 " has a non-firing pair phase");
        }
    }
    if (!issues.empty()) throw ValidationError(issues);
}

CollectiveState apply_photon_loss(const CollectiveState& state, long j) {
    const long n = state.frame.n;
    if (n < 2) throw DomainError("cannot lose the only photon");
    if (j < 1 || j > n)
        throw DomainError("photon " + std::to_string(j) + " outside 1.." + std::to_string(n));
    if (state.photonsPresent != n)
        throw DomainError("single-loss model: a photon was already lost");

    const double r = std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n));
    CollectiveState out = state;
    out.photonsPresent = n - 1;
    out.lostPhoton = j;

    if (const auto* c = std::get_if<AnalyticComb>(&state.mode(1))) {
        const auto* g = std::get_if<PlainGaussian>(&state.mode(2));
        if (g == nullptr)
            throw DomainError("orthogonal mode width unavailable for loss update");
        AnalyticComb cc = *c;
        cc.spacing *= r;
        cc.offset *= r;
        cc.shift *= r;
        cc.phaseSlope *= r;
        cc.envWidth *= r;
        cc.peakWidth = std::sqrt(cc.peakWidth * cc.peakWidth * r * r +
                                 g->width * g->width / static_cast<double>(n));
        cc.normConst = 1.0;
        const double nrm = std::real(
            inner_product(ModeWavefunction{cc}, ModeWavefunction{cc}));
        cc.normConst = 1.0 / std::sqrt(nrm);
        out.modes[0] = cc;
        return out;
    }
    if (const auto* l = std::get_if<IdealLattice>(&state.mode(1))) {
        IdealLattice ll = *l;
        ll.spacing *= r;
        ll.offset *= r;
        ll.shift *= r;
        ll.phaseSlope *= r;
        out.modes[0] = ll;
        return out;
    }
    throw DomainError("photon loss supported for comb or ideal mode-1 states");
}

LossSyndrome decode_loss_phase(const CollectiveState& state, const LossConfig& config) {
    if (config.n != state.frame.n)
        throw DomainError("config photon count does not match the state");
    validate_loss_config(config);
    const double rootN = std::sqrt(static_cast<double>(config.n));
    const long lost = state.photonsPresent == config.n ? 0 : state.lostPhoton;

    if (config.scheme == LossScheme::singleShot) {
        cplx phase{1.0, 0.0};
        if (lost != 0)
            phase = std::polar(1.0, detection_angle(config.etas[static_cast<std::size_t>(lost - 1)], rootN));
        return match_loss_phase(phase, config);
    }

    // Pairwise chain: pair j couples photons (j, j+1); a lost member turns the
    // pair's eigenvalue into the firing phase, all other pairs stay at 1.
    const long pairs = config.n - 1;
    std::vector<double> measured(static_cast<std::size_t>(pairs), 0.0);
    if (lost != 0) {
        for (long p = 1; p <= pairs; ++p)
            if (lost == p || lost == p + 1)
                measured[static_cast<std::size_t>(p - 1)] =
                    firing_angle(config.etas[static_cast<std::size_t>(lost - 1)], rootN);
    }

    const auto score = [&](long hypothesis) {
        double worst = 0.0;
        for (long p = 1; p <= pairs; ++p) {
            double expected = 0.0;
            if (hypothesis != 0 && (hypothesis == p || hypothesis == p + 1))
                expected = firing_angle(config.etas[static_cast<std::size_t>(hypothesis - 1)], rootN);
            worst = std::max(worst, angular_distance(measured[static_cast<std::size_t>(p - 1)], expected));
        }
        return worst;
    };

    long best = 0, second = 0;
    double bestScore = score(0), secondScore = std::numeric_limits<double>::infinity();
    for (long h = 1; h <= config.n; ++h) {
        const double s = score(h);
        if (s < bestScore) {
            second = best;
            secondScore = bestScore;
            best = h;
            bestScore = s;
        } else if (s < secondScore) {
            second = h;
            secondScore = s;
        }
    }
    if (secondScore - bestScore < 1e-9)
        throw DomainError("ambiguous loss decode between photons " + std::to_string(best) +
                          " and " + std::to_string(second));
    LossSyndrome syn;
    syn.decodedMode = best;
    syn.confidence = secondScore - bestScore;
    syn.phase = {1.0, 0.0};
    for (double m : measured)
        if (angular_distance(m, 0.0) > 1e-9) {
            syn.phase = std::polar(1.0, m);
            break;
        }
    return syn;
}

LossSyndrome match_loss_phase(cplx phase, const LossConfig& config) {
    if (config.scheme != LossScheme::singleShot)
        throw DomainError("phase matching applies to single-shot configs");
    if (std::abs(std::abs(phase) - 1.0) > 1e-10)
        throw DomainError("loss phase must have unit modulus");
    const double rootN = std::sqrt(static_cast<double>(config.n));
    const double a = std::arg(phase);

    std::vector<double> dist(config.etas.size());
    for (std::size_t j = 0; j < config.etas.size(); ++j)
        dist[j] = angular_distance(a, detection_angle(config.etas[j], rootN));

    LossSyndrome syn;
    syn.phase = phase;
    if (angular_distance(a, 0.0) <= 1e-9) {
        syn.decodedMode = 0;
        syn.confidence = *std::min_element(dist.begin(), dist.end());
        return syn;
    }
    std::size_t best = 0, second = 0;
    for (std::size_t j = 1; j < dist.size(); ++j) {
        if (dist[j] < dist[best]) {
            second = best;
            best = j;
        } else if (dist[j] < dist[second] || second == best) {
            second = j;
        }
    }
    if (dist.size() > 1 && dist[second] - dist[best] < 1e-9)
        throw DomainError("ambiguous loss phase between photons " +
                          std::to_string(best + 1) + " and " + std::to_string(second + 1));
    syn.decodedMode = static_cast<long>(best + 1);
    const double altNone = angular_distance(a, 0.0);
    const double altMode = dist.size() > 1 ? dist[second] : altNone;
    syn.confidence = std::min(altNone, altMode) - dist[best];
    return syn;
}

CodeParams adapt_after_loss(const CodeParams& params) {
    if (params.n < 2) throw DomainError("adaptation needs at least two photons");
    const double scale =
        static_cast<double>(params.n - 1) / static_cast<double>(params.n);
    return CodeParams::make_adapted(params.n - 1, params.omega0 * scale, params.delta,
                                    params.kappa);
}

cplx adapted_stabilizer_eigenvalue(const CollectiveState& lossyState, double t) {
    const long n = lossyState.frame.n;
    if (lossyState.photonsPresent != n - 1)
        throw DomainError("adapted stabilizer applies to single-loss states");
    const double r = std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n));
    return modulation_expectation(lossyState.mode(1), 2.0 * r * t);
}

}  // namespace tfgkp
