#include "tfgkp/params.hpp"

#include <cmath>

#include "tfgkp/common.hpp"

namespace tfgkp {

namespace {
CodeParams build(long n, double omega0, double delta, double kappa, bool requirePow2) {
    std::vector<std::string> issues;
    if (requirePow2 && !is_power_of_two(n))
        issues.push_back("n must be a power of two, got " + std::to_string(n));
    if (!requirePow2 && n < 1)
        issues.push_back("n must be >= 1, got " + std::to_string(n));
    if (!(omega0 > 0.0))
        issues.push_back("omega0 must be > 0, got " + std::to_string(omega0));
    if (!(delta > 0.0))
        issues.push_back("delta must be > 0, got " + std::to_string(delta));
    else if (omega0 > 0.0 && !(delta < omega0))
        issues.push_back("delta must be < omega0, got delta=" + std::to_string(delta) +
                         " omega0=" + std::to_string(omega0));
    if (!(kappa > 0.0))
        issues.push_back("kappa must be > 0, got " + std::to_string(kappa));
    else if (omega0 > 0.0 && !(kappa * omega0 < 1.0))
        issues.push_back("kappa * omega0 must be < 1, got " + std::to_string(kappa * omega0));
    if (!issues.empty()) throw ValidationError(std::move(issues));

    CodeParams p;
    p.n = n;
    p.omega0 = omega0;
    p.delta = delta;
    p.kappa = kappa;
    p.t0 = kPi / omega0;
    return p;
}
}  // namespace

CodeParams CodeParams::make(long n, double omega0, double delta, double kappa) {
    return build(n, omega0, delta, kappa, true);
}

CodeParams CodeParams::make_adapted(long n, double omega0, double delta, double kappa) {
    return build(n, omega0, delta, kappa, false);
}

std::vector<std::string> CodeParams::warnings() const {
    std::vector<std::string> w;
    if (kappa * omega0 > 0.5)
        w.push_back("kappa * omega0 = " + std::to_string(kappa * omega0) +
                    " exceeds 0.5; envelope and peak scales poorly separated");
    return w;
}

}  // namespace tfgkp
