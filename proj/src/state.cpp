#include "tfgkp/state.hpp"

#include <string>

namespace tfgkp {

namespace {

CollectiveState make_base(const CodeParams& params, double sigmaG) {
    if (!(sigmaG > 0.0)) throw DomainError("transverse mode width must be positive");
    CollectiveState st;
    st.frame = build_alpha(params.n);
    st.modes.reserve(static_cast<std::size_t>(params.n));
    st.photonsPresent = params.n;
    return st;
}

}  // namespace

CollectiveState make_codeword(const CodeParams& params, int k, double sigmaG) {
    CollectiveState st = make_base(params, sigmaG);
    st.modes.emplace_back(make_comb(params, k));
    for (long m = 2; m <= params.n; ++m)
        st.modes.emplace_back(make_plain_gaussian(0.0, sigmaG));
    return st;
}

CollectiveState make_ideal_codeword(const CodeParams& params, int k, double sigmaG) {
    CollectiveState st = make_base(params, sigmaG);
    st.modes.emplace_back(make_ideal_lattice(params, k));
    for (long m = 2; m <= params.n; ++m)
        st.modes.emplace_back(make_plain_gaussian(0.0, sigmaG));
    return st;
}

CollectiveState apply_displacement(const CollectiveState& state, const LocalDisplacement& d) {
    if (d.mode < 1 || d.mode > state.frame.n)
        throw DomainError("photon index " + std::to_string(d.mode) + " outside 1.." +
                          std::to_string(state.frame.n));
    if (d.mode == state.lostPhoton)
        throw DomainError("photon " + std::to_string(d.mode) + " was lost");
    CollectiveState out = state;
    const auto mapped = map_local_displacement(state.frame, d);
    for (long k = 1; k <= state.frame.n; ++k) {
        const auto& [shift, slope] = mapped[static_cast<std::size_t>(k - 1)];
        out.mode(k) = displace_1d(state.mode(k), shift, slope);
    }
    return out;
}

CollectiveState apply_displacement(const CollectiveState& state, const CollectiveDisplacement& d) {
    if (d.targetMode < 1 || d.targetMode > state.frame.n)
        throw DomainError("collective mode " + std::to_string(d.targetMode) +
                          " outside 1.." + std::to_string(state.frame.n));
    CollectiveState out = state;
    // D(dOmega, dT) = e^{-i T_hat dOmega} e^{-i Omega_hat dT}: shift +dOmega,
    // phase slope -dT on the target mode.
    out.mode(d.targetMode) = displace_1d(state.mode(d.targetMode), d.dOmega, -d.dT);
    return out;
}

cplx state_overlap(const CollectiveState& a, const CollectiveState& b) {
    if (a.frame.n != b.frame.n) throw DomainError("state dimensions differ");
    cplx acc = std::conj(a.globalPhase) * b.globalPhase;
    for (std::size_t i = 0; i < a.modes.size(); ++i)
        acc *= inner_product(a.modes[i], b.modes[i]);
    return acc;
}

}  // namespace tfgkp
