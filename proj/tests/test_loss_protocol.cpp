#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "tfgkp/logical.hpp"
#include "tfgkp/loss.hpp"
#include "tfgkp/params.hpp"

using namespace tfgkp;

namespace {

using Rat = boost::rational<long>;

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("generated single-shot eta vectors take the smallest feasible grid") {
    const LossConfig c4 = build_eta_config(4, LossScheme::singleShot);
    REQUIRE(c4.etas.size() == 4);
    CHECK(c4.etas[0] == Rat(1, 8));
    CHECK(c4.etas[1] == Rat(1, 4));
    CHECK(c4.etas[2] == Rat(3, 8));
    CHECK(c4.etas[3] == Rat(3, 4));

    const LossConfig c16 = build_eta_config(16, LossScheme::singleShot);
    REQUIRE(c16.etas.size() == 16);
    for (long j = 0; j < 16; ++j) CHECK(c16.etas[static_cast<std::size_t>(j)] == Rat(j + 1, 17));

    // Irrational sqrt(n): the sum cancels exactly.
    const LossConfig c2 = build_eta_config(2, LossScheme::singleShot);
    CHECK(c2.etas[0] == Rat(1, 2));
    CHECK(c2.etas[1] == Rat(-1, 2));
    const LossConfig c8 = build_eta_config(8, LossScheme::singleShot);
    Rat sum8(0);
    for (const auto& e : c8.etas) sum8 += e;
    CHECK(sum8 == Rat(0));

    CHECK_THROWS_AS(build_eta_config(3, LossScheme::singleShot), DomainError);
    CHECK_THROWS_AS(build_eta_config(0, LossScheme::singleShot), DomainError);
}

TEST_CASE("generated pairwise eta vectors share one firing phase") {
    const LossConfig c4 = build_eta_config(4, LossScheme::pairwise);
    REQUIRE(c4.etas.size() == 4);
    for (const auto& e : c4.etas) CHECK(e == Rat(1, 4));

    const LossConfig c16 = build_eta_config(16, LossScheme::pairwise);
    for (const auto& e : c16.etas) CHECK(e == Rat(1, 8));

    const LossConfig c2 = build_eta_config(2, LossScheme::pairwise);
    CHECK(c2.etas[0] == Rat(1, 4));
    CHECK(c2.etas[1] == Rat(-1, 4));
}

TEST_CASE("config validation reports each violated constraint") {
    LossConfig bad;
    bad.n = 4;
    bad.scheme = LossScheme::singleShot;
    bad.etas = {Rat(1, 8), Rat(1, 8), Rat(3, 8), Rat(6, 8)};
    // Duplicate detection phase and a broken sum condition.
    try {
        validate_loss_config(bad);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.issues.size() >= 2);
    }

    LossConfig one;
    one.n = 4;
    one.scheme = LossScheme::singleShot;
    one.etas = {Rat(1), Rat(1, 8), Rat(3, 8), Rat(1, 2)};
    // eta = 1 gives detection phase e^{-2 pi i} = 1: undetectable.
    CHECK_THROWS_AS(validate_loss_config(one), ValidationError);

    LossConfig sized;
    sized.n = 4;
    sized.etas = {Rat(1, 8)};
    CHECK_THROWS_AS(validate_loss_config(sized), ValidationError);

    LossConfig pair;
    pair.n = 4;
    pair.scheme = LossScheme::pairwise;
    pair.etas = {Rat(1, 4), Rat(1, 3), Rat(1, 4), Rat(1, 4)};
    CHECK_THROWS_AS(validate_loss_config(pair), ValidationError);

    CHECK_NOTHROW(validate_loss_config(build_eta_config(4, LossScheme::singleShot)));
}

TEST_CASE("photon loss rescales the carrier and bookkeeping") {
    const CodeParams p = CodeParams::make(4, 1.0, 0.2, 0.1);
    const double r = std::sqrt(3.0 / 4.0);
    const CollectiveState st = make_codeword(p, 1, 0.7);
    const CollectiveState lossy = apply_photon_loss(st, 2);

    CHECK(lossy.photonsPresent == 3);
    CHECK(lossy.lostPhoton == 2);
    const auto* c = std::get_if<AnalyticComb>(&lossy.mode(1));
    REQUIRE(c != nullptr);
    const auto* c0 = std::get_if<AnalyticComb>(&st.mode(1));
    CHECK(c->spacing == doctest::Approx(c0->spacing * r));
    CHECK(c->offset == doctest::Approx(c0->offset * r));
    CHECK(c->envWidth == doctest::Approx(c0->envWidth * r));
    const double want =
        std::sqrt(c0->peakWidth * c0->peakWidth * r * r + 0.7 * 0.7 / 4.0);
    CHECK(c->peakWidth == doctest::Approx(want));
    CHECK(std::abs(inner_product(lossy.mode(1), lossy.mode(1)) - cplx(1.0)) < 1e-9);
    // Transverse modes are untouched.
    const auto* g = std::get_if<PlainGaussian>(&lossy.mode(2));
    REQUIRE(g != nullptr);
    CHECK(g->width == 0.7);

    // Tracked displacements scale with the variable change.
    const CollectiveState moved =
        apply_photon_loss(apply_displacement(st, CollectiveDisplacement{0.3, -0.1, 1}), 2);
    const auto* cm = std::get_if<AnalyticComb>(&moved.mode(1));
    CHECK(cm->shift == doctest::Approx(0.3 * r));
    CHECK(cm->phaseSlope == doctest::Approx(0.1 * r));

    const CollectiveState ideal = apply_photon_loss(make_ideal_codeword(p, 0, 1.0), 4);
    const auto* l = std::get_if<IdealLattice>(&ideal.mode(1));
    REQUIRE(l != nullptr);
    CHECK(l->spacing == doctest::Approx(2.0 * r));

    CHECK_THROWS_AS(apply_photon_loss(make_codeword(CodeParams::make(1, 1.0, 0.1, 0.05), 0, 1.0), 1),
                    DomainError);
    CHECK_THROWS_AS(apply_photon_loss(st, 0), DomainError);
    CHECK_THROWS_AS(apply_photon_loss(st, 5), DomainError);
    CHECK_THROWS_AS(apply_photon_loss(lossy, 1), DomainError);
    CHECK_THROWS_AS(apply_displacement(lossy, LocalDisplacement{2, 0.1, 0.0}), DomainError);
}

// The pure-state loss model matches the traced density only while broadened
// peaks stay resolved; sigmaG is kept small so coherent cross terms sit below
// the comparison tolerance.
TEST_CASE("post-loss marginal equals the traced-out two-photon density") {
    const CodeParams p = CodeParams::make(2, 1.0, 0.2, 0.1);
    const double sigmaG = 0.2;
    const CollectiveState st = make_codeword(p, 0, sigmaG);
    const CollectiveState lossy = apply_photon_loss(st, 1);

    const ModeWavefunction& f = st.mode(1);
    const ModeWavefunction& g = st.mode(2);
    const auto reduced = [&](double w2) {
        return oracle::simpson(
            [&](double w1) {
                const double sum = (w1 + w2) / std::sqrt(2.0);
                const double diff = (w1 - w2) / std::sqrt(2.0);
                return std::norm(evaluate(f, sum)) * std::norm(evaluate(g, diff));
            },
            -30.0, 30.0, 6000);
    };

    const double r0 = reduced(0.0);
    REQUIRE(r0 > 0.0);
    for (const double x : {0.11, 0.4, std::sqrt(2.0), 2.0 * std::sqrt(2.0) + 0.15}) {
        const double want = reduced(x) / r0;
        const double got = std::norm(evaluate(lossy.mode(1), x)) /
                           std::norm(evaluate(lossy.mode(1), 0.0));
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("single-shot decode pins the detection phases and survives displacements") {
    const CodeParams p = CodeParams::make(4, 1.0, 0.1, 0.05);
    const LossConfig cfg = build_eta_config(4, LossScheme::singleShot);
    const CollectiveState st = make_ideal_codeword(p, 0, 1.0);

    const LossSyndrome s2 = decode_loss_phase(apply_photon_loss(st, 2), cfg);
    CHECK(close(s2.phase, std::polar(1.0, -kPi / 2.0), 1e-12));
    CHECK(s2.decodedMode == 2);
    CHECK(s2.confidence > 0.0);

    const LossSyndrome s3 = decode_loss_phase(apply_photon_loss(st, 3), cfg);
    CHECK(close(s3.phase, std::polar(1.0, -3.0 * kPi / 4.0), 1e-12));
    CHECK(s3.decodedMode == 3);

    // Every mode, with an arbitrary correctable displacement applied first.
    for (long j = 1; j <= 4; ++j) {
        const CollectiveState moved = apply_displacement(
            st, LocalDisplacement{j, 0.31, -0.12});
        CHECK(decode_loss_phase(apply_photon_loss(moved, j), cfg).decodedMode == j);
    }

    // Unlossed states never fire, displaced or not.
    CHECK(decode_loss_phase(st, cfg).decodedMode == 0);
    const CollectiveState moved =
        apply_displacement(st, CollectiveDisplacement{0.4, 0.2, 1});
    CHECK(decode_loss_phase(moved, cfg).decodedMode == 0);

    CHECK_THROWS_AS(decode_loss_phase(st, build_eta_config(2, LossScheme::singleShot)),
                    DomainError);
}

TEST_CASE("pairwise decode separates interior and edge losses") {
    const CodeParams p = CodeParams::make(4, 1.0, 0.1, 0.05);
    const LossConfig cfg = build_eta_config(4, LossScheme::pairwise);
    const CollectiveState st = make_ideal_codeword(p, 0, 1.0);
    for (long j = 1; j <= 4; ++j) {
        const LossSyndrome s = decode_loss_phase(apply_photon_loss(st, j), cfg);
        CHECK(s.decodedMode == j);
        CHECK(s.confidence > 0.0);
        // The firing phase for eta = 1/4 at n = 4 is e^{-i pi}.
        CHECK(close(s.phase, cplx(-1.0, 0.0), 1e-12));
    }
    CHECK(decode_loss_phase(st, cfg).decodedMode == 0);
}

TEST_CASE("phase matching flags ambiguity and rejects bad inputs") {
    const LossConfig cfg = build_eta_config(4, LossScheme::singleShot);
    const LossSyndrome ok = match_loss_phase(std::polar(1.0, -kPi / 4.0), cfg);
    CHECK(ok.decodedMode == 1);

    CHECK_THROWS_AS(match_loss_phase(std::polar(1.0, -3.0 * kPi / 8.0), cfg), DomainError);
    CHECK_THROWS_AS(match_loss_phase(cplx(0.5, 0.0), cfg), DomainError);
    CHECK_THROWS_AS(match_loss_phase(cplx(1.0, 0.0), build_eta_config(4, LossScheme::pairwise)),
                    DomainError);

    const LossSyndrome none = match_loss_phase(cplx(1.0, 0.0), cfg);
    CHECK(none.decodedMode == 0);
    CHECK(none.confidence > 0.0);
}

TEST_CASE("global stabilizer phases reproduce the analytic detection ratio") {
    const CodeParams p = CodeParams::make(4, 1.0, 0.1, 0.05);
    const LossConfig cfg = build_eta_config(4, LossScheme::singleShot);
    const std::vector<double> etas = cfg.eta_values();
    const CollectiveState st = make_ideal_codeword(p, 0, 1.0);
    const cplx intact = apply_logical(st, LogicalOp::sglobal(etas)).globalPhase;
    for (long j = 1; j <= 4; ++j) {
        const CollectiveState lossy = apply_photon_loss(st, j);
        const cplx after = apply_logical(lossy, LogicalOp::sglobal(etas)).globalPhase;
        const cplx ratio = after / intact;
        CHECK(close(ratio, decode_loss_phase(lossy, cfg).phase, 1e-12));
    }
}

TEST_CASE("parameter adaptation rescales the lattice dual pair") {
    const CodeParams p = CodeParams::make(4, 1.0, 0.1, 0.05);
    const CodeParams a = adapt_after_loss(p);
    CHECK(a.n == 3);
    CHECK(a.omega0 == doctest::Approx(0.75));
    CHECK(a.t0 == doctest::Approx(4.0 * p.t0 / 3.0));
    CHECK(a.delta == p.delta);
    CHECK_THROWS_AS(adapt_after_loss(CodeParams::make(1, 1.0, 0.1, 0.05)), DomainError);
}

TEST_CASE("adapted stabilizer is exactly satisfied, the original is not") {
    for (const long n : {2L, 4L, 16L}) {
        const CodeParams p = CodeParams::make(n, 1.0, 0.1, 0.05);
        const double tAdapted = static_cast<double>(n) * p.t0 / static_cast<double>(n - 1);
        for (const int k : {0, 1}) {
            const CollectiveState lossy =
                apply_photon_loss(make_ideal_codeword(p, k, 1.0), 1);
            const cplx eig = adapted_stabilizer_eigenvalue(lossy, tAdapted);
            CHECK(std::abs(std::arg(eig)) < 1e-12);
            CHECK(std::abs(eig) == doctest::Approx(1.0));
        }
        const CollectiveState fin = apply_photon_loss(make_codeword(p, 0, 1.0), 1);
        const cplx eigF = adapted_stabilizer_eigenvalue(fin, tAdapted);
        CHECK(std::abs(std::arg(eigF)) < 1e-12);
        CHECK(std::abs(eigF) > 0.0);
        CHECK(std::abs(eigF) < 1.0);
        // The unadapted period misses the rescaled lattice for n > 2.
        if (n > 2) {
            const CollectiveState idl = apply_photon_loss(make_ideal_codeword(p, 0, 1.0), 1);
            CHECK(std::abs(adapted_stabilizer_eigenvalue(idl, p.t0)) < 1e-12);
        }

        // A finite comb is never exactly stabilized by the doubled-period
        // displacement: the peak-width envelope keeps |<Sz>| below one.
        CHECK(std::abs(stabilizer_expectation(fin, LogicalOp::sz())) < 1.0);
    }
    const CodeParams p = CodeParams::make(2, 1.0, 0.1, 0.05);
    CHECK_THROWS_AS(adapted_stabilizer_eigenvalue(make_codeword(p, 0, 1.0), p.t0),
                    DomainError);
}
