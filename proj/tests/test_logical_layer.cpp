#include <doctest.h>

#include <cmath>
#include <complex>

#include "tfgkp/logical.hpp"
#include "tfgkp/params.hpp"
#include "tfgkp/rng.hpp"

using namespace tfgkp;

namespace {

const CodeParams kP2 = CodeParams::make(2, 1.0, 0.1, 0.05);
const CodeParams kP4 = CodeParams::make(4, 1.0, 0.1, 0.05);

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("code_omega0 reads the carrier lattice") {
    CHECK(code_omega0(make_codeword(kP4, 0, 1.0)) == doctest::Approx(1.0));
    CHECK(code_omega0(make_ideal_codeword(kP4, 1, 1.0)) == doctest::Approx(1.0));
    CollectiveState st = make_codeword(kP2, 0, 1.0);
    st.mode(1) = make_plain_gaussian(0.0, 1.0);
    CHECK_THROWS_AS(code_omega0(st), DomainError);
}

TEST_CASE("logical operators move the tracked mode-1 state as displacements") {
    const CollectiveState st = make_codeword(kP4, 0, 1.0);

    const CollectiveState x = apply_logical(st, LogicalOp::x());
    CHECK(tracked_shift(x.mode(1)) == doctest::Approx(1.0));
    CHECK(tracked_slope(x.mode(1)) == doctest::Approx(0.0));

    const CollectiveState z = apply_logical(st, LogicalOp::z());
    CHECK(tracked_shift(z.mode(1)) == doctest::Approx(0.0));
    CHECK(tracked_slope(z.mode(1)) == doctest::Approx(-kP4.t0));

    const CollectiveState sx = apply_logical(st, LogicalOp::sx());
    CHECK(tracked_shift(sx.mode(1)) == doctest::Approx(2.0));
    const CollectiveState sz = apply_logical(st, LogicalOp::sz());
    CHECK(tracked_slope(sz.mode(1)) == doctest::Approx(-2.0 * kP4.t0));

    // Y = i Z X.
    const CollectiveState y = apply_logical(st, LogicalOp::y());
    const CollectiveState zx = apply_logical(x, LogicalOp::z());
    CHECK(tracked_shift(y.mode(1)) == doctest::Approx(tracked_shift(zx.mode(1))));
    CHECK(tracked_slope(y.mode(1)) == doctest::Approx(tracked_slope(zx.mode(1))));
    CHECK(close(y.globalPhase, cplx(0.0, 1.0) * zx.globalPhase, 1e-12));

    // Xj: local shift sqrt(n) omega0 lands +omega0 on the carrier.
    for (long j = 1; j <= 4; ++j) {
        const CollectiveState xj = apply_logical(st, LogicalOp::xj(j));
        CHECK(tracked_shift(xj.mode(1)) == doctest::Approx(1.0));
        for (long k = 2; k <= 4; ++k)
            CHECK(std::abs(tracked_shift(xj.mode(k))) == doctest::Approx(1.0));
    }
}

TEST_CASE("loss-detection operators add presence phases") {
    const CollectiveState st = make_codeword(kP4, 0, 1.0);

    const CollectiveState sj = apply_logical(st, LogicalOp::sj(2, 0.125));
    CHECK(tracked_slope(sj.mode(1)) == doctest::Approx(-2.0 * kP4.t0));
    // Row 2 of the n=4 frame alternates sign, so mode 2 gets the opposite slope.
    CHECK(tracked_slope(sj.mode(2)) == doctest::Approx(2.0 * kP4.t0));
    // e^{2 pi i eta sqrt(n)} with eta sqrt(n) = 1/4.
    CHECK(close(sj.globalPhase, cplx(0.0, 1.0), 1e-12));

    const std::vector<double> etas{0.125, 0.25, 0.375, 0.75};
    const CollectiveState sg = apply_logical(st, LogicalOp::sglobal(etas));
    CHECK(tracked_slope(sg.mode(1)) == doctest::Approx(-4.0 * kP4.t0));
    for (long k = 2; k <= 4; ++k) CHECK(tracked_slope(sg.mode(k)) == 0.0);
    // e^{i pi sqrt(4) * 1.5} = e^{3 pi i} = -1.
    CHECK(close(sg.globalPhase, cplx(-1.0, 0.0), 1e-12));

    CHECK_THROWS_AS(apply_logical(st, LogicalOp::sglobal({0.1, 0.2})), DomainError);
}

TEST_CASE("stabilizers have exact eigenvalues on ideal codewords") {
    for (const int k : {0, 1}) {
        const CollectiveState st = make_ideal_codeword(kP4, k, 1.0);
        CHECK(close(stabilizer_expectation(st, LogicalOp::sx()), cplx(1.0), 1e-12));
        CHECK(close(stabilizer_expectation(st, LogicalOp::sz()), cplx(1.0), 1e-12));
        // Z resolves the logical index; X maps onto the orthogonal codeword.
        const cplx zv = stabilizer_expectation(st, LogicalOp::z());
        CHECK(close(zv, k == 0 ? cplx(1.0) : cplx(-1.0), 1e-12));
        CHECK(std::abs(stabilizer_expectation(st, LogicalOp::x())) < 1e-12);
    }
}

TEST_CASE("finite-width stabilizer values match the comb envelope factors") {
    const CollectiveState st = make_codeword(kP2, 0, 1.0);

    const cplx sz = stabilizer_expectation(st, LogicalOp::sz());
    CHECK(std::abs(sz) == doctest::Approx(0.969070).epsilon(1e-4));
    CHECK(std::abs(std::arg(sz)) < 1e-10);

    const cplx sx = stabilizer_expectation(st, LogicalOp::sx());
    const double env = 1.0 / (std::sqrt(2.0) * kP2.kappa);
    CHECK(std::abs(sx) == doctest::Approx(std::exp(-4.0 / (4.0 * env * env))).epsilon(1e-3));
    CHECK(std::abs(sx) < 1.0);
}

TEST_CASE("parity readout counts lattice bins") {
    Rng rng(31);
    const CollectiveState even = make_ideal_codeword(kP4, 0, 1.0);
    const ReadoutResult r0 = logical_readout(even, rng, 500);
    CHECK(r0.shots == 500);
    CHECK(r0.evenCount == 500);
    CHECK(r0.evenFrequency == doctest::Approx(1.0));

    const ReadoutResult r1 = logical_readout(make_ideal_codeword(kP4, 1, 1.0), rng, 500);
    CHECK(r1.oddCount == 500);

    const CollectiveState fin = make_codeword(kP2, 0, 1.0);
    const ReadoutResult rf = logical_readout(fin, rng, 2000);
    CHECK(rf.evenCount == 2000);
    const ReadoutResult rx =
        logical_readout(apply_logical(fin, LogicalOp::x()), rng, 2000);
    CHECK(rx.oddCount == 2000);

    CHECK_THROWS_AS(logical_readout(fin, rng, 0), DomainError);
}

TEST_CASE("two-photon coincidence vanishes at zero delay and dips at revivals") {
    const CollectiveState st = make_codeword(kP2, 0, 1.0);
    CHECK(hom_coincidence(st, 0.0) < 1e-9);
    CHECK(hom_coincidence(make_codeword(kP2, 1, 1.0), 0.0) < 1e-9);

    const double dip1 = kP2.t0 / std::sqrt(2.0);
    CHECK(hom_coincidence(st, dip1) < 0.1);
    CHECK(hom_coincidence(st, 0.5 * dip1) == doctest::Approx(0.5).epsilon(0.05));

    CHECK_THROWS_AS(hom_coincidence(make_codeword(kP4, 0, 1.0), 0.0), DomainError);
}
