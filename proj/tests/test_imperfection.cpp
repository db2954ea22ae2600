#include <doctest.h>

#include <cmath>
#include <utility>

#include "oracles.hpp"
#include "tfgkp/decoder.hpp"
#include "tfgkp/params.hpp"
#include "tfgkp/rotation.hpp"

using namespace tfgkp;

TEST_CASE("rotation parameters are validated together") {
    CHECK_NOTHROW(RotationImperfection{0.3, 1.0}.validate());
    CHECK_NOTHROW(RotationImperfection{-0.3, 1.0}.validate());
    CHECK_THROWS_AS((RotationImperfection{kPi / 2.0, 1.0}.validate()), ValidationError);
    CHECK_THROWS_AS((RotationImperfection{0.3, 0.0}.validate()), ValidationError);
    try {
        RotationImperfection{2.0, -1.0}.validate();
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.issues.size() == 2);
    }
}

TEST_CASE("effective comb shape follows the mixing geometry") {
    const CodeParams p = CodeParams::make(4, 1.0, 0.1, 0.05);
    const RotationImperfection imp{0.2, 1.5};
    const EffectiveCombShape e = rotated_effective_params(imp, p);
    CHECK(e.spacing == doctest::Approx(2.0 * std::cos(0.2)).epsilon(1e-15));
    const double want =
        std::sqrt(0.01 * std::cos(0.2) * std::cos(0.2) + 2.25 * std::sin(0.2) * std::sin(0.2));
    CHECK(e.exactWidth == doctest::Approx(want).epsilon(1e-15));
    CHECK(e.additiveWidth == doctest::Approx(0.1 + 1.5 * std::sin(0.2)).epsilon(1e-15));
    // The additive form over-counts the quadrature combination.
    CHECK(e.additiveWidth > e.exactWidth);

    const EffectiveCombShape z = rotated_effective_params({0.0, 1.0}, p);
    CHECK(z.spacing == 2.0);
    CHECK(z.exactWidth == doctest::Approx(0.1));
    CHECK_THROWS_AS(rotated_effective_params(RotationImperfection{1.6, 1.0}, p),
                    ValidationError);
}

TEST_CASE("verdict splits into negligible, adaptable, broken") {
    const CodeParams p = CodeParams::make(4, 1.0, 0.1, 0.05);
    CHECK(rotation_validity({0.05, 1.0}, p) == RotationVerdict::negligible);
    CHECK(rotation_validity({0.2, 1.0}, p) == RotationVerdict::adaptable);
    CHECK(rotation_validity({1.2, 1.0}, p) == RotationVerdict::broken);
    // A very wide orthogonal mode breaks even a modest angle.
    CHECK(rotation_validity({0.2, 5.0}, p) == RotationVerdict::broken);
}

TEST_CASE("adapted rates trade frequency against time resolution") {
    const CodeParams p = CodeParams::make(4, 1.0, 0.1, 0.05);
    const auto zero = adapted_error_rates({0.0, 1.0}, p);
    CHECK(zero.first == 0.0);
    CHECK(zero.second == 0.0);

    const double theta = 0.2;
    const double tan = std::tan(theta);
    const auto r1 = adapted_error_rates({theta, 1.0}, p);
    CHECK(r1.first == doctest::Approx(closed_form_error(tan, 1.0)).epsilon(1e-15));
    CHECK(r1.second == doctest::Approx(closed_form_error(tan / p.t0, 1.0)).epsilon(1e-15));

    // Frequency rate grows with sigma, time rate shrinks.
    const auto lo = adapted_error_rates({theta, 0.5}, p);
    const auto hi = adapted_error_rates({theta, 2.0}, p);
    CHECK(lo.first < r1.first);
    CHECK(hi.first > r1.first);
    CHECK(lo.second > r1.second);
    CHECK(hi.second < r1.second);

    // Extreme mixing saturates the clamp.
    const auto sat = adapted_error_rates({1.5, 1.0}, p);
    CHECK(sat.first == 1.0 - 1e-12);

    // max(rates) has an interior minimum at sigma = omega0 / sqrt(pi).
    const double sStar = 1.0 / std::sqrt(kPi);
    const auto at = [&](double s) {
        const auto r = adapted_error_rates({theta, s}, p);
        return std::max(r.first, r.second);
    };
    double bestSigma = 0.25, bestVal = at(0.25);
    for (int i = 1; i <= 240; ++i) {
        const double s = 0.25 + (4.0 - 0.25) * static_cast<double>(i) / 240.0;
        const double v = at(s);
        if (v < bestVal) {
            bestVal = v;
            bestSigma = s;
        }
    }
    CHECK(bestSigma > 0.25 + 1e-9);
    CHECK(bestSigma < 4.0 - 1e-9);
    CHECK(bestSigma == doctest::Approx(sStar).epsilon(0.05));
    CHECK(at(0.25) > bestVal);
    CHECK(at(4.0) > bestVal);
}

TEST_CASE("measured marginal recovers spacing and width") {
    const CodeParams p = CodeParams::make(4, 1.0, 0.1, 0.05);

    const MeasuredCombShape clean = measure_rotated_marginal({0.0, 1.0}, p, 4096);
    CHECK(clean.spacing == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(clean.width == doctest::Approx(0.1).epsilon(1e-3));

    const RotationImperfection imp{0.2, 1.0};
    const EffectiveCombShape e = rotated_effective_params(imp, p);
    const MeasuredCombShape got = measure_rotated_marginal(imp, p, 4096);
    const double step = 5.0 * e.spacing / 4096.0;
    CHECK(std::abs(got.spacing - e.spacing) < step);
    CHECK(got.width == doctest::Approx(e.exactWidth).epsilon(0.02));
    // The additive estimate overshoots what is actually measured.
    CHECK(got.width < e.additiveWidth);

    CHECK_THROWS_AS(measure_rotated_marginal({0.1, 1.0}, p, 511), DomainError);
}
