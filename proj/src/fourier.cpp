#include "tfgkp/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace tfgkp {

namespace {
// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

std::vector<cplx> dft(const std::vector<cplx>& in, int sign) {
    const std::size_t n = in.size();
    std::vector<cplx> out(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(
            static_cast<int>(n),
            reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
            reinterpret_cast<fftw_complex*>(out.data()),
            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

Grid1D spectral_transform(const Grid1D& g, int sign) {
    const std::size_t n = g.count();
    const double h = g.step();
    const double dt = 2.0 * kPi / (h * static_cast<double>(n));
    const double tMin = -kPi / h;

    // e^{sign i x_m t_j} = e^{sign i xMin t_j} (-1)^m e^{sign 2 pi i m j / N}
    std::vector<cplx> pre(n);
    for (std::size_t m = 0; m < n; ++m)
        pre[m] = (m % 2 == 0) ? g.values[m] : -g.values[m];
    std::vector<cplx> spec = dft(pre, sign);

    Grid1D out{tMin, tMin + dt * static_cast<double>(n), std::move(spec)};
    const double scale = h / std::sqrt(2.0 * kPi);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = tMin + dt * static_cast<double>(j);
        out.values[j] *= scale * std::polar(1.0, static_cast<double>(sign) * g.xMin * t);
        if (!std::isfinite(out.values[j].real()) || !std::isfinite(out.values[j].imag()))
            throw NumericError("non-finite value in spectral transform output");
    }
    return out;
}

Grid1D to_time_domain(const Grid1D& g) { return spectral_transform(g, +1); }

Grid1D from_time_domain(const Grid1D& g) { return spectral_transform(g, -1); }

}  // namespace tfgkp
