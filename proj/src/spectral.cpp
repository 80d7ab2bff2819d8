// src/spectral.cpp

#include "lle/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "lle/error.hpp"

namespace lle::spectral {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe; execution with new-array execute is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

std::vector<cplx> fft(const std::vector<cplx>& in, int sign) {
    std::vector<cplx> out(in.size());
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(plan_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(in.size()), src, dst, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

double l2sq(const std::vector<cplx>& c) {
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    return s;
}

// Golden-section minimization of g on [a, b].
template <class G>
double golden(G&& g, double a, double b, int iters = 80) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), d = a + r * (b - a);
    double gc = g(c), gd = g(d);
    for (int k = 0; k < iters && b - a > 1e-14; ++k) {
        if (gc < gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    return 0.5 * (a + b);
}

// Scan g on a uniform grid over [lo, lo + span) then refine the best cell.
template <class G>
double scan_minimize(G&& g, double lo, double span, std::size_t samples) {
    const double step = span / static_cast<double>(samples);
    std::size_t best = 0;
    double gbest = g(lo);
    for (std::size_t k = 1; k < samples; ++k) {
        const double v = g(lo + step * static_cast<double>(k));
        if (v < gbest) {
            gbest = v;
            best = k;
        }
    }
    const double c = lo + step * static_cast<double>(best);
    return golden(g, c - step, c + step);
}

double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;
    return r;
}

}  // namespace

int wavenumber(std::size_t k, std::size_t n) {
    return k < n / 2 ? static_cast<int>(k) : static_cast<int>(k) - static_cast<int>(n);
}

std::vector<cplx> coefficients(const PeriodicField& u) {
    std::vector<cplx> in(u.values().begin(), u.values().end());
    auto c = fft(in, FFTW_FORWARD);
    const double inv = 1.0 / static_cast<double>(u.size());
    for (auto& v : c) v *= inv;
    return c;
}

PeriodicField synthesize(const std::vector<cplx>& coeffs) { return PeriodicField(fft(coeffs, FFTW_BACKWARD)); }

PeriodicField shift(const PeriodicField& u, double sigma) {
    const std::size_t n = u.size();
    auto c = coefficients(u);
    for (std::size_t k = 0; k < n; ++k) {
        const int m = wavenumber(k, n);
        if (2 * static_cast<std::size_t>(std::abs(m)) == n)
            c[k] *= std::cos(0.5 * static_cast<double>(n) * sigma);  // Nyquist mode as a cosine
        else
            c[k] *= std::polar(1.0, -static_cast<double>(m) * sigma);
    }
    return synthesize(c);
}

PeriodicField reflect(const PeriodicField& u, double center) {
    const std::size_t n = u.size();
    const auto c = coefficients(u);
    std::vector<cplx> r(n);
    for (std::size_t k = 0; k < n; ++k) {
        const int m = wavenumber(k, n);
        if (2 * static_cast<std::size_t>(std::abs(m)) == n) {
            r[k] = c[k] * std::cos(static_cast<double>(n) * center);
        } else {
            const std::size_t km = (n - k) % n;  // slot of -m
            r[k] = c[km] * std::polar(1.0, -2.0 * static_cast<double>(m) * center);
        }
    }
    return synthesize(r);
}

ReflectionFit best_even_center(const PeriodicField& u) {
    const std::size_t n = u.size();
    const auto c = coefficients(u);
    const double total = l2sq(c);
    ReflectionFit fit;
    if (total == 0.0) return fit;
    auto g = [&](double ctr) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const int m = wavenumber(k, n);
            cplx r;
            if (2 * static_cast<std::size_t>(std::abs(m)) == n)
                r = c[k] * std::cos(static_cast<double>(n) * ctr);
            else
                r = c[(n - k) % n] * std::polar(1.0, -2.0 * static_cast<double>(m) * ctr);
            s += std::norm(c[k] - r);
        }
        return s;
    };
    const double ctr = wrap(scan_minimize(g, 0.0, std::numbers::pi, 8 * n), std::numbers::pi);
    fit.center = ctr;
    fit.residual = std::sqrt(std::max(0.0, g(ctr)) / total);
    return fit;
}

double rotation_residual(const PeriodicField& u, std::size_t j) {
    const std::size_t n = u.size();
    if (j == 0 || n % j != 0) throw ContractViolation("rotation_residual: j must divide n");
    double num = 0.0, den = 0.0;
    const std::size_t step = n / j;
    for (std::size_t k = 0; k < n; ++k) {
        num += std::norm(u[(k + step) % n] - u[k]);
        den += std::norm(u[k]);
    }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

std::size_t period_divisor(const PeriodicField& u, double rel_tol) {
    const std::size_t n = u.size();
    std::size_t best = 1;
    for (std::size_t j = 2; j <= n; ++j)
        if (n % j == 0 && rotation_residual(u, j) <= rel_tol) best = j;
    return best;
}

ShiftFit best_shift(const PeriodicField& u, const PeriodicField& v) {
    if (u.size() != v.size()) throw ContractViolation("best_shift: size mismatch");
    const std::size_t n = u.size();
    const auto cu = coefficients(u);
    const auto cv = coefficients(v);
    const double total = l2sq(cv);
    auto g = [&](double tau) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const int m = wavenumber(k, n);
            cplx r;
            if (2 * static_cast<std::size_t>(std::abs(m)) == n)
                r = cu[k] * std::cos(0.5 * static_cast<double>(n) * tau);
            else
                r = cu[k] * std::polar(1.0, -static_cast<double>(m) * tau);
            s += std::norm(cv[k] - r);
        }
        return s;
    };
    ShiftFit fit;
    fit.tau = wrap(scan_minimize(g, 0.0, kTwoPi, 8 * n), kTwoPi);
    fit.residual = total > 0.0 ? std::sqrt(std::max(0.0, g(fit.tau)) / total) : 0.0;
    return fit;
}

double circular_distance(double a, double b, double period) {
    const double d = wrap(a - b, period);
    return std::min(d, period - d);
}

const char* backend_version() { return fftw_version; }

}  // namespace lle::spectral
