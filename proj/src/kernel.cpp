#include "loopcs/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "loopcs/loop.hpp"

namespace loopcs {

namespace {

void validate(const KernelParams& kp) {
    if (kp.q < 0.0 || kp.q >= 1.0) throw std::invalid_argument("kernel_b: need 0 <= q < 1");
    if (kp.eps < 0.0) throw std::invalid_argument("kernel_b: eps must be nonnegative");
}

} // namespace

cplx kernel_b(double r, const KernelParams& kp) {
    validate(kp);
    const double L = kp.L;
    // -2i e^{-pi eps/L} sin(pi(r+i eps)/L) = e^{-i pi r/L} (1 - e^{2 pi (i r - eps)/L})
    cplx u = std::polar(1.0, two_pi * r / L) * std::exp(-two_pi * kp.eps / L);
    cplx b = std::polar(1.0, -3.14159265358979323846 * r / L) * (1.0 - u);
    if (kp.q > 0.0) {
        const double damp2 = std::exp(-2.0 * two_pi * kp.eps / L);
        const double c = std::cos(two_pi * r / L);
        double q2n = kp.q * kp.q;
        for (int n = 1; n < 100000; ++n) {
            double factor = 1.0 - 2.0 * q2n * std::sqrt(damp2) * c + q2n * q2n * damp2;
            b *= factor;
            if (std::abs(factor - 1.0) < 1e-16) break;
            q2n *= kp.q * kp.q;
        }
    }
    return b;
}

cplx log_kernel_b(double r, const KernelParams& kp) {
    validate(kp);
    const double L = kp.L;
    cplx u = std::polar(1.0, two_pi * r / L) * std::exp(-two_pi * kp.eps / L);
    if (std::abs(1.0 - u) < 1e-300)
        throw std::domain_error("log_kernel_b: kernel vanishes at coincident points");
    cplx lg = cplx(0.0, -3.14159265358979323846 * r / L) + std::log(1.0 - u);
    if (kp.q > 0.0) {
        const double damp = std::exp(-two_pi * kp.eps / L);
        const double c = std::cos(two_pi * r / L);
        double q2n = kp.q * kp.q;
        for (int n = 1; n < 100000; ++n) {
            double factor = 1.0 - 2.0 * q2n * damp * c + q2n * q2n * damp * damp;
            lg += std::log(factor); // factor is real positive for q < 1
            if (std::abs(factor - 1.0) < 1e-16) break;
            q2n *= kp.q * kp.q;
        }
    }
    return lg;
}

cplx kernel_b_pow(double r, const KernelParams& kp, double s) {
    return std::exp(s * log_kernel_b(r, kp));
}

double thermal_occupation(int m, double q) {
    if (q <= 0.0) return 0.0;
    double qm = std::pow(q, 2.0 * m);
    return qm / (1.0 - qm);
}

} // namespace loopcs
