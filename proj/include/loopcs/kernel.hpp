#ifndef LOOPCS_KERNEL_HPP
#define LOOPCS_KERNEL_HPP

#include <complex>

#include "loopcs/rational.hpp"

namespace loopcs {

// Two-point kernel b_eps(r) of the anyon correlators.  q = 0 is the
// zero-temperature kernel -2i e^{-pi eps/L} sin(pi (r+i eps)/L); q in (0,1)
// multiplies in the convergent elliptic product with nome q = exp(-beta L/(2 pi)).
struct KernelParams {
    double eps = 0.0;
    double q = 0.0;
    double L = 6.283185307179586476925286766559;
};

cplx kernel_b(double r, const KernelParams& kp);
// Principal-branch logarithm, smooth in r for eps > 0 (the periodic factor
// 1 - u has positive real part for |u| < 1).
cplx log_kernel_b(double r, const KernelParams& kp);
// b_eps(r)^s on the continuous branch defined by log_kernel_b.
cplx kernel_b_pow(double r, const KernelParams& kp, double s);

// Thermal mode occupation q^{2m}/(1-q^{2m}) entering the finite-temperature
// pairing of loop modes.
double thermal_occupation(int m, double q);

} // namespace loopcs

#endif
