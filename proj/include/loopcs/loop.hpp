#ifndef LOOPCS_LOOP_HPP
#define LOOPCS_LOOP_HPP

#include <cmath>
#include <map>
#include <vector>

#include "loopcs/rational.hpp"

namespace loopcs {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Momentum lattices for a circle of length L: Lambda* = {2*pi*n/L} carries
// the boson modes (integer label n), Lambda*_0 = {2*pi*(n+1/2)/L} the fermion
// modes (half-integer label).  Lambda is the Fock level cutoff.
struct LatticeSpec {
    double L = two_pi;
    int Lambda = 0;

    double p(int n) const { return two_pi * n / L; }        // point of Lambda*
    double k_half(int m) const { return two_pi * (m + 0.5) / L; } // point of Lambda*_0
};

// A loop e^{i f} on the circle, stored band-limited through the decomposition
//   f(x) = winding * (2*pi/L) * x + sum_n a(n) e^{2*pi*i*n*x/L},   a(0) = mean.
// Mode coefficients are dimensionless (a(n) = alpha_hat(2*pi*n/L)/L in the
// Fourier-integral normalization).  Ordinary loops have integer winding; blips
// scaled for anyon statistics carry winding in units of 1/nu0.
template <class C>
struct BasicLoop {
    Rational winding;
    C mean{};
    std::map<int, C> modes; // n != 0 only
    double L = two_pi;
    bool anyon = false;

    C mode(int n) const {
        auto it = modes.find(n);
        return it == modes.end() ? C{} : it->second;
    }
    void set_mode(int n, const C& v) {
        if (scalar_traits<C>::is_zero(v)) modes.erase(n);
        else modes[n] = v;
    }
    int max_mode() const {
        int m = 0;
        for (auto& [n, v] : modes) m = std::max(m, std::abs(n));
        return m;
    }
};

using LoopFunction = BasicLoop<cplx>;
using LoopExact = BasicLoop<RC>;

// f value at position x (the exponent, not the loop point e^{if}).
cplx evaluate(const LoopFunction& f, double x);

// Pointwise sum/negation of exponents (loop product / inverse).
LoopFunction add_loops(const LoopFunction& f1, const LoopFunction& f2);
LoopFunction negate_loop(const LoopFunction& f);
// Exponent of the adjoint implementer: e^{if} -> e^{-i conj(f)}.
LoopFunction adjoint_loop(const LoopFunction& f);
LoopFunction scale_loop(const LoopFunction& f, double c, const Rational& winding_scale);

// Number of modes needed so the dropped blip tail sum_{n>N} (1/n) e^{-2*pi*eps*n/L}
// stays below tol.
int blip_mode_cutoff(double eps, double L, double tol = 1e-14, int cap = 100000);

// Blip f_{y,eps}: winding-1 smoothed step centred at y, regulator eps > 0.
LoopFunction blip(double y, double eps, double L, double tail_tol = 1e-14);
// Anyon variant: winding 1/nu0, zero mode -2*pi*nu0*y/L, same alpha^{+-}.
LoopFunction anyon_blip(double y, double eps, double nu0, double L, double tail_tol = 1e-14);
// The loop nu * f~_{y,eps} entering an anyon vertex operator; nu/nu0 must be integer.
LoopFunction anyon_vertex_loop(double y, double eps, double nu, double nu0, double L,
                               double tail_tol = 1e-14);
// Smoothed delta function delta_{y,eps} = 1/L + delta^+ + delta^-.
LoopFunction smoothed_delta(double y, double eps, double L, double tail_tol = 1e-14);
// Positive/negative frequency halves of the smoothed delta (for the current
// splitting rho^{+-}).
LoopFunction smoothed_delta_half(double y, double eps, double L, int sign,
                                 double tail_tol = 1e-14);

// Regularized sign function sgn_eps(r) = f_{0,eps}(r)/pi.
double sgn_eps(double r, double eps, double L, double tail_tol = 1e-14);

// Fourier analysis of f-samples on the uniform grid x_j = -L/2 + j*L/M,
// j = 0..M (both endpoints included; the last sample fixes the winding).
// Keeps modes |n| <= n_keep; requires M >= 4*n_keep.  A loop whose winding is
// not an integer (or an integer multiple of 1/nu0 when nu0 > 0) is rejected.
LoopFunction decompose_loop(const std::vector<double>& f_samples, double L, int n_keep,
                            double nu0 = 0.0, double winding_tol = 1e-6);

// Group two-cocycle S(f1,f2) = w1*mean2 - mean1*w2 + S_hat(alpha1, alpha2)
// via the mode sums; exact for band-limited loops.
template <class C>
C cocycle_S(const BasicLoop<C>& f1, const BasicLoop<C>& f2) {
    using T = scalar_traits<C>;
    C w1 = T::from_ratio(f1.winding.num_ll(), f1.winding.den_ll());
    C w2 = T::from_ratio(f2.winding.num_ll(), f2.winding.den_ll());
    C s = w1 * f2.mean - f1.mean * w2;
    const C iu = T::i();
    for (auto& [n, a1] : f1.modes) {
        auto it = f2.modes.find(-n);
        if (it == f2.modes.end()) continue;
        s += iu * T::from_int(n) * a1 * it->second;
    }
    return s;
}

// Lie-algebra part alone (no winding/zero-mode contribution).
template <class C>
C cocycle_S_hat(const BasicLoop<C>& f1, const BasicLoop<C>& f2) {
    using T = scalar_traits<C>;
    C s{};
    const C iu = T::i();
    for (auto& [n, a1] : f1.modes) {
        auto it = f2.modes.find(-n);
        if (it == f2.modes.end()) continue;
        s += iu * T::from_int(n) * a1 * it->second;
    }
    return s;
}

// tilde_S(f1,f2) = w1*mean2 - mean1*w2 + 2 S(alpha1^-, alpha2^+).  The product
// of two normal-ordered implementers carries the prefactor e^{-i tilde_S/2}.
template <class C>
C cocycle_tilde_S(const BasicLoop<C>& f1, const BasicLoop<C>& f2) {
    using T = scalar_traits<C>;
    C w1 = T::from_ratio(f1.winding.num_ll(), f1.winding.den_ll());
    C w2 = T::from_ratio(f2.winding.num_ll(), f2.winding.den_ll());
    C s = w1 * f2.mean - f1.mean * w2;
    const C iu = T::i();
    for (auto& [n, a2] : f2.modes) {
        if (n <= 0) continue;
        auto it = f1.modes.find(-n);
        if (it == f1.modes.end()) continue;
        // 2 * S_hat(alpha1^-, alpha2^+) = -2i sum_{n>0} n a1(-n) a2(n)
        s -= T::from_int(2) * iu * T::from_int(n) * it->second * a2;
    }
    return s;
}

// Quadrature evaluation of the integral definition of S (boundary term plus
// (1/4pi) int (f1' f2 - f1 f2')); independent route used to pin the mode sums.
cplx cocycle_S_integral(const LoopFunction& f1, const LoopFunction& f2, int panels = 4096);

} // namespace loopcs

#endif
