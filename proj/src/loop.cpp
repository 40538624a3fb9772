#include "loopcs/loop.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopcs {

cplx evaluate(const LoopFunction& f, double x) {
    cplx v = f.winding.to_double() * (two_pi / f.L) * x + f.mean;
    for (auto& [n, a] : f.modes) v += a * std::polar(1.0, two_pi * n * x / f.L);
    return v;
}

LoopFunction add_loops(const LoopFunction& f1, const LoopFunction& f2) {
    LoopFunction g = f1;
    g.winding = f1.winding + f2.winding;
    g.mean = f1.mean + f2.mean;
    g.anyon = f1.anyon || f2.anyon;
    for (auto& [n, a] : f2.modes) g.set_mode(n, g.mode(n) + a);
    return g;
}

LoopFunction negate_loop(const LoopFunction& f) {
    LoopFunction g = f;
    g.winding = -f.winding;
    g.mean = -f.mean;
    for (auto& [n, a] : g.modes) a = -a;
    return g;
}

LoopFunction adjoint_loop(const LoopFunction& f) {
    // conj(f)(x) has modes conj(a(-n)); the adjoint implementer is Gamma(e^{-i conj f}).
    LoopFunction g;
    g.L = f.L;
    g.anyon = f.anyon;
    g.winding = -f.winding;
    g.mean = -std::conj(f.mean);
    for (auto& [n, a] : f.modes) g.modes[-n] = -std::conj(a);
    return g;
}

LoopFunction scale_loop(const LoopFunction& f, double c, const Rational& winding_scale) {
    LoopFunction g = f;
    g.winding = f.winding * winding_scale;
    g.mean = c * f.mean;
    for (auto& [n, a] : g.modes) a *= c;
    return g;
}

int blip_mode_cutoff(double eps, double L, double tol, int cap) {
    if (eps <= 0.0) throw std::invalid_argument("blip_mode_cutoff: eps must be positive");
    const double c = two_pi * eps / L;
    const double geom = 1.0 - std::exp(-c);
    for (int n = 1; n < cap; ++n) {
        // tail bound: sum_{m>n} (1/m) e^{-c m} <= e^{-c(n+1)} / ((n+1)(1-e^{-c}))
        double bound = std::exp(-c * (n + 1)) / ((n + 1) * geom);
        if (bound < tol) return n;
    }
    return cap;
}

LoopFunction blip(double y, double eps, double L, double tail_tol) {
    if (eps <= 0.0) throw std::invalid_argument("blip: eps must be positive");
    LoopFunction f;
    f.L = L;
    f.winding = Rational(1);
    f.mean = -two_pi * y / L;
    int nmax = blip_mode_cutoff(eps, L, tail_tol);
    for (int n = 1; n <= nmax; ++n) {
        double damp = std::exp(-two_pi * eps * n / L);
        cplx phase = std::polar(1.0, -two_pi * n * y / L);
        f.modes[n] = cplx(0.0, -1.0 / n) * phase * damp;
        f.modes[-n] = cplx(0.0, 1.0 / n) * std::conj(phase) * damp;
    }
    return f;
}

LoopFunction anyon_blip(double y, double eps, double nu0, double L, double tail_tol) {
    if (nu0 <= 0.0) throw std::invalid_argument("anyon_blip: nu0 must be positive");
    LoopFunction f = blip(y, eps, L, tail_tol);
    f.anyon = true;
    // winding term 2*pi*x/(L*nu0); zero mode -2*pi*nu0*y/L
    long long den = std::llround(1.0 / nu0);
    if (std::abs(den * nu0 - 1.0) < 1e-12 && den > 0) {
        f.winding = Rational(1, den);
    } else {
        // nu0 is not 1/k; keep 1/nu0 as a ratio of two moderate integers
        long long num = std::llround(1e6 / nu0);
        f.winding = Rational(num, 1000000);
    }
    f.mean = -two_pi * nu0 * y / L;
    return f;
}

LoopFunction anyon_vertex_loop(double y, double eps, double nu, double nu0, double L,
                               double tail_tol) {
    double ratio = nu / nu0;
    long long k = std::llround(ratio);
    if (std::abs(ratio - double(k)) > 1e-9)
        throw std::invalid_argument("anyon_vertex_loop: nu/nu0 must be an integer");
    LoopFunction f = blip(y, eps, L, tail_tol);
    f.anyon = true;
    f.winding = Rational(k); // nu * (1/nu0)
    f.mean = -two_pi * nu * nu0 * y / L;
    for (auto& [n, a] : f.modes) a *= nu;
    return f;
}

LoopFunction smoothed_delta(double y, double eps, double L, double tail_tol) {
    if (eps <= 0.0) throw std::invalid_argument("smoothed_delta: eps must be positive");
    LoopFunction f;
    f.L = L;
    f.winding = Rational(0);
    f.mean = 1.0 / L;
    int nmax = blip_mode_cutoff(eps, L, tail_tol);
    for (int n = 1; n <= nmax; ++n) {
        double damp = std::exp(-two_pi * eps * n / L);
        cplx phase = std::polar(1.0, -two_pi * n * y / L);
        f.modes[n] = (1.0 / L) * phase * damp;
        f.modes[-n] = (1.0 / L) * std::conj(phase) * damp;
    }
    return f;
}

LoopFunction smoothed_delta_half(double y, double eps, double L, int sign, double tail_tol) {
    LoopFunction f = smoothed_delta(y, eps, L, tail_tol);
    f.mean = 0.0;
    for (auto it = f.modes.begin(); it != f.modes.end();) {
        if ((sign > 0 && it->first < 0) || (sign < 0 && it->first > 0)) it = f.modes.erase(it);
        else ++it;
    }
    return f;
}

double sgn_eps(double r, double eps, double L, double tail_tol) {
    if (eps <= 0.0) throw std::invalid_argument("sgn_eps: eps must be positive");
    double s = two_pi * r / L;
    int nmax = blip_mode_cutoff(eps, L, tail_tol);
    for (int n = 1; n <= nmax; ++n)
        s += (2.0 / n) * std::exp(-two_pi * eps * n / L) * std::sin(two_pi * n * r / L);
    return s / 3.14159265358979323846;
}

LoopFunction decompose_loop(const std::vector<double>& f_samples, double L, int n_keep,
                            double nu0, double winding_tol) {
    const int M = int(f_samples.size()) - 1;
    if (M < 4 * n_keep)
        throw std::invalid_argument("decompose_loop: need at least 4 samples per retained mode");
    double w_real = (f_samples[M] - f_samples[0]) / two_pi;
    Rational w;
    if (nu0 > 0.0) {
        long long k = std::llround(w_real * nu0);
        if (std::abs(w_real * nu0 - double(k)) > winding_tol)
            throw std::invalid_argument("decompose_loop: winding not a multiple of 1/nu0");
        long long den = std::llround(1.0 / nu0);
        w = Rational(k, den);
    } else {
        long long k = std::llround(w_real);
        if (std::abs(w_real - double(k)) > winding_tol)
            throw std::invalid_argument("decompose_loop: non-integer winding");
        w = Rational(k);
    }

    LoopFunction f;
    f.L = L;
    f.winding = w;
    f.anyon = nu0 > 0.0;
    // periodic residue alpha_j on x_j = -L/2 + j L/M, j = 0..M-1
    std::vector<double> alpha(M);
    for (int j = 0; j < M; ++j) {
        double x = -0.5 * L + double(j) * L / M;
        alpha[j] = f_samples[j] - w.to_double() * (two_pi / L) * x;
    }
    for (int n = -n_keep; n <= n_keep; ++n) {
        cplx acc = 0.0;
        for (int j = 0; j < M; ++j)
            acc += alpha[j] * std::polar(1.0, -two_pi * n * j / double(M));
        acc /= double(M);
        // grid offset x_0 = -L/2 contributes (-1)^n
        if (n & 1) acc = -acc;
        if (n == 0) f.mean = acc;
        else if (std::abs(acc) > 1e-15) f.modes[n] = acc;
    }
    return f;
}

cplx cocycle_S_integral(const LoopFunction& f1, const LoopFunction& f2, int panels) {
    const double L = f1.L;
    auto fval = [&](const LoopFunction& f, double x) { return evaluate(f, x); };
    auto fder = [&](const LoopFunction& f, double x) {
        cplx v = f.winding.to_double() * (two_pi / L);
        for (auto& [n, a] : f.modes)
            v += a * cplx(0.0, two_pi * n / L) * std::polar(1.0, two_pi * n * x / L);
        return v;
    };
    // composite Simpson over [-L/2, L/2]
    int N = panels;
    if (N % 2) ++N;
    const double h = L / N;
    cplx acc = 0.0;
    for (int j = 0; j <= N; ++j) {
        double x = -0.5 * L + j * h;
        cplx g = fder(f1, x) * fval(f2, x) - fval(f1, x) * fder(f2, x);
        double wgt = (j == 0 || j == N) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        acc += wgt * g;
    }
    acc *= h / 3.0;
    cplx boundary = fval(f1, 0.5 * L) * fval(f2, -0.5 * L) - fval(f1, -0.5 * L) * fval(f2, 0.5 * L);
    return (boundary + acc) / (2.0 * two_pi);
}

} // namespace loopcs
