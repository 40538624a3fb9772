#include "loopcs/fock.hpp"

#include <algorithm>
#include <cmath>

namespace loopcs {

double norm2(const FockBasisState& s) {
    double v = 1.0;
    for (size_t i = 0; i < s.occ.size(); ++i)
        for (int j = 1; j <= s.occ[i]; ++j) v *= double(j) * double(i + 1);
    return v;
}

namespace {

void enumerate_partitions(int budget, int min_mode, std::vector<uint8_t>& occ,
                          std::vector<std::vector<uint8_t>>& out) {
    out.push_back(occ);
    for (int n = min_mode; n <= budget; ++n) {
        if (int(occ.size()) < n) occ.resize(n, 0);
        occ[n - 1] += 1;
        enumerate_partitions(budget - n, n, occ, out);
        occ[n - 1] -= 1;
        while (!occ.empty() && occ.back() == 0) occ.pop_back();
    }
}

} // namespace

FockBasis::FockBasis(const TruncationSpec& spec) : spec_(spec) {
    if (spec.Lambda < 0) throw std::invalid_argument("FockBasis: Lambda must be >= 0");
    if (spec.wmin > spec.wmax) throw std::invalid_argument("FockBasis: wmin > wmax");
    std::vector<std::vector<uint8_t>> occs;
    std::vector<uint8_t> scratch;
    enumerate_partitions(spec.Lambda, 1, scratch, occs);
    // graded order: by level, then lexicographic on the occupation vector
    std::stable_sort(occs.begin(), occs.end(),
                     [](const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
                         int la = 0, lb = 0;
                         for (size_t i = 0; i < a.size(); ++i) la += int(i + 1) * a[i];
                         for (size_t i = 0; i < b.size(); ++i) lb += int(i + 1) * b[i];
                         if (la != lb) return la < lb;
                         return a < b;
                     });
    for (int w = spec.wmin; w <= spec.wmax; ++w)
        for (auto& occ : occs) {
            FockBasisState st;
            st.occ = occ;
            st.w = w;
            index_[st] = int(states_.size());
            states_.push_back(std::move(st));
        }
}

int FockBasis::find(const FockBasisState& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
}

int FockBasis::vacuum_index() const {
    FockBasisState omega;
    int i = find(omega);
    if (i < 0) throw std::logic_error("FockBasis: vacuum outside sector range");
    return i;
}

template <class S>
ApplyResult<S> FockOps<S>::apply_rho(int n, const FockVec<S>& v) const {
    using T = scalar_traits<S>;
    ApplyResult<S> out;
    if (n == 0) return apply_Q(v);
    for (auto& [idx, amp] : v.a) {
        FockBasisState st = basis_.state(idx);
        if (n < 0) {
            int mode = -n;
            if (st.level() + mode > basis_.spec().Lambda) {
                // dropped: account the l2 weight of the would-be state
                FockBasisState big = st;
                if (int(big.occ.size()) < mode) big.occ.resize(mode, 0);
                big.occ[mode - 1] += 1;
                double a2 = std::norm(T::to_complex(amp));
                out.loss += a2 * norm2(big);
                continue;
            }
            if (int(st.occ.size()) < mode) st.occ.resize(mode, 0);
            st.occ[mode - 1] += 1;
            out.vec.add(basis_.find(st), amp);
        } else {
            int m = st.mult(n);
            if (m == 0) continue;
            st.occ[n - 1] -= 1;
            st.trim();
            out.vec.add(basis_.find(st), amp * T::from_int((long long)m * n));
        }
    }
    return out;
}

template <class S>
ApplyResult<S> FockOps<S>::apply_Q(const FockVec<S>& v) const {
    using T = scalar_traits<S>;
    ApplyResult<S> out;
    for (auto& [idx, amp] : v.a) {
        int w = basis_.state(idx).w;
        if (w != 0) out.vec.add(idx, amp * T::from_int(w));
    }
    return out;
}

template <class S>
ApplyResult<S> FockOps<S>::apply_R(int power, const FockVec<S>& v) const {
    ApplyResult<S> out;
    for (auto& [idx, amp] : v.a) {
        FockBasisState st = basis_.state(idx);
        st.w += power;
        if (st.w < basis_.spec().wmin || st.w > basis_.spec().wmax)
            throw std::out_of_range("apply_R: target winding sector outside truncation");
        out.vec.add(basis_.find(st), amp);
    }
    return out;
}

template <class S>
ApplyResult<cplx> FockOps<S>::apply_dGamma(const LoopFunction& alpha,
                                           const FockVec<cplx>& v) const {
    if (!(alpha.winding == Rational(0)))
        throw std::invalid_argument("apply_dGamma: loop must have zero winding");
    FockOps<cplx> ops(basis_);
    ApplyResult<cplx> out;
    if (std::abs(alpha.mean) > 0.0) {
        ApplyResult<cplx> q = ops.apply_Q(v);
        for (auto& [i, a] : q.vec.a) out.vec.add(i, alpha.mean * a);
    }
    for (auto& [n, a] : alpha.modes) {
        ApplyResult<cplx> r = ops.apply_rho(-n, v);
        double an = std::abs(a);
        out.loss += an * an * r.loss;
        for (auto& [i, amp] : r.vec.a) out.vec.add(i, a * amp);
    }
    return out;
}

template class FockOps<cplx>;
template class FockOps<RC>;

namespace {

template <class S>
SparseOp<S> rho_op_impl(const FockBasis& basis, int n) {
    FockOps<S> ops(basis);
    return SparseOp<S>::from_action(basis, [&](int j) {
        FockVec<S> e;
        e.add(j, scalar_traits<S>::one());
        return ops.apply_rho(n, e);
    });
}

template <class S>
SparseOp<S> Q_op_impl(const FockBasis& basis) {
    FockOps<S> ops(basis);
    return SparseOp<S>::from_action(basis, [&](int j) {
        FockVec<S> e;
        e.add(j, scalar_traits<S>::one());
        return ops.apply_Q(e);
    });
}

template <class S>
SparseOp<S> R_op_impl(const FockBasis& basis, int power) {
    FockOps<S> ops(basis);
    return SparseOp<S>::from_action(basis, [&](int j) {
        FockVec<S> e;
        e.add(j, scalar_traits<S>::one());
        return ops.apply_R(power, e);
    });
}

} // namespace

SparseOp<cplx> rho_op(const FockBasis& basis, int n) { return rho_op_impl<cplx>(basis, n); }
SparseOp<cplx> Q_op(const FockBasis& basis) { return Q_op_impl<cplx>(basis); }
SparseOp<cplx> R_op(const FockBasis& basis, int power) { return R_op_impl<cplx>(basis, power); }

SparseOp<cplx> dGamma_op(const FockBasis& basis, const LoopFunction& alpha) {
    FockOps<cplx> ops(basis);
    return SparseOp<cplx>::from_action(basis, [&](int j) {
        FockVec<cplx> e;
        e.add(j, 1.0);
        return ops.apply_dGamma(alpha, e);
    });
}

SparseOp<RC> rho_op_exact(const FockBasis& basis, int n) { return rho_op_impl<RC>(basis, n); }
SparseOp<RC> Q_op_exact(const FockBasis& basis) { return Q_op_impl<RC>(basis); }
SparseOp<RC> R_op_exact(const FockBasis& basis, int power) { return R_op_impl<RC>(basis, power); }

} // namespace loopcs
