#ifndef LOOPCS_FOCK_HPP
#define LOOPCS_FOCK_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "loopcs/loop.hpp"
#include "loopcs/rational.hpp"

namespace loopcs {

// Finite model of the boson Fock space: total level Sigma n*m_n <= Lambda,
// winding sectors w in [wmin, wmax].
struct TruncationSpec {
    int Lambda = 0;
    int wmin = 0;
    int wmax = 0;
};

// Occupation of the modes rho(-n), n >= 1, plus the winding sector label.
// Basis vectors are the unnormalized Prod_n rho(-n)^{m_n} R^w Omega with
// <b,b> = Prod_n m_n! n^{m_n}; Omega is occ = {}, w = 0.
struct FockBasisState {
    std::vector<uint8_t> occ; // occ[i] = m_{i+1}, trailing zeros trimmed
    int w = 0;

    int level() const {
        int l = 0;
        for (size_t i = 0; i < occ.size(); ++i) l += int(i + 1) * occ[i];
        return l;
    }
    int mult(int n) const { return (n >= 1 && n <= int(occ.size())) ? occ[n - 1] : 0; }
    void trim() {
        while (!occ.empty() && occ.back() == 0) occ.pop_back();
    }
    friend bool operator==(const FockBasisState& a, const FockBasisState& b) {
        return a.w == b.w && a.occ == b.occ;
    }
    friend bool operator<(const FockBasisState& a, const FockBasisState& b) {
        if (a.w != b.w) return a.w < b.w;
        return a.occ < b.occ;
    }
};

double norm2(const FockBasisState& s);

template <class S>
S norm2_s(const FockBasisState& s) {
    using T = scalar_traits<S>;
    S v = T::one();
    for (size_t i = 0; i < s.occ.size(); ++i) {
        long long n = (long long)(i + 1);
        for (int j = 1; j <= s.occ[i]; ++j) v = v * T::from_int(j * n); // m! n^m
    }
    return v;
}

// Deterministically ordered basis: sectors ascending, level ascending, then
// lexicographic in the occupation vector.
class FockBasis {
public:
    explicit FockBasis(const TruncationSpec& spec);

    const TruncationSpec& spec() const { return spec_; }
    int size() const { return int(states_.size()); }
    const FockBasisState& state(int i) const { return states_[i]; }
    const std::vector<FockBasisState>& states() const { return states_; }
    // -1 when the state lies outside the truncation
    int find(const FockBasisState& s) const;
    int vacuum_index() const; // occ = {}, w = 0 (requires 0 in sector range)

private:
    TruncationSpec spec_;
    std::vector<FockBasisState> states_;
    std::map<FockBasisState, int> index_;
};

// Sparse vector over a FockBasis (amplitudes of unnormalized basis states).
template <class S>
struct FockVec {
    std::map<int, S> a;

    void add(int idx, const S& v) {
        if (scalar_traits<S>::is_zero(v)) return;
        auto [it, fresh] = a.emplace(idx, v);
        if (!fresh) {
            it->second = it->second + v;
            if (scalar_traits<S>::is_zero(it->second)) a.erase(it);
        }
    }
    bool empty() const { return a.empty(); }
};

// Result of an operator application together with the dropped l^2 weight, so
// tests can assert exactness on the safe subspace.
template <class S>
struct ApplyResult {
    FockVec<S> vec;
    double loss = 0.0;
};

template <class S>
S inner(const FockBasis& basis, const FockVec<S>& u, const FockVec<S>& v) {
    using T = scalar_traits<S>;
    S acc = T::zero();
    auto iu = u.a.begin();
    auto iv = v.a.begin();
    while (iu != u.a.end() && iv != v.a.end()) {
        if (iu->first < iv->first) ++iu;
        else if (iv->first < iu->first) ++iv;
        else {
            acc = acc + T::conj(iu->second) * iv->second * norm2_s<S>(basis.state(iu->first));
            ++iu;
            ++iv;
        }
    }
    return acc;
}

// Elementary generators on the truncated space.  rho(n) follows the integer
// momentum label p = 2*pi*n/L: n < 0 creates (coefficient 1), n > 0
// annihilates (coefficient m_n * n), n = 0 is the charge Q.
template <class S>
class FockOps {
public:
    explicit FockOps(const FockBasis& basis) : basis_(basis) {}

    const FockBasis& basis() const { return basis_; }

    ApplyResult<S> apply_rho(int n, const FockVec<S>& v) const;
    ApplyResult<S> apply_Q(const FockVec<S>& v) const;
    // R^power; throws std::out_of_range when the target sector leaves the spec
    ApplyResult<S> apply_R(int power, const FockVec<S>& v) const;
    // dGamma of a zero-winding loop: mean*Q + sum_n a(n) rho(-n)
    ApplyResult<cplx> apply_dGamma(const LoopFunction& alpha, const FockVec<cplx>& v) const;

private:
    const FockBasis& basis_;
};

// Materialized sparse operator: column ket -> expansion coefficients over bras.
template <class S>
class SparseOp {
public:
    SparseOp() = default;
    explicit SparseOp(const FockBasis& basis)
        : basis_(&basis), cols_(basis.size()), loss_(0.0) {}

    static SparseOp identity(const FockBasis& basis) {
        SparseOp op(basis);
        for (int j = 0; j < basis.size(); ++j) op.cols_[j][j] = scalar_traits<S>::one();
        return op;
    }

    template <class Fn> // Fn: int ket -> ApplyResult<S>
    static SparseOp from_action(const FockBasis& basis, Fn&& fn) {
        SparseOp op(basis);
        for (int j = 0; j < basis.size(); ++j) {
            ApplyResult<S> r = fn(j);
            op.cols_[j] = std::move(r.vec.a);
            op.loss_ += r.loss;
        }
        return op;
    }

    const FockBasis& basis() const { return *basis_; }
    double loss() const { return loss_; }
    void set_loss(double l) { loss_ = l; }

    const std::map<int, S>& col(int j) const { return cols_[j]; }
    std::map<int, S>& col(int j) { return cols_[j]; }

    S coeff(int i, int j) const {
        auto it = cols_[j].find(i);
        return it == cols_[j].end() ? scalar_traits<S>::zero() : it->second;
    }
    // sesquilinear value <bra | Op | ket> in the unnormalized basis
    S matrix_element(int bra, int ket) const {
        return coeff(bra, ket) * norm2_s<S>(basis_->state(bra));
    }

    FockVec<S> apply(const FockVec<S>& v) const {
        FockVec<S> out;
        for (auto& [j, amp] : v.a)
            for (auto& [i, c] : cols_[j]) out.add(i, amp * c);
        return out;
    }

    SparseOp scaled(const S& c) const {
        SparseOp op = *this;
        for (auto& col : op.cols_)
            for (auto& [i, v] : col) v = v * c;
        return op;
    }
    friend SparseOp operator+(const SparseOp& A, const SparseOp& B) {
        SparseOp op = A;
        for (int j = 0; j < int(op.cols_.size()); ++j)
            for (auto& [i, v] : B.cols_[j]) {
                auto [it, fresh] = op.cols_[j].emplace(i, v);
                if (!fresh) {
                    it->second = it->second + v;
                    if (scalar_traits<S>::is_zero(it->second)) op.cols_[j].erase(it);
                }
            }
        op.loss_ += B.loss_;
        return op;
    }
    friend SparseOp operator-(const SparseOp& A, const SparseOp& B) {
        return A + B.scaled(scalar_traits<S>::from_int(-1));
    }
    // (A*B)(v) = A(B(v))
    friend SparseOp operator*(const SparseOp& A, const SparseOp& B) {
        SparseOp op(*A.basis_);
        for (int j = 0; j < int(B.cols_.size()); ++j) {
            for (auto& [m, bc] : B.cols_[j])
                for (auto& [i, ac] : A.cols_[m]) {
                    auto [it, fresh] = op.cols_[j].emplace(i, ac * bc);
                    if (!fresh) {
                        it->second = it->second + ac * bc;
                        if (scalar_traits<S>::is_zero(it->second)) op.cols_[j].erase(it);
                    }
                }
        }
        op.loss_ = A.loss_ + B.loss_;
        return op;
    }
    SparseOp commutator_with(const SparseOp& B) const { return (*this) * B - B * (*this); }

    SparseOp adjoint() const {
        using T = scalar_traits<S>;
        SparseOp op(*basis_);
        for (int j = 0; j < int(cols_.size()); ++j) {
            S nj = norm2_s<S>(basis_->state(j));
            for (auto& [i, c] : cols_[j]) {
                S ni = norm2_s<S>(basis_->state(i));
                // <i|Op|j> = c * n_i ; <j|Op*|i> = conj(<i|Op|j>)
                op.cols_[i][j] = T::conj(c * ni) / nj;
            }
        }
        op.loss_ = loss_;
        return op;
    }

    double max_abs() const {
        double m = 0.0;
        for (auto& col : cols_)
            for (auto& [i, v] : col) m = std::max(m, std::abs(scalar_traits<S>::to_complex(v)));
        return m;
    }

private:
    const FockBasis* basis_ = nullptr;
    std::vector<std::map<int, S>> cols_;
    double loss_ = 0.0;
};

SparseOp<cplx> rho_op(const FockBasis& basis, int n);
SparseOp<cplx> Q_op(const FockBasis& basis);
SparseOp<cplx> R_op(const FockBasis& basis, int power);
SparseOp<cplx> dGamma_op(const FockBasis& basis, const LoopFunction& alpha);

SparseOp<RC> rho_op_exact(const FockBasis& basis, int n);
SparseOp<RC> Q_op_exact(const FockBasis& basis);
SparseOp<RC> R_op_exact(const FockBasis& basis, int power);

} // namespace loopcs

#endif
