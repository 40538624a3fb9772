#ifndef LOOPCS_RATIONAL_HPP
#define LOOPCS_RATIONAL_HPP

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace loopcs {

// Exact rational scalar for the identity checks that the float path can only
// verify up to tolerance.  Numerator/denominator are kept in __int128 and
// reduced after every operation; overflow throws instead of wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rational from_parts(__int128 n, __int128 d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        r.normalize();
        return r;
    }

    Rational operator-() const { return from_parts(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_parts(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                          checked_mul(a.den_, b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_parts(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from_parts(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
    }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    long long num_ll() const { return static_cast<long long>(num_); }
    long long den_ll() const { return static_cast<long long>(den_); }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        std::string s = int128_str(num_);
        if (den_ != 1) s += "/" + int128_str(den_);
        return s;
    }

private:
    __int128 num_, den_;

    static __int128 checked_add(__int128 a, __int128 b) {
        __int128 r = a + b;
        if ((b > 0 && r < a) || (b < 0 && r > a)) throw std::overflow_error("Rational add");
        return r;
    }
    static __int128 checked_mul(__int128 a, __int128 b) {
        if (a == 0 || b == 0) return 0;
        __int128 r = a * b;
        if (r / b != a) throw std::overflow_error("Rational mul");
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    static std::string int128_str(__int128 v) {
        if (v == 0) return "0";
        bool neg = v < 0;
        if (neg) v = -v;
        std::string s;
        while (v > 0) {
            s.insert(s.begin(), static_cast<char>('0' + int(v % 10)));
            v /= 10;
        }
        return neg ? "-" + s : s;
    }
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        __int128 g = gcd128(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }
};

// Complex number with exact rational parts.
struct RC {
    Rational re, im;

    RC() = default;
    RC(Rational r) : re(r) {}
    RC(long long r) : re(r) {}
    RC(Rational r, Rational i) : re(r), im(i) {}

    static RC i_unit() { return RC(Rational(0), Rational(1)); }

    RC operator-() const { return RC(-re, -im); }
    friend RC operator+(const RC& a, const RC& b) { return RC(a.re + b.re, a.im + b.im); }
    friend RC operator-(const RC& a, const RC& b) { return RC(a.re - b.re, a.im - b.im); }
    friend RC operator*(const RC& a, const RC& b) {
        return RC(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend RC operator/(const RC& a, const RC& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n.is_zero()) throw std::domain_error("RC: division by zero");
        return RC((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }
    RC& operator+=(const RC& o) { return *this = *this + o; }
    RC& operator-=(const RC& o) { return *this = *this - o; }
    RC& operator*=(const RC& o) { return *this = *this * o; }

    friend bool operator==(const RC& a, const RC& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const RC& a, const RC& b) { return !(a == b); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    RC conj() const { return RC(re, -im); }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

using cplx = std::complex<double>;

// Uniform scalar interface so the Fock/wedge/W-algebra machinery can be
// instantiated in float and exact mode.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<cplx> {
    static cplx zero() { return {0.0, 0.0}; }
    static cplx one() { return {1.0, 0.0}; }
    static cplx i() { return {0.0, 1.0}; }
    static cplx from_int(long long v) { return {double(v), 0.0}; }
    static cplx from_ratio(long long n, long long d) { return {double(n) / double(d), 0.0}; }
    static cplx conj(const cplx& v) { return std::conj(v); }
    static bool is_zero(const cplx& v) { return v == cplx{0.0, 0.0}; }
    static std::complex<double> to_complex(const cplx& v) { return v; }
};

template <>
struct scalar_traits<RC> {
    static RC zero() { return RC(); }
    static RC one() { return RC(Rational(1)); }
    static RC i() { return RC::i_unit(); }
    static RC from_int(long long v) { return RC(Rational(v)); }
    static RC from_ratio(long long n, long long d) { return RC(Rational(n, d)); }
    static RC conj(const RC& v) { return v.conj(); }
    static bool is_zero(const RC& v) { return v.is_zero(); }
    static std::complex<double> to_complex(const RC& v) { return v.to_complex(); }
};

} // namespace loopcs

#endif
