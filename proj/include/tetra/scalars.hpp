#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace tetra {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

inline Rational rat_pow(const Rational& x, int e) {
    if (e == 0) return Rational(1);
    if (x == 0) {
        if (e < 0) throw std::domain_error("0 raised to a negative power");
        return Rational(0);
    }
    unsigned long u = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), u);
    mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), u);
    Rational r = e < 0 ? Rational(den, num) : Rational(num, den);
    r.canonicalize();
    return r;
}

// Gaussian rational re + im*i.
class Gauss {
public:
    Gauss() = default;
    Gauss(long v) : re_(v) {}  // NOLINT
    Gauss(Rational re) : re_(std::move(re)) {}  // NOLINT
    Gauss(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    Gauss conj() const { return Gauss(re_, -im_); }

    Gauss& operator+=(const Gauss& o) {
        re_ += o.re_;
        if (sgn(o.im_) != 0) im_ += o.im_;
        return *this;
    }
    Gauss& operator-=(const Gauss& o) {
        re_ -= o.re_;
        if (sgn(o.im_) != 0) im_ -= o.im_;
        return *this;
    }
    Gauss& operator*=(const Gauss& o) {
        if (is_real() && o.is_real()) {
            re_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Gauss& operator/=(const Gauss& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        if (o.is_real()) {
            re_ /= o.re_;
            if (!is_real()) im_ /= o.re_;
            return *this;
        }
        Rational n = o.re_ * o.re_ + o.im_ * o.im_;
        return *this *= Gauss(o.re_ / n, -o.im_ / n);
    }
    friend Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
    friend Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
    friend Gauss operator*(Gauss a, const Gauss& b) { return a *= b; }
    friend Gauss operator/(Gauss a, const Gauss& b) { return a /= b; }
    friend Gauss operator-(const Gauss& a) { return Gauss(-a.re_, -a.im_); }
    friend bool operator==(const Gauss& a, const Gauss& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }

    std::string str() const {
        if (is_real()) return re_.get_str();
        std::string im = (im_ == 1) ? "" : (im_ == -1) ? "-" : im_.get_str();
        if (sgn(re_) == 0) return im + "i";
        std::string sep = sgn(im_) > 0 ? "+" : "";
        return re_.get_str() + sep + im + "i";
    }

private:
    Rational re_{0};
    Rational im_{0};
};

using Real = boost::multiprecision::mpfr_float;

inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

// Sets the working precision of newly created Real values for the lifetime of the scope.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : old_(Real::default_precision()) {
        if (bits < 64) throw std::invalid_argument("precision below 64 bits");
        Real::default_precision(bits_to_digits10(bits));
    }
    ~PrecisionScope() { Real::default_precision(old_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned old_;
};

inline Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

// Complex big-float.
struct Cplx {
    Real re{0};
    Real im{0};

    Cplx() = default;
    Cplx(long v) : re(v) {}  // NOLINT
    Cplx(Real r) : re(std::move(r)) {}  // NOLINT
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Cplx& operator+=(const Cplx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cplx& operator-=(const Cplx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Cplx& operator*=(const Cplx& o) {
        Real r = re * o.re - im * o.im;
        Real i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    Cplx& operator/=(const Cplx& o) {
        Real n = o.re * o.re + o.im * o.im;
        if (n == 0) throw std::domain_error("division by zero");
        Real r = (re * o.re + im * o.im) / n;
        Real i = (im * o.re - re * o.im) / n;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    friend Cplx operator+(Cplx a, const Cplx& b) { return a += b; }
    friend Cplx operator-(Cplx a, const Cplx& b) { return a -= b; }
    friend Cplx operator*(Cplx a, const Cplx& b) { return a *= b; }
    friend Cplx operator/(Cplx a, const Cplx& b) { return a /= b; }
    friend Cplx operator-(const Cplx& a) { return Cplx(-a.re, -a.im); }
};

inline Real abs_value(const Cplx& c) { return boost::multiprecision::sqrt(c.re * c.re + c.im * c.im); }

inline Cplx to_cplx(const Rational& q) { return Cplx(to_real(q)); }
inline Cplx to_cplx(const Gauss& g) { return Cplx(to_real(g.re()), to_real(g.im())); }

inline std::string real_str(const Real& x, int digits = 6) {
    return x.str(digits, std::ios_base::scientific);
}

inline std::string to_string(const Gauss& g) { return g.str(); }
inline std::string to_string(const Cplx& c) {
    if (c.im == 0) return real_str(c.re, 20);
    return real_str(c.re, 20) + (c.im < 0 ? "" : "+") + real_str(c.im, 20) + "i";
}

inline bool is_zero(const Gauss& g) { return g.is_zero(); }
inline bool is_zero(const Cplx& c) { return c.re == 0 && c.im == 0; }

// Lift an exact value into scalar type T.
template <class T>
T lift(const Rational& q);
template <>
inline Gauss lift<Gauss>(const Rational& q) { return Gauss(q); }
template <>
inline Cplx lift<Cplx>(const Rational& q) { return to_cplx(q); }

template <class T>
T lift(const Gauss& g);
template <>
inline Gauss lift<Gauss>(const Gauss& g) { return g; }
template <>
inline Cplx lift<Cplx>(const Gauss& g) { return to_cplx(g); }

// Magnitude as a Real, used for residual reporting on either backend.
inline Real magnitude(const Gauss& g) { return abs_value(to_cplx(g)); }
inline Real magnitude(const Cplx& c) { return abs_value(c); }

// q given through its exact square root.
class QPoint {
public:
    explicit QPoint(Rational root) : root_(std::move(root)) {
        root_.canonicalize();
        if (root_ <= 0 || root_ >= 1) throw std::domain_error("q-root must lie strictly between 0 and 1");
    }

    const Rational& root() const { return root_; }
    Rational q() const { return root_ * root_; }
    Rational rpow(int e) const { return rat_pow(root_, e); }
    Rational qpow(int e) const { return rat_pow(root_, 2 * e); }

    // p = i / root, so p^2 = -1/q.
    Gauss p() const { return Gauss(0, 1 / root_); }
    Gauss ppow(int e) const {
        Rational mag = rat_pow(root_, -e);
        switch (((e % 4) + 4) % 4) {
            case 0: return Gauss(mag);
            case 1: return Gauss(0, mag);
            case 2: return Gauss(-mag);
            default: return Gauss(0, -mag);
        }
    }

    std::string str() const { return root_.get_str(); }
    friend bool operator==(const QPoint& a, const QPoint& b) { return a.root_ == b.root_; }

private:
    Rational root_;
};

// prod_{k=1..m} (1 - root^{base + (k-1) step}); exponents are in units of root = q^{1/2}.
inline Rational poch_root(const QPoint& qp, int base, int step, int m) {
    if (m < 0) throw std::domain_error("negative Pochhammer length");
    Rational r(1);
    for (int k = 0; k < m; ++k) r *= 1 - qp.rpow(base + k * step);
    return r;
}

// (z;q)_m for z = q^{base_exponent}, base_exponent an integer multiple of 1/2 given as twice its value.
inline Rational q_pochhammer(const QPoint& qp, int twice_base_exponent, int m) {
    return poch_root(qp, twice_base_exponent, 2, m);
}

// (q^a)_m = (q^a; q^a)_m.
inline Rational qp(const QPoint& qpt, int a, int m) { return poch_root(qpt, 2 * a, 2 * a, m); }

inline Rational qint(const QPoint& qpt, int m) {
    return (qpt.qpow(m) - qpt.qpow(-m)) / (qpt.q() - 1 / qpt.q());
}

inline Rational qfactorial(const QPoint& qpt, int m) {
    if (m < 0) throw std::domain_error("negative factorial");
    Rational r(1);
    for (int k = 1; k <= m; ++k) r *= qint(qpt, k);
    return r;
}

inline Rational qbinom(const QPoint& qpt, int m, int k) {
    if (k < 0 || k > m) return Rational(0);
    return qfactorial(qpt, m) / (qfactorial(qpt, k) * qfactorial(qpt, m - k));
}

// (q^a)_m / ((q^a)_k (q^a)_{m-k}).
inline Rational qbinom_poch(const QPoint& qpt, int a, int m, int k) {
    if (k < 0 || k > m) return Rational(0);
    return qp(qpt, a, m) / (qp(qpt, a, k) * qp(qpt, a, m - k));
}

// prod_{k=0..m-1} (1 - z w^k) for a Cplx z and real w.
inline Cplx poch_cplx(const Cplx& z, const Real& w, int m) {
    Cplx r(1);
    Real wk(1);
    for (int k = 0; k < m; ++k) {
        r *= Cplx(1) - z * Cplx(wk);
        wk *= w;
    }
    return r;
}

// (z; w)_infinity truncated once factors are within 2^-bits of one.
inline Cplx poch_infinite(const Cplx& z, const Real& w, unsigned bits) {
    if (!(w > 0 && w < 1)) throw std::domain_error("infinite product needs 0 < w < 1");
    Real eps = boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits));
    Real az = abs_value(z);
    Cplx r(1);
    Real wk(1);
    for (int k = 0; k < 100000; ++k) {
        if (az * wk < eps) return r;
        r *= Cplx(1) - z * Cplx(wk);
        wk *= w;
    }
    throw std::runtime_error("infinite product did not converge");
}

}  // namespace tetra
