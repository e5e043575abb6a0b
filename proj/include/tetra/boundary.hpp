#pragma once

#include "tetra/scalars.hpp"
#include "tetra/threed.hpp"

#include <stdexcept>
#include <string>

namespace tetra {

// Coefficient of |m> in |chi_s>.
inline Rational chi_coeff(const QPoint& qpt, int s, int m) {
    if (s != 1 && s != 2) throw std::domain_error("boundary vector index must be 1 or 2");
    if (m < 0) return Rational(0);
    if (s == 1) return 1 / qp(qpt, 1, m);
    if (m % 2) return Rational(0);
    return 1 / qp(qpt, 4, m / 2);
}

// Coefficient of |m> in z^{h/s}|chi_s>; z^{m/s} is an integer power whenever the coefficient is nonzero.
template <class T>
T chi_dressed(const QPoint& qpt, int s, int m, const T& z);

template <>
inline Gauss chi_dressed<Gauss>(const QPoint& qpt, int s, int m, const Gauss& z) {
    Rational c = chi_coeff(qpt, s, m);
    if (sgn(c) == 0) return Gauss(0);
    Gauss r(c);
    for (int k = 0; k < m / s; ++k) r *= z;
    return r;
}

template <>
inline Cplx chi_dressed<Cplx>(const QPoint& qpt, int s, int m, const Cplx& z) {
    if (m < 0 || (s == 2 && m % 2)) return Cplx(0);
    Real q = to_real(qpt.q());
    Real base = s == 1 ? q : q * q * q * q;
    Cplx r = Cplx(1) / poch_cplx(Cplx(base), base, m / s);
    for (int k = 0; k < m / s; ++k) r *= z;
    return r;
}

struct BoundaryReport {
    Real ket_residual{0};
    Real bra_residual{0};
    // Conservation bounds every internal index by a+b or b+c, so no term beyond the cutoff contributes.
    Real tail_bound{0};
    long components = 0;
    bool exact_zero = false;
    std::string exact_first_failure;
    Real max_residual() const { return ket_residual > bra_residual ? ket_residual : bra_residual; }
};

namespace detail {

// Largest componentwise residual of the ket and bra relations for outputs with entries <= bound.
template <class T>
std::pair<Vec<T>, Vec<T>> boundary_residuals(const ThreeD& td, int s, const T& x, const T& y, int bound) {
    const QPoint& pt = td.qpoint();
    T xy = x * y;
    auto chi = [&](int m, const T& z) { return chi_dressed<T>(pt, s, m, z); };
    auto norm = [&](int m) { return lift<T>(qp(pt, 2, m)); };
    Vec<T> ket, bra;
    for (int a = 0; a <= bound; ++a)
        for (int b = 0; b <= bound; ++b)
            for (int c = 0; c <= bound; ++c) {
                // ket: sum_{ijk} R^{abc}_{ijk} chi_i(x) chi_j(xy) chi_k(y) = chi_a(x) chi_b(xy) chi_c(y)
                T lhs(0);
                for (int j = 0; j <= std::min(a + b, b + c); ++j) {
                    int i = a + b - j, k = b + c - j;
                    Rational r = td.R(a, b, c, i, j, k);
                    if (sgn(r) == 0) continue;
                    lhs += lift<T>(r) * chi(i, x) * chi(j, xy) * chi(k, y);
                }
                Key key{a, b, c};
                accumulate(ket, key, lhs - chi(a, x) * chi(b, xy) * chi(c, y));
                // bra, with <m|m> = (q^2)_m: sum_{a'b'c'} chi chi chi <a'b'c'|a'b'c'> R^{a'b'c'}_{abc}
                T blhs(0);
                for (int bb = 0; bb <= std::min(a + b, b + c); ++bb) {
                    int aa = a + b - bb, cc = b + c - bb;
                    Rational r = td.R(aa, bb, cc, a, b, c);
                    if (sgn(r) == 0) continue;
                    blhs += lift<T>(r) * chi(aa, x) * chi(bb, xy) * chi(cc, y) * norm(aa) * norm(bb) * norm(cc);
                }
                accumulate(bra, key, blhs - chi(a, x) * chi(b, xy) * chi(c, y) * norm(a) * norm(b) * norm(c));
            }
    return {ket, bra};
}

}  // namespace detail

// Eigen-relation of the boundary vectors under the 3D R, float evaluation with an exact cross-check.
inline BoundaryReport verify_boundary_eigenrelation(const ThreeD& td, int s, const Rational& x, const Rational& y,
                                                    int cutoff, unsigned precision_bits, int component_bound = 6) {
    if (s != 1 && s != 2) throw std::domain_error("boundary vector index must be 1 or 2");
    if (cutoff < 10) throw std::domain_error("cutoff must be at least 10");
    if (component_bound < 0 || 2 * component_bound > cutoff)
        throw std::domain_error("component bound must not exceed cutoff/2");
    if (x == 0 || y == 0) throw std::domain_error("spectral parameters must be nonzero");
    BoundaryReport rep;
    {
        PrecisionScope ps(precision_bits);
        auto [ket, bra] = detail::boundary_residuals<Cplx>(td, s, to_cplx(x), to_cplx(y), component_bound);
        rep.ket_residual = max_magnitude(ket);
        rep.bra_residual = max_magnitude(bra);
    }
    auto [eket, ebra] = detail::boundary_residuals<Gauss>(td, s, Gauss(x), Gauss(y), component_bound);
    rep.components = static_cast<long>(component_bound + 1) * (component_bound + 1) * (component_bound + 1);
    rep.exact_zero = eket.empty() && ebra.empty();
    if (!eket.empty()) rep.exact_first_failure = "ket " + state_str(eket.begin()->first) + ": " + eket.begin()->second.str();
    else if (!ebra.empty())
        rep.exact_first_failure = "bra " + state_str(ebra.begin()->first) + ": " + ebra.begin()->second.str();
    return rep;
}

}  // namespace tetra
