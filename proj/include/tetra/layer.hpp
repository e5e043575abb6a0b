#pragma once

#include "tetra/scalars.hpp"
#include "tetra/spaces.hpp"
#include "tetra/threed.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tetra {

// Laurent polynomial in T = q^{base}; exponent -> coefficient.
using Laurent = std::map<int, Rational>;

inline Laurent laurent_mul(const Laurent& A, const Laurent& B) {
    Laurent r;
    for (auto& [ea, ca] : A)
        for (auto& [eb, cb] : B) {
            Rational& slot = r[ea + eb];
            slot += ca * cb;
        }
    for (auto it = r.begin(); it != r.end();)
        it = sgn(it->second) == 0 ? r.erase(it) : std::next(it);
    return r;
}

// S^{(eps) a, b, base+dp}_{i, j, base+dc} as a Laurent polynomial in T = q^{base},
// valid for every base with base+dp >= 0 and base+dc >= 0.
inline Laurent layer_factor(const QPoint& pt, int eps, int a, int b, int i, int j, int dp, int dc) {
    Laurent r;
    if (a + b != i + j || b + dp != j + dc) return r;
    if (eps == 1) {
        if (a > 1 || b > 1 || i > 1 || j > 1) return r;
        if (a == i && b == j) {
            if (a == b) r[0] = 1;
            else if (a == 0) r[1] = -pt.qpow(dc + 1);
            else r[1] = pt.qpow(dc);
        } else if (a == 0 && b == 1) {  // 01 <- 10, c = k-1
            r[0] = 1;
            r[2] = -pt.qpow(2 * dc);
        } else {  // 10 <- 01, c = k+1
            r[0] = 1;
        }
        return r;
    }
    for (int mu = 0; mu <= std::min(b, i); ++mu) {
        int lam = b - mu;
        if (lam > j) continue;
        Rational coef = pt.qpow(i * (dp - j) + (dc + 1) * lam + mu * (mu - dc)) * qbinom_poch(pt, 2, i, mu) *
                        qbinom_poch(pt, 2, j, lam);
        if (lam & 1) coef = -coef;
        Laurent term{{i + lam - mu, coef}};
        for (int r_ = 1; r_ <= mu; ++r_) term = laurent_mul(term, Laurent{{0, Rational(1)}, {2, -pt.qpow(2 * (dp + r_))}});
        for (auto& [e, c] : term) r[e] += c;
    }
    for (auto it = r.begin(); it != r.end();)
        it = sgn(it->second) == 0 ? r.erase(it) : std::next(it);
    return r;
}

inline Rational laurent_eval(const Laurent& P, const Rational& T) {
    Rational s(0);
    for (auto& [e, c] : P) s += c * rat_pow(T, e);
    return s;
}

// Product of the n layer factors for entry (a,b <- i,j); offsets d_k = d_{k-1} + b_k - j_k.
struct EntryPoly {
    Laurent P;
    std::vector<int> d;  // d_0..d_n
};

inline std::optional<EntryPoly> entry_poly(const QPoint& pt, const Signature& sig, const State& a, const State& b,
                                           const State& i, const State& j) {
    int n = sig.n();
    EntryPoly ep;
    ep.d.assign(n + 1, 0);
    for (int k = 0; k < n; ++k) ep.d[k + 1] = ep.d[k] + b[k] - j[k];
    Laurent P{{0, Rational(1)}};
    for (int k = 0; k < n; ++k) {
        Laurent f = layer_factor(pt, sig.eps[k], a[k], b[k], i[k], j[k], ep.d[k], ep.d[k + 1]);
        if (f.empty()) return std::nullopt;
        P = laurent_mul(P, f);
        if (P.empty()) return std::nullopt;
    }
    ep.P = std::move(P);
    return ep;
}

// Index i used for the fixed-vector normalization on signatures containing a Fock slot.
inline int fock_normalization_slot(const Signature& sig) {
    for (int i = sig.n() - 1; i >= 0; --i)
        if (sig.eps[i] == 0) return i;
    throw std::domain_error("signature has no Fock slot");
}

inline Gauss rho_trace(const QPoint& pt, const Signature& sig, const Gauss& z, int l, int m) {
    if (sig.all_ones()) {
        int mp = std::max(m - l, 0);
        Gauss r(rat_pow(Rational(-pt.q()), -mp));
        return r * (Gauss(1) - Gauss(pt.qpow(std::abs(l - m))) * z);
    }
    // z^{-m} (q^{l-m} z; q^2)_{m+1} / (q^{l-m+2} z^{-1}; q^2)_m
    Gauss num(1), den(1), zi = Gauss(1) / z;
    for (int k = 0; k <= m; ++k) num *= Gauss(1) - Gauss(pt.qpow(l - m + 2 * k)) * z;
    for (int k = 0; k < m; ++k) den *= Gauss(1) - Gauss(pt.qpow(l - m + 2 + 2 * k)) * zi;
    Gauss zm(1);
    for (int k = 0; k < m; ++k) zm *= zi;
    if (den.is_zero()) throw std::domain_error("normalization pole at this z");
    return zm * num / den;
}

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Trace construction on sector (l,m), exact geometric summation over the auxiliary index.
inline Op<Gauss> build_Str(const ThreeD& td, const Signature& sig, const Gauss& z, int l, int m,
                           bool normalize = true) {
    const QPoint& pt = td.qpoint();
    if (z.is_zero()) throw std::domain_error("z must be nonzero");
    int n = sig.n();
    auto L = enumerate_Wl(sig, l);
    auto M = enumerate_Wl(sig, m);
    Op<Gauss> op;
    Gauss rho = normalize ? rho_trace(pt, sig, z, l, m) : Gauss(1);
    for (auto& i : L)
        for (auto& j : M) {
            Key in = concat(i, j);
            State s = add(i, j);
            Vec<Gauss> col;
            for (auto& a : L) {
                State b = sub(s, a);
                if (!sig.admits(b) || total(b) != m) continue;
                auto ep = entry_poly(pt, sig, a, b, i, j);
                if (!ep) continue;
                int c0min = 0;
                for (int dk : ep->d) c0min = std::max(c0min, -dk);
                Gauss sum(0);
                for (auto& [e, c] : ep->P) {
                    Gauss w = z * Gauss(pt.qpow(e));
                    if (w == Gauss(1))
                        throw PoleError("pole: z q^" + std::to_string(e) + " = 1 in entry " + pair_str(concat(a, b), n));
                    Gauss pw(1);
                    for (int k = 0; k < c0min; ++k) pw *= w;
                    sum += Gauss(c) * pw / (Gauss(1) - w);
                }
                accumulate(col, concat(a, b), sum * rho);
            }
            if (!col.empty()) op.emplace(in, std::move(col));
        }
    return op;
}

// Float helpers for the boundary-vector construction.
struct PochTable {
    Real base;
    std::vector<Real> v;
    explicit PochTable(Real b) : base(std::move(b)), v{Real(1)} {}
    const Real& get(size_t m) {
        while (v.size() <= m) v.push_back(v.back() * (1 - boost::multiprecision::pow(base, static_cast<long>(v.size()))));
        return v[m];
    }
};

struct SstInfo {
    Real max_tail{0};
    long max_terms = 0;
    long entries = 0;
};

// Boundary-vector construction S^{s,t} on the sector with sum vector sv, float backend.
// Entries are real; the scalar type is complex so gauge transforms can act in place.
inline Op<Cplx> build_Sst_sector(const ThreeD& td, const Signature& sig, const Rational& z, int s, int t, const State& sv,
                                 unsigned precision_bits, SstInfo* info = nullptr, bool normalize = true) {
    if ((s != 1 && s != 2) || (t != 1 && t != 2)) throw std::domain_error("s and t must be 1 or 2");
    if (z == 0) throw std::domain_error("z must be nonzero");
    const QPoint& pt = td.qpoint();
    PrecisionScope ps(precision_bits);
    Real q = to_real(pt.q());
    Real zr = to_real(z);
    Real eps = boost::multiprecision::ldexp(Real(1), -static_cast<int>(precision_bits) + 8);
    PochTable q2(q * q), qs(boost::multiprecision::pow(q, s * s)), qt(boost::multiprecision::pow(q, t * t));
    Real qsu = boost::multiprecision::pow(q, s);

    Cplx rho(1);
    if (normalize && s == 1 && t == 1) {
        rho = poch_infinite(Cplx(zr), q, precision_bits) / poch_infinite(Cplx(-q * zr), q, precision_bits);
    }

    auto pairs = enumerate_pair_sector(sig, SectorKey::B(sv));
    int n = sig.n();
    Op<Cplx> op;
    for (auto& in : pairs) {
        State i = slice(in, 0, n), j = slice(in, 1, n);
        Vec<Cplx> col;
        for (auto& out : pairs) {
            State a = slice(out, 0, n), b = slice(out, 1, n);
            auto ep = entry_poly(pt, sig, a, b, i, j);
            if (!ep) continue;
            int dn = ep->d[n];
            // smallest c0 with s*c0 + d_k >= 0 for all k
            int c0min = 0;
            for (int dk : ep->d)
                while (s * c0min + dk < 0) ++c0min;
            if (s == 2 && t == 2 && (dn & 1)) continue;  // c_n never integral
            int emin = ep->P.begin()->first;
            Real ratio = abs(zr) * boost::multiprecision::pow(q, s * emin);
            if (!(ratio < 1)) throw std::domain_error("convergence guard violated: |z| q^{s e_min} >= 1");
            std::vector<std::pair<int, Real>> coeffs;
            for (auto& [e, c] : ep->P) coeffs.emplace_back(e, to_real(c));
            Real sum(0), last(0);
            int small_run = 0;
            long terms = 0;
            bool any = false;
            Real zc = boost::multiprecision::pow(zr, c0min);
            for (int c0 = c0min;; ++c0, zc *= zr) {
                int top = s * c0 + dn;
                if (top < 0 || top % t) {
                    if (c0 > c0min + 100000) throw std::runtime_error("boundary series has no admissible terms");
                    continue;
                }
                int cn = top / t;
                Real u = boost::multiprecision::pow(qsu, c0);
                Real P(0);
                for (auto& [e, c] : coeffs) P += c * boost::multiprecision::pow(u, e);
                Real term = zc * q2.get(s * c0) / (qs.get(c0) * qt.get(cn)) * P;
                sum += term;
                ++terms;
                any = true;
                last = abs(term);
                Real scale = abs(sum) > 1 ? abs(sum) : Real(1);
                if (last * 1 < eps * scale * (1 - ratio)) ++small_run;
                else small_run = 0;
                if (small_run >= 5 && c0 >= c0min + 10) break;
                if (terms > 200000) throw std::runtime_error("boundary series did not converge");
            }
            if (!any) continue;
            Real tail = last * ratio / (1 - ratio);
            if (info) {
                if (tail > info->max_tail) info->max_tail = tail;
                if (terms > info->max_terms) info->max_terms = terms;
                ++info->entries;
            }
            col.emplace(out, Cplx(sum) * rho);
        }
        if (!col.empty()) op.emplace(in, std::move(col));
    }
    return op;
}

inline Op<Cplx> build_Sst(const ThreeD& td, const Signature& sig, const Rational& z, int s, int t, int truncation,
                          unsigned precision_bits, SstInfo* info = nullptr, bool normalize = true) {
    Op<Cplx> all;
    for (auto& sv : b_sectors(sig, truncation)) {
        auto part = build_Sst_sector(td, sig, z, s, t, sv, precision_bits, info, normalize);
        all.insert(part.begin(), part.end());
    }
    return all;
}

// Gauge by K|m> = p^{-|m|}: S-side (K x 1) S (1 x K^{-1}), R-side (K^{-1} x 1) R (1 x K).
enum class GaugeSide { S, R };

template <class T>
Op<T> gauge_tilde(const QPoint& pt, int n, const Op<T>& op, GaugeSide side) {
    Op<T> r;
    for (auto& [in, col] : op) {
        int jn = total(slice(in, 1, n));
        Vec<T> c;
        for (auto& [out, v] : col) {
            int an = total(slice(out, 0, n));
            int e = side == GaugeSide::S ? jn - an : an - jn;
            c.emplace(out, v * lift<T>(pt.ppow(e)));
        }
        r.emplace(in, std::move(c));
    }
    return r;
}

// Local equivalence map on (V_i x F_{i+1}) of both tensor factors; output carries F at i and V at i+1.
// Input (alpha, beta, m4, m5) -> list of (alpha', beta', m4', m5', coefficient).
struct PhiTerm {
    int al, be, m4, m5;
    Rational c;
};

inline std::vector<PhiTerm> phi_local(const QPoint& pt, int al, int be, int m4, int m5) {
    std::vector<PhiTerm> r;
    auto Q = [&](int e) { return pt.qpow(e); };
    if (al == 0 && be == 0) r.push_back({0, 0, m4, m5, 1 + Q(m4 + m5)});
    else if (al == 1 && be == 1) r.push_back({1, 1, m4, m5, 1 + Q(2 + m4 + m5)});
    else if (al == 0 && be == 1) {
        r.push_back({0, 1, m4, m5, Q(m4) - Q(1 + m5)});
        if (m4 > 0) r.push_back({1, 0, m4 - 1, m5 + 1, 1 - Q(2 * m4)});
    } else {
        r.push_back({1, 0, m4, m5, Q(m5) - Q(1 + m4)});
        if (m5 > 0) r.push_back({0, 1, m4 + 1, m5 - 1, 1 - Q(2 * m5)});
    }
    for (auto it = r.begin(); it != r.end();) it = sgn(it->c) == 0 ? r.erase(it) : std::next(it);
    return r;
}

inline Rational phi_square_diag(const QPoint& pt, int al, int be, int m4, int m5) {
    Rational k = pt.qpow(m4 + m5);
    if (al == 0 && be == 0) return (1 + k) * (1 + k);
    if (al == 1 && be == 1) return (1 + pt.q() * pt.q() * k) * (1 + pt.q() * pt.q() * k);
    return (1 - pt.q() * k) * (1 - pt.q() * k);
}

// Phi on W x W for signature with (eps_pos, eps_pos+1) = (1,0); inverse maps back from the (0,1) side.
template <class T>
Vec<T> phi_apply(const QPoint& pt, int n, int pos, const Vec<T>& v, bool inverse) {
    Vec<T> r;
    for (auto& [key, x] : v) {
        int al, be, m4, m5;
        if (!inverse) {
            al = key[pos], m4 = key[pos + 1], be = key[n + pos], m5 = key[n + pos + 1];
        } else {
            m4 = key[pos], al = key[pos + 1], m5 = key[n + pos], be = key[n + pos + 1];
        }
        T scale = inverse ? T(1) / lift<T>(phi_square_diag(pt, al, be, m4, m5)) : T(1);
        for (auto& tm : phi_local(pt, al, be, m4, m5)) {
            Key k = key;
            if (!inverse) {
                k[pos] = tm.m4, k[pos + 1] = tm.al, k[n + pos] = tm.m5, k[n + pos + 1] = tm.be;
            } else {
                k[pos] = tm.al, k[pos + 1] = tm.m4, k[n + pos] = tm.be, k[n + pos + 1] = tm.m5;
            }
            accumulate(r, k, x * scale * lift<T>(tm.c));
        }
    }
    return r;
}

// Conjugate S (built on sig) by Phi at an adjacent mixed pair, giving an operator on the swapped signature.
template <class T>
Op<T> phi_equivalence(const QPoint& pt, const Signature& sig, int pos, const Op<T>& S) {
    int n = sig.n();
    if (pos < 0 || pos + 1 >= n || sig.eps[pos] == sig.eps[pos + 1])
        throw std::domain_error("no adjacent mixed pair at position " + std::to_string(pos));
    bool ten = sig.eps[pos] == 1;  // (1,0) at pos: forward map
    Op<T> r;
    // columns of the result are basis vectors of the swapped space
    std::map<Key, bool> inputs;
    for (auto& [in, col] : S) {
        // images of S columns under Phi give the reachable swapped basis
        Vec<T> e{{in, T(1)}};
        for (auto& [k, x] : phi_apply(pt, n, pos, e, !ten)) inputs[k] = true;
    }
    for (auto& [in2, flag] : inputs) {
        (void)flag;
        Vec<T> e{{in2, T(1)}};
        Vec<T> back = phi_apply(pt, n, pos, e, ten);  // Phi^{-1} (or Phi from the (0,1) side)
        Vec<T> img = phi_apply(pt, n, pos, apply_op(S, back), !ten);
        if (!img.empty()) r.emplace(in2, std::move(img));
    }
    return r;
}

// Apply a two-factor operator on tensor copies (u,v) of a 3-fold key (each copy has n slots).
template <class T>
Vec<T> apply_pair(const Op<T>& op, int n, int u, int v, const Vec<T>& x) {
    Vec<T> r;
    for (auto& [key, c] : x) {
        Key pk = concat(slice(key, u, n), slice(key, v, n));
        auto it = op.find(pk);
        if (it == op.end()) throw std::domain_error("operator column missing for " + pair_str(pk, n));
        for (auto& [out, val] : it->second) {
            Key k = key;
            for (int s = 0; s < n; ++s) {
                k[u * n + s] = out[s];
                k[v * n + s] = out[n + s];
            }
            accumulate(r, k, c * val);
        }
    }
    return r;
}

// S12(x) S13(xy) S23(y) - S23(y) S13(xy) S12(x) on the given 3-fold basis vectors.
template <class T>
Real verify_ybe(const Op<T>& Sx, const Op<T>& Sxy, const Op<T>& Sy, int n, const std::vector<Key>& inputs,
                Vec<T>* worst = nullptr) {
    Real m(0);
    for (auto& in : inputs) {
        Vec<T> e{{in, T(1)}};
        auto lhs = apply_pair(Sx, n, 0, 1, apply_pair(Sxy, n, 0, 2, apply_pair(Sy, n, 1, 2, e)));
        auto rhs = apply_pair(Sy, n, 1, 2, apply_pair(Sxy, n, 0, 2, apply_pair(Sx, n, 0, 1, e)));
        auto d = difference(lhs, rhs);
        Real a = max_magnitude(d);
        if (a > m) {
            m = a;
            if (worst) *worst = d;
        }
    }
    return m;
}

// Layer dump: one entry per line, header lines start with '#'.
template <class T>
void dump_op(std::ostream& os, const Op<T>& op, int n, const std::map<std::string, std::string>& header) {
    for (auto& [k, v] : header) os << "# " << k << ": " << v << "\n";
    for (auto& [in, col] : op)
        for (auto& [out, val] : col)
            os << pair_str(out, n) << " <- " << pair_str(in, n) << " : " << to_string(val) << "\n";
}

}  // namespace tetra
