#pragma once

#include "tetra/scalars.hpp"
#include "tetra/spaces.hpp"

#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tetra {

// Matrix elements of the 3D R (flavor 0) and 3D L (flavor 1).
// Upper indices (a,b,c) are outputs, lower (i,j,k) are inputs.
class ThreeD {
public:
    explicit ThreeD(QPoint qpt, size_t cache_limit = 1u << 20) : qpt_(std::move(qpt)), cache_limit_(cache_limit) {}

    const QPoint& qpoint() const { return qpt_; }

    static bool conserves(int a, int b, int c, int i, int j, int k) { return a + b == i + j && b + c == j + k; }

    Rational R(int a, int b, int c, int i, int j, int k) const {
        if (a < 0 || b < 0 || c < 0 || i < 0 || j < 0 || k < 0) return Rational(0);
        if (!conserves(a, b, c, i, j, k)) return Rational(0);
        std::array<int, 6> key{a, b, c, i, j, k};
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        Rational v = r_raw(a, b, c, i, j, k);
        std::lock_guard<std::mutex> lock(mu_);
        if (cache_.size() >= cache_limit_) cache_.clear();
        cache_.emplace(key, v);
        return v;
    }

    Rational L(int a, int b, int c, int i, int j, int k) const {
        if (a < 0 || b < 0 || c < 0 || i < 0 || j < 0 || k < 0) return Rational(0);
        if (a > 1 || b > 1 || i > 1 || j > 1) return Rational(0);
        if (a == i && b == j) {
            if (c != k) return Rational(0);
            if (a == b) return Rational(1);
            if (a == 0) return -qpt_.qpow(k + 1);  // 01 <- 01
            return qpt_.qpow(k);                    // 10 <- 10
        }
        if (a == 0 && b == 1 && i == 1 && j == 0) return c == k - 1 ? Rational(1 - qpt_.qpow(2 * k)) : Rational(0);
        if (a == 1 && b == 0 && i == 0 && j == 1) return c == k + 1 ? Rational(1) : Rational(0);
        return Rational(0);
    }

    Rational S(int eps, int a, int b, int c, int i, int j, int k) const {
        return eps ? L(a, b, c, i, j, k) : R(a, b, c, i, j, k);
    }

    size_t cache_size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return cache_.size();
    }

private:
    Rational r_raw(int a, int b, int c, int i, int j, int k) const {
        (void)a;
        Rational sum(0);
        for (int mu = 0; mu <= std::min(b, i); ++mu) {
            int lam = b - mu;
            if (lam > j) continue;
            int e = i * (c - j) + (k + 1) * lam + mu * (mu - k);
            Rational t = qpt_.qpow(e);
            for (int r = 1; r <= mu; ++r) t *= 1 - qpt_.qpow(2 * (c + r));
            t *= qbinom_poch(qpt_, 2, i, mu) * qbinom_poch(qpt_, 2, j, lam);
            if (lam & 1) sum -= t;
            else sum += t;
        }
        return sum;
    }

    QPoint qpt_;
    size_t cache_limit_;
    mutable std::mutex mu_;
    mutable std::map<std::array<int, 6>, Rational> cache_;
};

// Apply S^{(flavor)} acting on slots (s1,s2,s3) of a multi-slot vector.
template <class T>
Vec<T> apply_local(const ThreeD& td, int flavor, std::array<int, 3> slots, const Vec<T>& v) {
    Vec<T> out;
    for (auto& [key, x] : v) {
        int i = key[slots[0]], j = key[slots[1]], k = key[slots[2]];
        for (int b = 0; b <= std::min(i + j, j + k); ++b) {
            int a = i + j - b, c = j + k - b;
            if (flavor == 1 && (a > 1 || b > 1)) continue;
            Rational el = td.S(flavor, a, b, c, i, j, k);
            if (sgn(el) == 0) continue;
            Key nk = key;
            nk[slots[0]] = a;
            nk[slots[1]] = b;
            nk[slots[2]] = c;
            accumulate(out, nk, x * lift<T>(el));
        }
    }
    return out;
}

enum class TetraKind { RRRR, RLLL };
enum class Side { Left, Right };

// Compose the four operators of one side of the tetrahedron equation on a 6-slot basis state.
inline Vec<Gauss> apply_threed(const ThreeD& td, TetraKind kind, Side side, const State& input) {
    if (input.size() != 6) throw std::domain_error("tetrahedron input needs 6 slots");
    for (int i = 0; i < 6; ++i) {
        if (input[i] < 0) throw std::domain_error("negative occupation");
        if (kind == TetraKind::RLLL && i < 3 && input[i] > 1) throw std::domain_error("slots 1-3 are two-dimensional");
    }
    // factors listed left to right; applied right to left
    struct F {
        int flavor;
        std::array<int, 3> slots;
    };
    int f = kind == TetraKind::RLLL ? 1 : 0;
    std::vector<F> lhs{{f, {0, 1, 3}}, {f, {0, 2, 4}}, {f, {1, 2, 5}}, {0, {3, 4, 5}}};
    std::vector<F> rhs{{0, {3, 4, 5}}, {f, {1, 2, 5}}, {f, {0, 2, 4}}, {f, {0, 1, 3}}};
    const auto& word = side == Side::Left ? lhs : rhs;
    Vec<Gauss> v{{input, Gauss(1)}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = apply_local(td, it->flavor, it->slots, v);
    return v;
}

inline Vec<Gauss> tetrahedron_residual(const ThreeD& td, TetraKind kind, const State& input) {
    return difference(apply_threed(td, kind, Side::Left, input), apply_threed(td, kind, Side::Right, input));
}

// q-oscillators on Fock space: a+|m> = |m+1>, a-|m> = (1-q^{2m})|m-1>, k|m> = q^m|m>.
struct Oscillator {
    const QPoint* qpt;
    enum Sym { Ap, Am, K, H };
    Vec<Gauss> act(Sym s, const Vec<Gauss>& v) const {
        Vec<Gauss> r;
        for (auto& [key, x] : v) {
            int m = key[0];
            switch (s) {
                case Ap: accumulate(r, Key{m + 1}, x); break;
                case Am:
                    if (m > 0) accumulate(r, Key{m - 1}, x * Gauss(1 - qpt->qpow(2 * m)));
                    break;
                case K: accumulate(r, Key{m}, x * Gauss(qpt->qpow(m))); break;
                case H: accumulate(r, Key{m}, x * Gauss(m)); break;
            }
        }
        return r;
    }
};

// Checks k a+- = q^{+-1} a+- k, a+a- = 1-k^2, a-a+ = 1-q^2k^2 and k = q^h on |0>..|N-1>.
inline bool check_oscillator_relations(const QPoint& qpt, int N) {
    Oscillator o{&qpt};
    using S = Oscillator::Sym;
    Gauss q(qpt.q());
    for (int m = 0; m < N; ++m) {
        Vec<Gauss> v{{Key{m}, Gauss(1)}};
        auto kap = o.act(S::K, o.act(S::Ap, v));
        auto apk = scaled(o.act(S::Ap, o.act(S::K, v)), q);
        auto kam = o.act(S::K, o.act(S::Am, v));
        auto amk = scaled(o.act(S::Am, o.act(S::K, v)), Gauss(1) / q);
        auto k2 = o.act(S::K, o.act(S::K, v));
        auto one_minus_k2 = difference(v, k2);
        auto one_minus_q2k2 = difference(v, scaled(k2, q * q));
        auto apam = o.act(S::Ap, o.act(S::Am, v));
        auto amap = o.act(S::Am, o.act(S::Ap, v));
        if (kap != apk || kam != amk || apam != one_minus_k2 || amap != one_minus_q2k2) return false;
        if (o.act(S::K, v) != scaled(v, Gauss(rat_pow(qpt.q(), m))) || o.act(S::H, v) != scaled(v, Gauss(m)))
            return false;
    }
    return true;
}

// Residual of a named local identity among 3D R/L elements.
// bracket-*, shift-*, layer-bracket and layer-shift take (a,b,c,i,j,k); layer-pair takes (a,b,c,i,j,k,a',b',i',j',k').
inline Gauss local_identity(const ThreeD& td, const std::string& name, const std::vector<int>& x) {
    const QPoint& qp = td.qpoint();
    auto Q = [&](int e) { return qp.qpow(e); };
    auto br = [&](int m) { return qint(qp, m); };
    auto R = [&](int a, int b, int c, int i, int j, int k) { return td.R(a, b, c, i, j, k); };
    auto need = [&](size_t n) {
        if (x.size() != n) throw std::domain_error(name + " expects " + std::to_string(n) + " indices");
    };
    // rho = (-1)^eps q^{1-2 eps}
    auto rho_pow = [&](int eps, int e) {
        Rational r = Q((1 - 2 * eps) * e);
        return (eps && (e & 1)) ? Rational(-r) : r;
    };
    auto parse_eps = [&](const std::string& prefix, int count) {
        std::vector<int> e;
        for (size_t p = prefix.size(); p < name.size(); ++p)
            if (name[p] == '0' || name[p] == '1') e.push_back(name[p] - '0');
        if (static_cast<int>(e.size()) != count) throw std::domain_error("unknown identity '" + name + "'");
        return e;
    };

    if (name.rfind("layer-pair", 0) == 0) {
        auto e = parse_eps("layer-pair", 2);
        need(11);
        int a = x[0], b = x[1], c = x[2], i = x[3], j = x[4], k = x[5];
        int a2 = x[6], b2 = x[7], i2 = x[8], j2 = x[9], k2 = x[10];
        auto S = [&](int a_, int b_, int c_, int i_, int j_, int k_) { return td.S(e[0], a_, b_, c_, i_, j_, k_); };
        auto S2 = [&](int a_, int b_, int c_, int i_, int j_, int k_) { return td.S(e[1], a_, b_, c_, i_, j_, k_); };
        Rational lhs = br(a + 1) * S(a + 1, b, c, i, j, k) * S2(a2 - 1, b2, k, i2, j2, k2) +
                       rho_pow(e[0], -a) * rho_pow(e[1], a2) * br(b + 1) * S(a, b + 1, c, i, j, k + 1) *
                           S2(a2, b2 - 1, k + 1, i2, j2, k2);
        Rational rhs = br(j) * S(a, b, c, i, j - 1, k + 1) * S2(a2, b2, k + 1, i2, j2 + 1, k2) +
                       rho_pow(e[0], -j) * rho_pow(e[1], j2) * br(i) * S(a, b, c, i - 1, j, k) *
                           S2(a2, b2, k, i2 + 1, j2, k2);
        return Gauss(Rational(lhs - rhs));
    }

    need(6);
    int a = x[0], b = x[1], c = x[2], i = x[3], j = x[4], k = x[5];
    Rational r;
    if (name == "bracket-1") {
        r = br(a + 1) * R(a + 1, b, c, i, j, k) - br(j) * R(a, b, c, i, j - 1, k + 1) -
            Q(-j + k) * br(i) * R(a, b, c, i - 1, j, k);
    } else if (name == "bracket-2") {
        r = Q(k + 1) * br(a + 1) * R(a + 1, b, c, i, j, k) + Q(-a - 1) * br(b + 1) * R(a, b + 1, c, i, j, k + 1) -
            Q(-j - 1) * br(i) * R(a, b, c, i - 1, j, k);
    } else if (name == "bracket-3") {
        r = Q(-a) * br(b + 1) * R(a, b + 1, c, i, j, k + 1) + Q(k + 2) * br(j) * R(a, b, c, i, j - 1, k + 1) -
            Q(-j) * (1 - Q(2 * k + 2)) * br(i) * R(a, b, c, i - 1, j, k);
    } else if (name == "bracket-4") {
        r = (1 - Q(2 * k + 2)) * br(a + 1) * R(a + 1, b, c, i, j, k) -
            Q(-a + k) * br(b + 1) * R(a, b + 1, c, i, j, k + 1) - br(j) * R(a, b, c, i, j - 1, k + 1);
    } else if (name == "shift-1") {
        r = R(a - 1, b, c, i, j, k) - Q(a + c + 2) * R(a, b - 1, c + 1, i, j, k) - R(a, b, c + 1, i, j + 1, k);
    } else if (name == "shift-2") {
        r = Q(a + 1) * R(a, b - 1, c, i, j, k - 1) + Q(c) * R(a, b, c, i, j + 1, k - 1) -
            Q(j + 1) * R(a, b, c - 1, i + 1, j, k - 1);
    } else if (name == "shift-3") {
        r = Q(c) * R(a - 1, b, c, i, j, k) + Q(a) * (1 - Q(2 * c + 2)) * R(a, b - 1, c + 1, i, j, k) -
            Q(j) * R(a, b, c, i + 1, j, k);
    } else if (name == "shift-4") {
        r = R(a - 1, b, c, i, j, k) - (1 - Q(2 * c + 2)) * R(a, b, c + 1, i, j + 1, k) -
            Q(c + j + 2) * R(a, b, c, i + 1, j, k);
    } else if (name.rfind("layer-shift", 0) == 0) {
        int e = parse_eps("layer-shift", 1)[0];
        auto S = [&](int a_, int b_, int c_, int i_, int j_, int k_) { return td.S(e, a_, b_, c_, i_, j_, k_); };
        Rational q(qp.q());
        r = S(a - 1, b, c, i, j, k) - q * rho_pow(e, a) * (1 + Q(c + 1)) * S(a, b - 1, c + 1, i, j, k) -
            (1 + Q(c + 1)) * S(a, b, c + 1, i, j + 1, k) + q * rho_pow(e, j) * S(a, b, c, i + 1, j, k);
    } else if (name.rfind("layer-bracket", 0) == 0) {
        int e = parse_eps("layer-bracket", 1)[0];
        auto S = [&](int a_, int b_, int c_, int i_, int j_, int k_) { return td.S(e, a_, b_, c_, i_, j_, k_); };
        Rational q(qp.q());
        Rational one_minus = 1 - rat_pow(q, k);
        r = -q * br(a + 1) * one_minus * S(a + 1, b, c, i, j, k - 1) + rho_pow(e, -a) * br(b + 1) * S(a, b + 1, c, i, j, k) +
            q * br(j) * S(a, b, c, i, j - 1, k) - rho_pow(e, -j) * br(i) * one_minus * S(a, b, c, i - 1, j, k - 1);
    } else {
        throw std::domain_error("unknown identity '" + name + "'");
    }
    return Gauss(r);
}

inline std::vector<std::string> local_identity_names() {
    return {"bracket-1", "bracket-2", "bracket-3", "bracket-4", "shift-1", "shift-2", "shift-3", "shift-4",
            "layer-pair(0,0)", "layer-pair(0,1)", "layer-pair(1,0)", "layer-pair(1,1)", "layer-bracket(0)",
            "layer-bracket(1)", "layer-shift(0)", "layer-shift(1)"};
}

struct IdentitySweep {
    long checked = 0;
    long failed = 0;
    std::vector<int> first_failure;
    std::string first_residual;
};

// Evaluate an identity on every index tuple with entries <= bound (V-slots in {0,1}).
// For layer-pair, tuples violating the conservation shared by all four terms are skipped: every term vanishes there.
inline IdentitySweep sweep_identity(const ThreeD& td, const std::string& name, int bound) {
    IdentitySweep out;
    auto record = [&](const std::vector<int>& idx) {
        Gauss r = local_identity(td, name, idx);
        ++out.checked;
        if (!r.is_zero()) {
            if (out.failed++ == 0) {
                out.first_failure = idx;
                out.first_residual = r.str();
            }
        }
    };
    auto range = [&](bool v) { return v ? 1 : bound; };
    if (name.rfind("layer-pair", 0) == 0) {
        if (name.size() != 15) throw std::domain_error("unknown identity '" + name + "'");
        int e = name[11] - '0', e2 = name[13] - '0';
        if ( (e != 0 && e != 1) || (e2 != 0 && e2 != 1))
            throw std::domain_error("unknown identity '" + name + "'");
        if (e == 1 && e2 == 1) {
            // all 2^8 V-index tuples, no pruning
            for (int bits = 0; bits < 256; ++bits)
                for (int c = 0; c <= bound; ++c)
                    for (int k = 0; k <= bound; ++k)
                        for (int k2 = 0; k2 <= bound; ++k2) {
                            auto bit = [&](int p) { return (bits >> p) & 1; };
                            record({bit(0), bit(1), c, bit(2), bit(3), k, bit(4), bit(5), bit(6), bit(7), k2});
                        }
            return out;
        }
        for (int a = 0; a <= range(e); ++a)
            for (int b = 0; b <= range(e); ++b)
                for (int c = 0; c <= bound; ++c)
                    for (int i = 0; i <= range(e); ++i)
                        for (int j = 0; j <= range(e); ++j) {
                            int k = b + c - j;
                            if (k < 0 || k > bound || a + b + 1 != i + j) continue;
                            for (int a2 = 0; a2 <= range(e2); ++a2)
                                for (int b2 = 0; b2 <= range(e2); ++b2)
                                    for (int i2 = 0; i2 <= range(e2); ++i2) {
                                        int j2 = a2 + b2 - 1 - i2;
                                        int k2 = b2 + k - j2;
                                        if (j2 < 0 || j2 > range(e2) || k2 < 0 || k2 > bound) continue;
                                        record({a, b, c, i, j, k, a2, b2, i2, j2, k2});
                                    }
                        }
        return out;
    }
    int e = 0;
    if (name.rfind("layer-bracket", 0) == 0 || name.rfind("layer-shift", 0) == 0) e = name[name.size() - 2] - '0';
    for (int a = 0; a <= range(e); ++a)
        for (int b = 0; b <= range(e); ++b)
            for (int c = 0; c <= bound; ++c)
                for (int i = 0; i <= range(e); ++i)
                    for (int j = 0; j <= range(e); ++j)
                        for (int k = 0; k <= bound; ++k) record({a, b, c, i, j, k});
    return out;
}

}  // namespace tetra
