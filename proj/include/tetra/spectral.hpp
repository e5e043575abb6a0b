#pragma once

#include "tetra/gqg.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tetra {

// Vectors in W (x) W over r slots are keyed by concat(a, b), with a and b of length r.
inline Vec<Gauss> boxtimes(const Vec<Gauss>& A, int r1, const Vec<Gauss>& B, int r2) {
    Vec<Gauss> out;
    for (auto& [ka, ca] : A)
        for (auto& [kb, cb] : B) {
            Key k = concat(concat(slice(ka, 0, r1), slice(kb, 0, r2)), concat(slice(ka, 1, r1), slice(kb, 1, r2)));
            accumulate(out, k, ca * cb);
        }
    return out;
}

inline Vec<Gauss> constant_pair(int r, int v) { return Vec<Gauss>{{Key(2 * r, v), Gauss(1)}}; }

inline Vec<Gauss> fock_pair(int a, int b) { return Vec<Gauss>{{Key{a, b}, Gauss(1)}}; }

inline int inversions(const State& i) {
    int c = 0;
    for (size_t s = 0; s < i.size(); ++s)
        for (size_t t = s + 1; t < i.size(); ++t) c += i[s] * (1 - i[t]);
    return c;
}

// J_{r,j}: sum of q^{inv(i)} |i> (x) |1-i> over bit strings i of length r with j ones.
inline Vec<Gauss> j_vector(const QPoint& pt, int r, int j) {
    if (r < 0) throw std::domain_error("negative length");
    Vec<Gauss> out;
    if (j < 0 || j > r) return out;
    for (int bits = 0; bits < (1 << r); ++bits) {
        State i(r), ib(r);
        int ones = 0;
        for (int s = 0; s < r; ++s) {
            i[s] = (bits >> (r - 1 - s)) & 1;
            ib[s] = 1 - i[s];
            ones += i[s];
        }
        if (ones == j) accumulate(out, concat(i, ib), Gauss(pt.qpow(inversions(i))));
    }
    return out;
}

enum class SpectralCase { AllOnes, KappaN1, KappaLow, B };

inline std::string case_str(SpectralCase c) {
    switch (c) {
        case SpectralCase::AllOnes: return "A-all-ones";
        case SpectralCase::KappaN1: return "A-kappa=n-1";
        case SpectralCase::KappaLow: return "A-kappa<=n-2";
        default: return "B";
    }
}

// Case of a sorted signature 1^kappa 0^(n-kappa).
inline SpectralCase spectral_case(Family fam, const Signature& sig) {
    int n = sig.n(), kappa = 0;
    while (kappa < n && sig.eps[kappa]) ++kappa;
    for (int i = kappa; i < n; ++i)
        if (sig.eps[i]) throw std::domain_error("signature must have the form 1..10..0");
    if (fam == Family::B) {
        if (sig.eps[n - 1]) throw std::domain_error("family B singular vectors need a bosonic last slot");
        return SpectralCase::B;
    }
    if (n < 2) throw std::domain_error("family A needs n >= 2");
    if (kappa == n) return SpectralCase::AllOnes;
    if (kappa == n - 1) return SpectralCase::KappaN1;
    return SpectralCase::KappaLow;
}

// Index range of the singular vectors for the given case and sector.
inline std::pair<int, int> singular_range(SpectralCase c, int n, int l, int m) {
    switch (c) {
        case SpectralCase::AllOnes: return {std::max(l + m - n, 0), std::min(l, m)};
        case SpectralCase::KappaN1: return {0, std::min({n - 1, l, m})};
        case SpectralCase::KappaLow: return {0, std::min(l, m)};
        default: return {0, l};
    }
}

// Singular vector xi; for case B the index is l and the sector arguments are ignored.
inline Vec<Gauss> singular_vector(SpectralCase c, const QPoint& pt, int n, int l, int m, int idx) {
    auto [lo, hi] = singular_range(c, n, l, m);
    if (c == SpectralCase::B) {
        if (idx < 0) throw std::domain_error("singular vector index out of range");
    } else if (idx < lo || idx > hi || l < 0 || m < 0) {
        throw std::domain_error("singular vector index out of range");
    }
    if (c == SpectralCase::AllOnes) {
        int t = idx, s = l + m - 2 * t;
        auto v = boxtimes(constant_pair(n - s - t, 0), n - s - t, j_vector(pt, s, l - t), s);
        return boxtimes(v, n - t, constant_pair(t, 1), t);
    }
    if (c == SpectralCase::KappaN1) {
        int s = idx;
        Vec<Gauss> sum;
        for (int j = 0; j <= s; ++j) {
            Gauss coef(pt.qpow(j * (m - s + 1)) * (j & 1 ? -1 : 1));
            auto term = boxtimes(j_vector(pt, s, s - j), s, fock_pair(l + j - s, m - j), 1);
            axpy(sum, coef, term);
        }
        return boxtimes(constant_pair(n - s - 1, 0), n - s - 1, sum, s + 1);
    }
    if (c == SpectralCase::KappaLow) {
        int s = idx;
        Vec<Gauss> sum;
        for (int j = 0; j <= s; ++j) {
            Gauss coef(pt.qpow(j * (2 * s - m - j - 1) + m * s) * qbinom(pt, s, j) * (j & 1 ? -1 : 1));
            accumulate(sum, Key{j, l - j, s - j, m - s + j}, coef);
        }
        return boxtimes(constant_pair(n - 2, 0), n - 2, sum, 2);
    }
    int L = idx;
    Vec<Gauss> out;
    Gauss mp = -pt.p();
    Gauss w(1);
    for (int k = 0; k <= L; ++k) {
        Gauss coef = w * Gauss(pt.qpow(k * L - k * (k + 1) / 2) * qbinom(pt, L, k));
        accumulate(out, concat(unit(n, n - 1, k), unit(n, n - 1, L - k)), coef);
        w /= mp;
    }
    return out;
}

// Largest generator index whose Delta(e_i) must annihilate the singular vectors.
inline int annihilator_top(SpectralCase c, int n) { return c == SpectralCase::B ? n : n - 1; }

inline Vec<Gauss> annihilation_residual(SpectralCase c, const Rep& rx, const Rep& ry, const Vec<Gauss>& xi) {
    Vec<Gauss> all;
    int n = rx.sig.n();
    for (int i = 1; i <= annihilator_top(c, n); ++i) {
        auto r = coproduct_apply(rx, ry, Generator{'e', i}, Coproduct::Delta, xi);
        for (auto& [k, v] : r) accumulate(all, k, v);
    }
    return all;
}

// Apply Delta of a generator word written left to right (the rightmost letter acts first).
inline Vec<Gauss> apply_word(const Rep& rx, const Rep& ry, char kind, const std::vector<int>& word, Vec<Gauss> v) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = coproduct_apply(rx, ry, Generator{kind, *it}, Coproduct::Delta, v);
    return v;
}

inline std::vector<int> ascending(int a, int b) {
    std::vector<int> w;
    for (int i = a; i <= b; ++i) w.push_back(i);
    return w;
}

inline std::vector<int> descending(int a, int b) {
    std::vector<int> w;
    for (int i = a; i >= b; --i) w.push_back(i);
    return w;
}

inline std::vector<int> join(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline Gauss entry_of(const Vec<Gauss>& v, const Key& k) {
    auto it = v.find(k);
    return it == v.end() ? Gauss(0) : it->second;
}

// Printed form of the kappa <= n-2 e-word coefficients, or the form that holds exactly (A with q^{-l-m}, B with q^{2s-2}).
enum class CoefficientForm { Corrected, Printed };

struct TransitionCheck {
    std::string name;
    Vec<Gauss> residual;
    bool skipped = false;
    std::string note;
};

// Transition relations between neighbouring singular vectors for index idx.
inline std::vector<TransitionCheck> verify_transition(SpectralCase c, const Signature& sig, const QPoint& pt,
                                                      const Gauss& x, const Gauss& y, int l, int m, int idx,
                                                      CoefficientForm form = CoefficientForm::Corrected) {
    int n = sig.n();
    Family fam = c == SpectralCase::B ? Family::B : Family::A;
    Rep rx{fam, sig, pt, x}, ry{fam, sig, pt, y};
    auto xi = [&](int i) { return singular_vector(c, pt, n, l, m, i); };
    auto Q = [&](int e) { return Gauss(pt.qpow(e)); };
    Gauss q = Q(1), two = Gauss(qint(pt, 2));
    auto qi = [&](int v) { return Gauss(qint(pt, v)); };
    std::vector<TransitionCheck> out;
    auto [lo, hi] = singular_range(c, n, l, m);
    auto fn = [&](int i, Vec<Gauss> v, int times) {
        for (int k = 0; k < times; ++k) v = coproduct_apply(rx, ry, Generator{'f', i}, Coproduct::Delta, v);
        return v;
    };
    switch (c) {
        case SpectralCase::AllOnes: {
            int t = idx;
            if (t < lo || t >= hi) throw std::domain_error("transition index out of range");
            Gauss k = Q(l + m - 2 * t) * y - x;
            auto ew = join(join(ascending(n - l - m + t + 1, n - 1), descending(n - t - 1, 1)), {0});
            Gauss ce = (t == 0 ? -two : Gauss(1)) / q * k;
            out.push_back({"e-word", difference(apply_word(rx, ry, 'e', ew, xi(t)), scaled(xi(t + 1), ce)), false, ""});
            auto fw = join(ascending(0, n - l - m + t), descending(n - 1, n - t));
            out.push_back({"f-word", difference(apply_word(rx, ry, 'f', fw, xi(t)), scaled(xi(t + 1), k / (q * x * y))), false, ""});
            break;
        }
        case SpectralCase::KappaN1: {
            int s = idx;
            if (s < 1 || s > hi) throw std::domain_error("transition index out of range");
            Gauss k = y - Q(l + m - 2 * s + 2) * x;
            auto ew = join(join(descending(n - 1, 1), ascending(n - s, n - 1)), {0});
            Gauss ce = k * (s == n - 1 ? -two : Gauss(1));
            if (n == 2)
                out.push_back({"e-word", apply_word(rx, ry, 'e', ew, xi(s)), true, "the word annihilates xi_1 when n = 2"});
            else
                out.push_back({"e-word", difference(apply_word(rx, ry, 'e', ew, xi(s)), scaled(xi(s - 1), ce)), false, ""});
            out.push_back({"f-word", difference(apply_word(rx, ry, 'f', ascending(0, n - s - 1), xi(s)),
                                                 scaled(xi(s - 1), k / (x * y))), false, ""});
            break;
        }
        case SpectralCase::KappaLow: {
            int s = idx;
            if (s < 0 || s > hi) throw std::domain_error("transition index out of range");
            TransitionCheck e{"e-word", {}, false, ""};
            if (l + m == 2 * s) {
                e.skipped = true;
                e.note = "coefficients have vanishing denominators at l = m = s";
            } else {
                bool printed = form == CoefficientForm::Printed;
                Gauss A = -(Q(printed ? -l - s : -l - m) * qi(l - s) * qi(l + m + 1 - s) * qi(m - s) * (x - Q(l + m - 2 * s) * y)) /
                          (qi(l + m + 1 - 2 * s) * qi(l + m - 2 * s));
                Gauss B = Q(printed ? -2 - m + 3 * s : 2 * s - 2) * qi(s) * (Q(l + m + 2 - 2 * s) * x - y) /
                          (qi(l + m + 1 - 2 * s) * qi(l + m + 2 - 2 * s));
                Gauss C = ((qi(l - s) * qi(l + m + 2 - s) - qi(m - s) * qi(s)) * x +
                           (qi(m - s) * qi(l + m + 2 - s) - qi(l - s) * qi(s)) * y) /
                          (qi(l + m - 2 * s) * qi(l + m + 2 - 2 * s));
                Vec<Gauss> rhs = scaled(fn(n - 1, xi(s), 1), C);
                if (s < hi) axpy(rhs, A, xi(s + 1));
                if (s > 0) axpy(rhs, B, fn(n - 1, xi(s - 1), 2));
                e.residual = difference(apply_word(rx, ry, 'e', descending(n - 2, 0), xi(s)), rhs);
            }
            out.push_back(e);
            Vec<Gauss> frhs;
            if (s > 0) frhs = scaled(xi(s - 1), (Q(l + m) * x - Q(2 * s - 2) * y) * qi(s) / (x * y));
            out.push_back({"f-word", difference(apply_word(rx, ry, 'f', ascending(0, n - 2), xi(s)), frhs), false, ""});
            break;
        }
        case SpectralCase::B: {
            int L = idx;
            if (L < 0) throw std::domain_error("transition index out of range");
            Gauss iroot(0, pt.root()), iroot_inv(0, 1 / pt.root());
            Vec<Gauss> rhs;
            if (L >= 1) {
                axpy(rhs, Q(L + 1) * x + y, xi(L + 1));
                axpy(rhs, Q(L) * (x + Q(L) * y), fn(n, xi(L - 1), 2));
                rhs = scaled(rhs, Gauss(1) / (Gauss(1) - Q(2 * L + 1)));
            } else {
                axpy(rhs, q * x + y, xi(1));
                axpy(rhs, -(iroot * (x + y)), fn(n, xi(0), 1));
                rhs = scaled(rhs, Gauss(1) / (Gauss(1) - q));
            }
            out.push_back({"e-word", difference(apply_word(rx, ry, 'e', descending(n - 1, 0), xi(L)), rhs), false, ""});
            if (L >= 1) {
                Gauss cf = iroot_inv * qi(L) * (Q(L) / x + Gauss(1) / y);
                out.push_back({"f-word", difference(apply_word(rx, ry, 'f', ascending(0, n - 1), xi(L)), scaled(xi(L - 1), cf)), false, ""});
            }
            break;
        }
    }
    return out;
}

inline Vec<Gauss> flip(const Vec<Gauss>& v, int n) {
    Vec<Gauss> r;
    for (auto& [k, c] : v) r.emplace(concat(slice(k, 1, n), slice(k, 0, n)), c);
    return r;
}

// Closed-form eigenvalue of P R(z) on xi_idx.
inline Gauss spectral_eigenvalue(SpectralCase c, const QPoint& pt, int n, const Gauss& z, int l, int m, int idx) {
    Gauss r(1);
    auto Q = [&](int e) { return Gauss(pt.qpow(e)); };
    switch (c) {
        case SpectralCase::AllOnes:
            for (int i = idx + 1; i <= std::min(l, m); ++i)
                r *= (z - Q(l + m - 2 * i + 2)) / (Gauss(1) - Q(l + m - 2 * i + 2) * z);
            break;
        case SpectralCase::KappaN1:
        case SpectralCase::KappaLow:
            for (int i = 1; i <= idx; ++i) r *= (Gauss(1) - Q(l + m - 2 * i + 2) * z) / (z - Q(l + m - 2 * i + 2));
            break;
        case SpectralCase::B:
            for (int j = 1; j <= idx; ++j) r *= (z + Q(j)) / (Gauss(1) + Q(j) * z);
            break;
    }
    (void)n;
    return r;
}

struct EigenCheck {
    int index = 0;
    bool proportional = false;
    Gauss observed;
    Gauss expected;
    bool match() const { return proportional && observed == expected; }
};

struct SpectralReport {
    std::vector<EigenCheck> eigen;
    std::vector<std::string> ratio_failures;
    bool ok() const {
        if (!ratio_failures.empty()) return false;
        for (auto& e : eigen)
            if (!e.match()) return false;
        return true;
    }
};

// Eigenvalues of P R(z) on the singular vectors of a sector, plus the ratio recursion between neighbours.
inline SpectralReport spectral_check(const Op<Gauss>& R, SpectralCase c, const QPoint& pt, int n, const Gauss& z, int l,
                                     int m) {
    SpectralReport rep;
    auto [lo, hi] = singular_range(c, n, l, m);
    if (c == SpectralCase::B) lo = hi = l;
    for (int s = lo; s <= hi; ++s) {
        auto xi = singular_vector(c, pt, n, l, m, s);
        auto target = c == SpectralCase::B ? xi : singular_vector(c, pt, n, m, l, s);
        for (auto& [k, v] : xi)
            if (!R.count(k)) throw std::domain_error("R lacks column " + pair_str(k, n));
        auto img = flip(apply_op(R, xi), n);
        EigenCheck ec;
        ec.index = s;
        ec.expected = spectral_eigenvalue(c, pt, n, z, l, m, s);
        if (!target.empty()) {
            auto& [k0, v0] = *target.begin();
            ec.observed = entry_of(img, k0) / v0;
            ec.proportional = difference(img, scaled(target, ec.observed)).empty();
        }
        rep.eigen.push_back(ec);
    }
    if (c != SpectralCase::B)
        for (size_t i = 0; i + 1 < rep.eigen.size(); ++i) {
            int s = rep.eigen[i].index;
            auto Q = [&](int e) { return Gauss(pt.qpow(e)); };
            Gauss want = (Gauss(1) - Q(l + m - 2 * s) * z) / (z - Q(l + m - 2 * s));
            if (rep.eigen[i].observed.is_zero() || rep.eigen[i + 1].observed / rep.eigen[i].observed != want)
                rep.ratio_failures.push_back("ratio at s=" + std::to_string(s));
        }
    return rep;
}

struct SpanReport {
    int rank = 0;
    int dimension = 0;
};

// Rank of the span of f-orbits of the singular vectors, against the dimension of the (truncated) space.
inline SpanReport orbit_span(SpectralCase c, const Signature& sig, const QPoint& pt, const Gauss& x, const Gauss& y, int l,
                             int m) {
    int n = sig.n();
    Family fam = c == SpectralCase::B ? Family::B : Family::A;
    Rep rx{fam, sig, pt, x}, ry{fam, sig, pt, y};
    std::vector<Key> basis;
    if (c == SpectralCase::B) {
        for (auto& s : b_sectors(sig, l))
            for (auto& k : enumerate_pair_sector(sig, SectorKey::B(s))) basis.push_back(k);
    } else {
        basis = enumerate_pair_sector(sig, SectorKey::A(l, m));
    }
    std::map<Key, int> idx;
    for (auto& k : basis) idx.emplace(k, static_cast<int>(idx.size()));
    SparseNullspace ns(static_cast<int>(basis.size()));
    auto add = [&](const Vec<Gauss>& v) {
        int before = ns.rank();
        SparseNullspace::Row row;
        for (auto& [k, c2] : v) row[idx.at(k)] = c2;
        ns.add(row);
        return ns.rank() > before;
    };
    std::vector<Vec<Gauss>> queue;
    auto [lo, hi] = singular_range(c, n, l, m);
    if (c == SpectralCase::B) lo = 0;  // xi_0 .. xi_l, with l read as the truncation
    for (int s = lo; s <= hi; ++s) queue.push_back(singular_vector(c, pt, n, l, m, s));
    int top = annihilator_top(c, n);
    while (!queue.empty()) {
        auto v = std::move(queue.back());
        queue.pop_back();
        if (v.empty()) continue;
        bool inside = true;
        for (auto& [k, c2] : v)
            if (!idx.count(k)) inside = false;
        if (!inside || !add(v)) continue;
        for (int i = 1; i <= top; ++i) queue.push_back(coproduct_apply(rx, ry, Generator{'f', i}, Coproduct::Delta, v));
    }
    return {ns.rank(), static_cast<int>(basis.size())};
}

struct ExampleReport {
    long compared = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return compared > 0 && mismatches.empty(); }
};

namespace detail {

inline void compare_image(ExampleReport& rep, const Op<Gauss>& R, const Key& in, const Vec<Gauss>& want, int n) {
    auto it = R.find(in);
    Vec<Gauss> got = it == R.end() ? Vec<Gauss>{} : it->second;
    std::set<Key> keys;
    for (auto& [k, v] : got) keys.insert(k);
    for (auto& [k, v] : want) keys.insert(k);
    for (auto& k : keys) {
        ++rep.compared;
        Gauss g = entry_of(got, k), w = entry_of(want, k);
        if (g != w)
            rep.mismatches.push_back(pair_str(k, n) + " <- " + pair_str(in, n) + ": got " + g.str() + ", expected " + w.str());
    }
}

}  // namespace detail

// Displayed R(z) of U_A(1,0) on W_l (x) W_m, applied to one basis vector.
inline Vec<Gauss> example_r10_image(const QPoint& pt, const Rational& z, int l, int m, const Key& in) {
    Rational d = z - pt.qpow(l + m);
    Key a{0, l, 0, m}, b{1, l - 1, 0, m}, c{0, l, 1, m - 1}, e{1, l - 1, 1, m - 1};
    Vec<Gauss> r;
    auto put = [&](const Key& k, const Rational& v) {
        for (int x : k)
            if (x < 0) return;
        accumulate(r, k, Gauss(v));
    };
    if (in == a) put(a, 1);
    if (in == b) {
        put(c, (1 - pt.qpow(2 * m)) / d);
        put(b, (pt.qpow(m) * z - pt.qpow(l)) / d);
    }
    if (in == c) {
        put(c, (pt.qpow(l) * z - pt.qpow(m)) / d);
        put(b, (1 - pt.qpow(2 * l)) * z / d);
    }
    if (in == e) put(e, (1 - pt.qpow(l + m) * z) / d);
    return r;
}

inline ExampleReport reproduce_a10(const Op<Gauss>& R, const QPoint& pt, const Rational& z, int l, int m) {
    if (l < 1 || m < 1) throw std::domain_error("example needs l, m >= 1");
    ExampleReport rep;
    for (auto& in : enumerate_pair_sector(Signature::parse("10"), SectorKey::A(l, m)))
        detail::compare_image(rep, R, in, example_r10_image(pt, z, l, m, in), 2);
    return rep;
}

// Displayed R(z) of U_A(1,1,0), built from the (1,0) table through the stated embeddings.
inline ExampleReport reproduce_a110(const Op<Gauss>& R, const QPoint& pt, const Rational& z, int l, int m) {
    if (l < 2 || m < 2) throw std::domain_error("example needs l, m >= 2");
    ExampleReport rep;
    auto Q = [&](int e) { return pt.qpow(e); };
    Rational d = z - Q(l + m);
    // R10(z') applied to |a1,a2> (x) |b1,b2> with sectors read off the input
    auto r10 = [&](const Rational& zz, int a1, int a2, int b1, int b2) {
        return example_r10_image(pt, zz, a1 + a2, b1 + b2, Key{a1, a2, b1, b2});
    };
    // |a,b> (x) |c,d>  ->  insert value u at position pos in the first and w in the second factor
    auto embed = [&](const Vec<Gauss>& v, int pos, int u, int w) {
        Vec<Gauss> out;
        for (auto& [k, c] : v) {
            State a{k[0], k[1]}, b{k[2], k[3]};
            a.insert(a.begin() + pos, u);
            b.insert(b.begin() + pos, w);
            accumulate(out, concat(a, b), c);
        }
        return out;
    };
    Signature sig = Signature::parse("110");
    for (auto& in : enumerate_pair_sector(sig, SectorKey::A(l, m))) {
        State i = slice(in, 0, 3), j = slice(in, 1, 3);
        for (int pos = 0; pos <= 1; ++pos) {
            int other = 1 - pos;
            if (i[pos] != j[pos]) continue;
            Vec<Gauss> base = r10(z, i[other], i[2], j[other], j[2]);
            Rational f = i[pos] == 0 ? Rational(1) : (1 - Q(l + m) * z) / d;
            detail::compare_image(rep, R, in, embed(scaled(base, Gauss(f)), pos, i[pos], j[pos]), 3);
        }
    }
    Rational zq = z * pt.q();
    auto combo = [&](std::vector<std::tuple<Rational, Vec<Gauss>, int, int>> terms) {
        Vec<Gauss> out;
        for (auto& [c, v, u, w] : terms) axpy(out, Gauss(c), embed(v, 0, u, w));
        return out;
    };
    Key in1{0, 0, l, 1, 1, m - 2};
    detail::compare_image(rep, R, in1,
                          combo({{(Q(l) * z - Q(m)) / d, r10(zq, 0, l, 1, m - 2), 0, 1},
                                 {(1 - Q(2 * l)) * z / d, r10(zq, 0, l - 1, 1, m - 1), 1, 0}}),
                          3);
    Key in2{1, 1, l - 2, 0, 0, m};
    detail::compare_image(rep, R, in2,
                          combo({{Q(1) * (1 - Q(2 * m)) / d, r10(zq, 1, l - 1, 0, m - 1), 0, 1},
                                 {(Q(m) * z - Q(l)) / d, r10(zq, 1, l - 2, 0, m), 1, 0}}),
                          3);
    Key in3{1, 0, l - 1, 0, 1, m - 1};
    detail::compare_image(rep, R, in3,
                          combo({{Q(m - 1) * (1 - Q(2)) / d, r10(zq, 1, l - 1, 0, m - 1), 0, 1},
                                 {(Q(m) * z - Q(l)) / d, r10(zq, 0, l - 1, 1, m - 1), 1, 0},
                                 {(1 - Q(2 * m - 2)) / d, r10(zq, 0, l, 1, m - 2), 0, 1}}),
                          3);
    Key in4{0, 1, l - 1, 1, 0, m - 1};
    detail::compare_image(rep, R, in4,
                          combo({{Q(1) * (1 - Q(2 * l - 2)) * z / d, r10(zq, 1, l - 2, 0, m), 1, 0},
                                 {(Q(l) * z - Q(m)) / d, r10(zq, 1, l - 1, 0, m - 1), 0, 1},
                                 {Q(m - 1) * (1 - Q(2)) * z / d, r10(zq, 0, l - 1, 1, m - 1), 1, 0}}),
                          3);
    // expanded form of R(z)(|1,0,l-1> (x) |0,1,m-1>)
    Rational D = (Q(l + m) - z) * (Q(l + m) - Q(2) * z);
    Rational q = pt.q();
    Vec<Gauss> full;
    accumulate(full, Key{0, 0, l, 1, 1, m - 2}, Gauss((Q(2 * m) - Q(2)) * (Q(m) - Q(l) * z) / D));
    accumulate(full, Key{0, 1, l - 1, 1, 0, m - 1},
               Gauss(((Q(2) - 1) * Q(l + m) + (Q(2) - Q(2 + 2 * l) - Q(2 + 2 * m) + Q(2 * l + 2 * m)) * z) / D));
    accumulate(full, Key{1, 0, l - 1, 0, 1, m - 1}, Gauss(q * (Q(m) - Q(l) * z) * (Q(l) - Q(m) * z) / D));
    accumulate(full, Key{1, 1, l - 2, 0, 0, m}, Gauss((Q(2 * l) - Q(2)) * (Q(l) - Q(m) * z) * z / D));
    detail::compare_image(rep, R, in3, full, 3);
    return rep;
}

// Displayed gauge-transformed R(z) of U_B(1,0).
inline ExampleReport reproduce_b10(const Op<Gauss>& Rtilde, const QPoint& pt, const Rational& z) {
    ExampleReport rep;
    Rational q = pt.q(), q2 = q * q;
    Rational d1 = 1 + q * z, d2 = (1 + q * z) * (1 + q2 * z);
    auto V = [](std::vector<std::pair<Key, Rational>> t) {
        Vec<Gauss> v;
        for (auto& [k, c] : t) accumulate(v, k, Gauss(c));
        return v;
    };
    auto chk = [&](const Key& in, const Vec<Gauss>& want) { detail::compare_image(rep, Rtilde, in, want, 2); };
    chk({0, 0, 1, 0}, V({{{1, 0, 0, 0}, (1 + q) * z / d1}, {{0, 0, 1, 0}, -q * (1 - z) / d1}}));
    chk({1, 0, 0, 0}, V({{{0, 0, 1, 0}, (1 + q) / d1}, {{1, 0, 0, 0}, (1 - z) / d1}}));
    chk({1, 1, 0, 0}, V({{{0, 0, 1, 1}, (1 + q) * (1 + q2) / d2},
                         {{0, 1, 1, 0}, q * (1 + q) * (1 - z) / d2},
                         {{1, 0, 0, 1}, (1 + q) * (1 - z) / d2},
                         {{1, 1, 0, 0}, (1 - z) * (1 - q * z) / d2}}));
    chk({0, 1, 1, 0}, V({{{0, 0, 1, 1}, -q * (1 + q) * (1 - z) / d2},
                         {{0, 1, 1, 0}, -q * (1 - z) * (1 - q * z) / d2},
                         {{1, 0, 0, 1}, (1 + q) * z * (1 + q - q * (1 - q) * z) / d2},
                         {{1, 1, 0, 0}, (1 + q) * (1 - z) * z / d2}}));
    for (int i = 0; i <= 1; ++i) {
        chk({i, 0, i, 0}, V({{{i, 0, i, 0}, 1}}));
        chk({i, 1, i, 0}, V({{{i, 0, i, 1}, (1 + q) / d1}, {{i, 1, i, 0}, (1 - z) / d1}}));
        chk({i, 2, i, 0}, V({{{i, 0, i, 2}, (1 + q) * (1 + q2) / d2},
                             {{i, 1, i, 1}, (1 + q) * (1 + q2) * (1 - z) / d2},
                             {{i, 2, i, 0}, (1 - z) * (1 - q * z) / d2}}));
        chk({i, 1, i, 1}, V({{{i, 0, i, 2}, -q * (1 + q) * (1 - z) / d2},
                             {{i, 1, i, 1}, ((1 + q) * (1 + q + q2) * z - q * (q + z * z)) / d2},
                             {{i, 2, i, 0}, (1 + q) * (1 - z) * z / d2}}));
        chk({i, 0, i, 2}, V({{{i, 0, i, 2}, q2 * (1 - z) * (1 - q * z) / d2},
                             {{i, 1, i, 1}, -q * (1 + q) * (1 + q2) * (1 - z) * z / d2},
                             {{i, 2, i, 0}, (1 + q) * (1 + q2) * z * z / d2}}));
    }
    return rep;
}

}  // namespace tetra
