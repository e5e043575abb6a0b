#pragma once

#include "tetra/scalars.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tetra {

using State = std::vector<int>;
// Concatenated occupation tuple on a tensor power of W.
using Key = std::vector<int>;

template <class T>
using Vec = std::map<Key, T>;
// Column storage: input basis key -> image vector.
template <class T>
using Op = std::map<Key, Vec<T>>;

struct Signature {
    std::vector<int> eps;

    Signature() = default;
    explicit Signature(std::vector<int> e) : eps(std::move(e)) {
        if (eps.empty()) throw std::invalid_argument("empty signature");
        for (int b : eps)
            if (b != 0 && b != 1) throw std::invalid_argument("signature entries must be bits");
    }
    static Signature parse(const std::string& s) {
        std::vector<int> e;
        for (char ch : s) {
            if (ch == ',' || ch == ' ') continue;
            if (ch != '0' && ch != '1') throw std::invalid_argument("bad signature '" + s + "'");
            e.push_back(ch - '0');
        }
        return Signature(e);
    }

    int n() const { return static_cast<int>(eps.size()); }
    int cap(int i) const { return eps[i] ? 1 : INT_MAX; }
    bool all_ones() const { return std::all_of(eps.begin(), eps.end(), [](int b) { return b == 1; }); }
    bool all_zeros() const { return std::all_of(eps.begin(), eps.end(), [](int b) { return b == 0; }); }
    bool admits(const State& m) const {
        if (static_cast<int>(m.size()) != n()) return false;
        for (int i = 0; i < n(); ++i)
            if (m[i] < 0 || m[i] > cap(i)) return false;
        return true;
    }
    std::string str() const {
        std::string s;
        for (int b : eps) s += char('0' + b);
        return s;
    }
    friend bool operator==(const Signature& a, const Signature& b) { return a.eps == b.eps; }
};

inline int total(const State& m) { return std::accumulate(m.begin(), m.end(), 0); }

inline Key concat(const State& a, const State& b) {
    Key k(a);
    k.insert(k.end(), b.begin(), b.end());
    return k;
}

inline State slice(const Key& k, int part, int n) { return State(k.begin() + part * n, k.begin() + (part + 1) * n); }

inline State unit(int n, int i, int mult = 1) {
    State s(n, 0);
    s[i] = mult;
    return s;
}

inline std::string state_str(const State& m) {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
    return s;
}

inline std::string pair_str(const Key& k, int n) {
    return state_str(slice(k, 0, n)) + " | " + state_str(slice(k, 1, n));
}

namespace detail {
inline void fill_Wl(const Signature& sig, int slot, int left, State& cur, std::vector<State>& out) {
    if (slot == sig.n()) {
        if (left == 0) out.push_back(cur);
        return;
    }
    int hi = std::min(left, sig.cap(slot));
    for (int v = 0; v <= hi; ++v) {
        cur[slot] = v;
        fill_Wl(sig, slot + 1, left - v, cur, out);
    }
    cur[slot] = 0;
}
}  // namespace detail

// States of total occupation l, lexicographic.
inline std::vector<State> enumerate_Wl(const Signature& sig, int l) {
    if (l < 0) throw std::domain_error("negative occupation");
    std::vector<State> out;
    State cur(sig.n(), 0);
    detail::fill_Wl(sig, 0, l, cur, out);
    return out;
}

// All states with total occupation <= N, grouped by total then lexicographic.
inline std::vector<State> enumerate_upto(const Signature& sig, int N) {
    std::vector<State> out;
    for (int l = 0; l <= N; ++l) {
        auto w = enumerate_Wl(sig, l);
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

struct SectorKey {
    enum class Kind { A, B, Parity };
    Kind kind = Kind::A;
    int l = 0;
    int m = 0;
    State s;

    static SectorKey A(int l, int m) { return {Kind::A, l, m, {}}; }
    static SectorKey B(State s) { return {Kind::B, 0, 0, std::move(s)}; }
    static SectorKey Parity(int l, int m) { return {Kind::Parity, l & 1, m & 1, {}}; }

    std::string str() const {
        switch (kind) {
            case Kind::A: return "(" + std::to_string(l) + "," + std::to_string(m) + ")";
            case Kind::B: return "[" + state_str(s) + "]";
            default: return "parity(" + std::to_string(l) + "," + std::to_string(m) + ")";
        }
    }
};

// Pairs (a,b) belonging to a sector; Parity sectors need a bound on |a|+|b|.
inline std::vector<Key> enumerate_pair_sector(const Signature& sig, const SectorKey& key, int max_total = -1) {
    std::vector<Key> out;
    int n = sig.n();
    switch (key.kind) {
        case SectorKey::Kind::A: {
            if (key.l < 0 || key.m < 0) throw std::domain_error("negative sector label");
            auto L = enumerate_Wl(sig, key.l);
            auto M = enumerate_Wl(sig, key.m);
            for (auto& a : L)
                for (auto& b : M) out.push_back(concat(a, b));
            break;
        }
        case SectorKey::Kind::B: {
            if (static_cast<int>(key.s.size()) != n) throw std::domain_error("sector vector length mismatch");
            for (int v : key.s)
                if (v < 0) throw std::domain_error("negative sector entry");
            State a(n, 0);
            // odometer over a_i in [0, min(s_i, cap_i)]
            while (true) {
                State b(n);
                bool ok = true;
                for (int i = 0; i < n; ++i) {
                    b[i] = key.s[i] - a[i];
                    if (b[i] > sig.cap(i)) ok = false;
                }
                if (ok) out.push_back(concat(a, b));
                int i = n - 1;
                while (i >= 0) {
                    if (a[i] < std::min(key.s[i], sig.cap(i))) {
                        ++a[i];
                        break;
                    }
                    a[i] = 0;
                    --i;
                }
                if (i < 0) break;
            }
            break;
        }
        case SectorKey::Kind::Parity: {
            if (max_total < 0) throw std::domain_error("parity sector needs a truncation");
            for (int l = key.l; l <= max_total; l += 2)
                for (int m = key.m; l + m <= max_total; m += 2) {
                    auto part = enumerate_pair_sector(sig, SectorKey::A(l, m));
                    out.insert(out.end(), part.begin(), part.end());
                }
            std::sort(out.begin(), out.end());
            break;
        }
    }
    return out;
}

// Sum vectors s with |s| <= N that carry at least one pair state.
inline std::vector<State> b_sectors(const Signature& sig, int N) {
    std::vector<State> out;
    for (int t = 0; t <= N; ++t)
        for (auto& s : enumerate_Wl(Signature(std::vector<int>(sig.n(), 0)), t)) {
            bool ok = true;
            for (int i = 0; i < sig.n(); ++i)
                if (sig.eps[i] && s[i] > 2) ok = false;
            if (ok) out.push_back(s);
        }
    return out;
}

inline State add(const State& a, const State& b) {
    State r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline State sub(const State& a, const State& b) {
    State r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

// Vector/operator helpers shared by all modules.
template <class T>
void accumulate(Vec<T>& v, const Key& k, const T& x) {
    if (is_zero(x)) return;
    auto it = v.find(k);
    if (it == v.end()) {
        v.emplace(k, x);
        return;
    }
    it->second += x;
    if (is_zero(it->second)) v.erase(it);
}

template <class T>
void axpy(Vec<T>& y, const T& a, const Vec<T>& x) {
    for (auto& [k, v] : x) accumulate(y, k, a * v);
}

template <class T>
Vec<T> scaled(const Vec<T>& x, const T& a) {
    Vec<T> r;
    axpy(r, a, x);
    return r;
}

template <class T>
Vec<T> difference(const Vec<T>& a, const Vec<T>& b) {
    Vec<T> r = a;
    axpy(r, T(-1), b);
    return r;
}

template <class T>
Vec<T> apply_op(const Op<T>& op, const Vec<T>& x) {
    Vec<T> r;
    for (auto& [k, v] : x) {
        auto it = op.find(k);
        if (it != op.end()) axpy(r, v, it->second);
    }
    return r;
}

template <class T>
T entry(const Op<T>& op, const Key& out, const Key& in) {
    auto c = op.find(in);
    if (c == op.end()) return T(0);
    auto e = c->second.find(out);
    return e == c->second.end() ? T(0) : e->second;
}

template <class T>
Real max_magnitude(const Vec<T>& v) {
    Real m(0);
    for (auto& [k, x] : v) {
        Real a = magnitude(x);
        if (a > m) m = a;
    }
    return m;
}

template <class T>
Op<T> compose(const Op<T>& A, const Op<T>& B) {
    Op<T> r;
    for (auto& [in, col] : B) {
        Vec<T> img = apply_op(A, col);
        if (!img.empty()) r.emplace(in, std::move(img));
    }
    return r;
}

// Largest |A - B| over all entries.
template <class T>
Real op_distance(const Op<T>& A, const Op<T>& B) {
    Real m(0);
    auto upd = [&](const Vec<T>& d) {
        Real a = max_magnitude(d);
        if (a > m) m = a;
    };
    for (auto& [in, col] : A) {
        auto it = B.find(in);
        upd(it == B.end() ? col : difference(col, it->second));
    }
    for (auto& [in, col] : B)
        if (!A.count(in)) upd(col);
    return m;
}

template <class T>
bool op_equal(const Op<T>& A, const Op<T>& B) {
    auto strip = [](const Op<T>& X) {
        Op<T> r;
        for (auto& [k, c] : X)
            if (!c.empty()) r.emplace(k, c);
        return r;
    };
    return strip(A) == strip(B);
}

template <class To, class From>
Vec<To> convert_vec(const Vec<From>& v) {
    Vec<To> r;
    for (auto& [k, x] : v) r.emplace(k, lift<To>(x));
    return r;
}

template <class To, class From>
Op<To> convert_op(const Op<From>& op) {
    Op<To> r;
    for (auto& [k, c] : op) r.emplace(k, convert_vec<To>(c));
    return r;
}

}  // namespace tetra
