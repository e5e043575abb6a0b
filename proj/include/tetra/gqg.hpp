#pragma once

#include "tetra/layer.hpp"
#include "tetra/scalars.hpp"
#include "tetra/spaces.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tetra {

enum class Family { A, B };

inline Family parse_family(const std::string& s) {
    if (s == "A" || s == "a") return Family::A;
    if (s == "B" || s == "b") return Family::B;
    throw std::invalid_argument("family must be A or B");
}

inline std::string family_str(Family f) { return f == Family::A ? "A" : "B"; }

// q_i for slot i in 1..n.
inline Rational q_slot(const QPoint& pt, const Signature& sig, int i) {
    return sig.eps[i - 1] ? Rational(-1 / pt.q()) : pt.q();
}

struct CartanData {
    Family family;
    int ntilde;
    std::vector<std::vector<Rational>> D;
    std::vector<Gauss> r;
};

inline int ntilde_of(Family fam, const Signature& sig) { return fam == Family::A ? sig.n() - 1 : sig.n(); }

// Slots {i, i+1} attached to node i (1-based; 0 stands for n in family A).
inline std::vector<int> node_slots(Family fam, int n, int i) {
    std::vector<int> s;
    for (int k : {i, i + 1}) {
        if (fam == Family::A) s.push_back(((k - 1) % n + n) % n + 1);
        else if (k >= 1 && k <= n) s.push_back(k);
    }
    return s;
}

inline CartanData cartan_data(Family fam, const Signature& sig, const QPoint& pt) {
    int n = sig.n(), nt = ntilde_of(fam, sig);
    if (nt < 1) throw std::domain_error("rank must be at least 1");
    CartanData cd{fam, nt, std::vector<std::vector<Rational>>(nt + 1, std::vector<Rational>(nt + 1, Rational(1))), {}};
    for (int i = 0; i <= nt; ++i)
        for (int j = 0; j <= nt; ++j) {
            auto si = node_slots(fam, n, i), sj = node_slots(fam, n, j);
            Rational d(1);
            for (int k : si)
                if (std::find(sj.begin(), sj.end(), k) != sj.end()) d *= rat_pow(q_slot(pt, sig, k), i == j ? 1 : -1);
            cd.D[i][j] = d;
        }
    for (int i = 0; i <= nt; ++i) cd.r.push_back(fam == Family::B && (i == 0 || i == nt) ? pt.p() : Gauss(pt.q()));
    return cd;
}

struct Generator {
    char kind;  // 'e', 'f', 'k', or 'K' for k^{-1}
    int index;
    std::string str() const { return (kind == 'K' ? std::string("k^-1") : std::string(1, kind)) + "_" + std::to_string(index); }
};

// Representation pi_x of U_A or U_B on W (family A keeps |m| fixed).
struct Rep {
    Family family;
    Signature sig;
    QPoint pt;
    Gauss x;

    int ntilde() const { return ntilde_of(family, sig); }

    Gauss k_eigen(int i, const State& m) const {
        int n = sig.n();
        auto qpow_slot = [&](int slot, int e) { return Gauss(rat_pow(q_slot(pt, sig, slot), e)); };
        if (family == Family::B && i == 0) return Gauss(1) / pt.p() * qpow_slot(1, m[0]);
        if (family == Family::B && i == n) return pt.p() * qpow_slot(n, -m[n - 1]);
        auto s = node_slots(family, n, i);
        return qpow_slot(s[0], -m[s[0] - 1]) * qpow_slot(s[1], m[s[1] - 1]);
    }

    Vec<Gauss> act(const Generator& g, const State& m) const {
        int n = sig.n();
        Vec<Gauss> out;
        if (g.index < 0 || g.index > ntilde()) throw std::domain_error("generator index out of range");
        if (g.kind == 'k' || g.kind == 'K') {
            Gauss ev = k_eigen(g.index, m);
            out.emplace(m, g.kind == 'k' ? ev : Gauss(1) / ev);
            return out;
        }
        auto emit = [&](State t, const Gauss& c) {
            if (!sig.admits(t) || c.is_zero()) return;
            accumulate(out, t, c);
        };
        auto qi = [&](int v) { return Gauss(qint(pt, v)); };
        bool e = g.kind == 'e';
        if (g.kind != 'e' && g.kind != 'f') throw std::domain_error("unknown generator kind");
        int i = g.index;
        if (family == Family::B && i == 0) {
            State t = m;
            if (e) {
                t[0] += 1;
                emit(t, x);
            } else {
                t[0] -= 1;
                emit(t, qi(m[0]) / x);
            }
            return out;
        }
        if (family == Family::B && i == n) {
            State t = m;
            if (e) {
                t[n - 1] -= 1;
                emit(t, qi(m[n - 1]));
            } else {
                t[n - 1] += 1;
                emit(t, Gauss(1));
            }
            return out;
        }
        auto s = node_slots(family, n, i);
        int a = s[0] - 1, b = s[1] - 1;
        Gauss xf = (family == Family::A && i == 0) ? x : Gauss(1);
        State t = m;
        if (e) {
            t[a] -= 1;
            t[b] += 1;
            emit(t, xf * qi(m[a]));
        } else {
            t[a] += 1;
            t[b] -= 1;
            emit(t, qi(m[b]) / xf);
        }
        return out;
    }

    Vec<Gauss> act(const Generator& g, const Vec<Gauss>& v) const {
        Vec<Gauss> out;
        for (auto& [m, c] : v) axpy(out, c, act(g, m));
        return out;
    }
};

enum class Coproduct { Delta, Opposite };

// (pi_x (x) pi_y) of Delta(g) or Delta'(g) on a pair key.
inline Vec<Gauss> coproduct_apply(const Rep& rx, const Rep& ry, const Generator& g, Coproduct which, const Key& key) {
    int n = rx.sig.n();
    State u = slice(key, 0, n), v = slice(key, 1, n);
    Vec<Gauss> out;
    auto tensor = [&](const Vec<Gauss>& A, const Vec<Gauss>& B) {
        for (auto& [a, ca] : A)
            for (auto& [b, cb] : B) accumulate(out, concat(a, b), ca * cb);
    };
    Vec<Gauss> one_u{{u, Gauss(1)}}, one_v{{v, Gauss(1)}};
    Generator k{'k', g.index}, ki{'K', g.index};
    bool opp = which == Coproduct::Opposite;
    switch (g.kind) {
        case 'k':
        case 'K': tensor(rx.act(g, u), ry.act(g, v)); break;
        case 'e':
            if (!opp) {
                tensor(one_u, ry.act(g, v));
                tensor(rx.act(g, u), ry.act(k, v));
            } else {
                tensor(rx.act(g, u), one_v);
                tensor(rx.act(k, u), ry.act(g, v));
            }
            break;
        case 'f':
            if (!opp) {
                tensor(rx.act(g, u), one_v);
                tensor(rx.act(ki, u), ry.act(g, v));
            } else {
                tensor(one_u, ry.act(g, v));
                tensor(rx.act(g, u), ry.act(ki, v));
            }
            break;
        default: throw std::domain_error("unknown generator kind");
    }
    return out;
}

inline Vec<Gauss> coproduct_apply(const Rep& rx, const Rep& ry, const Generator& g, Coproduct which, const Vec<Gauss>& x) {
    Vec<Gauss> out;
    for (auto& [k, c] : x) axpy(out, c, coproduct_apply(rx, ry, g, which, k));
    return out;
}

struct RelationReport {
    long checked = 0;
    long failed = 0;
    std::string first_failure;
};

// Defining relations on every basis state with |m| <= N (the representations need no truncation).
inline RelationReport verify_defining_relations(Family fam, const Signature& sig, const QPoint& pt, const Gauss& x, int N) {
    if (N < 0) throw std::domain_error("truncation must be nonnegative");
    Rep rep{fam, sig, pt, x};
    CartanData cd = cartan_data(fam, sig, pt);
    RelationReport rr;
    auto check = [&](const Vec<Gauss>& d, const std::string& what, const State& m) {
        ++rr.checked;
        if (!d.empty()) {
            if (!rr.failed) rr.first_failure = what + " on |" + state_str(m) + ">";
            ++rr.failed;
        }
    };
    int nt = cd.ntilde;
    for (auto& m : enumerate_upto(sig, N)) {
        Vec<Gauss> v{{m, Gauss(1)}};
        for (int i = 0; i <= nt; ++i) {
            Generator k{'k', i}, ki{'K', i};
            check(difference(rep.act(k, rep.act(ki, v)), v), "k k^-1", m);
            check(difference(rep.act(ki, rep.act(k, v)), v), "k^-1 k", m);
            for (int j = 0; j <= nt; ++j) {
                Generator kj{'k', j}, ej{'e', j}, fj{'f', j}, ei{'e', i};
                check(difference(rep.act(k, rep.act(kj, v)), rep.act(kj, rep.act(k, v))), "[k,k]", m);
                check(difference(rep.act(k, rep.act(ej, v)), scaled(rep.act(ej, rep.act(k, v)), Gauss(cd.D[i][j]))),
                      "k e", m);
                check(difference(rep.act(k, rep.act(fj, v)), scaled(rep.act(fj, rep.act(k, v)), Gauss(1 / cd.D[i][j]))),
                      "k f", m);
                Vec<Gauss> comm = difference(rep.act(ei, rep.act(fj, v)), rep.act(fj, rep.act(ei, v)));
                if (i == j) {
                    Vec<Gauss> rhs = difference(rep.act(k, v), rep.act(ki, v));
                    rhs = scaled(rhs, Gauss(1) / (cd.r[i] - Gauss(1) / cd.r[i]));
                    comm = difference(comm, rhs);
                }
                check(comm, "[e_" + std::to_string(i) + ",f_" + std::to_string(j) + "]", m);
            }
        }
    }
    return rr;
}

// Exact sparse elimination for a homogeneous system; rows are kept with leading entry 1.
class SparseNullspace {
public:
    using Row = std::map<int, Gauss>;

    explicit SparseNullspace(int unknowns) : unknowns_(unknowns) {}

    void add(Row row) {
        ++equations_;
        while (!row.empty()) {
            auto lead = row.begin();
            int c = lead->first;
            auto p = pivots_.find(c);
            if (p == pivots_.end()) {
                Gauss inv = Gauss(1) / lead->second;
                for (auto& [k, v] : row) v *= inv;
                pivots_.emplace(c, std::move(row));
                return;
            }
            Gauss f = lead->second;
            for (auto& [k, v] : p->second) {
                auto it = row.find(k);
                if (it == row.end()) row.emplace(k, -(f * v));
                else {
                    it->second -= f * v;
                    if (it->second.is_zero()) row.erase(it);
                }
            }
        }
    }

    int rank() const { return static_cast<int>(pivots_.size()); }
    int nullity() const { return unknowns_ - rank(); }
    long equations() const { return equations_; }

    // The nullspace vector with the single free unknown set to one.
    std::vector<Gauss> solve() const {
        if (nullity() != 1) throw std::runtime_error("nullity is " + std::to_string(nullity()) + ", expected 1");
        std::vector<Gauss> x(unknowns_, Gauss(0));
        for (int c = 0; c < unknowns_; ++c)
            if (!pivots_.count(c)) x[c] = Gauss(1);
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            Gauss s(0);
            for (auto& [k, v] : it->second)
                if (k != it->first) s -= v * x[k];
            x[it->first] = s;
        }
        return x;
    }

private:
    int unknowns_;
    long equations_ = 0;
    std::map<int, Row> pivots_;
};

struct SolverResult {
    Op<Gauss> R;
    Op<Gauss> Rtilde;  // family B only
    long unknowns = 0;
    long equations = 0;
    int rank = 0;
    int nullity = 0;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline SolverResult solve_system(const Rep& rx, const Rep& ry, const std::vector<std::vector<Key>>& sectors, int N) {
    int n = rx.sig.n();
    std::map<std::pair<Key, Key>, int> index;  // (out, in) -> unknown
    std::map<Key, int> sector_of;
    std::vector<std::pair<Key, Key>> names;
    for (size_t s = 0; s < sectors.size(); ++s)
        for (auto& v : sectors[s]) {
            sector_of[v] = static_cast<int>(s);
            for (auto& u : sectors[s]) {
                index.emplace(std::make_pair(u, v), static_cast<int>(names.size()));
                names.emplace_back(u, v);
            }
        }
    auto in_range = [&](const Key& w) {
        return N < 0 || total(add(slice(w, 0, n), slice(w, 1, n))) <= N;
    };
    SparseNullspace sys(static_cast<int>(names.size()));
    for (int r = 0; r <= rx.ntilde(); ++r)
        for (char kind : {'e', 'f'}) {
            Generator g{kind, r};
            for (size_t s = 0; s < sectors.size(); ++s)
                for (auto& v : sectors[s]) {
                    std::map<Key, SparseNullspace::Row> rows;
                    bool bad = false;
                    for (auto& u : sectors[s])
                        for (auto& [w, d] : coproduct_apply(rx, ry, g, Coproduct::Opposite, u)) {
                            if (!in_range(w)) continue;
                            rows[w][index.at({u, v})] += d;
                        }
                    for (auto& [vp, c] : coproduct_apply(rx, ry, g, Coproduct::Delta, v)) {
                        if (!in_range(vp)) continue;
                        auto sit = sector_of.find(vp);
                        if (sit == sector_of.end()) {
                            bad = true;
                            break;
                        }
                        for (auto& w : sectors[sit->second]) rows[w][index.at({w, vp})] -= c;
                    }
                    if (bad) throw SolverError("image outside the modelled sectors");
                    for (auto& [w, row] : rows) {
                        for (auto it = row.begin(); it != row.end();) it = it->second.is_zero() ? row.erase(it) : std::next(it);
                        if (!row.empty()) sys.add(std::move(row));
                    }
                }
        }
    SolverResult res;
    res.unknowns = static_cast<long>(names.size());
    res.equations = sys.equations();
    res.rank = sys.rank();
    res.nullity = sys.nullity();
    if (res.nullity != 1)
        throw SolverError("intertwiner nullity " + std::to_string(res.nullity) + " (expected 1) over " +
                          std::to_string(res.unknowns) + " unknowns");
    auto x = sys.solve();
    for (size_t k = 0; k < names.size(); ++k)
        if (!x[k].is_zero()) res.R[names[k].second][names[k].first] = x[k];
    return res;
}

inline void normalize_at(Op<Gauss>& R, const Key& v) {
    Gauss d = entry(R, v, v);
    if (d.is_zero()) throw SolverError("normalization entry vanishes");
    Gauss inv = Gauss(1) / d;
    for (auto& [in, col] : R)
        for (auto& [out, val] : col) val *= inv;
}

}  // namespace detail

// Family A quantum R matrix on W_l (x) W_m at spectral parameters x, y.
inline SolverResult solve_intertwiner_A(const Signature& sig, const QPoint& pt, const Gauss& x, const Gauss& y, int l, int m) {
    Rep rx{Family::A, sig, pt, x}, ry{Family::A, sig, pt, y};
    if (rx.ntilde() < 1) throw std::domain_error("family A needs n >= 2");
    std::map<State, std::vector<Key>> by_sum;
    for (auto& k : enumerate_pair_sector(sig, SectorKey::A(l, m)))
        by_sum[add(slice(k, 0, sig.n()), slice(k, 1, sig.n()))].push_back(k);
    std::vector<std::vector<Key>> sectors;
    for (auto& [s, ks] : by_sum) sectors.push_back(ks);
    auto res = detail::solve_system(rx, ry, sectors, -1);
    int n = sig.n();
    Key v;
    if (sig.all_ones()) {
        State el(n, 0), em(n, 0);
        for (int k = n - l; k < n; ++k) el[k] = 1;
        for (int k = n - m; k < n; ++k) em[k] = 1;
        v = concat(el, em);
    } else {
        int i = fock_normalization_slot(sig);
        v = concat(unit(n, i, l), unit(n, i, m));
    }
    detail::normalize_at(res.R, v);
    return res;
}

// Family B quantum R matrix on W (x) W truncated to sectors |s| <= N; also returns the gauge-transformed R~.
inline SolverResult solve_intertwiner_B(const Signature& sig, const QPoint& pt, const Gauss& x, const Gauss& y, int N) {
    Rep rx{Family::B, sig, pt, x}, ry{Family::B, sig, pt, y};
    std::vector<std::vector<Key>> sectors;
    for (auto& s : b_sectors(sig, N)) sectors.push_back(enumerate_pair_sector(sig, SectorKey::B(s)));
    auto res = detail::solve_system(rx, ry, sectors, N);
    int n = sig.n();
    Key vac(2 * n, 0);
    detail::normalize_at(res.R, vac);
    res.Rtilde = gauge_tilde(pt, n, res.R, GaugeSide::R);
    return res;
}

inline std::vector<Rational> generic_z_values() { return {Rational(3, 5), Rational(2, 7), Rational(5, 9)}; }

// Solve at the first generic z that succeeds; the chosen z is written to z_used.
template <class F>
SolverResult solve_with_fallback(F&& solve, Rational* z_used) {
    std::string last;
    for (auto& z : generic_z_values()) {
        try {
            auto r = solve(z);
            if (z_used) *z_used = z;
            return r;
        } catch (const SolverError& e) {
            last = e.what();
        } catch (const std::domain_error& e) {
            last = e.what();
        }
    }
    throw SolverError("no generic z succeeded: " + last);
}

// Max residual of Delta'(g) S - S Delta(g) over k, e, f generators on the given inputs.
template <class T>
Real intertwining_residual(const Rep& rx, const Rep& ry, const Op<T>& S, const std::vector<Key>& inputs,
                           std::string* worst = nullptr) {
    Real m(0);
    for (int r = 0; r <= rx.ntilde(); ++r)
        for (char kind : {'k', 'e', 'f'}) {
            Generator g{kind, r};
            for (auto& v : inputs) {
                Vec<Gauss> dv = coproduct_apply(rx, ry, g, Coproduct::Delta, v);
                for (auto& [k, c] : dv)
                    if (!S.count(k)) throw std::domain_error("input not interior: column " + pair_str(k, rx.sig.n()) + " missing");
                auto it = S.find(v);
                Vec<T> Sv = it == S.end() ? Vec<T>{} : it->second;
                Vec<T> lhs;
                for (auto& [w, c] : Sv) axpy(lhs, c, convert_vec<T>(coproduct_apply(rx, ry, g, Coproduct::Opposite, w)));
                Vec<T> rhs = apply_op(S, convert_vec<T>(dv));
                Real d = max_magnitude(difference(lhs, rhs));
                if (d > m) {
                    m = d;
                    if (worst) *worst = g.str() + " on " + pair_str(v, rx.sig.n());
                }
            }
        }
    return m;
}

}  // namespace tetra
