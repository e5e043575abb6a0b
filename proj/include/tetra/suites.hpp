#pragma once

#include "tetra/boundary.hpp"
#include "tetra/report.hpp"
#include "tetra/spectral.hpp"

#include <random>
#include <sstream>

namespace tetra {

struct SuiteConfig {
    std::string suite;
    std::string family;  // empty: suite default
    std::string eps;     // empty: suite default list
    std::string qroot = "1/2";
    std::string z, x, y;
    std::string sector;  // "l,m"
    std::string name;    // examples suite
    std::string kind;    // tetrahedron suite: RRRR or RLLL
    int truncation = -1;
    int precision = 256;
    int bound = -1;
    int cutoff = 40;
    int s = 0, t = 0;
    unsigned seed = 1;
    std::string tol;

    Json echo() const {
        Json j;
        j["suite"] = suite;
        auto put = [&](const char* k, const std::string& v) {
            if (!v.empty()) j[k] = v;
        };
        put("family", family);
        put("eps", eps);
        j["qroot"] = qroot;
        put("z", z);
        put("x", x);
        put("y", y);
        put("sector", sector);
        put("name", name);
        put("kind", kind);
        if (truncation >= 0) j["truncation"] = truncation;
        j["precision"] = precision;
        if (bound >= 0) j["bound"] = bound;
        j["cutoff"] = cutoff;
        if (s) j["s"] = s;
        if (t) j["t"] = t;
        j["seed"] = seed;
        put("tol", tol);
        return j;
    }

    QPoint qpoint() const { return QPoint(parse_rational(qroot)); }
    int bound_or(int d) const { return bound >= 0 ? bound : d; }
    int truncation_or(int d) const { return truncation >= 0 ? truncation : d; }
    Real tol_or(const char* d) const { return Real(tol.empty() ? std::string(d) : tol); }

    std::vector<std::string> sigs_or(std::vector<std::string> d) const {
        if (eps.empty()) return d;
        return {eps};
    }

    // spectral parameter z: --z, or --x/--y, or the given defaults
    std::vector<Rational> z_or(std::vector<Rational> d) const {
        if (!z.empty()) return {parse_rational(z)};
        if (!x.empty() || !y.empty()) {
            Rational xv = parse_rational(x.empty() ? "1" : x), yv = parse_rational(y.empty() ? "1" : y);
            if (xv == 0 || yv == 0) throw std::domain_error("spectral parameters must be nonzero");
            return {xv / yv};
        }
        return d;
    }

    std::pair<int, int> sector_or(int lmax) const {
        if (sector.empty()) return {-1, lmax};
        auto c = sector.find(',');
        if (c == std::string::npos) throw std::domain_error("sector must read l,m");
        return {std::stoi(sector.substr(0, c)), std::stoi(sector.substr(c + 1))};
    }
};

namespace suites {

inline Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(1, 9), den(2, 11);
    int a = num(rng), b = den(rng);
    Rational r(a, b);
    r.canonicalize();
    return r;
}

// Sector list: the single configured sector or all nonempty sectors with l, m <= lmax.
inline std::vector<std::pair<int, int>> sectors(const SuiteConfig& cfg, const Signature& sig, int lmax) {
    auto [a, b] = cfg.sector_or(lmax);
    if (a >= 0) return {{a, b}};
    std::vector<std::pair<int, int>> out;
    for (int l = 0; l <= lmax; ++l)
        for (int m = 0; m <= lmax; ++m)
            if (!enumerate_pair_sector(sig, SectorKey::A(l, m)).empty()) out.emplace_back(l, m);
    return out;
}

inline std::string sector_name(int l, int m) { return "(" + std::to_string(l) + "," + std::to_string(m) + ")"; }

inline void tetrahedron_group(Report& rep, const ThreeD& td, TetraKind kind, const std::string& name,
                              const std::vector<State>& inputs) {
    run_case(rep, name, [&](CaseResult& c) {
        long bad = 0;
        for (auto& in : inputs) {
            auto r = tetrahedron_residual(td, kind, in);
            if (!r.empty() && bad++ == 0) {
                c.residual = r.begin()->second.str();
                c.diagnostics["first_failure"] = state_str(in);
            }
        }
        c.status = bad ? "fail" : "pass";
        c.diagnostics["inputs"] = inputs.size();
        c.diagnostics["failures"] = bad;
    });
}

inline Report tetrahedron(const SuiteConfig& cfg) {
    Report rep{"tetrahedron", cfg.echo(), {}};
    ThreeD td{cfg.qpoint()};
    std::string kind = cfg.kind.empty() ? "both" : cfg.kind;
    if (kind != "both" && kind != "RRRR" && kind != "RLLL") throw std::domain_error("kind must be RRRR or RLLL");
    if (kind != "RLLL") {
        int eb = cfg.bound_or(2);
        std::vector<State> all;
        State st(6, 0);
        std::function<void(int)> fill = [&](int p) {
            if (p == 6) {
                all.push_back(st);
                return;
            }
            for (st[p] = 0; st[p] <= eb; ++st[p]) fill(p + 1);
        };
        fill(0);
        tetrahedron_group(rep, td, TetraKind::RRRR, "RRRR entries<=" + std::to_string(eb), all);
        std::mt19937 rng(cfg.seed);
        std::vector<State> rnd;
        std::uniform_int_distribution<int> tot(0, 4), slot(0, 5);
        for (int r = 0; r < 50; ++r) {
            State s(6, 0);
            for (int u = tot(rng); u > 0; --u) ++s[slot(rng)];
            rnd.push_back(s);
        }
        tetrahedron_group(rep, td, TetraKind::RRRR, "RRRR random total<=4", rnd);
    }
    if (kind != "RRRR") {
        int fb = cfg.bound_or(3);
        std::vector<State> all;
        for (int bits = 0; bits < 8; ++bits)
            for (int a = 0; a <= fb; ++a)
                for (int b = 0; b <= fb; ++b)
                    for (int c = 0; c <= fb; ++c) all.push_back({bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, a, b, c});
        tetrahedron_group(rep, td, TetraKind::RLLL, "RLLL fock<=" + std::to_string(fb), all);
    }
    return rep;
}

inline Report identities(const SuiteConfig& cfg) {
    Report rep{"identities", cfg.echo(), {}};
    ThreeD td{cfg.qpoint()};
    const QPoint& pt = td.qpoint();
    int b = cfg.bound_or(3);
    for (auto& name : local_identity_names())
        run_case(rep, name, [&](CaseResult& c) {
            auto sw = sweep_identity(td, name, b);
            c.diagnostics["checked"] = sw.checked;
            c.diagnostics["failed"] = sw.failed;
            if (sw.failed) {
                c.status = "fail";
                c.residual = sw.first_residual;
            }
        });
    int B = cfg.bound_or(4);
    auto six = [&](auto&& f) {
        long bad = 0, n = 0;
        for (int a = 0; a <= B; ++a)
            for (int bb = 0; bb <= B; ++bb)
                for (int cc = 0; cc <= B; ++cc)
                    for (int i = 0; i <= B; ++i)
                        for (int j = 0; j <= B; ++j)
                            for (int k = 0; k <= B; ++k, ++n)
                                if (!f(a, bb, cc, i, j, k)) ++bad;
        return std::pair<long, long>{n, bad};
    };
    auto finish = [](CaseResult& c, std::pair<long, long> nb) {
        c.diagnostics["checked"] = nb.first;
        c.diagnostics["failed"] = nb.second;
        if (nb.second) {
            c.status = "fail";
            c.residual = "nonzero";
        }
    };
    run_case(rep, "r-transpose", [&](CaseResult& c) {
        finish(c, six([&](int a, int bb, int cc, int i, int j, int k) { return td.R(a, bb, cc, i, j, k) == td.R(cc, bb, a, k, j, i); }));
    });
    run_case(rep, "r-weighted-transpose", [&](CaseResult& c) {
        finish(c, six([&](int a, int bb, int cc, int i, int j, int k) {
                   return td.R(a, bb, cc, i, j, k) * qp(pt, 2, a) * qp(pt, 2, bb) * qp(pt, 2, cc) ==
                          qp(pt, 2, i) * qp(pt, 2, j) * qp(pt, 2, k) * td.R(i, j, k, a, bb, cc);
               }));
    });
    run_case(rep, "r-involution", [&](CaseResult& c) {
        long n = 0, bad = 0;
        for (int i = 0; i <= B; ++i)
            for (int j = 0; j <= B; ++j)
                for (int k = 0; k <= B; ++k, ++n) {
                    Vec<Gauss> v{{Key{i, j, k}, Gauss(1)}};
                    if (apply_local(td, 0, {0, 1, 2}, apply_local(td, 0, {0, 1, 2}, v)) != v) ++bad;
                }
        finish(c, {n, bad});
    });
    run_case(rep, "oscillator", [&](CaseResult& c) {
        if (!check_oscillator_relations(pt, 2 * B)) {
            c.status = "fail";
            c.residual = "nonzero";
        }
    });
    return rep;
}

inline Report boundary(const SuiteConfig& cfg) {
    Report rep{"boundary", cfg.echo(), {}};
    ThreeD td{cfg.qpoint()};
    std::vector<std::pair<Rational, Rational>> xy;
    if (!cfg.x.empty() || !cfg.y.empty()) {
        xy.emplace_back(parse_rational(cfg.x.empty() ? "1" : cfg.x), parse_rational(cfg.y.empty() ? "1" : cfg.y));
    } else {
        std::mt19937 rng(cfg.seed);
        xy.emplace_back(Rational(1), Rational(1));
        Rational a = random_rational(rng), b = random_rational(rng);
        xy.emplace_back(a, b);
    }
    std::vector<int> ss = cfg.s ? std::vector<int>{cfg.s} : std::vector<int>{1, 2};
    Real tol = cfg.tol_or("1e-40");
    int bound = cfg.bound_or(6);
    for (int s : ss)
        for (auto& [x, y] : xy)
            run_case(rep, "s=" + std::to_string(s) + " x=" + x.get_str() + " y=" + y.get_str(), [&](CaseResult& c) {
                auto r = verify_boundary_eigenrelation(td, s, x, y, cfg.cutoff, cfg.precision, bound);
                c.residual = residual_str(r.max_residual());
                c.diagnostics["components"] = r.components;
                c.diagnostics["tail_bound"] = residual_str(r.tail_bound);
                c.diagnostics["exact_zero"] = r.exact_zero;
                if (!(r.max_residual() < tol) || !r.exact_zero) c.status = "fail";
            });
    return rep;
}

inline std::vector<Key> triple_keys(const Signature& sig, int l1, int l2, int l3) {
    std::vector<Key> out;
    for (auto& a : enumerate_Wl(sig, l1))
        for (auto& b : enumerate_Wl(sig, l2))
            for (auto& c : enumerate_Wl(sig, l3)) out.push_back(concat(concat(a, b), c));
    return out;
}

inline std::vector<Key> triple_keys_upto(const Signature& sig, int N) {
    std::vector<Key> out;
    auto all = enumerate_upto(sig, N);
    for (auto& a : all)
        for (auto& b : all)
            for (auto& c : all)
                if (total(a) + total(b) + total(c) <= N) out.push_back(concat(concat(a, b), c));
    return out;
}

inline std::vector<Key> interior_keys(const Signature& sig, int N) {
    std::vector<Key> inputs;
    for (auto& s : b_sectors(sig, N - 1))
        for (auto& k : enumerate_pair_sector(sig, SectorKey::B(s))) inputs.push_back(k);
    return inputs;
}

inline Report ybe(const SuiteConfig& cfg) {
    Report rep{"ybe", cfg.echo(), {}};
    ThreeD td{cfg.qpoint()};
    Rational x = cfg.x.empty() ? Rational(2, 7) : parse_rational(cfg.x);
    Rational y = cfg.y.empty() ? Rational(3, 5) : parse_rational(cfg.y);
    for (auto& s : cfg.sigs_or({"10", "0", "11", "00"})) {
        Signature sig = Signature::parse(s);
        run_case(rep, "trace sig=" + s + " sectors (1,1,1)", [&](CaseResult& c) {
            auto Sx = build_Str(td, sig, Gauss(x), 1, 1);
            auto Sxy = build_Str(td, sig, Gauss(x * y), 1, 1);
            auto Sy = build_Str(td, sig, Gauss(y), 1, 1);
            Real r = verify_ybe(Sx, Sxy, Sy, sig.n(), triple_keys(sig, 1, 1, 1));
            c.residual = residual_str(r);
            if (r != 0) c.status = "fail";
        });
    }
    int N = cfg.truncation_or(3);
    Real tol = cfg.tol_or("1e-30");
    PrecisionScope ps(cfg.precision);
    for (auto& s : cfg.sigs_or({"10"})) {
        Signature sig = Signature::parse(s);
        auto keys = triple_keys_upto(sig, N);
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b)
                run_case(rep, "boundary sig=" + s + " (s,t)=(" + std::to_string(a) + "," + std::to_string(b) + ")",
                         [&](CaseResult& c) {
                             SstInfo info;
                             auto Sx = build_Sst(td, sig, x, a, b, N, cfg.precision, &info);
                             auto Sxy = build_Sst(td, sig, x * y, a, b, N, cfg.precision, &info);
                             auto Sy = build_Sst(td, sig, y, a, b, N, cfg.precision, &info);
                             Real r = verify_ybe(Sx, Sxy, Sy, sig.n(), keys);
                             c.residual = residual_str(r);
                             c.diagnostics["max_tail"] = residual_str(info.max_tail);
                             c.diagnostics["inputs"] = keys.size();
                             if (!(r < tol)) c.status = "fail";
                         });
    }
    return rep;
}

inline Report theorem_main(const SuiteConfig& cfg) {
    Report rep{"theorem-main", cfg.echo(), {}};
    ThreeD td{cfg.qpoint()};
    const QPoint& pt = td.qpoint();
    auto zs = cfg.z_or({Rational(3, 5), Rational(2, 7)});
    bool want_a = cfg.family.empty() || cfg.family == "A";
    bool want_b = cfg.family.empty() || cfg.family == "B";
    if (want_a)
        for (auto& s : cfg.sigs_or({"10", "01", "11", "110", "100", "00"})) {
            Signature sig = Signature::parse(s);
            run_case(rep, "trace sig=" + s, [&](CaseResult& c) {
                long solves = 0, nullity_one = 0, mism = 0, max_unknowns = 0;
                for (auto& z : zs)
                    for (auto [l, m] : sectors(cfg, sig, cfg.bound_or(3))) {
                        auto S = build_Str(td, sig, Gauss(z), l, m);
                        auto res = solve_intertwiner_A(sig, pt, Gauss(z), Gauss(1), l, m);
                        ++solves;
                        if (res.nullity == 1) ++nullity_one;
                        max_unknowns = std::max(max_unknowns, res.unknowns);
                        if (!op_equal(S, res.R) && mism++ == 0)
                            c.diagnostics["first_failure"] = "z=" + z.get_str() + " sector " + sector_name(l, m);
                    }
                c.diagnostics["solves"] = solves;
                c.diagnostics["nullity_one"] = nullity_one;
                c.diagnostics["max_unknowns"] = max_unknowns;
                c.diagnostics["mismatched_sectors"] = mism;
                if (mism) {
                    c.status = "fail";
                    c.residual = "nonzero";
                }
            });
        }
    if (want_b) {
        PrecisionScope ps(cfg.precision);
        Real tol = cfg.tol_or("1e-30");
        int N = cfg.truncation_or(4);
        for (auto& s : cfg.sigs_or({"10", "01", "11", "00"})) {
            Signature sig = Signature::parse(s);
            run_case(rep, "boundary sig=" + s, [&](CaseResult& c) {
                Real worst(0);
                long solves = 0, nullity_one = 0;
                for (auto& z : zs) {
                    auto res = solve_intertwiner_B(sig, pt, Gauss(z), Gauss(1), N);
                    ++solves;
                    if (res.nullity == 1) ++nullity_one;
                    SstInfo info;
                    auto S = build_Sst(td, sig, z, 1, 1, N, cfg.precision, &info);
                    Real d1 = op_distance(S, convert_op<Cplx>(res.Rtilde));
                    Real d2 = op_distance(gauge_tilde(pt, sig.n(), S, GaugeSide::S), convert_op<Cplx>(res.R));
                    worst = std::max({worst, d1, d2});
                    c.diagnostics["max_tail"] = residual_str(info.max_tail);
                }
                c.diagnostics["solves"] = solves;
                c.diagnostics["nullity_one"] = nullity_one;
                c.residual = residual_str(worst);
                if (!(worst < tol)) c.status = "fail";
            });
        }
    }
    return rep;
}

inline Report intertwine(const SuiteConfig& cfg) {
    Report rep{"intertwine", cfg.echo(), {}};
    ThreeD td{cfg.qpoint()};
    const QPoint& pt = td.qpoint();
    Rational z = cfg.z_or({Rational(2, 7)})[0];
    bool want_a = cfg.family.empty() || cfg.family == "A";
    bool want_b = cfg.family.empty() || cfg.family == "B";
    if (want_a)
        for (auto& s : cfg.sigs_or({"10", "01", "11", "110", "100", "00", "010"})) {
            Signature sig = Signature::parse(s);
            Rep rx{Family::A, sig, pt, Gauss(z)}, ry{Family::A, sig, pt, Gauss(1)};
            run_case(rep, "trace sig=" + s, [&](CaseResult& c) {
                Real worst(0);
                for (auto [l, m] : sectors(cfg, sig, cfg.bound_or(2))) {
                    auto S = build_Str(td, sig, Gauss(z), l, m);
                    std::string w;
                    Real r = intertwining_residual(rx, ry, S, enumerate_pair_sector(sig, SectorKey::A(l, m)), &w);
                    if (r > worst) {
                        worst = r;
                        c.diagnostics["worst"] = w + " sector " + sector_name(l, m);
                    }
                }
                c.residual = residual_str(worst);
                if (worst != 0) c.status = "fail";
            });
        }
    if (want_b) {
        PrecisionScope ps(cfg.precision);
        Real tol = cfg.tol_or("1e-30");
        int N = cfg.truncation_or(3);
        for (auto& s : cfg.sigs_or({"10", "01", "11", "00", "010"})) {
            Signature sig = Signature::parse(s);
            Rep rx{Family::B, sig, pt, Gauss(z)}, ry{Family::B, sig, pt, Gauss(1)};
            run_case(rep, "boundary sig=" + s, [&](CaseResult& c) {
                auto St = gauge_tilde(pt, sig.n(), build_Sst(td, sig, z, 1, 1, N, cfg.precision), GaugeSide::S);
                auto inputs = interior_keys(sig, N);
                std::string w;
                Real r = intertwining_residual(rx, ry, St, inputs, &w);
                c.residual = residual_str(r);
                c.diagnostics["inputs"] = inputs.size();
                c.diagnostics["worst"] = w;
                if (!(r < tol)) c.status = "fail";
            });
        }
    }
    return rep;
}

inline Report relations(const SuiteConfig& cfg) {
    Report rep{"relations", cfg.echo(), {}};
    QPoint pt = cfg.qpoint();
    Gauss x(cfg.z_or({Rational(3, 5)})[0]);
    int N = cfg.truncation_or(3);
    std::vector<std::pair<Family, std::string>> runs;
    for (auto fam : {Family::A, Family::B}) {
        if (!cfg.family.empty() && parse_family(cfg.family) != fam) continue;
        auto def = fam == Family::A ? std::vector<std::string>{"10", "01", "11", "00", "110", "010", "100", "000"}
                                    : std::vector<std::string>{"0", "1", "10", "01", "11", "00", "110", "010"};
        for (auto& s : cfg.sigs_or(def)) runs.emplace_back(fam, s);
    }
    for (auto& [fam, s] : runs)
        run_case(rep, family_str(fam) + " sig=" + s, [&](CaseResult& c) {
            auto r = verify_defining_relations(fam, Signature::parse(s), pt, x, N);
            c.diagnostics["checked"] = r.checked;
            c.diagnostics["failed"] = r.failed;
            if (r.failed) {
                c.status = "fail";
                c.residual = "nonzero";
                c.diagnostics["first_failure"] = r.first_failure;
            }
        });
    return rep;
}

inline Report phi_equivalence_suite(const SuiteConfig& cfg) {
    Report rep{"phi-equivalence", cfg.echo(), {}};
    ThreeD td{cfg.qpoint()};
    const QPoint& pt = td.qpoint();
    Rational z = cfg.z_or({Rational(2, 7)})[0];
    // adjacent transpositions within the orbit of the base signature
    std::string base = cfg.eps.empty() ? "100" : cfg.eps;
    std::vector<std::pair<std::string, int>> moves;
    std::set<std::string> seen{base};
    std::vector<std::string> todo{base};
    while (!todo.empty()) {
        std::string s = todo.back();
        todo.pop_back();
        for (int p = 0; p + 1 < static_cast<int>(s.size()); ++p) {
            if (s[p] == s[p + 1]) continue;
            moves.emplace_back(s, p);
            std::string w = s;
            std::swap(w[p], w[p + 1]);
            if (seen.insert(w).second) todo.push_back(w);
        }
    }
    std::sort(moves.begin(), moves.end());
    auto swapped = [](std::string s, int p) {
        std::swap(s[p], s[p + 1]);
        return s;
    };
    for (auto& [s, p] : moves)
        run_case(rep, "trace sig=" + s + " pos=" + std::to_string(p), [&](CaseResult& c) {
            Signature a = Signature::parse(s), b = Signature::parse(swapped(s, p));
            long bad = 0;
            for (auto [l, m] : sectors(cfg, a, cfg.bound_or(2)))
                if (!op_equal(phi_equivalence(pt, a, p, build_Str(td, a, Gauss(z), l, m)), build_Str(td, b, Gauss(z), l, m)))
                    ++bad;
            if (bad) {
                c.status = "fail";
                c.residual = "nonzero";
            }
        });
    PrecisionScope ps(cfg.precision);
    Real tol = cfg.tol_or("1e-30");
    int N = cfg.truncation_or(3);
    for (auto& [s, p] : moves)
        run_case(rep, "boundary sig=" + s + " pos=" + std::to_string(p), [&](CaseResult& c) {
            Signature a = Signature::parse(s), b = Signature::parse(swapped(s, p));
            auto lhs = phi_equivalence(pt, a, p, build_Sst(td, a, z, 1, 1, N, cfg.precision));
            auto rhs = build_Sst(td, b, z, 1, 1, N, cfg.precision);
            Real r = op_distance(lhs, rhs);
            c.residual = residual_str(r);
            if (!(r < tol)) c.status = "fail";
        });
    return rep;
}

inline void spectral_cases(Report& rep, const SuiteConfig& cfg, Family fam, const std::string& s) {
    QPoint pt = cfg.qpoint();
    Signature sig = Signature::parse(s);
    int n = sig.n();
    auto c = spectral_case(fam, sig);
    auto zs = cfg.z_or(generic_z_values());
    Gauss x(Rational(3, 5)), y(Rational(7, 2));
    std::string tag = family_str(fam) + " sig=" + s;
    bool isB = c == SpectralCase::B;
    int lmax = cfg.bound_or(isB ? 4 : 3);
    std::vector<std::pair<int, int>> secs;
    if (isB)
        for (int l = 0; l <= lmax; ++l) secs.emplace_back(l, 0);
    else
        secs = sectors(cfg, sig, lmax);
    run_case(rep, tag + " annihilation", [&](CaseResult& cr) {
        long n_checked = 0, bad = 0;
        Rep rx{fam, sig, pt, x}, ry{fam, sig, pt, y};
        for (auto [l, m] : secs) {
            auto [lo, hi] = singular_range(c, n, l, m);
            if (isB) lo = hi = l;
            for (int i = lo; i <= hi; ++i, ++n_checked)
                if (!annihilation_residual(c, rx, ry, singular_vector(c, pt, n, l, m, i)).empty()) ++bad;
        }
        cr.diagnostics["vectors"] = n_checked;
        if (bad) {
            cr.status = "fail";
            cr.residual = "nonzero";
        }
    });
    run_case(rep, tag + " transitions", [&](CaseResult& cr) {
        long n_checked = 0, bad = 0, skipped = 0;
        Json notes = Json::array();
        for (auto [l, m] : secs) {
            auto [lo, hi] = singular_range(c, n, l, m);
            int from = lo, to = hi;
            if (c == SpectralCase::AllOnes) to = hi - 1;
            if (c == SpectralCase::KappaN1) from = 1;
            if (isB) from = to = l;
            for (int i = from; i <= to; ++i)
                for (auto& chk : verify_transition(c, sig, pt, x, y, l, m, i)) {
                    if (chk.skipped) {
                        ++skipped;
                        std::string note = chk.name + ": " + chk.note;
                        if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(note);
                        continue;
                    }
                    ++n_checked;
                    if (!chk.residual.empty() && bad++ == 0)
                        cr.diagnostics["first_failure"] = chk.name + " sector " + sector_name(l, m) + " index " + std::to_string(i);
                }
        }
        cr.diagnostics["relations"] = n_checked;
        cr.diagnostics["skipped"] = skipped;
        cr.diagnostics["notes"] = notes;
        if (bad) {
            cr.status = "fail";
            cr.residual = "nonzero";
        }
    });
    run_case(rep, tag + " eigenvalues", [&](CaseResult& cr) {
        long n_checked = 0, bad = 0, solves = 0, nullity_one = 0;
        for (auto& z : zs) {
            Op<Gauss> RB;
            if (isB) {
                auto res = solve_intertwiner_B(sig, pt, Gauss(z), Gauss(1), lmax);
                ++solves;
                nullity_one += res.nullity == 1;
                RB = std::move(res.R);
            }
            for (auto [l, m] : secs) {
                Op<Gauss> R = RB;
                if (!isB) {
                    auto res = solve_intertwiner_A(sig, pt, Gauss(z), Gauss(1), l, m);
                    ++solves;
                    nullity_one += res.nullity == 1;
                    R = std::move(res.R);
                }
                auto sr = spectral_check(R, c, pt, n, Gauss(z), l, m);
                n_checked += static_cast<long>(sr.eigen.size());
                if (!sr.ok() && bad++ == 0) {
                    std::string msg = "z=" + z.get_str() + " sector " + sector_name(l, m);
                    for (auto& e : sr.eigen)
                        if (!e.match())
                            msg += " index " + std::to_string(e.index) + " observed " + e.observed.str() + " expected " +
                                   e.expected.str();
                    for (auto& f : sr.ratio_failures) msg += " " + f;
                    cr.diagnostics["first_failure"] = msg;
                }
            }
        }
        cr.diagnostics["eigenvalues"] = n_checked;
        cr.diagnostics["solves"] = solves;
        cr.diagnostics["nullity_one"] = nullity_one;
        if (bad) {
            cr.status = "fail";
            cr.residual = "nonzero";
        }
    });
    run_case(rep, tag + " orbit span", [&](CaseResult& cr) {
        long bad = 0;
        if (isB) {
            auto sp = orbit_span(c, sig, pt, x, y, lmax, 0);
            cr.diagnostics["rank"] = sp.rank;
            cr.diagnostics["dimension"] = sp.dimension;
            bad = sp.rank != sp.dimension;
        } else {
            for (auto [l, m] : secs) {
                auto sp = orbit_span(c, sig, pt, x, y, l, m);
                if (sp.rank != sp.dimension) ++bad;
            }
            cr.diagnostics["sectors"] = secs.size();
        }
        if (bad) {
            cr.status = "fail";
            cr.residual = "rank deficit";
        }
    });
}

inline Report spectral(const SuiteConfig& cfg) {
    Report rep{"spectral", cfg.echo(), {}};
    run_case(rep, "j-vector recursions", [&](CaseResult& c) {
        QPoint pt = cfg.qpoint();
        long bad = 0;
        for (int r = 1; r <= 5; ++r)
            for (int j = 0; j <= r; ++j) {
                auto J = j_vector(pt, r, j);
                Vec<Gauss> a = boxtimes(j_vector(pt, r - 1, j - 1), r - 1, fock_pair(1, 0), 1);
                axpy(a, Gauss(pt.qpow(j)), boxtimes(j_vector(pt, r - 1, j), r - 1, fock_pair(0, 1), 1));
                Vec<Gauss> b = boxtimes(fock_pair(0, 1), 1, j_vector(pt, r - 1, j), r - 1);
                axpy(b, Gauss(pt.qpow(r - j)), boxtimes(fock_pair(1, 0), 1, j_vector(pt, r - 1, j - 1), r - 1));
                bad += (J != a) + (J != b);
            }
        if (bad) {
            c.status = "fail";
            c.residual = "nonzero";
        }
    });
    std::vector<std::pair<Family, std::string>> runs;
    if (!cfg.eps.empty()) {
        runs.emplace_back(cfg.family.empty() ? Family::A : parse_family(cfg.family), cfg.eps);
    } else {
        if (cfg.family.empty() || cfg.family == "A")
            for (auto s : {"11", "111", "10", "110", "100", "00"}) runs.emplace_back(Family::A, s);
        if (cfg.family.empty() || cfg.family == "B")
            for (auto s : {"10", "110"}) runs.emplace_back(Family::B, s);
    }
    for (auto& [fam, s] : runs) spectral_cases(rep, cfg, fam, s);
    return rep;
}

inline Report examples(const SuiteConfig& cfg) {
    Report rep{"examples", cfg.echo(), {}};
    QPoint pt = cfg.qpoint();
    auto zs = cfg.z_or(generic_z_values());
    std::vector<std::string> names = cfg.name.empty() ? std::vector<std::string>{"A10", "A110", "B10"}
                                                      : std::vector<std::string>{cfg.name};
    auto record = [](CaseResult& c, const ExampleReport& r) {
        c.diagnostics["compared"] = r.compared;
        c.diagnostics["mismatches"] = r.mismatches.size();
        if (!r.ok()) {
            c.status = "fail";
            c.residual = r.mismatches.empty() ? "nothing compared" : r.mismatches.front();
        }
    };
    for (auto& name : names) {
        if (name != "A10" && name != "A110" && name != "B10") throw std::domain_error("unknown example '" + name + "'");
        for (auto& z : zs) {
            if (name == "B10") {
                run_case(rep, "B10 z=" + z.get_str(), [&](CaseResult& c) {
                    auto res = solve_intertwiner_B(Signature::parse("10"), pt, Gauss(z), Gauss(1), 4);
                    record(c, reproduce_b10(res.Rtilde, pt, z));
                });
                continue;
            }
            bool a110 = name == "A110";
            std::vector<std::pair<int, int>> secs;
            auto [l0, m0] = cfg.sector_or(0);
            if (l0 >= 0)
                secs = {{l0, m0}};
            else if (a110)
                secs = {{2, 2}};
            else
                secs = {{1, 1}, {2, 2}, {2, 3}};
            for (auto [l, m] : secs)
                run_case(rep, name + " " + sector_name(l, m) + " z=" + z.get_str(), [&](CaseResult& c) {
                    Signature sig = Signature::parse(a110 ? "110" : "10");
                    auto R = solve_intertwiner_A(sig, pt, Gauss(z), Gauss(1), l, m).R;
                    record(c, a110 ? reproduce_a110(R, pt, z, l, m) : reproduce_a10(R, pt, z, l, m));
                });
        }
    }
    return rep;
}

inline std::vector<std::string> suite_names() {
    return {"tetrahedron", "boundary", "ybe", "intertwine", "theorem-main", "spectral",
            "identities", "relations", "phi-equivalence", "examples"};
}

inline Report run_suite(const SuiteConfig& cfg) {
    const std::string& s = cfg.suite;
    if (s == "tetrahedron") return tetrahedron(cfg);
    if (s == "boundary") return boundary(cfg);
    if (s == "ybe") return ybe(cfg);
    if (s == "intertwine") return intertwine(cfg);
    if (s == "theorem-main") return theorem_main(cfg);
    if (s == "spectral") return spectral(cfg);
    if (s == "identities") return identities(cfg);
    if (s == "relations") return relations(cfg);
    if (s == "phi-equivalence") return phi_equivalence_suite(cfg);
    if (s == "examples") return examples(cfg);
    throw std::domain_error("unknown suite '" + s + "'");
}

}  // namespace suites
}  // namespace tetra
