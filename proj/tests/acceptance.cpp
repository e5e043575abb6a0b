// Runs the verification suites and prints one PASS/FAIL line per acceptance criterion.
#include "tetra/suites.hpp"

#include <iostream>

using namespace tetra;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

using Filter = std::function<bool(const CaseResult&)>;

Outcome judge(const Report& rep, const Filter& keep = nullptr) {
    Outcome o;
    long n = 0;
    for (auto& c : rep.cases) {
        if (keep && !keep(c)) continue;
        ++n;
        if (c.status == "fail") {
            if (o.ok) o.detail = "first failure: " + c.name + " residual " + c.residual;
            o.ok = false;
        }
    }
    if (n == 0) {
        o.ok = false;
        o.detail = "no cases ran";
    }
    if (o.ok) o.detail = std::to_string(n) + " cases";
    return o;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

Report run(const std::string& suite, const std::function<void(SuiteConfig&)>& tweak = nullptr) {
    SuiteConfig cfg;
    cfg.suite = suite;
    if (tweak) tweak(cfg);
    return suites::run_suite(cfg);
}

int failures = 0;

void line(int id, const std::string& what, const std::function<Outcome()>& f) {
    Outcome o;
    try {
        o = f();
    } catch (const std::exception& e) {
        o = {false, std::string("error: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << id << "] " << what << " (" << o.detail << ")" << std::endl;
}

// Count solves that reported nullity one across cases carrying solver diagnostics.
void tally_nullity(const Report& rep, long& solves, long& ones) {
    for (auto& c : rep.cases)
        if (c.diagnostics.contains("solves")) {
            solves += c.diagnostics["solves"].get<long>();
            ones += c.diagnostics["nullity_one"].get<long>();
        }
}

}  // namespace

int main() {
    Report main_rep, spec_rep;
    bool main_ok = true, spec_ok = true;
    try {
        main_rep = run("theorem-main");
    } catch (const std::exception& e) {
        main_ok = false;
        std::cout << "theorem-main suite error: " << e.what() << "\n";
    }
    try {
        spec_rep = run("spectral");
    } catch (const std::exception& e) {
        spec_ok = false;
        std::cout << "spectral suite error: " << e.what() << "\n";
    }
    auto ident = run("identities");

    line(1, "tetrahedron RRRR, all entries <= 2 and 50 random inputs with total <= 4, exact",
         [] { return judge(run("tetrahedron", [](SuiteConfig& c) { c.kind = "RRRR"; })); });
    line(2, "tetrahedron RLLL, Fock entries <= 3, exact",
         [] { return judge(run("tetrahedron", [](SuiteConfig& c) { c.kind = "RLLL"; })); });
    line(3, "3D R involution, transpose and weighted transpose, indices <= 4, exact",
         [&] { return judge(ident, [](const CaseResult& c) { return starts_with(c.name, "r-"); }); });
    line(4, "local linear identities of the 3D R and L elements, bound 3, exact",
         [&] { return judge(ident, [](const CaseResult& c) { return !starts_with(c.name, "r-") && c.name != "oscillator"; }); });
    line(5, "boundary eigen-relations, s in {1,2}, cutoff 40, 256 bits, residual < 1e-40", [] { return judge(run("boundary")); });
    line(6, "main theorem, trace side equals solver exactly, l,m <= 3, z in {3/5, 2/7}", [&] {
        if (!main_ok) return Outcome{false, "suite error"};
        return judge(main_rep, [](const CaseResult& c) { return starts_with(c.name, "trace"); });
    });
    line(7, "main theorem, boundary side equals solver, truncation 4, residual < 1e-30", [&] {
        if (!main_ok) return Outcome{false, "suite error"};
        return judge(main_rep, [](const CaseResult& c) { return starts_with(c.name, "boundary"); });
    });
    line(8, "commutativity with all generators, including signature 010", [] { return judge(run("intertwine")); });
    line(9, "Yang-Baxter, trace exact and boundary (s,t) < 1e-30", [] { return judge(run("ybe")); });
    line(10, "example tables reproduced exactly", [] { return judge(run("examples")); });
    line(11, "spectral suite: annihilation, transitions, eigenvalues, ratios, orbit spans", [&] {
        if (!spec_ok) return Outcome{false, "suite error"};
        Outcome o = judge(spec_rep);
        long skipped = 0;
        for (auto& c : spec_rep.cases)
            if (c.diagnostics.contains("skipped")) skipped += c.diagnostics["skipped"].get<long>();
        if (skipped) o.detail += ", " + std::to_string(skipped) + " relations without a valid statement skipped";
        return o;
    });
    line(12, "equivalence map across adjacent transpositions of 100", [] { return judge(run("phi-equivalence")); });
    line(13, "intertwining systems have nullity one", [&] {
        if (!main_ok || !spec_ok) return Outcome{false, "suite error"};
        long solves = 0, ones = 0;
        tally_nullity(main_rep, solves, ones);
        tally_nullity(spec_rep, solves, ones);
        return Outcome{solves > 0 && solves == ones, std::to_string(ones) + "/" + std::to_string(solves) + " solves"};
    });
    return failures == 0 ? 0 : 1;
}
