#include "CLI11.hpp"
#include "tetra/suites.hpp"

#include <fstream>
#include <iostream>

using namespace tetra;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInternal = 3 };

struct ComputeArgs {
    std::string kind;
    std::string indices;
};

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

void add_common(CLI::App* app, SuiteConfig& cfg) {
    app->add_option("--family", cfg.family, "A or B");
    app->add_option("--eps", cfg.eps, "signature bit string, e.g. 10");
    app->add_option("--qroot", cfg.qroot, "exact square root of q");
    app->add_option("--z", cfg.z, "spectral parameter z = x/y");
    app->add_option("--x", cfg.x, "spectral parameter x");
    app->add_option("--y", cfg.y, "spectral parameter y");
    app->add_option("--sector", cfg.sector, "sector l,m");
    app->add_option("--truncation", cfg.truncation, "total occupation bound for family B");
    app->add_option("--precision", cfg.precision, "float precision in bits");
    app->add_option("--tol", cfg.tol, "float tolerance");
    app->add_option("--seed", cfg.seed, "seed for random inputs");
    app->add_option("--bound", cfg.bound, "index or sector bound");
    app->add_option("--cutoff", cfg.cutoff, "series cutoff for boundary vectors");
    app->add_option("--s", cfg.s, "boundary vector index s");
    app->add_option("--t", cfg.t, "boundary vector index t");
}

void write_dump(const std::string& path, const std::function<void(std::ostream&)>& f) {
    if (path.empty()) {
        f(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::domain_error("cannot open " + path);
    f(os);
}

int run_compute(const SuiteConfig& cfg, const ComputeArgs& ca, const std::string& dump_path) {
    ThreeD td{cfg.qpoint()};
    const QPoint& pt = td.qpoint();
    std::map<std::string, std::string> header{{"kind", ca.kind}, {"qroot", cfg.qroot}};
    if (ca.kind == "threed-element") {
        auto v = parse_ints(ca.indices);
        if (v.size() != 6) throw std::domain_error("--indices needs a,b,c,i,j,k");
        std::cout << td.R(v[0], v[1], v[2], v[3], v[4], v[5]).get_str() << "\n";
        return kPass;
    }
    Signature sig = Signature::parse(cfg.eps.empty() ? "10" : cfg.eps);
    Rational z = cfg.z_or({Rational(3, 5)})[0];
    header["eps"] = sig.str();
    header["z"] = z.get_str();
    int n = sig.n();
    if (ca.kind == "rmatrix-trace") {
        auto [l, m] = cfg.sector_or(1);
        if (l < 0) l = m;
        header["sector"] = std::to_string(l) + "," + std::to_string(m);
        auto S = build_Str(td, sig, Gauss(z), l, m);
        write_dump(dump_path, [&](std::ostream& os) { dump_op(os, S, n, header); });
        return kPass;
    }
    if (ca.kind == "rmatrix-boundary") {
        int N = cfg.truncation_or(2), s = cfg.s ? cfg.s : 1, t = cfg.t ? cfg.t : 1;
        header["truncation"] = std::to_string(N);
        header["s,t"] = std::to_string(s) + "," + std::to_string(t);
        PrecisionScope ps(cfg.precision);
        auto S = build_Sst(td, sig, z, s, t, N, cfg.precision);
        write_dump(dump_path, [&](std::ostream& os) { dump_op(os, S, n, header); });
        return kPass;
    }
    if (ca.kind == "rmatrix-solver") {
        Family fam = cfg.family.empty() ? Family::A : parse_family(cfg.family);
        header["family"] = family_str(fam);
        SolverResult res;
        if (fam == Family::A) {
            auto [l, m] = cfg.sector_or(1);
            if (l < 0) l = m;
            header["sector"] = std::to_string(l) + "," + std::to_string(m);
            res = solve_intertwiner_A(sig, pt, Gauss(z), Gauss(1), l, m);
        } else {
            int N = cfg.truncation_or(2);
            header["truncation"] = std::to_string(N);
            header["gauge"] = "tilde";
            res = solve_intertwiner_B(sig, pt, Gauss(z), Gauss(1), N);
            res.R = res.Rtilde;
        }
        header["nullity"] = std::to_string(res.nullity);
        write_dump(dump_path, [&](std::ostream& os) { dump_op(os, res.R, n, header); });
        return kPass;
    }
    throw std::domain_error("unknown compute kind '" + ca.kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tetrahedron-equation layer reductions, quantum R matrices and their verification"};
    app.require_subcommand(1);
    SuiteConfig cfg;
    std::string json_path, dump_path;
    ComputeArgs ca;

    auto* verify = app.add_subcommand("verify", "run a verification suite and emit a JSON report");
    verify->add_option("--suite", cfg.suite, "suite name")->required()->check(CLI::IsMember(suites::suite_names()));
    verify->add_option("--name", cfg.name, "example name for the examples suite");
    verify->add_option("--kind", cfg.kind, "RRRR or RLLL for the tetrahedron suite");
    verify->add_option("--json", json_path, "write the report to this path");
    add_common(verify, cfg);

    auto* compute = app.add_subcommand("compute", "compute an R matrix dump or a single 3D R element");
    compute->add_option("kind", ca.kind, "rmatrix-trace | rmatrix-boundary | rmatrix-solver | threed-element")
        ->required()
        ->check(CLI::IsMember({"rmatrix-trace", "rmatrix-boundary", "rmatrix-solver", "threed-element"}));
    compute->add_option("--indices", ca.indices, "a,b,c,i,j,k for threed-element");
    compute->add_option("--dump", dump_path, "write the dump to this path");
    add_common(compute, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (compute->parsed()) return run_compute(cfg, ca, dump_path);
        Report rep = suites::run_suite(cfg);
        std::string text = rep.to_json().dump(2);
        std::cout << text << "\n";
        if (!json_path.empty()) {
            std::ofstream os(json_path);
            if (!os) throw std::domain_error("cannot open " + json_path);
            os << text << "\n";
        }
        return rep.passed() ? kPass : kFail;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kInternal;
    } catch (const PoleError& e) {
        std::cerr << "pole: " << e.what() << "\n";
        return kInternal;
    } catch (const std::domain_error& e) {
        std::cerr << "bad configuration: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad configuration: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
