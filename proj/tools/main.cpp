#include "commands.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace te;
using namespace te::cli;

namespace {

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--tol", cfg.tol, "tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--trials", cfg.trials, "random trials per check")->check(CLI::Range(1, 1 << 30));
    sub->add_flag("--json", cfg.json, "JSON output");
    sub->add_option("-o,--output", cfg.output, "write to a file instead of stdout");
}

Vec2 parse_normal(const std::string& s) {
    std::istringstream in(s);
    double x, y;
    char comma;
    if (!(in >> x >> comma >> y) || comma != ',' || !(in >> std::ws).eof())
        throw InputError("--normal expects nx,ny");
    return {x, y};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermoelectric exact relations toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify-algebras", "closure, subalgebra, chain and key checks");
    add_common(verify, cfg);
    verify->add_flag("--corrupt-fixture", vopt.corrupt_fixture, "negative control")->group("");

    ErOptions eopt;
    auto* er = app.add_subcommand("er", "exact relation membership of a tensor");
    add_common(er, cfg);
    er->add_option("--er", eopt.er_id, "relation id")->required();
    er->add_option("file", eopt.file, "tensor JSON");
    er->add_flag("--sample", eopt.sample, "test a seeded member sample instead of a file");
    er->add_option("--perturb", eopt.perturb, "add to L(0,0) before testing");

    MixOptions lopt, topt;
    std::string lnormal, tnormal;
    double lf = 0, tf = 0;
    auto* lam = app.add_subcommand("laminate", "effective tensor of a laminate");
    add_common(lam, cfg);
    lam->add_option("file", lopt.file, "laminate JSON")->required();
    auto* lf_opt = lam->add_option("--f", lf, "volume fraction of the first phase");
    auto* ln_opt = lam->add_option("--normal", lnormal, "lamination normal nx,ny");

    auto* two = app.add_subcommand("two-phase", "two isotropic phases");
    add_common(two, cfg);
    two->add_option("file", topt.file, "pair JSON")->required();
    auto* tf_opt = two->add_option("--f", tf, "volume fraction of phase 1");
    auto* tn_opt = two->add_option("--normal", tnormal, "lamination normal nx,ny");

    PolyOptions popt;
    auto* poly = app.add_subcommand("polycrystal", "isotropic polycrystal of one crystallite");
    add_common(poly, cfg);
    poly->add_option("file", popt.file, "tensor JSON")->required();
    poly->add_flag("--all-roots", popt.all_roots, "list every root of the scalar equation");

    std::string zfile;
    auto* zt = app.add_subcommand("zt", "figure of merit");
    add_common(zt, cfg);
    zt->add_option("file", zfile, "material or tensor JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    std::ostringstream buf;
    int code = kPass;
    try {
        if (*lf_opt) lopt.f = lf;
        if (*ln_opt) lopt.normal = parse_normal(lnormal);
        if (*tf_opt) topt.f = tf;
        if (*tn_opt) topt.normal = parse_normal(tnormal);

        if (verify->parsed()) {
            code = cmd_verify_algebras(cfg, vopt, buf);
        } else if (er->parsed()) {
            if (!eopt.sample && eopt.file.empty()) throw InputError("er: give a tensor file or --sample");
            code = cmd_er(cfg, eopt, buf);
        } else if (lam->parsed()) {
            code = cmd_laminate(cfg, lopt, buf);
        } else if (two->parsed()) {
            code = cmd_two_phase(cfg, topt, buf);
        } else if (poly->parsed()) {
            code = cmd_polycrystal(cfg, popt, buf);
        } else if (zt->parsed()) {
            code = cmd_zt(cfg, zfile, buf);
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomainError;
    }

    if (cfg.output.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(cfg.output);
        if (!f) {
            std::cerr << "input error: cannot write " << cfg.output << "\n";
            return kInputError;
        }
        f << buf.str();
    }
    return code;
}
