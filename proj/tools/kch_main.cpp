// Command-line front end: HC_0 ideals from braids, augmentation solving,
// KCH representations for the torus / 2-bridge / pretzel families, curve
// sampling and factor checks. Exit code 0 iff every requested check passed.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "kch/acceptance.hpp"
#include "kch/io_json.hpp"

namespace {

using kch::Cplx;

Cplx parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return Cplx(std::stod(text), 0.0);
        return Cplx(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
    } catch (const std::exception&) {
        throw kch::ParseError("bad complex literal '" + text + "' (want \"re,im\")");
    }
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        out.push_back(std::stoi(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

struct Output {
    std::string file; // empty: stdout
    bool quiet = false;

    void emit(const std::string& text) const {
        if (!file.empty()) {
            std::ofstream os(file);
            if (!os) throw kch::Error("cannot open output file " + file);
            os << text;
            return;
        }
        if (!quiet) std::cout << text;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw kch::Error("cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::vector<kch::CurvePoint> load_points(const std::string& path) {
    const std::string text = read_file(path);
    // sniff: JSON starts with '['
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '[') return kch::curve_points_from_json(kch::Json::parse(text));
        break;
    }
    return kch::curve_points_from_csv(text);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"degree-zero knot contact homology: ideals, augmentations, "
                 "KCH representations and augmentation-curve sampling"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow a subcommand

    double tol = 1e-8;
    std::uint64_t seed = 42;
    int grid_size = 25;
    std::string out_format = "json";
    Output output;
    std::string aliases_file;
    app.add_option("--tol", tol, "residual tolerance")->capture_default_str();
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--grid", grid_size, "mu-grid size")->capture_default_str();
    app.add_option("--out", out_format, "output format: json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--output", output.file, "write output to a file instead of stdout");
    app.add_option("--aliases", aliases_file, "JSON file with extra knot aliases");
    app.add_flag("--quiet", output.quiet, "suppress stdout output");

    auto aliases = [&] {
        if (aliases_file.empty()) return kch::builtin_aliases();
        return kch::aliases_from_json(kch::Json::parse(read_file(aliases_file)));
    };

    bool checks_passed = true;

    // ideal --strands N --braid "1,1,1"
    int strands = 2;
    std::string braid_csv = "1,1,1";
    auto* cmd_ideal = app.add_subcommand("ideal", "emit the HC_0 ideal generators of a braid closure");
    cmd_ideal->add_option("--strands", strands, "strand count")->required();
    cmd_ideal->add_option("--braid", braid_csv, "comma-separated signed letters")->required();
    cmd_ideal->callback([&] {
        const auto ideal = kch::ideal_generators(kch::BraidWord::parse(strands, braid_csv));
        if (out_format == "json")
            output.emit(kch::ideal_json(ideal).dump(2) + "\n");
        else
            output.emit(kch::ideal_str(ideal));
    });

    // aug solve --strands --braid --mu0 --attempts --tol --seed
    std::string mu0_text = "2,0";
    int attempts = 200;
    auto* cmd_aug = app.add_subcommand("aug", "augmentation tools");
    cmd_aug->require_subcommand(1);
    auto* cmd_solve = cmd_aug->add_subcommand("solve", "sample the augmentation fiber over mu0");
    cmd_solve->add_option("--strands", strands, "strand count")->required();
    cmd_solve->add_option("--braid", braid_csv, "comma-separated signed letters")->required();
    cmd_solve->add_option("--mu0", mu0_text, "fixed mu0 as \"re,im\"")->required();
    cmd_solve->add_option("--attempts", attempts, "random starts")->capture_default_str();
    cmd_solve->callback([&] {
        const auto ideal = kch::ideal_generators(kch::BraidWord::parse(strands, braid_csv));
        kch::SolveOptions opt;
        opt.attempts = attempts;
        opt.tol = tol;
        opt.seed = seed;
        const Cplx mu0 = parse_complex(mu0_text);
        const auto res = kch::solve_augmentations(ideal, mu0, opt);
        if (out_format == "csv") {
            std::ostringstream os;
            os.precision(17);
            os << "lambda_re,lambda_im,residual,cluster_size\n";
            for (std::size_t t = 0; t < res.solutions.size(); ++t)
                os << res.solutions[t].lambda0.real() << "," << res.solutions[t].lambda0.imag()
                   << "," << kch::is_augmentation(ideal, res.solutions[t], tol).max_abs << ","
                   << res.cluster_sizes[t] << "\n";
            output.emit(os.str());
        } else {
            output.emit(kch::solve_result_json(ideal, mu0, res).dump(2) + "\n");
        }
        checks_passed = !res.solutions.empty();
    });

    // rep torus|twobridge|pretzel
    int p = 2, q = 3, dim = 2, branch = 0, root_index = 0, twist = 2;
    auto* cmd_rep = app.add_subcommand("rep", "construct and verify a KCH representation");
    cmd_rep->require_subcommand(1);
    auto emit_report = [&](const kch::KCHRep& rep) {
        const kch::RepReport report = kch::verify_rep(rep, tol);
        const double cord = kch::cord_relation_check(rep, 200, seed);
        output.emit(kch::rep_report_json(rep, report, cord).dump(2) + "\n");
        checks_passed = report.relator_residual <= tol && cord <= tol;
    };
    auto* rep_torus_cmd = cmd_rep->add_subcommand("torus", "degree-n torus knot representation");
    rep_torus_cmd->add_option("--p", p)->required();
    rep_torus_cmd->add_option("--q", q)->required();
    rep_torus_cmd->add_option("--dim", dim, "representation degree n")->required();
    rep_torus_cmd->add_option("--mu0", mu0_text)->required();
    rep_torus_cmd->add_option("--branch", branch, "z-branch when n < p")->capture_default_str();
    rep_torus_cmd->callback(
        [&] { emit_report(kch::torus_rep(p, q, dim, parse_complex(mu0_text), branch)); });

    auto* rep_tb_cmd = cmd_rep->add_subcommand("twobridge", "Riley-root representation of K(p,q)");
    rep_tb_cmd->add_option("--p", p)->required();
    rep_tb_cmd->add_option("--q", q)->required();
    rep_tb_cmd->add_option("--mu0", mu0_text)->required();
    rep_tb_cmd->add_option("--root", root_index, "Riley root index")->capture_default_str();
    rep_tb_cmd->callback([&] {
        const Cplx mu0 = parse_complex(mu0_text);
        const auto riley = kch::riley_polynomial(p, q, mu0);
        if (root_index < 0 || root_index >= static_cast<int>(riley.roots.size()))
            throw kch::InvalidParams("root index out of range (roots: " +
                                     std::to_string(riley.roots.size()) + ")");
        emit_report(kch::two_bridge_rep(p, q, mu0, riley.beta_of_root(riley.roots[root_index])));
    });

    auto* rep_pz_cmd = cmd_rep->add_subcommand("pretzel", "(-2,3,2k+1) pretzel representation");
    rep_pz_cmd->add_option("--k", twist)->required();
    rep_pz_cmd->add_option("--mu0", mu0_text)->required();
    rep_pz_cmd->add_option("--root", root_index, "Phi_k root index")->capture_default_str();
    rep_pz_cmd->callback(
        [&] { emit_report(kch::pretzel_rep(twist, parse_complex(mu0_text), root_index)); });

    // pres --name torus:2,3
    std::string pres_spec;
    auto* cmd_pres = app.add_subcommand("pres", "print a knot-group presentation");
    cmd_pres->add_option("--name", pres_spec, "torus:p,q | twobridge:p,q | pretzel:k")
        ->required();
    cmd_pres->callback([&] {
        const kch::Presentation pres = kch::presentation_from_spec(pres_spec);
        if (out_format == "json") {
            kch::Json j;
            j["name"] = pres.name;
            j["generators"] = pres.gen_names;
            j["weights"] = pres.weights;
            kch::Json relators = kch::Json::array();
            for (const auto& r : pres.relators) relators.push_back(pres.format_word(r));
            j["relators"] = relators;
            j["meridian"] = pres.format_word(pres.meridian);
            if (pres.longitude) j["longitude"] = pres.format_word(*pres.longitude);
            output.emit(j.dump(2) + "\n");
        } else {
            std::ostringstream os;
            os << pres.name << "\n";
            for (std::size_t t = 0; t < pres.gen_names.size(); ++t)
                os << "  gen " << pres.gen_names[t] << " (weight " << pres.weights[t] << ")\n";
            for (const auto& r : pres.relators) os << "  relator " << pres.format_word(r) << "\n";
            os << "  meridian " << pres.format_word(pres.meridian) << "\n";
            if (pres.longitude) os << "  longitude " << pres.format_word(*pres.longitude) << "\n";
            output.emit(os.str());
        }
    });

    // curve torus|twobridge|pretzel|braid
    std::string dims_text = "1,2";
    auto* cmd_curve = app.add_subcommand("curve", "sample augmentation-curve points");
    cmd_curve->require_subcommand(1);
    auto emit_curve = [&](kch::CurveSample sample) {
        kch::sort_curve_points(sample.points, kch::default_mu_grid(grid_size));
        if (out_format == "csv")
            output.emit(kch::curve_points_csv(sample.points));
        else
            output.emit(kch::curve_points_json(sample.points).dump(2) + "\n");
        for (const std::string& s : sample.skipped) std::cerr << "skipped: " << s << "\n";
        checks_passed = !sample.points.empty();
    };
    auto* curve_torus_cmd = cmd_curve->add_subcommand("torus", "torus-knot curve points");
    curve_torus_cmd->add_option("--p", p)->required();
    curve_torus_cmd->add_option("--q", q)->required();
    curve_torus_cmd->add_option("--dims", dims_text, "degrees to sample (default all 1..p)");
    curve_torus_cmd->callback([&] {
        std::vector<int> dims;
        if (curve_torus_cmd->count("--dims")) {
            dims = parse_int_list(dims_text);
        } else {
            for (int n = 1; n <= p; ++n) dims.push_back(n);
        }
        emit_curve(kch::sample_torus_curve(p, q, dims, kch::default_mu_grid(grid_size), tol));
    });
    auto* curve_pz_cmd = cmd_curve->add_subcommand("pretzel", "pretzel curve points");
    curve_pz_cmd->add_option("--k", twist)->required();
    curve_pz_cmd->callback(
        [&] { emit_curve(kch::sample_pretzel_curve(twist, kch::default_mu_grid(grid_size), tol)); });
    auto* curve_tb_cmd = cmd_curve->add_subcommand("twobridge", "2-bridge curve points");
    curve_tb_cmd->add_option("--p", p)->required();
    curve_tb_cmd->add_option("--q", q)->required();
    curve_tb_cmd->callback([&] {
        kch::SolveOptions opt;
        opt.tol = tol;
        opt.seed = seed;
        emit_curve(
            kch::sample_twobridge_curve(p, q, kch::default_mu_grid(grid_size), opt, aliases()));
    });
    auto* curve_braid_cmd = cmd_curve->add_subcommand("braid", "solver curve points of a braid");
    curve_braid_cmd->add_option("--strands", strands)->required();
    curve_braid_cmd->add_option("--braid", braid_csv)->required();
    curve_braid_cmd->add_option("--attempts", attempts)->capture_default_str();
    curve_braid_cmd->callback([&] {
        kch::SolveOptions opt;
        opt.attempts = attempts;
        opt.tol = tol;
        opt.seed = seed;
        emit_curve(kch::sample_braid_curve(kch::BraidWord::parse(strands, braid_csv),
                                           kch::default_mu_grid(grid_size), opt));
    });

    // factor-check
    std::string candidate_text, points_file, torus_stable_text, torus_factor_text;
    int pretzel_factor_k = 0;
    auto* cmd_factor = app.add_subcommand(
        "factor-check", "max |c(lambda, mu)| of a candidate polynomial over sampled points");
    cmd_factor->add_option("--candidate", candidate_text, "polynomial, e.g. \"l*m^3+1\"");
    cmd_factor->add_option("--torus-stable", torus_stable_text,
                           "use the stable A-polynomial of T(p,q), e.g. \"2,3\"");
    cmd_factor->add_option("--torus-factor", torus_factor_text,
                           "use one torus factor, e.g. \"3,4,2\" for degree 2");
    cmd_factor->add_option("--pretzel-factor", pretzel_factor_k,
                           "use 1 - lambda mu^{2k+6} for this k");
    cmd_factor->add_option("--points", points_file, "curve points file (csv or json)")->required();
    cmd_factor->callback([&] {
        kch::LaurentPoly candidate;
        if (!candidate_text.empty()) {
            candidate = kch::normalize_candidate(kch::parse_laurent(candidate_text));
        } else if (!torus_stable_text.empty()) {
            const auto pq = parse_int_list(torus_stable_text);
            candidate = kch::stable_a_poly_torus(pq.at(0), pq.at(1));
        } else if (!torus_factor_text.empty()) {
            const auto pqn = parse_int_list(torus_factor_text);
            candidate = kch::torus_factor(pqn.at(0), pqn.at(1), pqn.at(2));
        } else if (cmd_factor->count("--pretzel-factor")) {
            candidate = kch::pretzel_factor(pretzel_factor_k);
        } else {
            throw kch::InvalidParams("factor-check: no candidate polynomial given");
        }
        const auto points = load_points(points_file);
        const auto res = kch::factor_residual(candidate, points);
        kch::Json out;
        out["candidate"] = candidate.str();
        out["points"] = points.size();
        out["max_abs"] = res.max_abs;
        out["tol"] = tol;
        out["pass"] = res.max_abs <= tol;
        output.emit(out.dump(2) + "\n");
        checks_passed = res.max_abs <= tol;
    });

    // verify all
    auto* cmd_verify = app.add_subcommand("verify", "run verification suites");
    cmd_verify->require_subcommand(1);
    auto* verify_all = cmd_verify->add_subcommand("all", "run every acceptance criterion");
    verify_all->callback([&] {
        std::ostringstream os;
        checks_passed = kch::run_acceptance(os);
        if (!output.quiet) std::cout << os.str();
        if (!output.file.empty()) output.emit(os.str());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const kch::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return checks_passed ? 0 : 1;
}
