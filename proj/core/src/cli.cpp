#include "implode/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "implode/errors.hpp"
#include "implode/io.hpp"
#include "implode/kempf_ness.hpp"
#include "implode/moment.hpp"
#include "implode/strata.hpp"
#include "implode/toric.hpp"
#include "implode/verify.hpp"

namespace implode::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + path + "'");
    f << text;
}

std::vector<double> parse_levels(const std::string& csv) {
    std::vector<double> levels;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            levels.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ValidationError("bad level value '" + item + "'");
        }
    }
    if (levels.empty()) throw ValidationError("no levels given");
    return levels;
}

std::uint64_t seed_or_env(std::uint64_t seed, bool seed_set) {
    if (seed_set) return seed;
    if (const char* env = std::getenv("IMPLODE_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

json triple_to_json(const MomentTriple& t) {
    json doc;
    doc["levels_real"] = t.levels_real;
    json lc = json::array();
    for (const Complex& v : t.levels_complex) lc.push_back(json::array({v.real(), v.imag()}));
    doc["levels_complex"] = std::move(lc);
    doc["residual_norm"] = t.residual_norm;
    return doc;
}

GaugeSubgroup parse_subgroup(const std::string& name) {
    if (name == "h") return GaugeSubgroup::special_unitary;
    if (name == "h_t") return GaugeSubgroup::special_torus;
    if (name == "tilde_h") return GaugeSubgroup::full_unitary;
    if (name == "tilde_h_t") return GaugeSubgroup::full_torus;
    throw ValidationError("unknown gauge subgroup '" + name +
                          "' (expected h, h_t, tilde_h or tilde_h_t)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quiver models of symplectic and hyperkahler implosion"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int max_iter = 500;
    app.add_flag("--json", as_json, "emit JSON instead of tables");
    app.add_option("--tol", tol, "solver / check tolerance");
    app.add_option("--seed", seed, "random seed (falls back to IMPLODE_SEED)")
        ->each([&](const std::string&) { seed_set = true; });
    app.add_option("--max-iter", max_iter, "iteration cap for solvers");

    // sample
    auto* sample = app.add_subcommand("sample", "write a random quiver document");
    std::string s_group = "su";
    int s_n = 3;
    std::string s_dims;
    std::string s_mode = "hyperkahler";
    double s_scale = 1.0;
    bool s_isotropic = false;
    std::string s_out;
    sample->add_option("--group", s_group, "su, so or sp");
    sample->add_option("--n", s_n, "size of the top node");
    sample->add_option("--dims", s_dims, "comma-separated dims (default: full flag)");
    sample->add_option("--mode", s_mode, "symplectic or hyperkahler");
    sample->add_option("--scale", s_scale, "Gaussian scale");
    sample->add_flag("--isotropic-top", s_isotropic, "project the top map onto the isotropy quadric");
    sample->add_option("-o,--output", s_out, "output file (default stdout)");

    // eval
    auto* eval = app.add_subcommand("eval", "moment triple of a quiver file");
    std::string e_file;
    eval->add_option("file", e_file, "quiver JSON document")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "flow the real moment map to target levels");
    std::string so_file, so_target, so_gauge = "tilde_h", so_out;
    solve->add_option("file", so_file, "quiver JSON document")->required();
    solve->add_option("--target", so_target, "comma-separated target levels")->required();
    solve->add_option("--gauge", so_gauge, "h, h_t, tilde_h or tilde_h_t");
    solve->add_option("-o,--output", so_out, "solved quiver output file");

    // classify
    auto* classify = app.add_subcommand("classify", "stability verdict and stratum label");
    std::string c_file;
    classify->add_option("file", c_file, "quiver JSON document")->required();

    // strata
    auto* strata = app.add_subcommand("strata", "enumerate stratum labels");
    std::string st_group = "su";
    int st_n = 3;
    strata->add_option("--group", st_group, "su, so or sp")->required();
    strata->add_option("--n", st_n, "size of the top node")->required();

    // toric
    auto* toric = app.add_subcommand("toric", "toric level equations");
    std::string t_levels;
    std::string t_group = "su";
    toric->add_option("--levels", t_levels, "comma-separated real levels")->required();
    toric->add_option("--group", t_group, "su, so or sp");

    // verify
    auto* verify = app.add_subcommand("verify", "run a named reproduction check");
    std::string v_name;
    int v_samples = 200;
    int v_n = 3;
    verify->add_option("check", v_name,
                       "so3-quadric | sym2-fibres | nilpotent-cone | dimensions")
        ->required();
    verify->add_option("--samples", v_samples, "sample count");
    verify->add_option("--n", v_n, "group size for nilpotent-cone");

    std::vector<std::string> argv_copy = args;
    std::vector<const char*> argv;
    argv.push_back("implode");
    for (const std::string& a : argv_copy) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (*sample) {
            const GroupKind kind = kind_from_name(s_group, s_n);
            std::vector<int> dims;
            if (s_dims.empty()) {
                dims = full_flag_dims(kind, s_n);
            } else {
                for (double v : parse_levels(s_dims)) dims.push_back(static_cast<int>(v));
            }
            QuiverMode mode;
            if (s_mode == "symplectic")
                mode = QuiverMode::symplectic;
            else if (s_mode == "hyperkahler")
                mode = QuiverMode::hyperkahler;
            else
                throw ValidationError("unknown mode '" + s_mode + "'");
            const Quiver q = random_quiver(DimensionVector(kind, dims), mode,
                                           seed_or_env(seed, seed_set), s_scale, s_isotropic);
            write_output(s_out, serialize_quiver(q), out);
            return kExitOk;
        }

        if (*eval) {
            const Quiver q = parse_quiver(read_file(e_file));
            const MomentTriple t = moment_of(q);
            if (as_json) {
                out << triple_to_json(t).dump(2) << "\n";
            } else {
                out << "node  level_real";
                if (q.hyperkahler()) out << "  level_complex";
                out << "\n";
                for (std::size_t i = 0; i < t.levels_real.size(); ++i) {
                    out << std::setw(4) << i + 1 << "  " << std::setw(12) << std::setprecision(10)
                        << t.levels_real[i];
                    if (q.hyperkahler())
                        out << "  (" << t.levels_complex[i].real() << ", "
                            << t.levels_complex[i].imag() << ")";
                    out << "\n";
                }
                out << "residual_norm " << t.residual_norm << "\n";
            }
            return kExitOk;
        }

        if (*solve) {
            const Quiver q = parse_quiver(read_file(so_file));
            SolveOptions opts;
            opts.tol = tol;
            opts.max_iters = max_iter;
            opts.subgroup = parse_subgroup(so_gauge);
            opts.seed = seed_or_env(seed, seed_set);
            const SolveResult result = solve_real_moment(q, parse_levels(so_target), opts);
            json doc;
            doc["converged"] = result.report.converged;
            doc["iterations"] = result.report.iterations;
            doc["residual"] = result.report.residual;
            doc["message"] = result.report.message;
            if (as_json)
                out << doc.dump(2) << "\n";
            else
                out << (result.report.converged ? "converged" : "failed") << " after "
                    << result.report.iterations << " iterations, residual " << result.report.residual
                    << "\n";
            if (!so_out.empty()) write_output(so_out, serialize_quiver(result.quiver), out);
            if (!result.report.converged) {
                err << "solver did not reach tolerance: " << result.report.message << "\n";
                return kExitSolver;
            }
            return kExitOk;
        }

        if (*classify) {
            const Quiver q = parse_quiver(read_file(c_file));
            SolveOptions opts;
            opts.seed = seed_or_env(seed, seed_set);
            const StabilityVerdict verdict = polystable_test(q, opts);
            json doc;
            switch (verdict.status) {
                case Stability::stable:
                    doc["status"] = "stable";
                    break;
                case Stability::polystable:
                    doc["status"] = "polystable";
                    break;
                case Stability::not_polystable:
                    doc["status"] = "not_polystable";
                    break;
            }
            doc["details"] = verdict.details;
            if (verdict.status != Stability::not_polystable && !q.hyperkahler())
                doc["stratum"] = classify_stratum(q, opts).to_string();
            if (verdict.certificate) {
                json w = json::array();
                for (const auto& node : verdict.certificate->weights) w.push_back(node);
                doc["certificate_weights"] = std::move(w);
            }
            if (as_json) {
                out << doc.dump(2) << "\n";
            } else {
                out << doc["status"].get<std::string>();
                if (doc.contains("stratum")) out << "  stratum " << doc["stratum"].get<std::string>();
                out << "\n";
            }
            return kExitOk;
        }

        if (*strata) {
            const GroupKind kind = kind_from_name(st_group, st_n);
            const auto labels = enumerate_strata(kind, st_n);
            if (as_json) {
                json rows = json::array();
                for (const auto& label : labels) {
                    json row;
                    row["label"] = label.to_string();
                    row["blocks"] = label.block_sizes();
                    row["dimension"] = stratum_dimension(label);
                    rows.push_back(std::move(row));
                }
                out << rows.dump(2) << "\n";
            } else {
                out << "label        dim_C\n";
                for (const auto& label : labels)
                    out << std::left << std::setw(12) << label.to_string() << " "
                        << stratum_dimension(label) << "\n";
            }
            return kExitOk;
        }

        if (*toric) {
            const auto levels = parse_levels(t_levels);
            const int r1 = static_cast<int>(levels.size());
            const int group_n = t_group == "so" ? 2 * r1 + 1 : (t_group == "sp" ? 2 * r1 : r1 + 1);
            const auto nu2 = solve_chamber_levels(levels, kind_from_name(t_group, group_n));
            if (as_json) {
                json doc;
                doc["nu_squared"] = nu2;
                out << doc.dump(2) << "\n";
            } else {
                out << "j  |nu_i^j|^2\n";
                for (std::size_t j = 0; j < nu2.size(); ++j) {
                    out << j + 1 << "  ";
                    for (double v : nu2[j]) out << v << " ";
                    out << "\n";
                }
            }
            return kExitOk;
        }

        if (*verify) {
            VerificationReport report;
            const std::uint64_t s = seed_or_env(seed, seed_set);
            if (v_name == "so3-quadric")
                report = verify_so3_quadric(v_samples, s);
            else if (v_name == "sym2-fibres")
                report = verify_sym2_fibres(v_samples, s);
            else if (v_name == "nilpotent-cone")
                report = verify_nilpotent_cone(v_n, v_samples, s);
            else if (v_name == "dimensions")
                report = verify_dimensions();
            else
                throw ValidationError("unknown check '" + v_name + "'");
            if (as_json)
                out << report_to_json(report);
            else
                out << report.name << ": " << (report.pass ? "pass" : "FAIL")
                    << " (max error " << report.max_error << ", " << report.details << ")\n";
            return report.pass ? kExitOk : kExitSolver;
        }
    } catch (const SolverError& e) {
        err << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    err << "no subcommand given\n";
    return kExitValidation;
}

}  // namespace implode::cli
