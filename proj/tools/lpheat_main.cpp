// Command-line front end: closed-form kernel evaluation, mass checks,
// contractivity sweeps, Chapman-Kolmogorov verification and the full
// classification report.
//
// Exit codes: 0 ok, 2 domain error, 3 quadrature non-convergence,
// 4 Chapman-Kolmogorov residual too large, 5 report/table mismatch.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpheat/kernels.hpp"
#include "lpheat/semigroup.hpp"
#include "record.hpp"
#include "report_grids_data.hpp"
#include "report_spec.hpp"

using namespace lpheat;
using lpheat_cli::fmt17;
using lpheat_cli::OutputRecord;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitCkFailure = 4;
constexpr int kExitTableMismatch = 5;

std::vector<double> parse_reals(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

// "start:stop:step" (inclusive, with rounding slack) or "a,b,c".
std::vector<double> parse_grid(const std::string& text) {
    if (text.find(':') == std::string::npos) return parse_reals(text);
    std::stringstream ss(text);
    std::string a, b, c;
    std::getline(ss, a, ':');
    std::getline(ss, b, ':');
    std::getline(ss, c, ':');
    const double start = std::stod(a), stop = std::stod(b), step = std::stod(c);
    if (!(step > 0.0)) throw std::domain_error("grid step must be > 0");
    std::vector<double> out;
    for (double v = start; v <= stop + 0.5 * step; v += step) out.push_back(v);
    return out;
}

FamilyId resolve_family(const std::string& name, int j) {
    const auto id = family_id_from_name(name, j);
    if (!id) throw std::domain_error("unknown family: " + name);
    return *id;
}

int default_quad_order() {
    if (const char* env = std::getenv("LPHEAT_QUAD_ORDER")) {
        const int n = std::atoi(env);
        if (n >= 16) return n;
        throw std::domain_error("LPHEAT_QUAD_ORDER must be an integer >= 16");
    }
    return 200;
}

QuadratureRule make_rule(int order, const std::string& scheme) {
    QuadratureRule q;
    q.order = order;
    if (scheme == "gauss")
        q.scheme = QuadScheme::gauss_laguerre_generalized;
    else if (scheme == "tanh-sinh")
        q.scheme = QuadScheme::tanh_sinh_truncated;
    else
        throw std::domain_error("scheme must be 'gauss' or 'tanh-sinh'");
    return q;
}

// All output files are written to a temporary and renamed into place, so a
// failed run leaves nothing half-written behind.
void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string join17(const std::vector<double>& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += fmt17(v[i]);
    }
    return s;
}

int run_eval(const std::string& family, int j, const std::vector<double>& alpha, double t,
             const std::vector<double>& x, const std::vector<double>& y) {
    const FamilyId f = resolve_family(family, j);
    OutputRecord rec{"eval", family_id_name(f), alpha, t, {}, {}};
    rec.inputs.emplace_back("t", t);
    for (std::size_t i = 0; i < x.size(); ++i) rec.inputs.emplace_back("x" + std::to_string(i), x[i]);
    for (std::size_t i = 0; i < y.size(); ++i) rec.inputs.emplace_back("y" + std::to_string(i), y[i]);
    const double lk = kernel_log_eval(f, alpha, t, x, y);
    rec.outputs.emplace_back("log_kernel", lk);
    rec.outputs.emplace_back("kernel", std::exp(lk));
    std::cout << rec.to_json_line() << "\n";
    return 0;
}

int run_mass(const std::string& family, int j, const std::vector<double>& alpha, double t,
             const std::vector<double>& x, const QuadratureRule& quad) {
    const FamilyId f = resolve_family(family, j);
    OutputRecord rec{"mass", family_id_name(f), alpha, t, {}, {}};
    rec.inputs.emplace_back("t", t);
    for (std::size_t i = 0; i < x.size(); ++i) rec.inputs.emplace_back("x" + std::to_string(i), x[i]);
    rec.inputs.emplace_back("quad_order", quad.order);
    const double closed = tt_one_closed(f, alpha, t, x);
    const double quadv = row_mass(f, alpha, t, x, quad);
    rec.outputs.emplace_back("closed", closed);
    rec.outputs.emplace_back("quadrature", quadv);
    rec.outputs.emplace_back("rel_gap", std::abs(quadv - closed) / std::abs(closed));
    std::cout << rec.to_json_line() << "\n";
    return 0;
}

int run_ck(const std::string& family, int j, const std::vector<double>& alpha, double t, double s,
           double x, double y, const QuadratureRule& quad) {
    const FamilyId f = resolve_family(family, j);
    if (!(t > 0.0) || !(s > 0.0)) throw std::domain_error("ck: t and s must be > 0");
    OutputRecord rec{"ck", family_id_name(f), alpha, t, {}, {}};
    rec.inputs.emplace_back("t", t);
    rec.inputs.emplace_back("s", s);
    rec.inputs.emplace_back("x0", x);
    rec.inputs.emplace_back("y0", y);
    const double r = ck_residual(f, alpha, t, s, x, y, quad);
    rec.outputs.emplace_back("residual", r);
    std::cout << rec.to_json_line() << "\n";
    return r <= 1e-6 ? 0 : kExitCkFailure;
}

int run_sweep(const std::string& family, int j, const std::string& alpha_grid,
              const std::string& t_grid, double tol, const std::string& out_path) {
    const FamilyId f = resolve_family(family, j);
    std::vector<AlphaIndex> grid;
    for (double a : parse_grid(alpha_grid)) grid.push_back({a});
    const std::vector<double> ts = parse_grid(t_grid);
    const auto reports = contractivity_sweep(f, grid, ts, tol);

    std::string csv = "family,alpha,classification,max_sup,witness_t,witness_x,excess_constant\n";
    for (const auto& r : reports) {
        double max_sup = 0.0;
        for (double s : r.sup_per_t) max_sup = std::max(max_sup, s);
        csv += family_id_name(r.family);
        csv += ",";
        csv += join17(r.alpha, ';');
        csv += ",";
        csv += r.contractive ? "contractive" : "non_contractive";
        csv += ",";
        csv += fmt17(max_sup);
        csv += ",";
        csv += r.witness_t ? fmt17(*r.witness_t) : "";
        csv += ",";
        csv += r.witness_x ? join17(*r.witness_x, ';') : "";
        csv += ",";
        csv += r.excess_constant ? fmt17(*r.excess_constant) : "";
        csv += "\n";
    }
    atomic_write(out_path, csv);
    std::cout << "wrote " << out_path << " (" << reports.size() << " rows)\n";
    return 0;
}

nlohmann::json report_cell_json(const lpheat_cli::CellOutcome& oc) {
    nlohmann::json c;
    c["alpha"] = oc.cell.alpha;
    c["expected_contractive"] = oc.cell.expected_contractive;
    c["observed_contractive"] = oc.report.contractive;
    c["match"] = oc.match;
    double max_sup = 0.0;
    for (double s : oc.report.sup_per_t) max_sup = std::max(max_sup, s);
    c["max_sup"] = max_sup;
    c["sup_per_t"] = oc.report.sup_per_t;
    c["bound_per_t"] = oc.report.bound_per_t;
    c["within_bound"] = oc.report.within_bound;
    if (oc.report.witness_t) {
        c["witness"] = {{"t", *oc.report.witness_t},
                        {"x", *oc.report.witness_x},
                        {"value", *oc.report.witness_value}};
        c["excess_constant"] = *oc.report.excess_constant;
    }
    return c;
}

int run_report(const std::string& out_path, const std::string& families_csv,
               const std::string& grids_path) {
    std::string text;
    if (grids_path.empty()) {
        text = lpheat_cli::default_report_grids_json();
    } else {
        std::ifstream in(grids_path);
        if (!in) throw std::runtime_error("cannot read " + grids_path);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    const lpheat_cli::ReportSpec spec = lpheat_cli::parse_report_spec(text);

    std::vector<std::string> wanted;
    if (!families_csv.empty()) {
        std::stringstream ss(families_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) wanted.push_back(tok);
    }

    nlohmann::json doc;
    doc["tol"] = spec.tol;
    doc["t_grid"] = spec.t_grid;
    bool all_match = true;
    int evaluated = 0;
    for (const auto& fam : spec.families) {
        const std::string name = family_id_name(fam.family);
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), name) == wanted.end())
            continue;
        ++evaluated;
        nlohmann::json jf;
        jf["contractive_range"] = fam.contractive_range;
        jf["cells"] = nlohmann::json::array();
        for (const auto& oc : lpheat_cli::evaluate_family(fam, spec)) {
            jf["cells"].push_back(report_cell_json(oc));
            all_match = all_match && oc.match;
        }
        doc["families"][name] = jf;
    }
    if (evaluated == 0) throw std::domain_error("no families selected");
    doc["all_match"] = all_match;
    atomic_write(out_path, doc.dump(2) + "\n");
    std::cout << "wrote " << out_path << (all_match ? " (all cells match)\n" : " (MISMATCH)\n");
    return all_match ? 0 : kExitTableMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heat semigroups of Laguerre and Bessel expansions: closed-form kernels, "
                 "quadrature checks and L^p-contractivity sweeps"};
    app.require_subcommand(1);

    std::string family, alpha_csv, x_csv, y_csv;
    std::string alpha_grid, t_grid, out_path, families_csv, grids_path, scheme = "gauss";
    double t = 1.0, s = 1.0, tol = 1e-6, x1 = 1.0, y1 = 1.0;
    int j = 0, quad_order = 0;

    auto* eval = app.add_subcommand("eval", "evaluate ln G_t(x, y) and G_t(x, y)");
    eval->add_option("--family", family)->required();
    eval->add_option("--j", j, "modified-variant coordinate (1-based)");
    eval->add_option("--alpha", alpha_csv)->required();
    eval->add_option("--t", t)->required();
    eval->add_option("--x", x_csv)->required();
    eval->add_option("--y", y_csv)->required();

    auto* mass = app.add_subcommand("mass", "row mass by quadrature vs the closed form");
    mass->add_option("--family", family)->required();
    mass->add_option("--j", j);
    mass->add_option("--alpha", alpha_csv)->required();
    mass->add_option("--t", t)->required();
    mass->add_option("--x", x_csv)->required();
    mass->add_option("--quad-order", quad_order);
    mass->add_option("--scheme", scheme, "gauss | tanh-sinh");

    auto* sweep = app.add_subcommand("sweep", "classify contractivity over an alpha grid (d = 1)");
    sweep->add_option("--family", family)->required();
    sweep->add_option("--j", j);
    sweep->add_option("--alpha-grid", alpha_grid, "start:stop:step or comma list")->required();
    sweep->add_option("--t-grid", t_grid, "start:stop:step or comma list")->required();
    sweep->add_option("--tol", tol);
    sweep->add_option("--out", out_path)->required();

    auto* ck = app.add_subcommand("ck", "Chapman-Kolmogorov residual (d = 1)");
    ck->add_option("--family", family)->required();
    ck->add_option("--j", j);
    ck->add_option("--alpha", alpha_csv)->required();
    ck->add_option("--t", t)->required();
    ck->add_option("--s", s)->required();
    ck->add_option("--x", x1)->required();
    ck->add_option("--y", y1)->required();
    ck->add_option("--quad-order", quad_order);
    ck->add_option("--scheme", scheme, "gauss | tanh-sinh");

    auto* report = app.add_subcommand("report", "full classification table with evidence");
    report->add_option("--out", out_path)->required();
    report->add_option("--families", families_csv, "comma-separated subset");
    report->add_option("--grids", grids_path, "alternative grid config (JSON)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eval)
            return run_eval(family, j, parse_reals(alpha_csv), t, parse_reals(x_csv),
                            parse_reals(y_csv));
        if (*mass)
            return run_mass(family, j, parse_reals(alpha_csv), t, parse_reals(x_csv),
                            make_rule(quad_order > 0 ? quad_order : default_quad_order(), scheme));
        if (*sweep) return run_sweep(family, j, alpha_grid, t_grid, tol, out_path);
        if (*ck)
            return run_ck(family, j, parse_reals(alpha_csv), t, s, x1, y1,
                          make_rule(quad_order > 0 ? quad_order : default_quad_order(), scheme));
        if (*report) return run_report(out_path, families_csv, grids_path);
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const NonConvergence& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad argument: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
