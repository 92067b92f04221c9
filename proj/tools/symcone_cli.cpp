// symcone command line: one subcommand per library surface.
// Exit status: 0 success, 1 domain or data error, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symcone/symcone.hpp"

namespace {

using nlohmann::json;
using namespace symcone;

/// Misuse detected after CLI11 parsing (wrong arity, bad enum value).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(flag + ": '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw UsageError(flag + ": expected a comma-separated list of numbers");
    return out;
}

SymPoint parse_point(const std::string& text) {
    const std::vector<double> v = parse_list(text, "--at");
    if (v.size() != 3) throw UsageError("--at expects x,y,z");
    return SymPoint::from_cartesian(v[0], v[1], v[2]);
}

json point_json(const SymPoint& p) {
    json j{{"x", p.x()}, {"y", p.y()}, {"z", p.z()}, {"r", p.r()}};
    j["phi"] = p.phi() ? json(*p.phi()) : json(nullptr);
    return j;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(row);
    }
    return rows;
}

json vector_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json eigenpair_json(const EigenPair& e) {
    return {{"lambda1", e.lambda1}, {"lambda2", e.lambda2}, {"v1", vector_json(e.v1)}, {"v2", vector_json(e.v2)}};
}

/// Data goes to --out when given, standard output otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

int run(int argc, char** argv) {
    CLI::App app{"Eigenvector geometry of 2x2 symmetric matrices under the cone metric"};
    app.require_subcommand(1);

    // metric
    std::string at;
    auto* metric = app.add_subcommand("metric", "cone metric at a point (cartesian and polar blocks)");
    metric->add_option("--at", at, "point x,y,z")->required();

    auto* eigen = app.add_subcommand("eigen", "eigenpairs at a point (numeric and closed form)");
    eigen->add_option("--at", at, "point x,y,z")->required();

    // curve-based commands
    std::string curve_path, out_path, init = "auto";
    int steps = 4;
    auto* transport = app.add_subcommand("transport", "parallel transport along a curve, CSV t,x,y,z,a1,a2,phase");
    transport->add_option("--curve", curve_path, "curve JSON file")->required();
    transport->add_option("--init", init, "'auto' (larger-eigenvalue eigenvector) or a1,a2,a3 frame components")
        ->required();
    transport->add_option("--steps-per-sample", steps, "RK4 substeps per sample interval")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    transport->add_option("--out", out_path, "CSV output file (default: standard output)");

    auto* phase = app.add_subcommand("phase", "geometric phase of a curve");
    phase->add_option("--curve", curve_path, "curve JSON file")->required();

    auto* winding = app.add_subcommand("winding", "winding number of a closed curve about L");
    winding->add_option("--curve", curve_path, "curve JSON file")->required();

    bool with_crossings = false;
    auto* holonomy = app.add_subcommand("holonomy", "holonomy group from generator loops");
    holonomy->add_flag("--with-crossings", with_crossings, "allow loops through the singular line");

    std::string branch;
    int depth = 1;
    auto* cover = app.add_subcommand("cover", "branched covering operations");
    cover->require_subcommand(1);
    auto* lift = cover->add_subcommand("lift", "lift a curve, CSV t,rbar,phibar,z");
    lift->add_option("--curve", curve_path, "curve JSON file")->required();
    lift->add_option("--branch", branch, "starting sheet, +1 or -1")->required();
    lift->add_option("--depth", depth, "number of angle halvings")->required()->check(CLI::PositiveNumber);
    lift->add_option("--out", out_path, "CSV output file (default: standard output)");

    std::string boundary, kappas;
    double rest_length = 1.0;
    auto* mass = app.add_subcommand("massspring", "Hessian map and pullback metric of a two-mass spring system");
    mass->add_option("--boundary", boundary, "fixed, open or periodic")
        ->required()
        ->check(CLI::IsMember({"fixed", "open", "periodic"}));
    mass->add_option("--kappas", kappas, "spring constants k1[,k2[,k3]]")->required();
    mass->add_option("--rest-length", rest_length, "spring rest length a")->capture_default_str();

    std::uint64_t seed = 0;
    auto* verify = app.add_subcommand("verify", "extrinsic vs intrinsic cross-validation report");
    verify->add_option("--seed", seed, "random seed")->capture_default_str();

    std::size_t samples = 0;
    int substeps = 4, repeats = 3;
    auto* bench = app.add_subcommand("bench", "transport continuation vs repeated eigendecomposition");
    bench->add_option("--curve", curve_path, "curve JSON file")->required();
    bench->add_option("--samples", samples, "samples per analytic part")->required();
    bench->add_option("--substeps", substeps, "RK4 substeps per sample")->capture_default_str();
    bench->add_option("--repeats", repeats, "timing repeats (median reported)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (metric->parsed()) {
            const MetricAtPoint m = metric_at(parse_point(at));
            print_json({{"point", point_json(m.base)}, {"cart", matrix_json(m.cart)}, {"pol", vector_json(m.pol)}});
        } else if (eigen->parsed()) {
            const SymPoint p = parse_point(at);
            json j{{"point", point_json(p)}, {"numeric", eigenpair_json(eigen_numeric(p))}};
            j["closed_form"] = p.phi() ? eigenpair_json(eigen_closed_form(p, *p.phi())) : json(nullptr);
            print_json(j);
        } else if (transport->parsed()) {
            const MatrixCurve c = load_curve(curve_path);
            const TransportOptions opts{steps};
            TransportResult res;
            if (init == "auto") {
                res = eigenvector_continuation(c, 1, opts);
            } else {
                const std::vector<double> a = parse_list(init, "--init");
                if (a.size() != 3) throw UsageError("--init expects 'auto' or a1,a2,a3");
                res = parallel_transport(c, {c.samples().front(), Vec3(a[0], a[1], a[2])}, opts);
            }
            Output out(out_path);
            std::ostream& os = out.stream();
            os << "t,x,y,z,a1,a2,phase\n";
            for (std::size_t k = 0; k < c.size(); ++k) {
                const SymPoint& p = c.samples()[k];
                const Vec3& a = res.vectors[k].frame;
                os << g17(c.params()[k]) << ',' << g17(p.x()) << ',' << g17(p.y()) << ',' << g17(p.z()) << ','
                   << g17(a.x()) << ',' << g17(a.y()) << ',' << g17(res.phases[k]) << '\n';
            }
        } else if (phase->parsed()) {
            print_json({{"phase", geometric_phase(load_curve(curve_path))}});
        } else if (winding->parsed()) {
            print_json({{"winding", winding_number(load_curve(curve_path))}});
        } else if (holonomy->parsed()) {
            print_json({{"with_crossings", with_crossings}, {"holonomy", holonomy_group(with_crossings)}});
        } else if (lift->parsed()) {
            if (branch != "+1" && branch != "1" && branch != "-1") throw UsageError("--branch must be +1 or -1");
            const MatrixCurve c = load_curve(curve_path);
            const LiftedCurve lc = lift_curve(c, branch == "-1" ? -1 : 1, depth);
            Output out(out_path);
            std::ostream& os = out.stream();
            os << "t,rbar,phibar,z\n";
            for (std::size_t k = 0; k < lc.points.size(); ++k) {
                const CoverPoint& q = lc.points[k];
                os << g17(c.params()[k]) << ',' << g17(q.rbar) << ',' << g17(q.phibar) << ',' << g17(q.z) << '\n';
            }
        } else if (mass->parsed()) {
            const Boundary b = boundary_from_string(boundary);
            const SpringSystem s(b, parse_list(kappas, "--kappas"), rest_length);
            const SymPoint p = hessian(s);
            const auto x0 = equilibrium(s);
            const Eigen::MatrixXd pull = pullback_metric(b, s.kappas);
            print_json({{"boundary", std::string(to_string(b))},
                        {"kappas", s.kappas},
                        {"rest_length", s.rest_length},
                        {"equilibrium", {x0[0], x0[1]}},
                        {"energy_at_equilibrium", energy(s, x0[0], x0[1])},
                        {"hessian", matrix_json(hessian_entries(s))},
                        {"point", point_json(p)},
                        {"param_map", matrix_json(param_map(b))},
                        {"pullback", matrix_json(pull)},
                        {"kernel", matrix_json(metric_kernel(pull).transpose())}});
        } else if (verify->parsed()) {
            const VerifyReport rep = run_verification(seed);
            json checks = json::array();
            for (const auto& c : rep.checks) {
                checks.push_back({{"name", c.name},
                                  {"max_deviation", c.max_deviation},
                                  {"tolerance", c.tolerance},
                                  {"pass", c.pass()}});
            }
            print_json({{"seed", rep.seed}, {"n_points", rep.n_points}, {"pass", rep.all_pass()}, {"checks", checks}});
            return rep.all_pass() ? 0 : 1;
        } else if (bench->parsed()) {
            if (samples < 10) throw UsageError("--samples must be >= 10");
            const BenchReport rep = run_bench(load_curve(curve_path, samples), substeps, repeats);
            print_json({{"n_samples", rep.n_samples},
                        {"steps_per_sample", rep.steps_per_sample},
                        {"repeats", rep.repeats},
                        {"wall_time_transport", rep.wall_time_transport},
                        {"wall_time_repeated_eig", rep.wall_time_repeated_eig},
                        {"speed_ratio", rep.speed_ratio()},
                        {"max_angle_error", rep.max_angle_error}});
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
