#include "fockzero/cli.hpp"

#include "fockzero/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fockzero
{

namespace
{

using nlohmann::json;

constexpr double unset = std::numeric_limits<double>::quiet_NaN();

struct Options
{
    // point sets
    std::string family;
    double nu = 0.0;
    double radius = unset;
    long count = 10000;
    double exponent = 1.0;
    std::string delta = "zero";
    std::string theta = "zero";
    std::string points;
    bool drop_imaginary = false;
    double rotate = 0.0;

    // functions
    std::string function = "lattice";
    double truncation = 64.0;
    int tail_order = 8;
    std::vector<double> w{0.0, 0.0};
    int times_power = 0;
    std::vector<double> divide_at;

    // grids
    double grid_radius = unset;
    double grid_step = 0.25;
    int grid_radii = 40;
    int grid_angles = 64;

    // quadrature and ladders
    double p = 2.0;
    std::string measure = "fock";
    double alpha = 0.0;
    double beta = 0.0;
    double r0 = unset;
    double r_max = unset;
    double tau = unset;
    bool no_early_stop = false;
    double radial_tol = unset;
    double angular_tol = unset;
    std::string angular;
    std::string ladder_csv;

    // harnesses
    int theorem = 1;
    long avdonin = 1;
    double eps = 0.1;
    std::string what;
    double excluded = 0.1;
    double env_eps = 0.01;
    double env_delta = 0.0;
    double env_delta_hat = 0.0;
    std::vector<double> lambda;
    int rho = 2;
    double sector_beta = 0.0;
    double sector_theta = 0.0;

    std::vector<std::string> inputs;
    std::string out;
};

template <class T> json value_json(const T &v)
{
    if constexpr (std::is_floating_point_v<T>)
        return std::isfinite(v) ? json(v) : json(nullptr);
    else
        return json(v);
}

template <class T> void value_from(const json &j, T &v)
{
    if constexpr (std::is_floating_point_v<T>)
        v = j.is_null() ? unset : j.get<T>();
    else
        v = j.get<T>();
}

struct Binding
{
    std::string name;
    CLI::Option *option;
    std::function<json()> get;
    std::function<void(const json &)> set;
};

struct Command
{
    CLI::App *app = nullptr;
    std::vector<Binding> bindings;

    template <class T> CLI::Option *option(const std::string &name, T &var, const std::string &help, const std::string &alias = {})
    {
        auto *opt = app->add_option("--" + name + (alias.empty() ? "" : ",--" + alias), var, help);
        if constexpr (!std::is_floating_point_v<T>) opt->capture_default_str();
        bindings.push_back({name, opt, [&var] { return value_json(var); }, [&var](const json &j) { value_from(j, var); }});
        return opt;
    }

    void flag(const std::string &name, bool &var, const std::string &help)
    {
        auto *opt = app->add_flag("--" + name, var, help);
        bindings.push_back({name, opt, [&var] { return json(var); }, [&var](const json &j) { var = j.get<bool>(); }});
    }

    // Manifest values fill every option not given on the command line.
    void apply_manifest(const json &m) const
    {
        std::vector<std::string> allowed{"schema_version", "command"};
        for (const auto &b : bindings) allowed.push_back(b.name);
        require_keys(m, allowed, "manifest");
        if (m.contains("schema_version") && m.at("schema_version").get<int>() != schema_version)
            throw std::invalid_argument("manifest: unsupported schema_version");
        if (m.contains("command") && m.at("command").get<std::string>() != app->get_name())
            throw std::invalid_argument("manifest: written for command '" + m.at("command").get<std::string>() + "'");
        for (const auto &b : bindings)
            if (m.contains(b.name) && b.option->count() == 0) b.set(m.at(b.name));
    }

    json resolved() const
    {
        json m = {{"schema_version", schema_version}, {"command", app->get_name()}};
        for (const auto &b : bindings) m[b.name] = b.get();
        return m;
    }
};

double parse_number(const std::string &s, const std::string &what)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument(what + ": not a number: '" + s + "'");
    return v;
}

// zero | inverse-square:C | shell:D | alternating:A | table:FILE
PerturbationSpec parse_perturbation(const std::string &text)
{
    if (text == "zero") return ZeroPerturbation{};
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("unknown perturbation '" + text + "'");
    const std::string kind = text.substr(0, colon), arg = text.substr(colon + 1);
    if (kind == "inverse-square") return InverseSquarePerturbation{parse_number(arg, "inverse-square")};
    if (kind == "shell") return ShellSchedulePerturbation{parse_number(arg, "shell"), ShellSchedulePerturbation::Pattern::harmonic};
    if (kind == "alternating")
        return ShellSchedulePerturbation{parse_number(arg, "alternating"), ShellSchedulePerturbation::Pattern::alternating};
    if (kind == "table") {
        const json j = read_json_file(arg);
        require_keys(j, {"entries"}, "perturbation table");
        TablePerturbation table;
        for (const auto &e : j.at("entries")) {
            require_keys(e, {"base", "value"}, "perturbation table entry");
            const auto &b = e.at("base");
            table.values[{b.at(0).get<double>(), b.at(1).get<double>()}] = e.at("value").get<double>();
        }
        return table;
    }
    throw std::invalid_argument("unknown perturbation '" + text + "'");
}

PerturbedSet build_set(const Options &o, const std::string &default_family, double default_radius)
{
    const auto delta = parse_perturbation(o.delta);
    const auto theta = parse_perturbation(o.theta);
    if (!o.points.empty()) {
        const json j = read_json_file(o.points);
        if (j.contains("entries")) {
            if (o.delta != "zero" || o.theta != "zero")
                return perturb(perturbed_set_from_json(j).bases(), delta, theta);
            return perturbed_set_from_json(j);
        }
        return perturb(point_set_from_json(j), delta, theta);
    }
    const std::string family = o.family.empty() ? default_family : o.family;
    const double radius = std::isnan(o.radius) ? default_radius : o.radius;
    PointSet base;
    if (family == "gamma-nu" || family == "lattice")
        base = gen_gamma_nu(o.nu, radius);
    else if (family == "als")
        base = gen_als(radius);
    else if (family == "zeros-of-s")
        base = gen_zeros_of_s(radius);
    else if (family == "integers")
        base = gen_integers(o.count);
    else if (family == "powers")
        base = gen_powers(o.exponent, o.count);
    else
        throw std::invalid_argument("unknown family '" + family + "'");
    return perturb(base, delta, theta);
}

PointSet shaped_zeros(const Options &o, const PerturbedSet &set)
{
    PointSet zeros = set.zeros();
    if (o.drop_imaginary) zeros = filter(zeros, [](cplx z) { return !(z.real() == 0.0 && z.imag() != 0.0); });
    if (o.rotate != 0.0) zeros = rotate(zeros, o.rotate);
    return zeros;
}

struct Built
{
    EntireFunction f;
    std::optional<PointSet> zeros;
};

Built build_function(const Options &o, double extent)
{
    Built b;
    const auto &name = o.function;
    if (name == "lattice") {
        const auto set = build_set(o, "gamma-nu", o.truncation);
        b.f = lattice_function(set, o.truncation, o.tail_order);
        b.zeros = set.zeros();
    } else if (name == "als") {
        const auto set = build_set(o, "als", 64.0);
        b.f = als_function(set);
        b.zeros = set.zeros();
    } else if (name == "s" || name == "S" || name == "G_Gamma") {
        b.f = closed_form(closed_form_from_string(name));
        const double r = std::max(2.0, extent + 2.0);
        b.zeros = name == "s" ? gen_zeros_of_s(r) : gen_als(r);
    } else if (name == "kernel") {
        if (o.w.size() != 2) throw std::invalid_argument("--w takes two numbers");
        b.f = closed_form(ClosedForm::kernel, {o.w[0], o.w[1]});
    } else if (name == "one") {
        b.f = constant_function(1.0);
    } else {
        throw std::invalid_argument("unknown function '" + name + "'");
    }
    if (!o.divide_at.empty()) {
        if (o.divide_at.size() != 2) throw std::invalid_argument("--divide-at takes two numbers");
        const cplx a{o.divide_at[0], o.divide_at[1]};
        b.f = divided_by_linear(b.f, a);
        if (b.zeros) {
            std::vector<Point> rest;
            bool removed = false;
            for (const auto &pt : b.zeros->points()) {
                if (!removed && pt.z == a) {
                    removed = true;
                    if (pt.multiplicity > 1) rest.push_back({pt.z, pt.multiplicity - 1});
                    continue;
                }
                rest.push_back(pt);
            }
            b.zeros = PointSet(std::move(rest));
        }
    }
    if (o.times_power > 0) {
        b.f = times_monomial(b.f, o.times_power);
        if (b.zeros) {
            auto pts = b.zeros->points();
            pts.push_back({0.0, o.times_power});
            b.zeros = PointSet(std::move(pts));
        }
    }
    return b;
}

LadderSpec ladder_from(const Options &o, LadderSpec base)
{
    if (!std::isnan(o.r0)) base.r0 = o.r0;
    if (!std::isnan(o.r_max)) base.r_max = o.r_max;
    if (!std::isnan(o.tau)) base.tau = o.tau;
    if (o.no_early_stop) base.stop_when_negligible = false;
    return base;
}

QuadratureSpec quadrature_from(const Options &o, QuadratureSpec base)
{
    if (!std::isnan(o.radial_tol)) base.radial_tol = o.radial_tol;
    if (!std::isnan(o.angular_tol)) base.angular_tol = o.angular_tol;
    if (o.angular == "trapezoid")
        base.angular = AngularRule::trapezoid;
    else if (o.angular == "diagonal-arcs")
        base.angular = AngularRule::diagonal_arcs;
    else if (!o.angular.empty())
        throw std::invalid_argument("unknown angular rule '" + o.angular + "'");
    return base;
}

std::string manifest_path_for(const std::string &out)
{
    for (const std::string suffix : {".points.json", ".grid.csv", ".norm.json", ".report.json", ".json", ".csv"})
        if (out.size() > suffix.size() && out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
            return out.substr(0, out.size() - suffix.size()) + ".manifest.json";
    return out + ".manifest.json";
}

class Runner
{
public:
    Runner(const Options &o, const Command &cmd, std::ostream &out, std::ostream &err) : o_(o), cmd_(cmd), out_(out), err_(err) {}

    // Writes the primary artifact to --out (with the resolved manifest
    // beside it) or to the output stream.
    void emit(const std::string &text) const
    {
        if (o_.out.empty()) {
            out_ << text;
            return;
        }
        write_text_file(o_.out, text);
        write_text_file(manifest_path_for(o_.out), cmd_.resolved().dump(2) + "\n");
    }

    int emit_report(const TheoremReport &report) const
    {
        const std::string text = to_json(report).dump(2) + "\n";
        emit(text);
        (o_.out.empty() ? err_ : out_) << render_table(report);
        return report.verdict ? exit_ok : exit_verdict_failed;
    }

    int gen() const
    {
        const auto set = build_set(o_, "gamma-nu", 50.0);
        emit(to_json(set).dump() + "\n");
        return exit_ok;
    }

    int eval() const
    {
        const double gr = std::isnan(o_.grid_radius) ? 4.0 : o_.grid_radius;
        if (!(gr > 0.0) || !(o_.grid_step > 0.0)) throw std::invalid_argument("eval: need positive grid radius and step");
        const auto built = build_function(o_, gr * std::sqrt(2.0));
        std::optional<NearestPointIndex> index;
        if (built.zeros) index.emplace(*built.zeros);
        const long n = std::lround(std::floor(gr / o_.grid_step + 1e-9));
        std::vector<cplx> grid;
        for (long i = -n; i <= n; ++i)
            for (long k = -n; k <= n; ++k) grid.push_back({static_cast<double>(k) * o_.grid_step, static_cast<double>(i) * o_.grid_step});
        std::vector<GridRow> rows(grid.size());
        parallel_for(grid.size(), [&](std::size_t j) {
            const cplx z = grid[j];
            const LogComplex v = built.f(z);
            rows[j] = {z, v, weighted_log_mag(v, z), index ? index->distance(z) : inf};
        });
        std::ostringstream csv;
        write_grid_csv(csv, rows);
        emit(csv.str());
        return exit_ok;
    }

    int norm() const
    {
        const auto ladder = ladder_from(o_, LadderSpec{});
        const auto radii = ladder_radii(ladder);
        const auto built = build_function(o_, radii.back());
        NormEstimate est;
        if (o_.measure == "fock") {
            est = fock_p_norm(built.f, o_.p, ladder, quadrature_from(o_, QuadratureSpec{}));
        } else if (o_.measure == "nu") {
            est = nu_integral(built.f, NuMeasure{o_.p, o_.alpha, o_.beta}, ladder,
                              quadrature_from(o_, QuadratureSpec{.angular = AngularRule::diagonal_arcs}));
        } else {
            throw std::invalid_argument("unknown measure '" + o_.measure + "'");
        }
        json j = to_json(est);
        j["function"] = built.f.name;
        j["measure"] = o_.measure;
        emit(j.dump(2) + "\n");
        if (!o_.ladder_csv.empty()) {
            std::ostringstream csv;
            write_ladder_csv(csv, est);
            write_text_file(o_.ladder_csv, csv.str());
        }
        return exit_ok;
    }

    int verify() const
    {
        switch (o_.theorem) {
        case 1: return emit_report(check_theorem1(build_set(o_, "gamma-nu", 500.0), o_.nu, o_.p));
        case 2: return emit_report(check_theorem2(build_set(o_, "als", std::sqrt(2.0e4)), o_.p, {o_.avdonin}));
        case 3: {
            const auto set = build_set(o_, "integers", 300.0);
            return emit_report(check_theorem3(shaped_zeros(o_, set), {.eps = o_.eps}));
        }
        default: throw std::invalid_argument("verify: --theorem must be 1, 2 or 3");
        }
    }

    int check() const
    {
        if (o_.what == "envelope-lattice" || o_.what == "envelope-als") {
            const bool lattice = o_.what == "envelope-lattice";
            const auto set = lattice ? build_set(o_, "gamma-nu", o_.truncation) : build_set(o_, "als", 64.0);
            const EntireFunction g = lattice ? lattice_function(set, o_.truncation, o_.tail_order) : als_function(set);
            const double gr = std::isnan(o_.grid_radius) ? std::min(12.0, g.domain_radius) : o_.grid_radius;
            const auto grid = polar_grid(gr, o_.grid_radii, o_.grid_angles);
            EnvelopeConfig cfg;
            cfg.excluded_radius = o_.excluded;
            cfg.eps = o_.env_eps;
            cfg.delta = o_.env_delta;
            cfg.delta_hat = o_.env_delta_hat;
            const auto fit = lattice ? envelope_verify_lattice(g, set.zeros(), set.nu(), grid, cfg)
                                     : envelope_verify_als(g, set.zeros(), grid, cfg);
            auto report = envelope_report(fit, lattice, cfg);
            report.configs["fit"] = to_json(fit);
            return emit_report(report);
        }
        if (o_.what == "zero-excess") {
            const bool als = o_.family == "als" || o_.function == "als";
            const auto set = als ? build_set(o_, "als", 64.0) : build_set(o_, "gamma-nu", o_.truncation);
            const EntireFunction g = als ? als_function(set) : lattice_function(set, o_.truncation, o_.tail_order);
            cplx lambda = als ? cplx(1.0) : cplx(set.nu());
            if (!o_.lambda.empty()) {
                if (o_.lambda.size() != 2) throw std::invalid_argument("--lambda takes two numbers");
                lambda = {o_.lambda[0], o_.lambda[1]};
            }
            ZeroExcessConfig cfg;
            cfg.ladder = ladder_from(o_, cfg.ladder);
            cfg.quadrature = quadrature_from(o_, cfg.quadrature);
            return emit_report(zero_excess_demo(g, als ? Family::als : Family::gamma_nu, set.nu(), lambda, o_.p, cfg));
        }
        if (o_.what == "lindelof" || o_.what == "sector") {
            const auto zeros = shaped_zeros(o_, build_set(o_, "zeros-of-s", 300.0));
            if (o_.what == "lindelof") return emit_report(lindelof_check(zeros, o_.rho));
            return emit_report(sector_lemma_demo(zeros, o_.sector_beta, o_.sector_theta));
        }
        throw std::invalid_argument("check: --what must be envelope-lattice, envelope-als, zero-excess, lindelof or sector");
    }

    int report() const
    {
        if (o_.inputs.empty()) throw std::invalid_argument("report: no --inputs given");
        json bundle = {{"schema_version", schema_version}, {"reports", json::array()}, {"sources", o_.inputs}};
        bool all = true;
        std::string tables;
        for (const auto &path : o_.inputs) {
            const auto r = report_from_json(read_json_file(path));
            all = all && r.verdict;
            bundle["reports"].push_back(to_json(r));
            tables += render_table(r) + "\n";
        }
        bundle["verdict"] = all ? "pass" : "fail";
        emit(bundle.dump(2) + "\n");
        (o_.out.empty() ? err_ : out_) << tables << "overall: " << (all ? "pass" : "fail") << "\n";
        return exit_ok;
    }

private:
    const Options &o_;
    const Command &cmd_;
    std::ostream &out_;
    std::ostream &err_;
};

void set_options(Command &c, Options &o)
{
    c.option("family", o.family, "gamma-nu | als | zeros-of-s | integers | powers", "set");
    c.option("nu", o.nu, "row shift of the lattice family");
    c.option("radius", o.radius, "window radius");
    c.option("count", o.count, "number of points for integers/powers");
    c.option("exponent", o.exponent, "exponent of the powers family");
    c.option("delta", o.delta, "radial perturbation: zero | inverse-square:C | shell:D | alternating:A | table:FILE");
    c.option("theta", o.theta, "angular perturbation, same forms as --delta");
    c.option("points", o.points, "read the set from a points JSON file");
}

void function_options(Command &c, Options &o)
{
    c.option("function", o.function, "lattice | als | s | S | G_Gamma | kernel | one");
    c.option("truncation", o.truncation, "truncation radius of the lattice product");
    c.option("tail-order", o.tail_order, "order of the lattice tail correction");
    c.option("w", o.w, "kernel parameter (re im)")->expected(2);
    c.option("times-power", o.times_power, "multiply by z^k");
    c.option("divide-at", o.divide_at, "divide by (z - a) (re im)")->expected(2);
}

void ladder_options(Command &c, Options &o)
{
    c.option("p", o.p, "exponent p");
    c.option("r0", o.r0, "first ladder radius");
    c.option("r-max", o.r_max, "last ladder radius");
    c.option("tau", o.tau, "verdict band on the increment exponent");
    c.flag("no-early-stop", o.no_early_stop, "integrate the full ladder");
    c.option("radial-tol", o.radial_tol, "relative radial tolerance");
    c.option("angular-tol", o.angular_tol, "relative angular tolerance");
    c.option("angular", o.angular, "trapezoid | diagonal-arcs");
}

} // namespace

int cli_dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"fockzero: perturbed zero sequences, Fock-space products and integrals"};
    app.require_subcommand(1);
    Options o;
    std::string manifest;
    std::map<std::string, Command> commands;
    auto make = [&](const std::string &name, const std::string &help) -> Command & {
        Command &c = commands[name];
        c.app = app.add_subcommand(name, help);
        c.app->add_option("--manifest", manifest, "JSON run manifest; command-line flags take precedence");
        c.option("out", o.out, "output file (a resolved manifest is written beside it)");
        return c;
    };

    auto &gen = make("gen", "generate a point set as JSON");
    set_options(gen, o);

    auto &eval = make("eval", "evaluate a function on a square grid (CSV)");
    set_options(eval, o);
    function_options(eval, o);
    eval.option("grid-radius", o.grid_radius, "half-width of the grid");
    eval.option("grid-step", o.grid_step, "grid spacing");

    auto &norm = make("norm", "Fock or weighted-measure integral on a dyadic ladder (JSON)");
    set_options(norm, o);
    function_options(norm, o);
    ladder_options(norm, o);
    norm.option("measure", o.measure, "fock | nu");
    norm.option("alpha", o.alpha, "alpha of the weighted measure");
    norm.option("beta", o.beta, "beta of the weighted measure");
    norm.option("ladder-csv", o.ladder_csv, "also write the ladder as CSV");

    auto &verify = make("verify", "check the hypotheses of a theorem (report JSON and table)");
    set_options(verify, o);
    verify.option("theorem", o.theorem, "1 (lattice), 2 (cross sequence) or 3 (every subset is a zero set)");
    verify.option("p", o.p, "exponent p");
    verify.option("avdonin", o.avdonin, "Avdonin window N");
    verify.option("eps", o.eps, "exponent slack of the reported sum");
    verify.flag("drop-imaginary", o.drop_imaginary, "remove points on the imaginary axis");
    verify.option("rotate", o.rotate, "rotate the set by this angle");

    auto &check = make("check", "lemma-level harnesses (report JSON and table)");
    set_options(check, o);
    check.option("what", o.what, "envelope-lattice | envelope-als | zero-excess | lindelof | sector");
    check.option("function", o.function, "lattice | als (zero-excess)");
    check.option("truncation", o.truncation, "truncation radius of the lattice product");
    check.option("tail-order", o.tail_order, "order of the lattice tail correction");
    check.option("grid-radius", o.grid_radius, "radius of the polar grid");
    check.option("grid-radii", o.grid_radii, "radial nodes of the polar grid");
    check.option("grid-angles", o.grid_angles, "angular nodes of the polar grid");
    check.option("excluded", o.excluded, "excluded-disk radius around zeros");
    check.option("env-eps", o.env_eps, "density slack of the envelope");
    check.option("env-delta", o.env_delta, "upper density estimate");
    check.option("env-delta-hat", o.env_delta_hat, "lower density estimate");
    check.option("lambda", o.lambda, "removed zero (re im)")->expected(2);
    check.option("rho", o.rho, "integer order");
    check.option("sector-beta", o.sector_beta, "sector direction");
    check.option("sector-theta", o.sector_theta, "sector half-angle");
    check.flag("drop-imaginary", o.drop_imaginary, "remove points on the imaginary axis");
    check.option("rotate", o.rotate, "rotate the set by this angle");
    ladder_options(check, o);

    auto &report = make("report", "bundle report JSON files into one summary");
    report.option("inputs", o.inputs, "report JSON files")->expected(1, -1);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    const auto active = app.get_subcommands();
    const std::string name = active.front()->get_name();
    const Command &cmd = commands.at(name);
    try {
        if (!manifest.empty()) cmd.apply_manifest(read_json_file(manifest));
        const Runner run(o, cmd, out, err);
        if (name == "gen") return run.gen();
        if (name == "eval") return run.eval();
        if (name == "norm") return run.norm();
        if (name == "verify") return run.verify();
        if (name == "check") return run.check();
        return run.report();
    } catch (const std::domain_error &e) {
        err << "domain error: " << e.what() << "\n";
        return exit_domain;
    } catch (const nlohmann::json::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

} // namespace fockzero
