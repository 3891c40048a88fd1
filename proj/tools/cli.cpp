#include "cli.hpp"

#include "descent/axioms.hpp"
#include "descent/classification.hpp"
#include "descent/criticality.hpp"
#include "descent/dispersion.hpp"
#include "descent/markov.hpp"
#include "descent/spec_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace descent::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const Json& defaults_of(const SpaceSpec& spec) {
    static const Json empty = Json::object();
    if (spec.extra.contains("defaults") && spec.extra.at("defaults").is_object()) return spec.extra.at("defaults");
    return empty;
}

std::string default_string(const SpaceSpec& spec, const char* key) {
    const Json& d = defaults_of(spec);
    return d.contains(key) && d.at(key).is_string() ? d.at(key).get<std::string>() : std::string();
}

struct ResolvedOperator {
    OperatorHandle op;
    Json name;
};

ResolvedOperator resolve_operator(const RunConfig& cfg, const SpaceSpec& spec) {
    std::string op = cfg.op;
    if (op.empty()) op = default_string(spec, "operator");
    if (op.empty() && spec.operators.size() == 1) op = spec.operators.begin()->first;
    if (op.empty()) throw std::invalid_argument("no operator given; pass --op NAME or an inline JSON expression");
    if (op.front() == '{') {
        Json expr = parse_json_text(op, "--op");
        return {parse_operator(expr, spec), expr};
    }
    return {parse_operator(Json(op), spec), op};
}

std::pair<std::string, ScalarField> resolve_function(const RunConfig& cfg, const SpaceSpec& spec) {
    std::string name = cfg.function.empty() ? default_string(spec, "function") : cfg.function;
    if (name.empty() && spec.functions.size() == 1) name = spec.functions.begin()->first;
    if (name.empty()) throw std::invalid_argument("no function given; pass --function NAME");
    return {name, spec.function(name)};
}

std::optional<unsigned> resolve_grid(const RunConfig& cfg, const SpaceSpec& spec) {
    if (cfg.grid) return cfg.grid;
    const Json& d = defaults_of(spec);
    if (d.contains("grid") && d.at("grid").is_number_unsigned()) return d.at("grid").get<unsigned>();
    return std::nullopt;
}

FunctionGrid grid_or_functions(const RunConfig& cfg, const SpaceSpec& spec, Json& desc) {
    if (auto g = resolve_grid(cfg, spec)) {
        if (*g < 1) throw std::invalid_argument("--grid must be at least 1");
        desc = {{"values", *g}};
        return FunctionGrid::integers(spec.space, *g, cfg.cap);
    }
    if (spec.functions.empty()) throw std::invalid_argument("no --grid given and the spec lists no functions");
    std::vector<ScalarField> fields;
    Json names = Json::array();
    for (const auto& [name, f] : spec.functions) {
        fields.push_back(f);
        names.push_back(name);
    }
    desc = {{"functions", names}};
    return FunctionGrid::explicit_fields(spec.space, std::move(fields));
}

FunctionGrid required_grid(const RunConfig& cfg, const SpaceSpec& spec, unsigned fallback, Json& desc) {
    unsigned g = resolve_grid(cfg, spec).value_or(fallback);
    if (g < 1) throw std::invalid_argument("--grid must be at least 1");
    desc = {{"values", g}};
    return FunctionGrid::integers(spec.space, g, cfg.cap);
}

std::size_t resolve_start(const RunConfig& cfg, const SpaceSpec& spec) {
    std::string s = cfg.start.empty() ? default_string(spec, "start") : cfg.start;
    return s.empty() ? 0 : spec.space->index(s);
}

Json header(const RunConfig& cfg) {
    return {{"command", cfg.command}, {"seed", cfg.seed}, {"spec", cfg.spec}};
}

struct Output {
    std::string text;
    std::string extension;
};

Output as_json(const Json& j) { return {j.dump(2) + "\n", "json"}; }

// --- subcommands ---------------------------------------------------------

Output cmd_audit(const RunConfig& cfg, int& status) {
    SpaceSpec spec = load_space_spec(cfg.spec);
    auto [op, name] = resolve_operator(cfg, spec);
    Json gdesc;
    FunctionGrid grid = required_grid(cfg, spec, 3, gdesc);
    AuditOptions opt;
    for (const auto& a : cfg.axioms)
        if (std::find(opt.axioms.begin(), opt.axioms.end(), a) == opt.axioms.end())
            throw std::invalid_argument("unknown axiom '" + a + "'");
    if (!cfg.axioms.empty()) opt.axioms = cfg.axioms;
    AxiomReport rep = run_audit(op, grid, opt);
    bool rechecked = true;
    for (const auto& r : rep.results)
        if (!r.holds() && !recheck_witness(op, r)) rechecked = false;
    if (!rechecked) status = kViolation;
    if (cfg.format == "csv") {
        std::ostringstream s;
        s << "axiom,verdict,checked,violations,undecided,witness_x\n";
        for (const auto& r : rep.results)
            s << r.axiom << ',' << verdict_name(r.verdict) << ',' << r.checked << ',' << r.violations << ','
              << r.undecided << ',' << (r.witness ? spec.space->label(r.witness->x) : "") << '\n';
        return {s.str(), "csv"};
    }
    Json j = header(cfg);
    j["operator"] = name;
    j["grid"] = gdesc;
    j["fields"] = grid.size();
    j["results"] = rep.to_json(*spec.space);
    j["all_hold"] = rep.all_hold();
    j["witnesses_rechecked"] = rechecked;
    return as_json(j);
}

Output cmd_critical(const RunConfig& cfg, int&) {
    SpaceSpec spec = load_space_spec(cfg.spec);
    auto [op, name] = resolve_operator(cfg, spec);
    auto [fname, f] = resolve_function(cfg, spec);
    ExtendedField t = (*op)(f);
    VertexSet z = t.zero_set();
    if (cfg.format == "csv") {
        std::ostringstream s;
        s << "vertex,value,critical\n";
        for (std::size_t x = 0; x < f.size(); ++x)
            s << spec.space->label(x) << ',' << t[x].to_string() << ',' << (z.test(x) ? 1 : 0) << '\n';
        return {s.str(), "csv"};
    }
    Json j = header(cfg);
    j["operator"] = name;
    j["function"] = fname;
    j["values"] = extended_field_json(*spec.space, t);
    j["critical_set"] = set_json(*spec.space, z);
    return as_json(j);
}

Output cmd_minima(const RunConfig& cfg, int& status) {
    SpaceSpec spec = load_space_spec(cfg.spec);
    const Generator& L = spec.generator(cfg.generator);
    auto [fname, f] = resolve_function(cfg, spec);
    DescentOrder order(L, f);
    VertexSet m = order.minima();
    VertexSet z = eval_TL(L, f).zero_set();
    bool contained = m.is_subset_of(z);
    if (!contained) status = kViolation;
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "vertex,minimum,critical\n";
        for (std::size_t x = 0; x < f.size(); ++x)
            out << spec.space->label(x) << ',' << (m.test(x) ? 1 : 0) << ',' << (z.test(x) ? 1 : 0) << '\n';
        return {out.str(), "csv"};
    }
    Json reach = Json::object();
    for (std::size_t x = 0; x < f.size(); ++x) reach[spec.space->label(x)] = set_json(*spec.space, order.reachable(x));
    Json j = header(cfg);
    j["function"] = fname;
    j["generator"] = cfg.generator;
    j["minima"] = set_json(*spec.space, m);
    j["critical_set"] = set_json(*spec.space, z);
    j["minima_within_critical_set"] = contained;
    j["reachable"] = reach;
    return as_json(j);
}

Output cmd_determine(const RunConfig& cfg, int& status) {
    SpaceSpec spec = load_space_spec(cfg.spec);
    auto [op, name] = resolve_operator(cfg, spec);
    Json gdesc;
    FunctionGrid grid = grid_or_functions(cfg, spec, gdesc);
    DeterminationReport rep = check_determination(op, grid, std::max<std::uint64_t>(cfg.cap, 1));
    AuditOptions opt;
    opt.axioms = {"D1", "D2", "D3"};
    AxiomReport audit = run_audit(op, grid, opt);
    bool hypotheses = audit.all_hold();
    if (hypotheses && !rep.empty()) status = kViolation;
    std::string summary = std::to_string(rep.violations) + " violations";
    if (!rep.empty()) summary += hypotheses ? " (THEOREM-VIOLATION)" : " (operator fails the descent-modulus audit)";
    if (cfg.format == "csv") {
        std::ostringstream s;
        s << "f,g,agreement\n";
        for (const auto& w : rep.witnesses)
            s << '"' << w.f.to_string() << "\",\"" << w.g.to_string() << "\",\"" << format_set(*spec.space, w.agreement) << "\"\n";
        return {s.str(), "csv"};
    }
    Json j = header(cfg);
    j["operator"] = name;
    j["grid"] = gdesc;
    j["report"] = rep.to_json(*spec.space);
    j["audit"] = audit.to_json(*spec.space);
    j["descent_modulus_on_grid"] = hypotheses;
    j["summary"] = summary;
    return as_json(j);
}

Output cmd_simulate(const RunConfig& cfg, int& status) {
    SpaceSpec spec = load_space_spec(cfg.spec);
    const Generator& L = spec.generator(cfg.generator);
    auto [fname, f] = resolve_function(cfg, spec);
    std::size_t x = resolve_start(cfg, spec);
    if (cfg.runs <= 1) {
        Trajectory tr = simulate_trajectory(L, f, x, cfg.horizon, cfg.seed);
        bool monotone = true;
        for (std::size_t k = 1; k < tr.steps.size(); ++k)
            if (f[tr.steps[k].second] > f[tr.steps[k - 1].second]) monotone = false;
        if (!monotone) status = kViolation;
        if (cfg.format == "csv") {
            std::ostringstream s;
            s << "time,vertex\n";
            for (const auto& [t, v] : tr.steps) s << fmt(t) << ',' << spec.space->label(v) << '\n';
            return {s.str(), "csv"};
        }
        Json steps = Json::array();
        for (const auto& [t, v] : tr.steps) steps.push_back({{"t", fmt(t)}, {"x", spec.space->label(v)}});
        Json j = header(cfg);
        j["function"] = fname;
        j["start"] = spec.space->label(x);
        j["horizon"] = cfg.horizon;
        j["trajectory"] = steps;
        j["f_non_increasing"] = monotone;
        return as_json(j);
    }
    std::vector<double> emp = empirical_law(L, f, x, cfg.horizon, cfg.runs, cfg.seed);
    Distribution pi = limit_distribution(L, f, x);
    if (cfg.format == "csv") {
        std::ostringstream s;
        s << "vertex,empirical,exact\n";
        for (std::size_t v = 0; v < emp.size(); ++v) s << spec.space->label(v) << ',' << fmt(emp[v]) << ',' << fmt(pi.p[v].get_d()) << '\n';
        return {s.str(), "csv"};
    }
    Json e = Json::object();
    for (std::size_t v = 0; v < emp.size(); ++v) e[spec.space->label(v)] = fmt(emp[v]);
    Json j = header(cfg);
    j["function"] = fname;
    j["start"] = spec.space->label(x);
    j["horizon"] = cfg.horizon;
    j["runs"] = cfg.runs;
    j["empirical"] = e;
    j["exact"] = pi.to_json();
    j["total_variation"] = fmt(total_variation(emp, pi));
    return as_json(j);
}

Output cmd_pif(const RunConfig& cfg, int& status) {
    SpaceSpec spec = load_space_spec(cfg.spec);
    const Generator& L = spec.generator(cfg.generator);
    auto [fname, f] = resolve_function(cfg, spec);
    std::vector<Distribution> laws = limit_distributions(L, f);
    VertexSet m = minima_set(L, f);
    bool contained = true;
    std::vector<std::size_t> starts;
    if (!cfg.start.empty())
        starts.push_back(spec.space->index(cfg.start));
    else
        for (std::size_t x = 0; x < f.size(); ++x) starts.push_back(x);
    Json lj = Json::object();
    for (std::size_t x : starts) {
        if (!laws[x].support().is_subset_of(m)) contained = false;
        lj[spec.space->label(x)] = laws[x].to_json();
    }
    if (!contained) status = kViolation;
    if (cfg.format == "csv") {
        std::ostringstream s;
        s << "start,vertex,probability\n";
        for (std::size_t x : starts)
            for (std::size_t v = 0; v < f.size(); ++v)
                s << spec.space->label(x) << ',' << spec.space->label(v) << ',' << to_string(laws[x].p[v]) << '\n';
        return {s.str(), "csv"};
    }
    Json j = header(cfg);
    j["function"] = fname;
    j["laws"] = lj;
    j["minima"] = set_json(*spec.space, m);
    j["support_within_minima"] = contained;
    return as_json(j);
}

Output cmd_classify(const RunConfig& cfg, int& status) {
    SpaceSpec spec = load_space_spec(cfg.spec);
    auto [op, name] = resolve_operator(cfg, spec);
    Json gdesc;
    FunctionGrid grid = required_grid(cfg, spec, 3, gdesc);
    Classification c = classify(op, grid);
    if (c.verdict == ClassifyVerdict::Counterexample) status = kViolation;
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "vertex,D_x,hypothesis_h\n";
        for (std::size_t x = 0; x < spec.space->size(); ++x)
            out << spec.space->label(x) << ",\"" << format_set(*spec.space, c.extracted.d[x]) << "\","
                << (c.extracted.hypothesis_h[x] ? 1 : 0) << '\n';
        return {out.str(), "csv"};
    }
    Json j = header(cfg);
    j["operator"] = name;
    j["grid"] = gdesc;
    j["classification"] = c.to_json();
    return as_json(j);
}

Output cmd_zaxioms(const RunConfig& cfg, int&) {
    SpaceSpec spec = load_space_spec(cfg.spec);
    auto [op, name] = resolve_operator(cfg, spec);
    Json gdesc;
    FunctionGrid grid = required_grid(cfg, spec, 3, gdesc);
    CriticalMapOracle z = CriticalMapOracle::from_operator(op);
    AxiomReport rep = check_Z_axioms(z, grid);
    if (cfg.format == "csv") {
        std::ostringstream s;
        s << "axiom,verdict,checked,violations,witness_x,witness_r\n";
        for (const auto& r : rep.results)
            s << r.axiom << ',' << verdict_name(r.verdict) << ',' << r.checked << ',' << r.violations << ','
              << (r.witness ? spec.space->label(r.witness->x) : "") << ','
              << (r.witness && r.witness->r ? to_string(*r.witness->r) : "") << '\n';
        return {s.str(), "csv"};
    }
    Json j = header(cfg);
    j["operator"] = name;
    j["grid"] = gdesc;
    j["results"] = rep.to_json(*spec.space);
    j["extracted"] = extract_system(z).to_json();
    return as_json(j);
}

Output cmd_dispersion(const RunConfig& cfg, int& status) {
    Json doc = read_json_file(cfg.spec);
    const Json& dom = doc.at("domain");
    Point lo = dom.at("lo").get<Point>(), hi = dom.at("hi").get<Point>();
    GridDomain d = GridDomain::box(lo, hi, dom.at("res").get<std::size_t>());
    double p = doc.value("p", 2.0);
    std::vector<Point> points;
    if (!cfg.point.empty())
        points.push_back(cfg.point);
    else
        points = doc.at("points").get<std::vector<Point>>();
    std::vector<std::string> names;
    if (!cfg.function.empty())
        names.push_back(cfg.function);
    else
        for (auto it = doc.at("functions").begin(); it != doc.at("functions").end(); ++it) names.push_back(it.key());
    std::vector<bool> modes;
    if (cfg.orientation == "both" || cfg.orientation == "plain") modes.push_back(false);
    if (cfg.orientation == "both" || cfg.orientation == "oriented") modes.push_back(true);
    if (modes.empty()) throw std::invalid_argument("--orientation must be both, plain or oriented");
    Sweep sweep = Sweep::standard(d, cfg.radii);

    std::ostringstream csv;
    csv << "function,x,oriented,eps,value,half_width\n";
    Json rows = Json::array();
    for (const auto& name : names) {
        if (!doc.at("functions").contains(name)) throw std::invalid_argument("unknown function '" + name + "'");
        Quadratic q = Quadratic::from_json(doc.at("functions").at(name));
        if (q.dim() != d.dim) throw std::invalid_argument("function '" + name + "' has the wrong dimension");
        GridField field = GridField::sample(d, [&](const Point& x) { return q(x); });
        for (const auto& x : points) {
            Point g = q.gradient(x);
            double g2 = 0;
            for (double v : g) g2 += v * v;
            std::string xs;
            for (std::size_t a = 0; a < x.size(); ++a) xs += (a ? " " : "") + fmt(x[a]);
            for (bool oriented : modes) {
                DispersionEstimate est = dispersion_limit(field, x, p, oriented, sweep);
                std::vector<double> hw = est.half_widths();
                for (std::size_t k = 0; k < est.radii.size(); ++k)
                    csv << name << ',' << xs << ',' << (oriented ? 1 : 0) << ',' << fmt(est.radii[k]) << ','
                        << fmt(est.values[k]) << ',' << fmt(hw[k]) << '\n';
                if (!std::isfinite(est.value)) status = kViolation;
                Json vals = Json::array();
                for (std::size_t k = 0; k < est.radii.size(); ++k)
                    vals.push_back({{"eps", fmt(est.radii[k])}, {"value", fmt(est.values[k])}, {"half_width", fmt(hw[k])}});
                rows.push_back({{"function", name},
                                {"x", x},
                                {"oriented", oriented},
                                {"estimate", fmt(est.value)},
                                {"uncertainty", fmt(est.uncertainty)},
                                {"converged", est.converged},
                                {"gradient_norm_squared", fmt(g2)},
                                {"sweep", vals}});
            }
        }
    }
    if (cfg.format == "csv") return {csv.str(), "csv"};
    Json j = header(cfg);
    j["p"] = p;
    j["estimates"] = rows;
    return as_json(j);
}

Output cmd_ball_identity(const RunConfig& cfg, int&) {
    if (cfg.vector.empty()) throw std::invalid_argument("ball-identity needs --vector");
    MonteCarloEstimate e = mc_ball_identity(cfg.vector, cfg.vector.size(), cfg.samples, cfg.seed);
    double target = 0;
    for (double v : cfg.vector) target += v * v;
    if (cfg.format == "csv")
        return {"value,half_width,target\n" + fmt(e.value) + ',' + fmt(e.half_width) + ',' + fmt(target) + '\n', "csv"};
    Json j = header(cfg);
    j["vector"] = cfg.vector;
    j["samples"] = cfg.samples;
    j["value"] = fmt(e.value);
    j["half_width"] = fmt(e.half_width);
    j["target"] = fmt(target);
    return as_json(j);
}

using Command = Output (*)(const RunConfig&, int&);

Command find_command(const std::string& name) {
    static const std::pair<const char*, Command> table[] = {
        {"audit", cmd_audit},       {"critical", cmd_critical}, {"minima", cmd_minima},
        {"determine", cmd_determine}, {"simulate", cmd_simulate}, {"pif", cmd_pif},
        {"classify", cmd_classify}, {"zaxioms", cmd_zaxioms},   {"dispersion", cmd_dispersion},
        {"ball-identity", cmd_ball_identity}};
    for (const auto& [n, c] : table)
        if (name == n) return c;
    return nullptr;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Command cmd = find_command(cfg.command);
    if (!cmd) {
        err << "error: unknown command '" << cfg.command << "'\n";
        return kUsage;
    }
    if (cfg.format != "json" && cfg.format != "csv") {
        err << "error: --format must be json or csv\n";
        return kUsage;
    }
    if (cfg.spec.empty() && cfg.command != "ball-identity") {
        err << "error: --spec is required\n";
        return kUsage;
    }
    int status = kOk;
    Output o;
    try {
        o = cmd(cfg, status);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << " (requested " << e.requested << ", cap " << e.cap << ")\n";
        return kUsage;
    } catch (const Json::exception& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "invariant failure: " << e.what() << '\n';
        return kViolation;
    }
    out << o.text;
    std::string dir = cfg.out_dir;
    if (dir.empty())
        if (const char* env = std::getenv("DESCENT_OUT_DIR")) dir = env;
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        std::string path = (std::filesystem::path(dir) / (cfg.command + "." + o.extension)).string();
        std::ofstream f(path, std::ios::binary);
        f << o.text;
        if (!f) {
            err << "error: cannot write " << path << '\n';
            return kUsage;
        }
    }
    return status;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Descent moduli on finite spaces: audits, critical sets, Markov descent and dispersion numerics"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string axioms, point, vec;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--spec", cfg.spec, "space spec JSON file");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--out", cfg.out_dir, "output directory (default $DESCENT_OUT_DIR)");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_op = [&](CLI::App* sub) {
        sub->add_option("--op", cfg.op, "operator name in the spec or inline JSON expression");
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--grid", cfg.grid, "grid values 0..G-1");
        sub->add_option("--cap", cfg.cap, "enumeration budget");
    };
    auto add_function = [&](CLI::App* sub) { sub->add_option("--function", cfg.function, "function name in the spec"); };
    auto add_generator = [&](CLI::App* sub) { sub->add_option("--generator", cfg.generator, "generator name"); };

    auto* audit = app.add_subcommand("audit", "audit D1, D2, D3, translation invariance and homogeneity");
    add_common(audit), add_op(audit), add_grid(audit);
    audit->add_option("--axioms", axioms, "comma-separated subset of D1,D2,D3,translation,homogeneity");
    auto* critical = app.add_subcommand("critical", "critical set Z_T(f)");
    add_common(critical), add_op(critical), add_function(critical);
    auto* minima = app.add_subcommand("minima", "minima M(f) of the descent preorder");
    add_common(minima), add_function(minima), add_generator(minima);
    auto* determine = app.add_subcommand("determine", "determination oracle over a grid or the spec's functions");
    add_common(determine), add_op(determine), add_grid(determine);
    auto* simulate = app.add_subcommand("simulate", "simulate the f-oriented chain");
    add_common(simulate), add_function(simulate), add_generator(simulate);
    simulate->add_option("--start", cfg.start, "start vertex label");
    simulate->add_option("--horizon", cfg.horizon, "time horizon");
    simulate->add_option("--runs", cfg.runs, "number of runs; more than one reports the empirical law");
    auto* pif = app.add_subcommand("pif", "exact limit law of the f-oriented chain");
    add_common(pif), add_function(pif), add_generator(pif);
    pif->add_option("--start", cfg.start, "start vertex label (default: all)");
    auto* cls = app.add_subcommand("classify", "classify a homogeneous modulus by its active neighbourhoods");
    add_common(cls), add_op(cls), add_grid(cls);
    auto* zax = app.add_subcommand("zaxioms", "audit Z1-Z5 for the critical map of an operator");
    add_common(zax), add_op(zax), add_grid(zax);
    auto* disp = app.add_subcommand("dispersion", "grid dispersion sweep for quadratic fields");
    add_common(disp), add_function(disp);
    disp->add_option("--point", point, "comma-separated point (default: the spec's points)");
    disp->add_option("--orientation", cfg.orientation, "both, plain or oriented")
        ->check(CLI::IsMember({"both", "plain", "oriented"}));
    disp->add_option("--radii", cfg.radii, "number of radii in the sweep");
    auto* ball = app.add_subcommand("ball-identity", "Monte Carlo check of the ball identity");
    add_common(ball);
    ball->add_option("--vector", vec, "comma-separated vector V")->required();
    ball->add_option("--samples", cfg.samples, "Monte Carlo samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    auto split_doubles = [&](const std::string& s, std::vector<double>& into) {
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t used = 0;
            double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
            into.push_back(v);
        }
    };
    try {
        split_doubles(point, cfg.point);
        split_doubles(vec, cfg.vector);
    } catch (const std::exception&) {
        err << "error: --point and --vector take comma-separated numbers\n";
        return kUsage;
    }
    std::stringstream as(axioms);
    for (std::string a; std::getline(as, a, ',');)
        if (!a.empty()) cfg.axioms.push_back(a);
    return run(cfg, out, err);
}

}  // namespace descent::cli
