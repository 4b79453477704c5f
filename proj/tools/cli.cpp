#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "fracdi/composition.hpp"
#include "fracdi/contour.hpp"
#include "fracdi/errors.hpp"
#include "fracdi/json_io.hpp"
#include "fracdi/kernel.hpp"
#include "fracdi/poleform.hpp"
#include "fracdi/realline.hpp"
#include "fracdi/spectral.hpp"
#include "json.hpp"

namespace fracdi::cli {

using nlohmann::json;

namespace {

struct Options {
    std::string fn = "lorentzian";
    std::string poleform;
    std::string curve;
    std::string alpha = "0.5";
    std::string beta = "0.5";
    std::string side = "plus";
    std::string psi_side = "plus";
    std::string z = "0";
    std::string format = "csv";
    std::string suite = "all";
    double x = 0.0;
    double lo = -5.0;
    double hi = 5.0;
    int count = 21;
    int branch_n = 0;
    int max_winding = 4;
    bool no_unit_phase = false;
    double eps = 0.0;
    double region = 4.0;
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    double tol = -1.0;  // negative: per-command default
};

json pair_of(cplx z) { return json::array({z.real(), z.imag()}); }

CutOrientation side_of(const std::string& s) { return s == "minus" ? CutOrientation::MinusAxis : CutOrientation::PlusAxis; }

QuadratureConfig quad_of(const Options& o) {
    QuadratureConfig q;
    q.rel_tol = o.rel_tol;
    q.abs_tol = o.abs_tol;
    return q;
}

PoleForm pole_form_of(const Options& o) {
    if (!o.poleform.empty()) return pole_form_from_json(read_file(o.poleform));
    if (o.fn == "lorentzian") return PoleForm::lorentzian();
    throw InputError("a pole form needs --poleform <file.json> or --fn lorentzian");
}

RealFunction function_of(const Options& o) {
    if (!o.poleform.empty() || o.fn == "rational") return rational_function(pole_form_of(o));
    return make_catalog_function(o.fn);
}

unsigned thread_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FRAC_NUM_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

// Runs body(i) for i in [0, n) on the worker pool; the first exception wins.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<double> grid_points(const Options& o) {
    if (o.count < 1) throw InputError("grid count must be at least 1");
    if (!(o.lo < o.hi) && o.count > 1) throw InputError("grid needs min < max");
    std::vector<double> xs(o.count);
    for (int j = 0; j < o.count; ++j) xs[j] = o.count == 1 ? o.lo : o.lo + (o.hi - o.lo) * j / double(o.count - 1);
    return xs;
}

json report(const std::string& name, json params, cplx lhs, cplx rhs, double residual, double tolerance) {
    return json{{"case", name},         {"params", std::move(params)}, {"lhs", pair_of(lhs)},
                {"rhs", pair_of(rhs)},  {"residual", residual},        {"tolerance", tolerance},
                {"pass", residual <= tolerance}};
}

json result_json(const DifferintResult& r) {
    return json{{"value", pair_of(r.value)},
                {"est_error", r.est_error},
                {"method", to_string(r.method)},
                {"branch_n", r.branch.n},
                {"approximate_derivatives", r.approximate_derivatives}};
}

int cmd_eval(const Options& o, std::ostream& out) {
    const RealFunction f = function_of(o);
    const Order alpha = parse_order(o.alpha);
    json j{{"alpha", alpha.to_string()}, {"order_class", to_string(alpha.cls())}};
    if (!o.curve.empty()) {
        const CurvePsi psi = curve_psi_from_json(read_file(o.curve));
        const cplx z0 = parse_order(o.z).value();
        const PsiSide s = o.psi_side == "minus" ? PsiSide::PsiMinus : PsiSide::PsiPlus;
        j.update(result_json(frac_differint_curve(f, alpha, z0, psi, s, quad_of(o), UnitPhase{o.branch_n})));
        j["z"] = pair_of(z0);
        j["psi_side"] = o.psi_side;
    } else {
        j.update(result_json(frac_differint(f, alpha, o.x, side_of(o.side), quad_of(o), UnitPhase{o.branch_n})));
        j["x"] = o.x;
        j["side"] = o.side;
    }
    out << j.dump() << '\n';
    return kOk;
}

int cmd_table(const Options& o, std::ostream& out) {
    const RealFunction f = function_of(o);
    const Order alpha = parse_order(o.alpha);
    const std::vector<double> xs = grid_points(o);
    std::vector<DifferintResult> rows(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        rows[i] = frac_differint(f, alpha, xs[i], side_of(o.side), quad_of(o), UnitPhase{o.branch_n});
    });
    if (o.format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            json r = result_json(rows[i]);
            r["x"] = xs[i];
            arr.push_back(r);
        }
        out << json{{"alpha", alpha.to_string()}, {"side", o.side}, {"rows", arr}}.dump() << '\n';
        return kOk;
    }
    out << "x,re,im,est_error,method,branch_n\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << format_double(xs[i]) << ',' << format_double(rows[i].value.real()) << ','
            << format_double(rows[i].value.imag()) << ',' << format_double(rows[i].est_error) << ','
            << to_string(rows[i].method) << ',' << rows[i].branch.n << '\n';
    return kOk;
}

int cmd_branches(const Options& o, std::ostream& out) {
    const PoleForm h = pole_form_of(o);
    const Order alpha = parse_order(o.alpha);
    const cplx z0 = parse_order(o.z).value();
    const BranchValueSet set = branch_value_set(h, alpha, z0, o.max_winding, !o.no_unit_phase);
    json values = json::array();
    for (std::size_t i = 0; i < set.values.size(); ++i)
        values.push_back({{"value", pair_of(set.values[i])}, {"multiplicity", set.multiplicity[i]}});
    json j{{"alpha", alpha.to_string()},
           {"order_class", to_string(alpha.cls())},
           {"poles", h.terms.size()},
           {"max_winding", o.max_winding},
           {"unit_phase", !o.no_unit_phase},
           {"lattice_points", set.lattice_points},
           {"count", set.values.size()},
           {"values", values}};
    if (set.bound) {
        j["bound"] = "q^{N+1} = " + std::to_string(*set.bound);
        j["bound_value"] = *set.bound;
        j["within_bound"] = set.within_bound;
        j["periodic"] = set.periodic;
    }
    if (!set.factors.empty()) {
        json fs = json::array();
        for (auto [phase, scale] : set.factors) fs.push_back({{"phase", phase}, {"scale", scale}});
        j["factors"] = fs;
    }
    out << j.dump() << '\n';
    return set.within_bound && set.periodic ? kOk : kVerifyFailed;
}

int cmd_compose(const Options& o, std::ostream& out) {
    const RealFunction f = function_of(o);
    const Order a = parse_order(o.alpha), b = parse_order(o.beta);
    const double tol = o.tol > 0 ? o.tol : 1e-4;
    const CompositionReport r = verify_composition(f, a, b, o.x, side_of(o.side), quad_of(o));
    json params{{"fn", f.name}, {"alpha", a.to_string()}, {"beta", b.to_string()}, {"x", o.x}, {"side", o.side}};
    json j = report("compose", params, r.lhs, r.rhs, r.residual, tol);
    j["notes"] = r.notes;
    out << j.dump() << '\n';
    return j["pass"].get<bool>() ? kOk : kVerifyFailed;
}

int cmd_spectral(const Options& o, std::ostream& out) {
    const RealFunction f = function_of(o);
    const Order alpha = parse_order(o.alpha);
    const CutOrientation side = side_of(o.side);
    const double tol = o.tol > 0 ? o.tol : 1e-3;
    const SampledGrid g = SampledGrid::sample(f.value, o.lo, o.hi, static_cast<std::size_t>(o.count));
    SpectralConfig sc;
    sc.side = side;
    const SampledGrid d = fft_frac_deriv(g, alpha, sc);

    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < g.size(); ++j)
        if (std::abs(g.x(j)) <= o.region) idx.push_back(j);
    const std::size_t stride = std::max<std::size_t>(1, idx.size() / 200);
    std::vector<std::size_t> picked;
    for (std::size_t k = 0; k < idx.size(); k += stride) picked.push_back(idx[k]);
    std::vector<cplx> ref(picked.size());
    parallel_for(picked.size(), [&](std::size_t i) { ref[i] = frac_differint(f, alpha, g.x(picked[i]), side, quad_of(o)).value; });

    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < picked.size(); ++i) {
        diff = std::max(diff, std::abs(ref[i] - d.values[picked[i]]));
        scale = std::max(scale, std::abs(ref[i]));
    }
    const double residual = scale > 0 ? diff / scale : diff;
    if (o.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < picked.size(); ++i)
            rows.push_back({{"x", g.x(picked[i])}, {"spectral", pair_of(d.values[picked[i]])}, {"realline", pair_of(ref[i])}});
        out << json{{"case", "spectral-compare"},
                    {"params", {{"fn", f.name}, {"alpha", alpha.to_string()}, {"side", o.side}, {"count", o.count}}},
                    {"residual", residual},
                    {"tolerance", tol},
                    {"pass", residual <= tol},
                    {"rows", rows}}
                    .dump()
            << '\n';
    } else {
        out << "x,spectral_re,spectral_im,realline_re,realline_im\n";
        for (std::size_t i = 0; i < picked.size(); ++i)
            out << format_double(g.x(picked[i])) << ',' << format_double(d.values[picked[i]].real()) << ','
                << format_double(d.values[picked[i]].imag()) << ',' << format_double(ref[i].real()) << ','
                << format_double(ref[i].imag()) << '\n';
    }
    return residual <= tol ? kOk : kVerifyFailed;
}

int cmd_kernel(const Options& o, std::ostream& out) {
    const Order alpha = parse_order(o.alpha);
    const std::vector<double> ws = grid_points(o);
    std::vector<cplx> vals(ws.size());
    const KernelParams p{alpha, side_of(o.side), o.eps};
    for (std::size_t i = 0; i < ws.size(); ++i) {
        try {
            vals[i] = kernel(p, ws[i], UnitPhase{o.branch_n});
        } catch (const DomainError&) {
            vals[i] = cplx{std::nan(""), std::nan("")};  // w = 0 of the limiting kernel
        }
    }
    if (o.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < ws.size(); ++i) rows.push_back({{"w", ws[i]}, {"value", pair_of(vals[i])}});
        out << json{{"alpha", alpha.to_string()}, {"side", o.side}, {"eps", o.eps}, {"rows", rows}}.dump() << '\n';
        return kOk;
    }
    out << "w,re,im\n";
    for (std::size_t i = 0; i < ws.size(); ++i)
        out << format_double(ws[i]) << ',' << format_double(vals[i].real()) << ',' << format_double(vals[i].imag()) << '\n';
    return kOk;
}

std::vector<json> suite_reflection() {
    std::vector<json> rs;
    for (cplx g : {cplx{0.5}, cplx{0.3}, cplx{0.4, 0.2}, cplx{-1.7, 0.3}, cplx{2.5, -1.1}}) {
        const double r = gamma_reflection(g);
        rs.push_back(report("gamma_reflection", {{"gamma", pair_of(g)}}, gamma(g) * gamma(1.0 - g) * std::sin(kPi * g), kPi,
                            r, 1e-10));
    }
    for (auto [a, x] : {std::pair{cplx{0.5}, 1.0}, std::pair{cplx{0.3, 0.1}, 0.7}, std::pair{cplx{2.0}, 3.0}}) {
        const Order alpha(a);
        const cplx lhs = lorentzian_closed(alpha, x, -1);
        const cplx rhs = UnitPhase{0}.value(a) * lorentzian_closed(alpha, -x, 0);
        rs.push_back(report("lorentzian_reflection", {{"alpha", alpha.to_string()}, {"x", x}}, lhs, rhs,
                            reflection_check(alpha, x) / std::max(std::abs(lhs), 1e-12), 1e-12));
    }
    return rs;
}

std::vector<json> suite_beta() {
    std::vector<json> rs;
    const double b = beta_integral(0.5, 0.5);
    rs.push_back(report("beta_integral", {{"lambda", 0.5}, {"mu", 0.5}}, b, kPi, std::abs(b - kPi) / kPi, 1e-10));
    for (auto [a, bb, x, z] : {std::tuple{0.6, 0.6, 0.0, 1.0}, std::tuple{0.7, 0.5, 0.0, 1.5}, std::tuple{0.8, 0.4, 2.0, -1.0}}) {
        const BetaSuiteReport r = beta_identity_suite(a, bb, x, z);
        rs.push_back(report("beta_identity", {{"a", a}, {"b", bb}, {"x", x}, {"z", z}}, r.quadrature[1], r.closed[1],
                            r.max_residual(), 1e-8));
    }
    return rs;
}

std::vector<json> suite_phase(const QuadratureConfig& cfg) {
    std::vector<json> rs;
    const double a = 0.6, b = 0.7;
    auto add = [&](HKind p, HKind q, double x, double z) {
        const PhaseTableCase c = phase_table_check(p, q, a, b, x, z, cfg);
        json params{{"first", to_string(p)}, {"second", to_string(q)}, {"a", a}, {"b", b}, {"x", x}, {"z", z}};
        rs.push_back(report(c.vanishing ? "phase_table_vanishing" : "phase_table", params, c.extrapolated, c.expected,
                            c.residual, c.vanishing ? 1e-6 : 1e-3));
    };
    for (auto [p, q] : tabulated_combos()) {
        add(p, q, 0.0, 1.0);
        add(p, q, 2.0, 1.0);
    }
    for (auto [p, q] : vanishing_combos()) add(p, q, 0.0, 1.0);
    return rs;
}

std::vector<json> suite_j(const QuadratureConfig& cfg) {
    std::vector<json> rs;
    const cplx z1{0.2, -0.3}, z2{1.1, 0.4};
    for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{0.3, 0.4}, std::pair{-0.4, 0.1}, std::pair{1.2, -0.5}}) {
        const cplx lhs = j_numeric(z1, z2, Order(a), Order(b), cfg);
        const cplx rhs = j_closed(z1, z2, Order(a), Order(b));
        rs.push_back(report("j_separating", {{"alpha", a}, {"beta", b}}, lhs, rhs, std::abs(lhs - rhs) / std::abs(rhs), 1e-6));
    }
    const IntegrationLine apart{z2 + 1.0, cplx{0.0, 1.0} * (z2 - z1)};
    const cplx zero = j_numeric(z1, z2, Order(0.3), Order(0.4), cfg, apart);
    rs.push_back(report("j_non_separating", {{"alpha", 0.3}, {"beta", 0.4}}, zero, 0.0, std::abs(zero), 1e-8));
    const IntegrationLine fwd{0.5 * (z1 + z2), cplx{0.0, 1.0} * (z2 - z1)};
    const IntegrationLine bwd{fwd.point, -fwd.direction};
    const cplx f = j_numeric(z1, z2, Order(0.3), Order(0.4), cfg, fwd);
    const cplx r = j_numeric(z1, z2, Order(0.3), Order(0.4), cfg, bwd);
    rs.push_back(report("j_orientation", {{"alpha", 0.3}, {"beta", 0.4}}, r, -f, std::abs(r + f) / std::abs(f), 1e-10));
    return rs;
}

int cmd_verify(const Options& o, std::ostream& out) {
    static const std::vector<std::string> known{"all", "reflection", "beta", "phase", "j-integral"};
    if (std::find(known.begin(), known.end(), o.suite) == known.end()) throw InputError("unknown suite " + o.suite);
    std::vector<json> rs;
    auto want = [&](const char* s) { return o.suite == "all" || o.suite == s; };
    auto append = [&](std::vector<json> more) { rs.insert(rs.end(), more.begin(), more.end()); };
    if (want("reflection")) append(suite_reflection());
    if (want("beta")) append(suite_beta());
    if (want("phase")) append(suite_phase(quad_of(o)));
    if (want("j-integral")) append(suite_j(quad_of(o)));
    int failed = 0;
    for (const json& r : rs) {
        out << r.dump() << '\n';
        if (!r["pass"].get<bool>()) ++failed;
    }
    out << json{{"suite", o.suite}, {"cases", rs.size()}, {"failed", failed}}.dump() << '\n';
    return failed == 0 ? kOk : kVerifyFailed;
}

void diagnose(std::ostream& err, const std::string& kind, const std::string& message, json extra = json::object()) {
    json j{{"level", "error"}, {"kind", kind}, {"message", message}};
    j.update(extra);
    err << j.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Fractional differintegrals with branch bookkeeping", "fracdi"};
    app.require_subcommand(1);

    auto fn_opts = [&](CLI::App* s) {
        s->add_option("--fn", o.fn, "catalog function: exp, exp(c), lorentzian, gaussian, rational, expr:<text>");
        s->add_option("--poleform", o.poleform, "PoleForm JSON file");
    };
    auto alpha_opt = [&](CLI::App* s) { s->add_option("--alpha", o.alpha, "order: decimal, p/q or a+bi"); };
    auto side_opt = [&](CLI::App* s) {
        s->add_option("--side", o.side, "cut side")->check(CLI::IsMember({"plus", "minus"}));
    };
    auto tol_opts = [&](CLI::App* s) {
        s->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
        s->add_option("--abs-tol", o.abs_tol, "quadrature absolute tolerance")->check(CLI::PositiveNumber);
    };
    auto grid_opts = [&](CLI::App* s) {
        s->add_option("--min", o.lo, "grid start");
        s->add_option("--max", o.hi, "grid end");
        s->add_option("--count", o.count, "grid points")->check(CLI::PositiveNumber);
    };
    auto format_opt = [&](CLI::App* s) {
        s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* eval = app.add_subcommand("eval", "single-point differintegral");
    fn_opts(eval);
    alpha_opt(eval);
    side_opt(eval);
    tol_opts(eval);
    eval->add_option("--x", o.x, "evaluation point on the real line");
    eval->add_option("--curve", o.curve, "CurvePsi JSON file; evaluates on the curve at --z");
    eval->add_option("--z", o.z, "complex evaluation point on the curve");
    eval->add_option("--psi-side", o.psi_side, "curve side")->check(CLI::IsMember({"plus", "minus"}));
    eval->add_option("--branch-n", o.branch_n, "UnitPhase index");

    CLI::App* table = app.add_subcommand("table", "differintegral over a uniform grid");
    fn_opts(table);
    alpha_opt(table);
    side_opt(table);
    tol_opts(table);
    grid_opts(table);
    format_opt(table);
    table->add_option("--branch-n", o.branch_n, "UnitPhase index");

    CLI::App* branches = app.add_subcommand("branches", "distinct branch values of a pole form");
    fn_opts(branches);
    alpha_opt(branches);
    branches->add_option("--max-winding", o.max_winding, "winding bound")->check(CLI::PositiveNumber);
    branches->add_option("--z", o.z, "evaluation point");
    branches->add_flag("--no-unit-phase", o.no_unit_phase, "fix the UnitPhase index at 0");

    CLI::App* compose = app.add_subcommand("compose-check", "semigroup check D^a D^b = D^(a+b)");
    fn_opts(compose);
    alpha_opt(compose);
    side_opt(compose);
    tol_opts(compose);
    compose->add_option("--beta", o.beta, "inner order");
    compose->add_option("--x", o.x, "evaluation point");
    compose->add_option("--tol", o.tol, "pass threshold on the residual");

    CLI::App* spectral = app.add_subcommand("spectral-compare", "FFT operator against quadrature");
    fn_opts(spectral);
    alpha_opt(spectral);
    side_opt(spectral);
    tol_opts(spectral);
    grid_opts(spectral);
    format_opt(spectral);
    spectral->add_option("--region", o.region, "compare where |x| <= region")->check(CLI::PositiveNumber);
    spectral->add_option("--tol", o.tol, "pass threshold on the relative error");

    CLI::App* kdump = app.add_subcommand("kernel-dump", "tabulate the kernel");
    alpha_opt(kdump);
    side_opt(kdump);
    grid_opts(kdump);
    format_opt(kdump);
    kdump->add_option("--eps", o.eps, "regularization; 0 for the limit")->check(CLI::NonNegativeNumber);
    kdump->add_option("--branch-n", o.branch_n, "UnitPhase index");

    CLI::App* verify = app.add_subcommand("verify", "identity suites");
    tol_opts(verify);
    verify->add_option("--suite", o.suite, "all, reflection, beta, phase or j-integral");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        diagnose(err, "UsageError", e.what());
        return kUsage;
    }

    // spectral-compare defaults to a wide grid suited to decaying functions
    if (spectral->parsed()) {
        if (spectral->count("--min") == 0) o.lo = -1024.0;
        if (spectral->count("--max") == 0) o.hi = 1024.0;
        if (spectral->count("--count") == 0) o.count = 131072;
    }

    try {
        if (eval->parsed()) return cmd_eval(o, out);
        if (table->parsed()) return cmd_table(o, out);
        if (branches->parsed()) return cmd_branches(o, out);
        if (compose->parsed()) return cmd_compose(o, out);
        if (spectral->parsed()) return cmd_spectral(o, out);
        if (kdump->parsed()) return cmd_kernel(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
    } catch (const SyntaxError& e) {
        diagnose(err, e.kind(), e.what(), {{"offset", e.offset()}, {"expected", e.expected()}});
        return kUsage;
    } catch (const InputError& e) {
        diagnose(err, e.kind(), e.what());
        return kUsage;
    } catch (const PoleAtEvaluationPoint& e) {
        diagnose(err, e.kind(), e.what(), {{"where", e.where()}});
        return kNumeric;
    } catch (const AccuracyError& e) {
        const double est = e.est_error();
        diagnose(err, e.kind(), e.what(), {{"est_error", std::isfinite(est) ? json(est) : json(format_double(est))}});
        return kNumeric;
    } catch (const Error& e) {
        diagnose(err, e.kind(), e.what());
        return kNumeric;
    } catch (const std::exception& e) {
        diagnose(err, "InternalError", e.what());
        return kNumeric;
    }
    diagnose(err, "UsageError", "no command given");
    return kUsage;
}

}  // namespace fracdi::cli
