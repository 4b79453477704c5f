#include "fracdi/json_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fracdi/errors.hpp"
#include "json.hpp"

namespace fracdi {

using nlohmann::json;

namespace {

json pair_of(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_of(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError("expected [re, im], got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<cplx> points_of(const json& j) {
    if (!j.is_array()) throw InputError("expected an array of points");
    std::vector<cplx> out;
    for (const json& p : j) out.push_back(complex_of(p));
    return out;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

double number_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) throw InputError(std::string("missing numeric field ") + key);
    return j[key].get<double>();
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field ") + key);
    return j[key];
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string to_json(const CutCurve& cut) {
    json v = json::array();
    for (cplx z : cut.vertices) v.push_back(pair_of(z));
    return json{{"branch_point", pair_of(cut.branch_point)}, {"vertices", v}, {"terminal_angle", cut.terminal_angle}}.dump();
}

std::string to_json(const PoleForm& h) {
    json terms = json::array();
    for (const PoleTerm& t : h.terms) terms.push_back({{"a", pair_of(t.a)}, {"z", pair_of(t.z)}, {"n", t.n}});
    return json{{"terms", terms}}.dump();
}

std::string to_json(const CurvePsi& psi) {
    json v = json::array();
    for (cplx z : psi.vertices) v.push_back(pair_of(z));
    return json{{"vertices", v}, {"theta1", psi.theta1}, {"theta2", psi.theta2}}.dump();
}

CutCurve cut_curve_from_json(const std::string& text) {
    const json j = parse(text);
    CutCurve c;
    c.branch_point = complex_of(field(j, "branch_point"));
    c.vertices = points_of(field(j, "vertices"));
    if (c.vertices.empty() || c.vertices.front() != c.branch_point) c.vertices.insert(c.vertices.begin(), c.branch_point);
    c.terminal_angle = number_field(j, "terminal_angle");
    c.validate();
    return c;
}

PoleForm pole_form_from_json(const std::string& text) {
    const json j = parse(text);
    const json& terms = field(j, "terms");
    if (!terms.is_array()) throw InputError("terms must be an array");
    PoleForm h;
    for (const json& t : terms) {
        const json& n = field(t, "n");
        if (!n.is_number_integer()) throw InputError("pole order n must be an integer");
        h.terms.push_back({complex_of(field(t, "a")), complex_of(field(t, "z")), n.get<int>()});
    }
    h.validate();
    return h;
}

CurvePsi curve_psi_from_json(const std::string& text) {
    const json j = parse(text);
    CurvePsi psi;
    psi.vertices = points_of(field(j, "vertices"));
    psi.theta1 = number_field(j, "theta1");
    psi.theta2 = number_field(j, "theta2");
    psi.validate();
    return psi;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_grid_csv(std::ostream& out, const SampledGrid& grid) {
    out << "x,re,im\n";
    for (std::size_t j = 0; j < grid.size(); ++j)
        out << format_double(grid.x(j)) << ',' << format_double(grid.values[j].real()) << ','
            << format_double(grid.values[j].imag()) << '\n';
}

std::string grid_to_json(const SampledGrid& grid) {
    json v = json::array();
    for (cplx z : grid.values) v.push_back(pair_of(z));
    return json{{"x0", grid.x0}, {"dx", grid.dx}, {"count", grid.size()}, {"values", v}}.dump();
}

SampledGrid grid_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> xs;
    SampledGrid g;
    auto number = [](const std::string& s) {
        double v = 0.0;
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) throw InputError("bad number in CSV: " + s);
        return v;
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.rfind("x,", 0) == 0) continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() < 2 || cells.size() > 3) throw InputError("CSV rows need x,re[,im]");
        xs.push_back(number(cells[0]));
        g.values.emplace_back(number(cells[1]), cells.size() == 3 ? number(cells[2]) : 0.0);
    }
    if (xs.size() < 2) throw InputError("CSV grid needs at least two rows");
    g.x0 = xs.front();
    g.dx = (xs.back() - xs.front()) / double(xs.size() - 1);
    for (std::size_t j = 1; j < xs.size(); ++j)
        if (std::abs(xs[j] - xs[j - 1] - g.dx) > 1e-9 * std::max(1.0, std::abs(g.dx))) throw InputError("CSV grid is not uniform");
    g.validate();
    return g;
}

}  // namespace fracdi
