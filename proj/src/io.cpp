#include "qnd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qnd {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double require_number(const json& j, const std::string& key, const std::string& shown) {
    if (!j.contains(key)) throw ParseError(shown, "missing field");
    if (!j[key].is_number()) throw ParseError(shown, "expected a number");
    return j[key].get<double>();
}

Vec3 parse_vec3_value(const json& a, const std::string& field) {
    if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
        !a[2].is_number())
        throw ParseError(field, "expected an array of 3 numbers");
    return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

Vec3 require_vec3(const json& j, const std::string& key, const std::string& shown) {
    if (!j.contains(key)) throw ParseError(shown, "missing field");
    return parse_vec3_value(j[key], shown);
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

CorrectionOp parse_correction_op(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ParseError(field, "expected an object with a string 'type'");
    const std::string type = j["type"].get<std::string>();
    if (type == "identity") return CorrIdentity{};
    if (type == "rotate") {
        const Vec3 axis = require_vec3(j, "axis", field + ".axis");
        if (axis.norm() < 1e-12) throw ParseError(field + ".axis", "rotation axis is zero");
        return CorrRotate{Rotation(axis, require_number(j, "angle", field + ".angle"))};
    }
    if (type == "prepare") {
        const Vec3 bloch = require_vec3(j, "bloch", field + ".bloch");
        if (bloch.norm() > 1.0 + 1e-9)
            throw ParseError(field + ".bloch", "prepared state leaves the Bloch ball");
        return CorrPrepare{State(bloch.norm() > 1.0 ? bloch.normalized() : bloch)};
    }
    throw ParseError(field + ".type", "unknown correction type '" + type + "'");
}

std::string slot(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

}  // namespace

InstrumentFile parse_instrument_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("<document>", e.what());
    }
    if (!root.is_object()) throw ParseError("<document>", "expected a JSON object");
    if (!root.contains("kind") || !root["kind"].is_string())
        throw ParseError("kind", "missing or non-string field");
    const std::string kind = root["kind"].get<std::string>();

    if (!root.contains("elements") || !root["elements"].is_array() ||
        root["elements"].empty())
        throw ParseError("elements", "missing or empty element list");
    Povm povm;
    for (std::size_t i = 0; i < root["elements"].size(); ++i) {
        const json& e = root["elements"][i];
        const std::string base = slot("elements", i);
        if (!e.is_object()) throw ParseError(base, "expected an object");
        ElementParam param;
        param.p = require_number(e, "p", base + ".p");
        param.k = require_number(e, "k", base + ".k");
        param.n = require_vec3(e, "n", base + ".n");
        if (param.p < -1e-12) throw ParseError(base + ".p", "negative weight");
        if (param.k < -1e-12 || param.k > 1.0 + 1e-9)
            throw ParseError(base + ".k", "sharpness outside [0, 1]");
        if (param.n.norm() < 1e-12 && param.k > 1e-12)
            throw ParseError(base + ".n", "axis is zero");
        povm.elements.push_back(element_from_param(param));
    }
    require_valid(povm);

    InstrumentFile file;
    if (kind == "lueders") {
        file.instrument = Instrument::lueders(povm);
    } else if (kind == "purity-preserving") {
        if (!root.contains("unitaries") || !root["unitaries"].is_array())
            throw ParseError("unitaries", "required for kind purity-preserving");
        std::vector<Rotation> rotations;
        for (std::size_t i = 0; i < root["unitaries"].size(); ++i) {
            const json& u = root["unitaries"][i];
            const std::string base = slot("unitaries", i);
            const Vec3 axis = require_vec3(u, "axis", base + ".axis");
            if (axis.norm() < 1e-12) throw ParseError(base + ".axis", "rotation axis is zero");
            rotations.emplace_back(axis, require_number(u, "angle", base + ".angle"));
        }
        file.instrument = Instrument::purity_preserving(povm, std::move(rotations));
    } else if (kind == "measure-prepare") {
        if (!root.contains("prepared_states") || !root["prepared_states"].is_array())
            throw ParseError("prepared_states", "required for kind measure-prepare");
        std::vector<State> states;
        for (std::size_t i = 0; i < root["prepared_states"].size(); ++i) {
            const std::string base = slot("prepared_states", i);
            const Vec3 bloch = parse_vec3_value(root["prepared_states"][i], base);
            if (bloch.norm() > 1.0 + 1e-9)
                throw ParseError(base, "prepared state leaves the Bloch ball");
            states.emplace_back(bloch.norm() > 1.0 ? bloch.normalized() : bloch);
        }
        file.instrument = Instrument::measure_prepare(povm, std::move(states));
    } else {
        throw ParseError("kind", "unknown instrument kind '" + kind + "'");
    }
    require_valid(file.instrument);

    if (root.contains("correction")) {
        if (!root["correction"].is_array())
            throw ParseError("correction", "expected an array");
        Correction corr;
        for (std::size_t i = 0; i < root["correction"].size(); ++i)
            corr.per_outcome.push_back(
                parse_correction_op(root["correction"][i], slot("correction", i)));
        if (corr.size() != file.instrument.outcomes())
            throw ParseError("correction", "entry count does not match the outcome count");
        file.correction = std::move(corr);
    }
    return file;
}

std::string instrument_to_json(const Instrument& inst, const std::optional<Correction>& corr) {
    json root;
    json elements = json::array();
    for (const ElementParam& e : inst.povm.params()) {
        json el;
        el["p"] = e.p;
        el["k"] = e.k;
        el["n"] = vec3_to_json(e.n);
        elements.push_back(el);
    }
    root["elements"] = elements;

    if (std::holds_alternative<LuedersUpdate>(inst.update)) {
        root["kind"] = "lueders";
    } else if (const auto* pp = std::get_if<PurityPreservingUpdate>(&inst.update)) {
        root["kind"] = "purity-preserving";
        json us = json::array();
        for (const Rotation& r : pp->unitaries) {
            json u;
            u["axis"] = vec3_to_json(r.axis());
            u["angle"] = r.angle();
            us.push_back(u);
        }
        root["unitaries"] = us;
    } else if (const auto* mp = std::get_if<MeasurePrepareUpdate>(&inst.update)) {
        root["kind"] = "measure-prepare";
        json ss = json::array();
        for (const State& s : mp->states) ss.push_back(vec3_to_json(s.bloch()));
        root["prepared_states"] = ss;
    } else {
        throw ParseError("kind", "general Kraus instruments have no file form");
    }

    if (corr) {
        json cs = json::array();
        for (const CorrectionOp& op : corr->per_outcome) {
            json c;
            if (std::holds_alternative<CorrIdentity>(op)) {
                c["type"] = "identity";
            } else if (const auto* rot = std::get_if<CorrRotate>(&op)) {
                c["type"] = "rotate";
                c["axis"] = vec3_to_json(rot->rotation.axis());
                c["angle"] = rot->rotation.angle();
            } else {
                c["type"] = "prepare";
                c["bloch"] = vec3_to_json(std::get<CorrPrepare>(op).state.bloch());
            }
            cs.push_back(c);
        }
        root["correction"] = cs;
    }
    return root.dump(2) + "\n";
}

InstrumentFile load_instrument_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open instrument file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instrument_json(buf.str());
}

void save_instrument_file(const std::string& path, const Instrument& inst,
                          const std::optional<Correction>& corr) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write instrument file '" + path + "'");
    out << instrument_to_json(inst, corr);
}

void write_region_csv(const std::string& path, const std::vector<RegionPoint>& points) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write CSV file '" + path + "'");
    out << "x,y,kind,meta\n";
    for (const RegionPoint& p : points) {
        std::string meta = p.meta;
        for (char& c : meta)
            if (c == ',' || c == '\n') c = ';';
        out << fmt17(p.x) << ',' << fmt17(p.y) << ',' << to_string(p.kind) << ',' << meta
            << '\n';
    }
}

std::vector<RegionPoint> read_region_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open CSV file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("header", "empty CSV file");
    if (line.size() && line.back() == '\r') line.pop_back();
    if (line != "x,y,kind,meta")
        throw ParseError("header", "expected 'x,y,kind,meta', got '" + line + "'");
    std::vector<RegionPoint> points;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.size() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        std::size_t c1 = line.find(',');
        std::size_t c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        std::size_t c3 = c2 == std::string::npos ? c2 : line.find(',', c2 + 1);
        if (c3 == std::string::npos) throw ParseError(where, "expected 4 comma-separated fields");
        RegionPoint p;
        try {
            p.x = std::stod(line.substr(0, c1));
            p.y = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        } catch (const std::exception&) {
            throw ParseError(where, "non-numeric coordinate");
        }
        p.kind = region_kind_from_string(line.substr(c2 + 1, c3 - c2 - 1));
        p.meta = line.substr(c3 + 1);
        points.push_back(std::move(p));
    }
    return points;
}

namespace {

constexpr int kPlotSize = 720;
constexpr int kMargin = 64;

double px(double x) { return kMargin + x * (kPlotSize - 2 * kMargin); }
double py(double y) { return kPlotSize - kMargin - y * (kPlotSize - 2 * kMargin); }

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

bool monotone_in_x(const std::vector<RegionPoint>& pts) {
    if (pts.size() < 2) return false;
    bool up = true, down = true;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].x < pts[i - 1].x) up = false;
        if (pts[i].x > pts[i - 1].x) down = false;
    }
    return up || down;
}

}  // namespace

std::string render_svg_plot(const std::vector<PlotSeries>& series) {
    if (series.empty()) throw DomainError("plot needs at least one data series");
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPlotSize << "\" height=\""
        << kPlotSize << "\" viewBox=\"0 0 " << kPlotSize << " " << kPlotSize << "\">\n";
    svg << "<rect width=\"" << kPlotSize << "\" height=\"" << kPlotSize
        << "\" fill=\"white\"/>\n";
    // frame and grid
    for (int i = 0; i <= 4; ++i) {
        const double t = 0.25 * i;
        svg << "<line x1=\"" << fmt2(px(t)) << "\" y1=\"" << fmt2(py(0)) << "\" x2=\""
            << fmt2(px(t)) << "\" y2=\"" << fmt2(py(1)) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<line x1=\"" << fmt2(px(0)) << "\" y1=\"" << fmt2(py(t)) << "\" x2=\""
            << fmt2(px(1)) << "\" y2=\"" << fmt2(py(t)) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << fmt2(px(t)) << "\" y=\"" << fmt2(py(0) + 20)
            << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">"
            << fmt2(t) << "</text>\n";
        svg << "<text x=\"" << fmt2(px(0) - 10) << "\" y=\"" << fmt2(py(t) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">" << fmt2(t)
            << "</text>\n";
    }
    svg << "<rect x=\"" << fmt2(px(0)) << "\" y=\"" << fmt2(py(1)) << "\" width=\""
        << fmt2(px(1) - px(0)) << "\" height=\"" << fmt2(py(0) - py(1))
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        const auto& pts = series[s].points;
        if (monotone_in_x(pts)) {
            svg << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" points=\"";
            for (const RegionPoint& p : pts) svg << fmt2(px(p.x)) << ',' << fmt2(py(p.y)) << ' ';
            svg << "\"/>\n";
        } else {
            for (const RegionPoint& p : pts)
                svg << "<circle cx=\"" << fmt2(px(p.x)) << "\" cy=\"" << fmt2(py(p.y))
                    << "\" r=\"1.5\" fill=\"" << color << "\" fill-opacity=\"0.5\"/>\n";
        }
        svg << "<text x=\"" << fmt2(px(0) + 8) << "\" y=\"" << fmt2(py(1) + 16 + 16.0 * s)
            << "\" font-size=\"12\" font-family=\"sans-serif\" fill=\"" << color << "\">"
            << series[s].label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write SVG file '" + path + "'");
    out << render_svg_plot(series);
}

}  // namespace qnd
