#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnd/instrument.hpp"
#include "qnd/regions.hpp"

namespace qnd {

// On-disk instrument description: the (p, k, n) element parameterization,
// update-rule payload, and an optional per-outcome correction.
struct InstrumentFile {
    Instrument instrument;
    std::optional<Correction> correction;
};

// JSON (de)serialization. Parsing reports the offending field in the
// ParseError; POVM/shape validation failures surface as model errors.
InstrumentFile parse_instrument_json(const std::string& text);
std::string instrument_to_json(const Instrument& inst,
                               const std::optional<Correction>& corr = std::nullopt);
InstrumentFile load_instrument_file(const std::string& path);
void save_instrument_file(const std::string& path, const Instrument& inst,
                          const std::optional<Correction>& corr = std::nullopt);

// Region CSV: header "x,y,kind,meta", LF endings, 17 significant digits.
void write_region_csv(const std::string& path, const std::vector<RegionPoint>& points);
std::vector<RegionPoint> read_region_csv(const std::string& path);

// Deterministic SVG scatter/curve rendering of region CSV data on [0,1]^2.
// Monotone-in-x series render as polylines, everything else as dots.
struct PlotSeries {
    std::string label;
    std::vector<RegionPoint> points;
};
std::string render_svg_plot(const std::vector<PlotSeries>& series);
void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series);

}  // namespace qnd
