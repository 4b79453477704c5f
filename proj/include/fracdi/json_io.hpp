#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracdi/branchcut.hpp"
#include "fracdi/contour.hpp"
#include "fracdi/poleform.hpp"
#include "fracdi/spectral.hpp"

namespace fracdi {

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double v);

std::string to_json(const CutCurve& cut);
std::string to_json(const PoleForm& h);
std::string to_json(const CurvePsi& psi);

// Parsers throw InputError on malformed documents.
CutCurve cut_curve_from_json(const std::string& text);
PoleForm pole_form_from_json(const std::string& text);
CurvePsi curve_psi_from_json(const std::string& text);

std::string read_file(const std::string& path);

/// CSV with header x,re,im.
void write_grid_csv(std::ostream& out, const SampledGrid& grid);
std::string grid_to_json(const SampledGrid& grid);
SampledGrid grid_from_csv(const std::string& text);

}  // namespace fracdi
