#pragma once
#include <string>
#include <vector>

namespace rpsim {

// One labeled curve: y(x) samples plus an optional missing-point mask and a
// metadata blob (JSON text) describing exactly how the curve was produced.
struct CurveSeries {
    std::string label;
    std::string abscissa_name;
    std::string abscissa_unit;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<char> missing;  // empty, or one flag per point
    std::string meta_json;

    bool is_missing(std::size_t i) const { return !missing.empty() && missing[i] != 0; }
};

}  // namespace rpsim
