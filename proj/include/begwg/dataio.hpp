#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "begwg/estimation.hpp"

namespace begwg {

struct DataError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DatasetMeta {
    std::string name;
    std::size_t n;
    std::string source;
};

// Two-column CSV with header "x1,x2". Strict: bad header, non-numeric or
// non-positive fields, and short rows all raise DataError with a line number.
PairedSample load_csv(std::istream& in);
PairedSample load_csv(const std::string& path);

void save_csv(std::ostream& out, const PairedSample& s);
void save_csv(const std::string& path, const PairedSample& s);

std::string to_csv(const PairedSample& s);

// Built-in dataset: 42 pro-football games, game time in minutes to the first
// field goal (x1) and to the first touchdown (x2).
const PairedSample& nfl_dataset();
DatasetMeta nfl_meta();

std::string fit_result_to_json(const FitResult& r);

}  // namespace begwg
