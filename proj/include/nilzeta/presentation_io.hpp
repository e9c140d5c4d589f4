#pragma once

// JSON presentation files: block lists, raw matrices of linear forms, or an
// R-form, plus an optional user-supplied formula for A(p, T).

#include <optional>
#include <string>

#include "nilzeta/liering.hpp"
#include "nilzeta/ratfun.hpp"

namespace nilzeta {

struct InputFile {
    std::string source;
    Presentation P;
    std::optional<GeoRatFun> formula; // overrides the closed form when present
};

/// ParseError carries "source:line:col: message" for syntax errors and
/// "source: at <json pointer>: message" for structural ones.
InputFile parse_input(const std::string& text, const std::string& source = "<input>");
InputFile load_input(const std::string& path);

} // namespace nilzeta
