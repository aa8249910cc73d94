#pragma once

#include <iosfwd>
#include <string>

#include "superpose/core.hpp"

namespace superpose {

// Text form: first line "rows cols", then one line per row with
// space-separated values at 17 significant digits. JSON form:
// {"rows": r, "cols": c, "entries": [row-major values]}.
std::string format_matrix_text(const Matrix& m);
std::string format_matrix_json(const Matrix& m);

// Detects the JSON form by a leading '{'. Throws Parse with a line number.
Matrix parse_matrix(const std::string& text);

Matrix load_matrix(const std::string& path);
// Paths ending in ".json" get the JSON form, everything else the text form.
void save_matrix(const Matrix& m, const std::string& path);

std::string format_double(double v);

}  // namespace superpose
