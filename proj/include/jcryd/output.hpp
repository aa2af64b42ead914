#pragma once

// Deterministic table emission: CSV with 17 significant digits and '.'
// decimal separator, JSON via round-trip-exact number formatting, and
// atomic file writes (temp file + rename).

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace jcryd {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Shortest-unambiguous decimal text, locale-independent, 17 significant
// digits for doubles.
std::string format_double(double v);

std::string to_csv(const Table& table);
nlohmann::json to_json(const Table& table);

// path "-" writes to stdout; otherwise writes a temp file in the target
// directory and renames it into place.
void write_output(const std::string& path, const std::string& content);

}  // namespace jcryd
