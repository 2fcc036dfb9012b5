#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "finegrad/bigint.hpp"

namespace finegrad::cli {

enum class Format { plain, csv, json };

Format parse_format(const std::string& text);

/// A cell is empty, an exact integer, a fixed-decimal real, or text.
struct Fixed
{
  double value;
  int decimals;
};
using Cell = std::variant<std::monostate, BigInt, Fixed, std::string>;

struct Document
{
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& cell);

/// plain: aligned columns; csv: header plus rows; json: {"meta", "rows"} with
/// integers as numbers when they fit in 64 bits and as decimal strings otherwise.
void render(const Document& doc, Format format, std::ostream& out);

} // namespace finegrad::cli
