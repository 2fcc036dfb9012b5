#include "output.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace finegrad::cli {

Format parse_format(const std::string& text)
{
  if (text == "plain")
    return Format::plain;
  if (text == "csv")
    return Format::csv;
  if (text == "json")
    return Format::json;
  throw std::invalid_argument("unknown format '" + text + "'");
}

std::string cell_text(const Cell& cell)
{
  struct Visitor
  {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const BigInt& value) const { return value.str(); }
    std::string operator()(const Fixed& value) const
    {
      char buffer[64];
      std::snprintf(buffer, sizeof buffer, "%.*f", value.decimals, value.value);
      return buffer;
    }
    std::string operator()(const std::string& value) const { return value; }
  };
  return std::visit(Visitor{}, cell);
}

namespace {

std::string csv_field(const std::string& text)
{
  if (text.find_first_of(",\"\n") == std::string::npos)
    return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"')
      quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

nlohmann::ordered_json json_value(const Cell& cell)
{
  if (std::holds_alternative<std::monostate>(cell))
    return nullptr;
  if (const auto* value = std::get_if<BigInt>(&cell)) {
    if (*value >= std::numeric_limits<std::int64_t>::min() &&
        *value <= std::numeric_limits<std::int64_t>::max())
      return static_cast<std::int64_t>(*value);
    return value->str();
  }
  if (const auto* value = std::get_if<Fixed>(&cell))
    return std::stod(cell_text(*value));
  return std::get<std::string>(cell);
}

} // namespace

void render(const Document& doc, Format format, std::ostream& out)
{
  switch (format) {
  case Format::csv: {
    for (std::size_t i = 0; i < doc.columns.size(); ++i)
      out << (i ? "," : "") << csv_field(doc.columns[i]);
    out << '\n';
    for (const auto& row : doc.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? "," : "") << csv_field(cell_text(row[i]));
      out << '\n';
    }
    return;
  }
  case Format::json: {
    nlohmann::ordered_json root;
    root["meta"] = doc.meta;
    root["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : doc.rows) {
      nlohmann::ordered_json object = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i)
        object[doc.columns[i]] = json_value(row[i]);
      root["rows"].push_back(std::move(object));
    }
    out << root.dump(2) << '\n';
    return;
  }
  case Format::plain: {
    std::vector<std::vector<std::string>> text;
    std::vector<std::size_t> width(doc.columns.size());
    for (std::size_t i = 0; i < doc.columns.size(); ++i)
      width[i] = doc.columns[i].size();
    for (const auto& row : doc.rows) {
      auto& line = text.emplace_back();
      for (std::size_t i = 0; i < row.size(); ++i) {
        line.push_back(cell_text(row[i]));
        width[i] = std::max(width[i], line.back().size());
      }
    }
    auto emit = [&](const std::vector<std::string>& cells) {
      std::string line;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
          line += "  ";
        line += cells[i];
        if (i + 1 < cells.size())
          line.append(width[i] - cells[i].size(), ' ');
      }
      line.erase(line.find_last_not_of(' ') + 1);
      out << line << '\n';
    };
    emit(doc.columns);
    for (const auto& line : text)
      emit(line);
    return;
  }
  }
}

} // namespace finegrad::cli
