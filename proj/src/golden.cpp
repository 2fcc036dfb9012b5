#include "finegrad/golden.hpp"

#include <cstdio>
#include <stdexcept>

#include "finegrad/asymptotics.hpp"
#include "finegrad/census.hpp"

namespace finegrad {

const std::string& GoldenRecord::field(std::string_view key) const
{
  for (const auto& [name, value] : fields)
    if (name == key)
      return value;
  throw std::out_of_range("golden line " + std::to_string(line) + ": no field '" +
                          std::string(key) + "'");
}

std::string GoldenRecord::label() const
{
  std::string out = kind;
  for (const auto& [name, value] : fields)
    out += ' ' + name + '=' + value;
  return out;
}

std::vector<GoldenRecord> parse_golden(std::string_view text)
{
  std::vector<GoldenRecord> records;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    ++number;
    if (line.empty() || line.front() == '#')
      continue;

    GoldenRecord record;
    record.line = number;
    bool first = true;
    while (!line.empty()) {
      const auto space = line.find(' ');
      const std::string_view token = line.substr(0, space);
      line = space == std::string_view::npos ? std::string_view{} : line.substr(space + 1);
      if (first) {
        record.kind = std::string(token);
        first = false;
        continue;
      }
      const auto eq = token.find('=');
      if (eq == std::string_view::npos || eq == 0 || eq + 1 == token.size())
        throw std::invalid_argument("golden line " + std::to_string(number) +
                                    ": malformed field '" + std::string(token) + "'");
      const std::string key(token.substr(0, eq));
      const std::string value(token.substr(eq + 1));
      if (key == "expected")
        record.expected = value;
      else
        record.fields.emplace_back(key, value);
    }
    if (record.expected.empty())
      throw std::invalid_argument("golden line " + std::to_string(number) +
                                  ": missing expected=");
    records.push_back(std::move(record));
  }
  return records;
}

const std::vector<GoldenRecord>& golden_records()
{
  static const std::vector<GoldenRecord> records = parse_golden(golden_data());
  return records;
}

VerifyScope parse_scope(std::string_view text)
{
  for (auto scope : {VerifyScope::matrix, VerifyScope::orbits, VerifyScope::seriesA,
                     VerifyScope::seriesC, VerifyScope::seriesD, VerifyScope::constants,
                     VerifyScope::all})
    if (scope_name(scope) == text)
      return scope;
  throw std::invalid_argument("unknown scope '" + std::string(text) + "'");
}

std::string_view scope_name(VerifyScope scope)
{
  switch (scope) {
  case VerifyScope::matrix:
    return "matrix";
  case VerifyScope::orbits:
    return "orbits";
  case VerifyScope::seriesA:
    return "seriesA";
  case VerifyScope::seriesC:
    return "seriesC";
  case VerifyScope::seriesD:
    return "seriesD";
  case VerifyScope::constants:
    return "constants";
  case VerifyScope::all:
    return "all";
  }
  return "all";
}

std::string format_like(double value, std::string_view reference)
{
  const auto dot = reference.find('.');
  const int decimals =
      dot == std::string_view::npos ? 0 : static_cast<int>(reference.size() - dot - 1);
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

namespace {

bool in_scope(VerifyScope scope, std::string_view kind)
{
  if (scope == VerifyScope::all)
    return true;
  if (kind == "matrix")
    return scope == VerifyScope::matrix;
  if (kind == "orbits")
    return scope == VerifyScope::orbits;
  if (kind == "seriesA")
    return scope == VerifyScope::seriesA;
  if (kind == "seriesC")
    return scope == VerifyScope::seriesC;
  if (kind == "seriesD")
    return scope == VerifyScope::seriesD;
  if (kind == "constant")
    return scope == VerifyScope::constants;
  return false;
}

std::uint32_t parse_index(const GoldenRecord& record, std::string_view key)
{
  return static_cast<std::uint32_t>(std::stoul(record.field(key)));
}

double constant_value(std::string_view name)
{
  const auto& k = constants();
  if (name == "x0")
    return k.x0;
  if (name == "y0")
    return k.y0;
  if (name == "b0")
    return k.b0;
  if (name == "x1")
    return k.x1;
  if (name == "b1")
    return k.b1;
  if (name == "a0")
    return k.a0;
  if (name.starts_with("pochhammer_"))
    return pochhammer_factor(static_cast<std::uint32_t>(std::stoul(std::string(name.substr(11)))));
  if (name.starts_with("a_"))
    return k.a_c(static_cast<std::uint32_t>(std::stoul(std::string(name.substr(2)))));
  throw std::invalid_argument("unknown constant '" + std::string(name) + "'");
}

VerifyCell compare(const GoldenRecord& record, std::string computed)
{
  VerifyCell cell;
  cell.label = record.label();
  cell.expected = record.expected;
  cell.computed = std::move(computed);
  cell.status = cell.computed == cell.expected ? VerifyCell::Status::pass : VerifyCell::Status::fail;
  return cell;
}

VerifyCell skipped(const GoldenRecord& record, unsigned m)
{
  VerifyCell cell;
  cell.label = record.label();
  cell.expected = record.expected;
  cell.status = VerifyCell::Status::skipped;
  cell.note = "skipped (needs import, m=" + std::to_string(m) + ")";
  return cell;
}

VerifyCell verify_record(const GoldenRecord& record, OrbitCounter& orbits)
{
  const FieldSpec char0;
  if (record.kind == "matrix")
    return compare(record, n_matrix(parse_index(record, "n")).str());

  if (record.kind == "constant")
    return compare(record, format_like(constant_value(record.field("name")), record.expected));

  if (record.kind == "orbits") {
    const Action action = parse_action(record.field("action"));
    const unsigned m = parse_index(record, "m");
    const std::uint32_t q = parse_index(record, "q");
    try {
      return compare(record, orbits.count(m, action, q).str());
    } catch (const MissingCycleIndex& missing) {
      return skipped(record, missing.m());
    }
  }

  Series series;
  std::uint32_t index = parse_index(record, "r");
  if (record.kind == "seriesA")
    series = Series::A;
  else if (record.kind == "seriesC")
    series = Series::C;
  else if (record.kind == "seriesD")
    series = Series::D;
  else
    throw std::invalid_argument("golden line " + std::to_string(record.line) +
                                ": unknown kind '" + record.kind + "'");

  const auto row = table_row(series, index, char0, orbits);
  if (row.provenance == Provenance::needs_import)
    return skipped(record, *row.missing_m);
  VerifyCell cell = compare(record, row.total->str());
  if (series == Series::A) {
    const auto& one = record.field("typeI");
    const auto& two = record.field("typeII");
    const std::string got_one = row.type_one ? row.type_one->str() : "";
    const std::string got_two = row.type_two ? row.type_two->str() : "";
    if (got_one != one || got_two != two) {
      cell.status = VerifyCell::Status::fail;
      cell.note = "type split computed " + got_one + "+" + got_two + ", expected " + one +
                  "+" + two;
    }
  }
  return cell;
}

} // namespace

std::vector<VerifyCell> verify_golden(VerifyScope scope, OrbitCounter& orbits)
{
  std::vector<VerifyCell> cells;
  for (const auto& record : golden_records())
    if (in_scope(scope, record.kind))
      cells.push_back(verify_record(record, orbits));
  return cells;
}

} // namespace finegrad
