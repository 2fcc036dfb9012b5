#include "finegrad/cycle_index.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace finegrad {

CycleIndexFormatError::CycleIndexFormatError(std::size_t line, const std::string& what)
: std::runtime_error("cycle index line " + std::to_string(line) + ": " + what)
, line_(line)
{}

std::string cycle_type_string(const Partition& type)
{
  std::string out;
  for (auto [length, mult] : type.multiplicities()) {
    if (!out.empty())
      out += ' ';
    out += std::to_string(length) + '^' + std::to_string(mult);
  }
  return out;
}

void export_cycle_index(const CycleIndex& cidx, std::ostream& out)
{
  out << "cycle-index v1\n"
      << "action=" << action_tag(cidx.action) << '\n'
      << "m=" << cidx.m << '\n'
      << "points=" << cidx.points << '\n'
      << "order=" << cidx.order << '\n';
  std::vector<std::pair<std::string, const BigInt*>> lines;
  for (const auto& [type, count] : cidx.entries)
    lines.emplace_back(cycle_type_string(type), &count);
  std::sort(lines.begin(), lines.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [type, count] : lines)
    out << type << ' ' << *count << '\n';
}

std::string export_cycle_index(const CycleIndex& cidx)
{
  std::ostringstream out;
  export_cycle_index(cidx, out);
  return out.str();
}

namespace {

bool parse_u64(std::string_view text, std::uint64_t& value)
{
  if (text.empty() || (text.size() > 1 && text[0] == '0'))
    return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

bool parse_bigint(std::string_view text, BigInt& value)
{
  if (text.empty() || (text.size() > 1 && text[0] == '0'))
    return false;
  if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return false;
  value = BigInt(std::string(text));
  return true;
}

class Reader
{
public:
  explicit Reader(std::istream& in)
  : in_(in)
  {}

  // Next non-comment line; false at end of input.
  bool next(std::string& line)
  {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r')
        throw CycleIndexFormatError(number_, "CR line ending (expected LF)");
      if (!line.empty() && line.front() == '#')
        continue;
      if (!line.empty() && (line.back() == ' ' || line.back() == '\t'))
        throw CycleIndexFormatError(number_, "trailing whitespace");
      return true;
    }
    return false;
  }

  std::string_view header(const char* key)
  {
    std::string_view prefix(key);
    if (!next(current_))
      throw CycleIndexFormatError(number_ + 1, std::string("missing header ") + key);
    if (!std::string_view(current_).starts_with(prefix))
      throw CycleIndexFormatError(number_, "malformed line: expected " + std::string(key));
    return std::string_view(current_).substr(prefix.size());
  }

  std::size_t number() const { return number_; }

private:
  std::istream& in_;
  std::string current_;
  std::size_t number_ = 0;
};

} // namespace

CycleIndex import_cycle_index(std::istream& in)
{
  Reader reader(in);
  std::string line;
  if (!reader.next(line) || line != "cycle-index v1")
    throw CycleIndexFormatError(reader.number(), "malformed line: expected 'cycle-index v1'");

  CycleIndex cidx;
  try {
    cidx.action = parse_action(reader.header("action="));
  } catch (const std::invalid_argument& e) {
    throw CycleIndexFormatError(reader.number(), e.what());
  }
  std::uint64_t value = 0;
  if (!parse_u64(reader.header("m="), value) || value > 64)
    throw CycleIndexFormatError(reader.number(), "malformed line: bad m");
  cidx.m = static_cast<unsigned>(value);
  if (!parse_u64(reader.header("points="), cidx.points))
    throw CycleIndexFormatError(reader.number(), "malformed line: bad points");
  if (cidx.m == 0 || cidx.points != point_count(cidx.action, cidx.m))
    throw CycleIndexFormatError(reader.number(),
                                "points=" + std::to_string(cidx.points) +
                                    " inconsistent with action and m");
  if (!parse_bigint(reader.header("order="), cidx.order))
    throw CycleIndexFormatError(reader.number(), "malformed line: bad order");
  if (cidx.order != group_order(cidx.action, cidx.m))
    throw CycleIndexFormatError(reader.number(),
                                "order does not match the group order for this action and m");

  BigInt sum = 0;
  std::string previous;
  while (reader.next(line)) {
    const auto n = reader.number();
    const auto last_space = line.rfind(' ');
    if (last_space == std::string::npos)
      throw CycleIndexFormatError(n, "malformed line: expected '<type> <count>'");
    const std::string type_text = line.substr(0, last_space);
    BigInt count;
    if (!parse_bigint(std::string_view(line).substr(last_space + 1), count) || count == 0)
      throw CycleIndexFormatError(n, "malformed line: bad count");
    if (!previous.empty() && !(previous < type_text))
      throw CycleIndexFormatError(n, "entries not strictly sorted by type string");
    previous = type_text;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> groups;
    std::istringstream tokens(type_text);
    std::string token;
    std::uint64_t weight = 0;
    std::size_t consumed = 0;
    while (std::getline(tokens, token, ' ')) {
      consumed += token.size() + 1;
      const auto caret = token.find('^');
      std::uint64_t length = 0, mult = 0;
      if (caret == std::string::npos ||
          !parse_u64(std::string_view(token).substr(0, caret), length) ||
          !parse_u64(std::string_view(token).substr(caret + 1), mult) || length == 0 ||
          mult == 0 || length > cidx.points || mult > cidx.points)
        throw CycleIndexFormatError(n, "malformed cycle term '" + token + "'");
      if (!groups.empty() && length <= groups.back().first)
        throw CycleIndexFormatError(n, "cycle lengths must be strictly increasing");
      groups.emplace_back(static_cast<std::uint32_t>(length), static_cast<std::uint32_t>(mult));
      weight += length * mult;
    }
    if (groups.empty() || consumed != type_text.size() + 1)
      throw CycleIndexFormatError(n, "malformed line: empty cycle term");
    if (weight != cidx.points)
      throw CycleIndexFormatError(n, "weight mismatch: cycle type covers " +
                                         std::to_string(weight) + " points, expected " +
                                         std::to_string(cidx.points));
    cidx.entries.emplace(Partition::from_multiplicities(groups), count);
    sum += count;
  }
  if (sum != cidx.order)
    throw CycleIndexFormatError(reader.number(), "order-sum mismatch: counts sum to " +
                                                     sum.str() + ", order is " +
                                                     cidx.order.str());
  try {
    cidx.validate();
  } catch (const ConsistencyError& e) {
    throw CycleIndexFormatError(reader.number(), e.what());
  }
  return cidx;
}

CycleIndex import_cycle_index(std::string_view text)
{
  std::istringstream in{std::string(text)};
  return import_cycle_index(in);
}

} // namespace finegrad
