#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <CLI11.hpp>

#include "finegrad/asymptotics.hpp"
#include "finegrad/census.hpp"
#include "finegrad/golden.hpp"
#include "finegrad/orbit_count.hpp"
#include "output.hpp"

namespace finegrad::cli {

namespace {

// Thrown for argument combinations CLI11 cannot express.
struct UsageError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

struct Options
{
  std::string series;
  std::optional<std::uint32_t> n;
  std::optional<std::uint32_t> rank;
  std::optional<std::uint32_t> max;
  std::optional<unsigned> m;
  std::string action = "asp";
  std::uint32_t qmax = 12;
  std::uint32_t characteristic = 0;
  std::string format = "plain";
  std::vector<std::string> imports;
  std::string scope = "all";
  std::string cache_dir;
  double tmin = 1e3;
  double tmax = 1e12;
  std::uint32_t samples = 100;
};

nlohmann::ordered_json base_meta(const std::string& command, const OrbitCounter& orbits)
{
  nlohmann::ordered_json meta;
  meta["tool"] = "finegrad";
  meta["version"] = FINEGRAD_VERSION;
  meta["command"] = command;
  auto imports = nlohmann::ordered_json::array();
  for (const auto& record : orbits.imports())
    imports.push_back({{"path", record.source},
                       {"action", std::string(action_tag(record.action))},
                       {"m", record.m}});
  meta["imports"] = imports;
  return meta;
}

Cell optional_cell(const std::optional<BigInt>& value)
{
  if (value)
    return *value;
  return std::monostate{};
}

std::vector<Cell> row_cells(const GradingCountRow& row)
{
  return {std::string(1, series_letter(row.series)),
          BigInt(row.index),
          optional_cell(row.type_one),
          optional_cell(row.type_two),
          optional_cell(row.total),
          std::string(row.provenance == Provenance::built_in ? "built-in" : "needs-import")};
}

const std::vector<std::string> kRowColumns = {"series", "index",  "type_I",
                                              "type_II", "total", "provenance"};

FieldSpec field_for(Series series, std::uint32_t characteristic)
{
  const FieldSpec field(characteristic);
  if (characteristic != 0 && series != Series::M && series != Series::A)
    throw UsageError("--char is only accepted for series M and A");
  if (characteristic == 2 && series == Series::A)
    throw UsageError("series A requires characteristic != 2");
  return field;
}

std::uint32_t index_option(const Options& opt, Series series)
{
  if (opt.n && opt.rank)
    throw UsageError("give either --n or --rank, not both");
  if (!opt.n && !opt.rank)
    throw UsageError(series == Series::M ? "--n is required" : "--rank is required");
  return opt.n ? *opt.n : *opt.rank;
}

Document cmd_count(const Options& opt, OrbitCounter& orbits)
{
  const Series series = parse_series(opt.series);
  const FieldSpec field = field_for(series, opt.characteristic);
  const auto row = count_row(series, index_option(opt, series), field, orbits);
  Document doc;
  doc.meta = base_meta("count", orbits);
  doc.meta["characteristic"] = field.characteristic();
  doc.columns = kRowColumns;
  doc.rows.push_back(row_cells(row));
  return doc;
}

Document cmd_table(const Options& opt, OrbitCounter& orbits)
{
  const Series series = parse_series(opt.series);
  const FieldSpec field = field_for(series, opt.characteristic);
  if (!opt.max)
    throw UsageError("--max is required");
  const std::uint32_t first = first_index(series);
  if (*opt.max < first)
    throw UsageError("--max must be at least " + std::to_string(first) + " for series " +
                     opt.series);
  Document doc;
  doc.meta = base_meta("table", orbits);
  doc.meta["characteristic"] = field.characteristic();
  doc.columns = kRowColumns;
  for (std::uint32_t index = first; index <= *opt.max; ++index)
    doc.rows.push_back(row_cells(table_row(series, index, field, orbits)));
  return doc;
}

Document cmd_orbits(const Options& opt, OrbitCounter& orbits)
{
  if (!opt.m)
    throw UsageError("--m is required");
  const Action action = parse_action(opt.action);
  const auto values = orbits.table(*opt.m, action, opt.qmax);
  Document doc;
  doc.meta = base_meta("orbits", orbits);
  doc.columns = {"m", "action", "q", "count"};
  for (std::uint32_t q = 1; q <= opt.qmax; ++q)
    doc.rows.push_back({BigInt(*opt.m), std::string(action_tag(action)), BigInt(q), values[q]});
  return doc;
}

Document cmd_constants(const OrbitCounter& orbits)
{
  const auto& k = constants();
  Document doc;
  doc.meta = base_meta("constants", orbits);
  doc.columns = {"name", "value"};
  auto add = [&](std::string name, double value) {
    doc.rows.push_back({std::move(name), Fixed{value, 6}});
  };
  add("z0", k.z0);
  add("x0", k.x0);
  add("y0", k.y0);
  add("b0", k.b0);
  add("x1", k.x1);
  add("b1", k.b1);
  add("a0", k.a0);
  for (std::uint32_t c : {2, 3, 5, 7, 11, 13})
    add("a_" + std::to_string(c), k.a_c(c));
  return doc;
}

Document cmd_envelope(const Options& opt, const OrbitCounter& orbits)
{
  if (!(opt.tmin >= envelope_min_t()) || !(opt.tmax >= opt.tmin) || opt.samples < 1)
    throw UsageError("need " + std::to_string(envelope_min_t()) +
                     " <= --tmin <= --tmax and --samples >= 1");
  Document doc;
  doc.meta = base_meta("envelope", orbits);
  doc.columns = {"t", "b", "b_plus", "b_minus", "b1_correction", "branch", "near_switch"};
  const double step =
      opt.samples == 1 ? 0 : std::log(opt.tmax / opt.tmin) / (opt.samples - 1);
  for (std::uint32_t i = 0; i < opt.samples; ++i) {
    const double t = i + 1 == opt.samples ? opt.tmax : opt.tmin * std::exp(step * i);
    const auto s = envelope_sample(t);
    doc.rows.push_back({Fixed{t, 3}, Fixed{s.b_val, 12}, Fixed{s.b_plus, 12},
                        Fixed{s.b_minus, 12}, Fixed{s.b1_corr, 12}, BigInt(s.branch),
                        std::string(s.near_switch ? "yes" : "no")});
  }
  return doc;
}

int cmd_verify(const Options& opt, OrbitCounter& orbits, Format format, std::ostream& out)
{
  const auto scope = parse_scope(opt.scope);
  const auto cells = verify_golden(scope, orbits);
  std::size_t pass = 0, fail = 0, skip = 0;
  Document doc;
  doc.meta = base_meta("verify", orbits);
  doc.meta["scope"] = std::string(scope_name(scope));
  doc.columns = {"status", "cell", "expected", "computed", "note"};
  for (const auto& cell : cells) {
    std::string status;
    switch (cell.status) {
    case VerifyCell::Status::pass:
      status = "pass";
      ++pass;
      break;
    case VerifyCell::Status::fail:
      status = "FAIL";
      ++fail;
      break;
    case VerifyCell::Status::skipped:
      status = "skip";
      ++skip;
      break;
    }
    doc.rows.push_back({status, cell.label, cell.expected, cell.computed, cell.note});
  }
  doc.meta["passed"] = pass;
  doc.meta["failed"] = fail;
  doc.meta["skipped"] = skip;
  render(doc, format, out);
  if (format == Format::plain)
    out << "verify " << scope_name(scope) << ": " << pass << '/' << cells.size()
        << " cells pass, " << fail << " failed, " << skip << " skipped (needs import)\n";
  return fail ? mismatch : ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Counts fine gradings on matrix and classical Lie algebras", "finegrad"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(FINEGRAD_VERSION));
  Options opt;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"plain", "csv", "json"}));
  };
  auto add_data = [&](CLI::App* sub) {
    sub->add_option("--import", opt.imports, "Cycle-index file for m > 3 (repeatable)")
        ->check(CLI::ExistingFile);
    sub->add_option("--cache-dir", opt.cache_dir,
                    "Directory for reusing computed built-in cycle indices");
  };
  const std::vector<std::string> series_names = {"M", "A", "B", "C", "D"};

  auto* count = app.add_subcommand("count", "Number of fine gradings for one algebra");
  count->add_option("--series", opt.series, "M, A, B, C or D")
      ->required()
      ->check(CLI::IsMember(series_names));
  count->add_option("--n", opt.n, "Matrix size (series M)");
  count->add_option("--rank", opt.rank, "Rank (series A-D)");
  count->add_option("--char", opt.characteristic, "Field characteristic: 0 or a prime");
  add_format(count);
  add_data(count);

  auto* table = app.add_subcommand("table", "Counts for every index up to --max");
  table->add_option("--series", opt.series, "M, A, B, C or D")
      ->required()
      ->check(CLI::IsMember(series_names));
  table->add_option("--max", opt.max, "Largest size or rank");
  table->add_option("--char", opt.characteristic, "Field characteristic: 0 or a prime");
  add_format(table);
  add_data(table);

  auto* orbits_cmd = app.add_subcommand("orbits", "Orbit counts N(m, q) for q = 1..qmax");
  orbits_cmd->add_option("--m", opt.m, "Half dimension m")->required();
  orbits_cmd->add_option("--action", opt.action, "asp, sp+ or sp-")
      ->check(CLI::IsMember({"asp", "sp+", "sp-"}));
  orbits_cmd->add_option("--qmax", opt.qmax, "Largest multiset size")
      ->check(CLI::Range(0u, kGeneratingFunctionMaxQ));
  add_format(orbits_cmd);
  add_data(orbits_cmd);

  auto* constants_cmd = app.add_subcommand("constants", "Asymptotic constants");
  add_format(constants_cmd);

  auto* verify = app.add_subcommand("verify", "Compare against the embedded reference tables");
  verify->add_option("--scope", opt.scope, "Which tables to check")
      ->check(CLI::IsMember(
          {"matrix", "orbits", "seriesA", "seriesC", "seriesD", "constants", "all"}));
  add_format(verify);
  add_data(verify);

  auto* envelope = app.add_subcommand("envelope", "Sample the envelope functions on a log grid");
  envelope->add_option("--tmin", opt.tmin, "Smallest t");
  envelope->add_option("--tmax", opt.tmax, "Largest t");
  envelope->add_option("--samples", opt.samples, "Number of log-spaced samples");
  add_format(envelope);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  OrbitCounter orbits;
  try {
    if (!opt.cache_dir.empty())
      orbits.set_cache_dir(opt.cache_dir);
    for (const auto& path : opt.imports)
      orbits.import_file(path);

    const Format format = parse_format(opt.format);
    if (verify->parsed())
      return cmd_verify(opt, orbits, format, out);

    Document doc;
    if (count->parsed())
      doc = cmd_count(opt, orbits);
    else if (table->parsed())
      doc = cmd_table(opt, orbits);
    else if (orbits_cmd->parsed())
      doc = cmd_orbits(opt, orbits);
    else if (constants_cmd->parsed())
      doc = cmd_constants(orbits);
    else
      doc = cmd_envelope(opt, orbits);
    render(doc, format, out);
    return ok;
  } catch (const MissingCycleIndex& e) {
    err << "error: " << e.what() << '\n';
    return missing_data;
  } catch (const CycleIndexFormatError& e) {
    err << "error: " << e.what() << '\n';
    return missing_data;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return missing_data;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return missing_data;
  }
}

} // namespace finegrad::cli
