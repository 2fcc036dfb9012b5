#include "finegrad/orbit_count.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "finegrad/partitions.hpp"
#include "finegrad/symplectic.hpp"

namespace finegrad {

namespace {

std::vector<BigInt> divide_exactly(std::vector<BigInt> numerators, const BigInt& order,
                                   const CycleIndex& cidx)
{
  for (std::size_t q = 0; q < numerators.size(); ++q) {
    BigInt quotient, remainder;
    boost::multiprecision::divide_qr(numerators[q], order, quotient, remainder);
    if (remainder != 0)
      throw ConsistencyError("Burnside numerator for action " +
                             std::string(action_tag(cidx.action)) + ", m=" +
                             std::to_string(cidx.m) + ", q=" + std::to_string(q) +
                             " is not divisible by the group order");
    numerators[q] = std::move(quotient);
  }
  return numerators;
}

// series *= (1 - t^step)^(-power), truncated to series.size() terms.
void multiply_inverse_power(std::vector<BigInt>& series, std::size_t step,
                            std::uint64_t power)
{
  const std::size_t n = series.size();
  if (step >= n || power == 0)
    return;
  const std::size_t terms = (n - 1) / step + 1;
  if (power <= terms) {
    // Each factor 1/(1 - t^step) is a strided prefix sum.
    for (std::uint64_t k = 0; k < power; ++k)
      for (std::size_t j = step; j < n; ++j)
        series[j] += series[j - step];
    return;
  }
  // Otherwise convolve with the coefficients C(power + j - 1, j) of t^(step j).
  std::vector<BigInt> coeffs(terms);
  coeffs[0] = 1;
  for (std::size_t j = 1; j < terms; ++j)
    coeffs[j] = coeffs[j - 1] * (power + j - 1) / j;
  std::vector<BigInt> result(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (series[i] == 0)
      continue;
    for (std::size_t j = 0; i + j * step < n; ++j)
      result[i + j * step] += series[i] * coeffs[j];
  }
  series = std::move(result);
}

} // namespace

BigInt burnside_shape(const CycleIndex& cidx, std::uint32_t q)
{
  if (q > kShapePathMaxQ)
    throw BudgetExceeded("shape-path budget exceeded (q=" + std::to_string(q) + " > " +
                         std::to_string(kShapePathMaxQ) + "); use burnside_gf");
  if (cidx.points > UINT32_MAX)
    throw BudgetExceeded("point count too large for the shape path");
  const auto points = static_cast<std::uint32_t>(cidx.points);
  const auto shapes = shape_counts(q, points);

  BigInt numerator = 0;
  for (const auto& [lambda, count] : cidx.entries) {
    FitsCounter fits_of(lambda);
    BigInt inner = 0;
    for (const auto& [mu, shape_count] : shapes)
      inner += fits_of.count(mu) * shape_count;
    numerator += count * inner;
  }
  return divide_exactly({numerator}, cidx.order, cidx).front();
}

OrbitCountTable burnside_gf(const CycleIndex& cidx, std::uint32_t q_max)
{
  if (q_max > kGeneratingFunctionMaxQ)
    throw BudgetExceeded("generating-function budget exceeded (q_max=" +
                         std::to_string(q_max) + " > " +
                         std::to_string(kGeneratingFunctionMaxQ) + ")");
  std::vector<BigInt> numerators(q_max + 1);
  for (const auto& [lambda, count] : cidx.entries) {
    std::vector<BigInt> series(q_max + 1);
    series[0] = 1;
    for (auto [length, mult] : lambda.multiplicities())
      multiply_inverse_power(series, length, mult);
    for (std::size_t q = 0; q <= q_max; ++q)
      numerators[q] += count * series[q];
  }
  return {cidx.m, cidx.action, divide_exactly(std::move(numerators), cidx.order, cidx)};
}

namespace {

using Permutation = std::vector<std::uint8_t>;

// Generators of the permutation group induced on the points of `action`,
// points numbered in increasing order of their vector value.
std::vector<Permutation> action_generators(unsigned m, Action action)
{
  const unsigned n = 1u << (2 * m);
  std::vector<int> index(n, -1);
  std::uint32_t count = 0;
  for (unsigned x = 0; x < n; ++x) {
    const bool in_domain = action == Action::asp ||
                           q_form_bits(m, x) == (action == Action::sp_minus);
    if (in_domain)
      index[x] = static_cast<int>(count++);
  }

  std::vector<Permutation> gens;
  auto add = [&](auto&& map) {
    Permutation p(count);
    for (unsigned x = 0; x < n; ++x)
      if (index[x] >= 0)
        p[index[x]] = static_cast<std::uint8_t>(index[map(x)]);
    gens.push_back(std::move(p));
  };
  for (const auto& a : transvections(m)) {
    const std::uint32_t shift = action == Action::asp ? 0 : twist_vector_bits(a);
    add([&](unsigned x) { return a.apply(x) ^ shift; });
  }
  if (action == Action::asp)
    add([](unsigned x) { return x ^ 1u; });
  return gens;
}

} // namespace

BigInt orbits_direct(unsigned m, Action action, std::uint32_t q)
{
  const std::uint64_t points = point_count(action, m);
  if (points == 0)
    return q == 0 ? 1 : 0;
  if (m > 2 || q > 15)
    throw BudgetExceeded("direct orbit enumeration is limited to m <= 2 and q <= 15");
  const BigInt multisets = binomial(q + points - 1, q);
  if (multisets > 1'000'000)
    throw BudgetExceeded("direct orbit enumeration limited to 10^6 multisets, need " +
                         multisets.str());
  if (m == 0)
    return 1;

  const auto gens = action_generators(m, action);
  // Multiplicity of point i lives in bits 4i..4i+3.
  auto permute = [&](std::uint64_t code, const Permutation& p) {
    std::uint64_t image = 0;
    for (unsigned i = 0; i < points; ++i)
      image |= ((code >> (4 * i)) & 0xF) << (4 * p[i]);
    return image;
  };

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(static_cast<std::size_t>(multisets) * 2);
  std::vector<std::uint64_t> stack;
  std::uint64_t orbits = 0;

  auto visit = [&](std::uint64_t code) {
    if (!seen.insert(code).second)
      return;
    ++orbits;
    stack.push_back(code);
    while (!stack.empty()) {
      const std::uint64_t current = stack.back();
      stack.pop_back();
      for (const auto& g : gens) {
        const std::uint64_t image = permute(current, g);
        if (seen.insert(image).second)
          stack.push_back(image);
      }
    }
  };

  // All distributions of q among the points.
  auto distribute = [&](auto&& self, unsigned point, std::uint32_t left,
                        std::uint64_t code) -> void {
    if (point + 1 == points) {
      visit(code | (std::uint64_t{left} << (4 * point)));
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k)
      self(self, point + 1, left - k, code | (std::uint64_t{k} << (4 * point)));
  };
  distribute(distribute, 0, q, 0);
  return orbits;
}

OrbitBounds orbit_bounds(unsigned m, Action action, std::uint32_t q)
{
  if (m == 0)
    throw std::invalid_argument("orbit_bounds requires m >= 1");
  const std::uint64_t points = point_count(action, m);
  const BigInt order = group_order(action, m);
  OrbitBounds bounds;
  bounds.upper = binomial(q + points - 1, q);
  const BigInt by_group = (bounds.upper + order - 1) / order;
  bounds.lower = std::max(count_partitions_at_most(points, q), by_group);
  return bounds;
}

MissingCycleIndex::MissingCycleIndex(unsigned m, Action action)
: std::runtime_error("cycle index unavailable for m=" + std::to_string(m) + " (action " +
                     std::string(action_tag(action)) + "); import a cycle-index file")
, m_(m)
, action_(action)
{}

void OrbitCounter::add_cycle_index(CycleIndex cidx, std::string source)
{
  cidx.validate();
  if (cidx.m <= kMaxBuiltinM)
    throw std::invalid_argument("m=" + std::to_string(cidx.m) +
                                " is computed built-in; imports must have m > " +
                                std::to_string(kMaxBuiltinM));
  std::lock_guard lock(mutex_);
  const auto key = std::make_pair(cidx.action, cidx.m);
  imports_.push_back({std::move(source), cidx.action, cidx.m});
  auto& slot = entries_[key];
  slot.cidx = std::make_unique<CycleIndex>(std::move(cidx));
  slot.values.clear();
}

void OrbitCounter::import_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open cycle-index file " + path.string());
  add_cycle_index(import_cycle_index(in), path.string());
}

void OrbitCounter::set_cache_dir(std::filesystem::path dir)
{
  std::lock_guard lock(mutex_);
  cache_dir_ = std::move(dir);
}

bool OrbitCounter::available(unsigned m, Action action) const
{
  if (m <= kMaxBuiltinM)
    return true;
  std::lock_guard lock(mutex_);
  auto it = entries_.find({action, m});
  return it != entries_.end() && it->second.cidx;
}

OrbitCounter::Entry& OrbitCounter::entry(unsigned m, Action action)
{
  auto& slot = entries_[{action, m}];
  if (slot.cidx)
    return slot;
  if (m > kMaxBuiltinM)
    throw MissingCycleIndex(m, action);

  std::optional<std::filesystem::path> cache_file;
  if (cache_dir_) {
    const char* name = action == Action::asp       ? "asp"
                       : action == Action::sp_plus ? "spplus"
                                                   : "spminus";
    cache_file = *cache_dir_ / (std::string(name) + "-m" + std::to_string(m) + ".cidx");
    if (std::ifstream in(*cache_file, std::ios::binary); in) {
      try {
        auto cidx = import_cycle_index(in);
        if (cidx.action == action && cidx.m == m) {
          slot.cidx = std::make_unique<CycleIndex>(std::move(cidx));
          return slot;
        }
      } catch (const CycleIndexFormatError&) {
        // Unusable cache file; recompute and overwrite below.
      }
    }
  }
  slot.cidx = std::make_unique<CycleIndex>(compute_cycle_index(action, m));
  if (cache_file) {
    std::error_code ec;
    std::filesystem::create_directories(cache_file->parent_path(), ec);
    std::ofstream out(*cache_file, std::ios::binary | std::ios::trunc);
    if (out)
      export_cycle_index(*slot.cidx, out);
  }
  return slot;
}

const CycleIndex& OrbitCounter::cycle_index(unsigned m, Action action)
{
  if (m == 0)
    throw std::invalid_argument("no cycle index for m=0");
  std::lock_guard lock(mutex_);
  return *entry(m, action).cidx;
}

std::vector<BigInt> OrbitCounter::table(unsigned m, Action action, std::uint32_t q_max)
{
  if (m == 0) {
    // Trivial group on one point (asp, sp+) or on the empty set (sp-).
    std::vector<BigInt> values(q_max + 1, action == Action::sp_minus ? 0 : 1);
    values[0] = 1;
    return values;
  }
  if (q_max > kGeneratingFunctionMaxQ)
    throw BudgetExceeded("orbit counts are limited to q <= " +
                         std::to_string(kGeneratingFunctionMaxQ));
  std::lock_guard lock(mutex_);
  auto& slot = entry(m, action);
  if (slot.values.size() <= q_max) {
    const std::uint32_t target = std::min<std::uint32_t>(
        std::max<std::uint32_t>(q_max, 128), kGeneratingFunctionMaxQ);
    slot.values = burnside_gf(*slot.cidx, target).values;
  }
  return {slot.values.begin(), slot.values.begin() + q_max + 1};
}

BigInt OrbitCounter::count(unsigned m, Action action, std::uint32_t q)
{
  if (m == 0)
    return action == Action::sp_minus ? BigInt(q == 0 ? 1 : 0) : BigInt(1);
  if (q > kGeneratingFunctionMaxQ)
    throw BudgetExceeded("orbit counts are limited to q <= " +
                         std::to_string(kGeneratingFunctionMaxQ));
  std::lock_guard lock(mutex_);
  auto& slot = entry(m, action);
  if (slot.values.size() <= q)
    table(m, action, q);
  return slot.values[q];
}

std::vector<ImportRecord> OrbitCounter::imports() const
{
  std::lock_guard lock(mutex_);
  return imports_;
}

} // namespace finegrad
