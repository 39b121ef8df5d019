#pragma once

// In-process simulation of one map-reduce round that computes every k-th
// order marginal of a dense data cube from a cover design. Each handle
// becomes a team of reducers, one per assignment to the dimensions outside
// the handle; every tuple goes to exactly one reducer of each team.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "margcover/combinatorics.hpp"
#include "margcover/constructions.hpp"
#include "margcover/cover_core.hpp"
#include "margcover/errors.hpp"

namespace margcover {

inline constexpr std::uint64_t kCubeCellBudget = 10'000'000;

struct CubeSpec {
  std::vector<std::uint32_t> extents;

  static CubeSpec uniform(int n, std::uint32_t d) {
    if (n < 1) throw ValidationError("cube needs n >= 1");
    return CubeSpec{std::vector<std::uint32_t>(static_cast<std::size_t>(n), d)};
  }

  [[nodiscard]] int n() const { return static_cast<int>(extents.size()); }

  /// Product of extents; throws BudgetError past `budget`.
  [[nodiscard]] std::uint64_t cells(std::uint64_t budget = kCubeCellBudget) const {
    std::uint64_t c = 1;
    for (auto e : extents) {
      c *= e;
      if (c > budget) throw BudgetError("cube has more than " + std::to_string(budget) + " cells");
    }
    return c;
  }

  [[nodiscard]] std::uint64_t product(DimMask dims) const {
    std::uint64_t p = 1;
    for (int i = 0; i < n(); ++i)
      if (dims >> i & 1) p *= extents[i];
    return p;
  }

  [[nodiscard]] bool is_uniform() const {
    return std::all_of(extents.begin(), extents.end(), [&](auto e) { return e == extents.front(); });
  }

  void validate() const {
    if (extents.empty() || n() > kMaxDims) throw ValidationError("cube needs 1 <= n <= 64 dimensions");
    for (auto e : extents)
      if (e < 1) throw ValidationError("every extent must be >= 1");
  }
};

/// Dense cube, row-major: dimension 0 varies slowest.
class DataCube {
 public:
  DataCube(CubeSpec spec, std::vector<std::int64_t> values) : spec_(std::move(spec)), values_(std::move(values)) {
    spec_.validate();
    if (values_.size() != spec_.cells()) {
      throw ValidationError("cube has " + std::to_string(values_.size()) + " values, expected " +
                            std::to_string(spec_.cells()));
    }
    strides_.assign(spec_.n(), 1);
    for (int i = spec_.n() - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * spec_.extents[i + 1];
  }

  [[nodiscard]] const CubeSpec& spec() const { return spec_; }
  [[nodiscard]] const std::vector<std::int64_t>& values() const { return values_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] std::uint64_t stride(int dim) const { return strides_[dim]; }

  [[nodiscard]] std::uint32_t coord(std::uint64_t cell, int dim) const {
    return static_cast<std::uint32_t>(cell / strides_[dim] % spec_.extents[dim]);
  }

  [[nodiscard]] std::vector<std::uint32_t> coords(std::uint64_t cell) const {
    std::vector<std::uint32_t> c(spec_.n());
    for (int i = 0; i < spec_.n(); ++i) c[i] = coord(cell, i);
    return c;
  }

  [[nodiscard]] std::uint64_t index(const std::vector<std::uint32_t>& coords) const {
    if (static_cast<int>(coords.size()) != spec_.n()) throw ValidationError("coordinate arity mismatch");
    std::uint64_t idx = 0;
    for (int i = 0; i < spec_.n(); ++i) {
      if (coords[i] >= spec_.extents[i]) throw ValidationError("coordinate outside extent");
      idx += coords[i] * strides_[i];
    }
    return idx;
  }

  [[nodiscard]] std::int64_t at(const std::vector<std::uint32_t>& coords) const { return values_[index(coords)]; }

 private:
  CubeSpec spec_;
  std::vector<std::int64_t> values_;
  std::vector<std::uint64_t> strides_;
};

/// Deterministic pseudorandom cube with values in [-1000, 1000].
inline DataCube build_cube(const CubeSpec& spec, std::uint64_t seed) {
  spec.validate();
  const auto cells = spec.cells();
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> values(cells);
  for (auto& v : values) v = static_cast<std::int64_t>(detail::uniform_upto(rng, 2000)) - 1000;
  return DataCube(spec, std::move(values));
}

/// One entry per dimension: a fixed value, or kStar for aggregated ones.
struct MarginalKey {
  static constexpr std::int64_t kStar = -1;
  std::vector<std::int64_t> pattern;

  [[nodiscard]] int order() const {
    return static_cast<int>(std::count(pattern.begin(), pattern.end(), kStar));
  }

  [[nodiscard]] DimMask star_mask() const {
    DimMask m = 0;
    for (std::size_t i = 0; i < pattern.size(); ++i)
      if (pattern[i] == kStar) m |= DimMask{1} << i;
    return m;
  }

  [[nodiscard]] std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      if (i) s += ",";
      s += pattern[i] == kStar ? std::string("*") : std::to_string(pattern[i]);
    }
    return s + "]";
  }

  friend bool operator==(const MarginalKey&, const MarginalKey&) = default;
  friend auto operator<=>(const MarginalKey&, const MarginalKey&) = default;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("64-bit overflow while aggregating");
  return r;
}

}  // namespace detail

/// Direct aggregation: the sum over every tuple agreeing with the key's fixed
/// entries.
inline std::int64_t marginal_oracle(const DataCube& cube, const MarginalKey& key) {
  const auto& spec = cube.spec();
  if (static_cast<int>(key.pattern.size()) != spec.n()) throw ValidationError("marginal key arity mismatch");
  std::uint64_t base = 0;
  std::vector<int> stars;
  for (int i = 0; i < spec.n(); ++i) {
    const auto v = key.pattern[i];
    if (v == MarginalKey::kStar) {
      stars.push_back(i);
    } else if (v < 0 || v >= spec.extents[i]) {
      throw ValidationError("marginal key " + key.str() + " has an out-of-range value in dimension " +
                            std::to_string(i));
    } else {
      base += static_cast<std::uint64_t>(v) * cube.stride(i);
    }
  }
  std::int64_t sum = 0;
  std::vector<std::uint32_t> odometer(stars.size(), 0);
  while (true) {
    std::uint64_t idx = base;
    for (std::size_t s = 0; s < stars.size(); ++s) idx += odometer[s] * cube.stride(stars[s]);
    sum = detail::checked_add(sum, cube.values()[idx]);
    std::size_t s = 0;
    while (s < stars.size() && ++odometer[s] == spec.extents[stars[s]]) odometer[s++] = 0;
    if (s == stars.size()) break;
  }
  return sum;
}

/// Number of k-th order marginals: sum over k-subsets S of the product of
/// extents outside S.
inline std::uint64_t marginal_count(const CubeSpec& spec, int k) {
  std::uint64_t total = 0;
  for_each_combination(spec.n(), k, [&](const std::vector<int>& s) {
    DimMask m = 0;
    for (int i : s) m |= DimMask{1} << i;
    total += spec.product(full_mask(spec.n()) & ~m);
  });
  return total;
}

struct Team {
  DimSet handle;
  DimMask handle_mask = 0;
  std::vector<int> fixed_dims;      // dimensions outside the handle, ascending
  std::uint64_t reducers = 0;       // product of extents over fixed_dims
  std::uint64_t reducer_input = 0;  // product of extents over the handle
};

class MappingSchema {
 public:
  MappingSchema(CoverDesign cover, CubeSpec spec, std::vector<Team> teams)
      : cover_(std::move(cover)), spec_(std::move(spec)), teams_(std::move(teams)) {}

  [[nodiscard]] const CoverDesign& cover() const { return cover_; }
  [[nodiscard]] const CubeSpec& spec() const { return spec_; }
  [[nodiscard]] const std::vector<Team>& teams() const { return teams_; }

  [[nodiscard]] std::uint64_t reducer_count() const {
    std::uint64_t total = 0;
    for (const auto& t : teams_) total += t.reducers;
    return total;
  }

  /// Reducer within team `t` that receives the tuple: the one whose fixed
  /// values agree with the tuple outside the handle (mixed radix, first
  /// fixed dimension most significant).
  [[nodiscard]] std::uint64_t reducer_for(std::size_t t, const std::vector<std::uint32_t>& coords) const {
    std::uint64_t r = 0;
    for (int dim : teams_[t].fixed_dims) r = r * spec_.extents[dim] + coords[dim];
    return r;
  }

  /// One reducer per team.
  [[nodiscard]] std::vector<std::uint64_t> route(const std::vector<std::uint32_t>& coords) const {
    if (static_cast<int>(coords.size()) != spec_.n()) throw ValidationError("tuple arity mismatch");
    std::vector<std::uint64_t> out;
    out.reserve(teams_.size());
    for (std::size_t t = 0; t < teams_.size(); ++t) out.push_back(reducer_for(t, coords));
    return out;
  }

 private:
  CoverDesign cover_;
  CubeSpec spec_;
  std::vector<Team> teams_;
};

/// Materializes the reducer teams. With a reducer budget q, every handle's
/// subcube must fit.
inline MappingSchema schema_from_cover(const CoverDesign& cover, const CubeSpec& spec,
                                       std::optional<std::uint64_t> q = std::nullopt) {
  spec.validate();
  if (cover.n() != spec.n()) {
    throw ValidationError("cover has n=" + std::to_string(cover.n()) + " but the cube has " +
                          std::to_string(spec.n()) + " dimensions");
  }
  std::vector<Team> teams;
  for (const auto& h : cover.handles()) {
    Team t;
    t.handle = h;
    t.handle_mask = h.mask();
    for (int i = 0; i < spec.n(); ++i)
      if (!(t.handle_mask >> i & 1)) t.fixed_dims.push_back(i);
    t.reducers = spec.product(full_mask(spec.n()) & ~t.handle_mask);
    t.reducer_input = spec.product(t.handle_mask);
    if (q && t.reducer_input > *q) {
      throw InfeasibleError("handle " + h.str() + " needs reducers of size " + std::to_string(t.reducer_input) +
                            " > q=" + std::to_string(*q));
    }
    teams.push_back(std::move(t));
  }
  return MappingSchema(cover, spec, std::move(teams));
}

enum class Ownership { first_handle, all_handles };

struct MarginalEntry {
  MarginalKey key;
  std::int64_t sum = 0;
  std::size_t team = 0;
  std::uint64_t reducer = 0;
};

struct MarginalTable {
  int k = 0;
  Ownership ownership = Ownership::first_handle;
  std::vector<MarginalEntry> entries;  // sorted by key, then team
};

struct RoundMetrics {
  double replication_rate = 0;  // tuple copies / cube cells
  std::uint64_t tuple_copies = 0;
  std::uint64_t max_reducer_load = 0;
  std::uint64_t reducer_count = 0;
  std::uint64_t marginals_computed = 0;  // distinct keys
  std::uint64_t outputs_emitted = 0;     // including duplicates
};

struct RoundOptions {
  Ownership ownership = Ownership::first_handle;
  /// Derive each marginal from a lower-order one already aggregated at the
  /// reducer instead of summing raw cells.
  bool rollup = false;
};

namespace detail {

// Reducer-local aggregation over the handle subcube. `local` holds the
// reducer's inputs indexed by mixed radix over `dims` (first most
// significant). Summing out `drop` yields an array over the remaining dims.
struct LocalArray {
  std::vector<int> dims;
  std::vector<std::int64_t> values;
};

inline DimMask mask_of_dims(const std::vector<int>& dims) {
  DimMask m = 0;
  for (int d : dims) m |= DimMask{1} << d;
  return m;
}

inline LocalArray sum_out(const LocalArray& in, int drop, const CubeSpec& spec) {
  LocalArray out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < in.dims.size(); ++i) {
    if (in.dims[i] == drop)
      pos = i;
    else
      out.dims.push_back(in.dims[i]);
  }
  std::uint64_t inner = 1;
  for (std::size_t i = pos + 1; i < in.dims.size(); ++i) inner *= spec.extents[in.dims[i]];
  const std::uint64_t ext = spec.extents[drop];
  out.values.assign(in.values.size() / ext, 0);
  for (std::uint64_t idx = 0; idx < in.values.size(); ++idx) {
    const std::uint64_t outer = idx / (inner * ext), rem = idx % inner;
    auto& slot = out.values[outer * inner + rem];
    slot = checked_add(slot, in.values[idx]);
  }
  return out;
}

// Sums raw reducer inputs straight into the marginals over `stars`.
inline LocalArray aggregate_direct(const LocalArray& in, DimMask stars, const CubeSpec& spec) {
  LocalArray out;
  for (int d : in.dims)
    if (!(stars >> d & 1)) out.dims.push_back(d);
  out.values.assign(spec.product(mask_of_dims(out.dims)), 0);
  std::vector<std::uint32_t> digit(in.dims.size());
  for (std::uint64_t idx = 0; idx < in.values.size(); ++idx) {
    std::uint64_t rem = idx;
    for (std::size_t i = in.dims.size(); i-- > 0;) {
      digit[i] = static_cast<std::uint32_t>(rem % spec.extents[in.dims[i]]);
      rem /= spec.extents[in.dims[i]];
    }
    std::uint64_t o = 0;
    for (std::size_t i = 0; i < in.dims.size(); ++i)
      if (!(stars >> in.dims[i] & 1)) o = o * spec.extents[in.dims[i]] + digit[i];
    out.values[o] = checked_add(out.values[o], in.values[idx]);
  }
  return out;
}

}  // namespace detail

/// Runs the round. Under first_handle ownership a marginal is emitted only
/// by the first handle (in design order) containing its aggregated
/// dimensions; under all_handles every covering team emits it.
inline std::pair<MarginalTable, RoundMetrics> run_round(const DataCube& cube, const MappingSchema& schema,
                                                        const RoundOptions& opt = {}) {
  const auto& spec = cube.spec();
  if (schema.spec().extents != spec.extents) throw ValidationError("schema was built for a different cube");
  const CoverDesign& cover = schema.cover();
  const int k = cover.k();
  if (auto report = verify_cover(cover); !report.valid) {
    throw CoverageError("cover leaves " + std::to_string(report.uncovered.size()) +
                        " marginal dimension sets uncovered, e.g. " + report.uncovered.front().str());
  }
  const auto& teams = schema.teams();

  // owned[t]: aggregated-dimension sets team t emits.
  std::vector<std::vector<DimMask>> owned(teams.size());
  std::map<DimMask, std::size_t> owner;
  for (std::size_t t = 0; t < teams.size(); ++t) {
    for_each_submask(teams[t].handle_mask, k, [&](DimMask s) {
      if (opt.ownership == Ownership::all_handles || owner.emplace(s, t).second) owned[t].push_back(s);
    });
  }

  MarginalTable table;
  table.k = k;
  table.ownership = opt.ownership;
  RoundMetrics metrics;
  metrics.reducer_count = schema.reducer_count();

  const std::uint64_t cells = cube.size();
  std::vector<std::vector<std::uint32_t>> cell_coords(cells);
  for (std::uint64_t c = 0; c < cells; ++c) cell_coords[c] = cube.coords(c);

  for (std::size_t t = 0; t < teams.size(); ++t) {
    const Team& team = teams[t];
    const std::vector<int> handle_dims(team.handle.begin(), team.handle.end());

    // Map phase: each tuple is copied to exactly one reducer of this team.
    std::vector<detail::LocalArray> inbox(team.reducers);
    std::vector<std::uint64_t> load(team.reducers, 0);
    for (auto& box : inbox) {
      box.dims = handle_dims;
      box.values.assign(team.reducer_input, 0);
    }
    for (std::uint64_t c = 0; c < cells; ++c) {
      const auto& xs = cell_coords[c];
      const std::uint64_t r = schema.reducer_for(t, xs);
      std::uint64_t local = 0;
      for (int dim : handle_dims) local = local * spec.extents[dim] + xs[dim];
      inbox[r].values[local] = cube.values()[c];
      ++load[r];
      ++metrics.tuple_copies;
    }

    // Reduce phase.
    for (std::uint64_t r = 0; r < team.reducers; ++r) {
      metrics.max_reducer_load = std::max(metrics.max_reducer_load, load[r]);
      if (owned[t].empty()) continue;
      // Fixed values of this reducer, decoded from its index.
      std::vector<std::int64_t> fixed(spec.n(), MarginalKey::kStar);
      std::uint64_t rest = r;
      for (auto it = team.fixed_dims.rbegin(); it != team.fixed_dims.rend(); ++it) {
        fixed[*it] = static_cast<std::int64_t>(rest % spec.extents[*it]);
        rest /= spec.extents[*it];
      }

      std::map<DimMask, detail::LocalArray> memo;
      if (opt.rollup) memo.emplace(DimMask{0}, inbox[r]);
      for (DimMask s : owned[t]) {
        detail::LocalArray agg;
        if (opt.rollup) {
          // Extend the longest already-aggregated prefix of s one dimension
          // at a time, keeping every intermediate lower-order marginal.
          DimMask have = 0;
          for (DimMask m = s, prefix = 0; m != 0; m &= m - 1) {
            prefix |= m & (~m + 1);
            if (memo.count(prefix)) have = prefix;
          }
          DimMask cur = have;
          for (DimMask m = s & ~have; m != 0; m &= m - 1) {
            const DimMask bit = m & (~m + 1);
            const DimMask next = cur | bit;
            memo.emplace(next, detail::sum_out(memo.at(cur), std::countr_zero(bit), spec));
            cur = next;
          }
          agg = memo.at(s);
        } else {
          agg = detail::aggregate_direct(inbox[r], s, spec);
        }
        for (std::uint64_t idx = 0; idx < agg.values.size(); ++idx) {
          MarginalEntry e;
          e.key.pattern = fixed;
          std::uint64_t rem = idx;
          for (auto it = agg.dims.rbegin(); it != agg.dims.rend(); ++it) {
            e.key.pattern[*it] = static_cast<std::int64_t>(rem % spec.extents[*it]);
            rem /= spec.extents[*it];
          }
          e.sum = agg.values[idx];
          e.team = t;
          e.reducer = r;
          table.entries.push_back(std::move(e));
        }
      }
    }
  }

  std::stable_sort(table.entries.begin(), table.entries.end(), [](const MarginalEntry& a, const MarginalEntry& b) {
    return a.key != b.key ? a.key < b.key : a.team < b.team;
  });
  metrics.outputs_emitted = table.entries.size();
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    if (i == 0 || table.entries[i].key != table.entries[i - 1].key) ++metrics.marginals_computed;
  }
  metrics.replication_rate = static_cast<double>(metrics.tuple_copies) / static_cast<double>(cells);
  return {std::move(table), metrics};
}

struct Mismatch {
  MarginalKey key;
  std::size_t team = 0;
  std::uint64_t reducer = 0;
  std::int64_t got = 0;
  std::int64_t expected = 0;
};

struct RoundCheck {
  std::vector<Mismatch> mismatches;          // entries differing from the oracle
  std::vector<MarginalKey> disagreements;    // duplicated keys with differing sums
  std::vector<MarginalKey> wrong_order;      // keys that are not k-th order
  std::uint64_t duplicates = 0;              // entries beyond the first per key
  std::uint64_t missing = 0;                 // expected keys never emitted
  [[nodiscard]] bool ok() const {
    return mismatches.empty() && disagreements.empty() && wrong_order.empty() && missing == 0;
  }
};

/// Recomputes every emitted marginal directly from the cube.
inline RoundCheck check_round(const MarginalTable& table, const DataCube& cube) {
  RoundCheck check;
  std::uint64_t distinct = 0;
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    const bool first_of_key = i == 0 || table.entries[i - 1].key != e.key;
    if (first_of_key) {
      ++distinct;
    } else {
      ++check.duplicates;
      const auto& prev = table.entries[i - 1];
      if (prev.sum != e.sum && (check.disagreements.empty() || check.disagreements.back() != e.key)) {
        check.disagreements.push_back(e.key);
      }
    }
    if (e.key.order() != table.k) {
      if (first_of_key) check.wrong_order.push_back(e.key);
      continue;
    }
    const auto expected = marginal_oracle(cube, e.key);
    if (expected != e.sum) check.mismatches.push_back({e.key, e.team, e.reducer, e.sum, expected});
  }
  const std::uint64_t expected_keys = marginal_count(cube.spec(), table.k);
  const std::uint64_t valid_distinct = distinct - check.wrong_order.size();
  check.missing = expected_keys > valid_distinct ? expected_keys - valid_distinct : 0;
  return check;
}

}  // namespace margcover
