#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "roadgen/components.hpp"
#include "roadgen/constraints.hpp"
#include "roadgen/rng.hpp"

namespace roadgen {

enum class GenerationMode { Guided, Random };

std::string_view mode_name(GenerationMode mode);
std::optional<GenerationMode> parse_mode(std::string_view name);

// Placements per template id.
class UsageCounter {
 public:
  std::uint64_t count(int template_id) const;
  void increment(int template_id);
  std::uint64_t total() const noexcept { return total_; }
  const std::map<int, std::uint64_t>& counts() const noexcept { return counts_; }
  void reset();

 private:
  std::map<int, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct EndpointRef {
  int instance = 0;
  int endpoint = 0;

  friend bool operator==(const EndpointRef&, const EndpointRef&) = default;
};

struct Connection {
  EndpointRef from;
  int to_instance = 0;

  friend bool operator==(const Connection&, const Connection&) = default;
};

struct RoadScenario {
  std::vector<ComponentInstance> instances;  // instances[i].id == i
  std::vector<Connection> connections;
  std::vector<Footprint> covered_area;  // one per instance, same order
  std::uint64_t seed = 0;
  bool is_short = false;  // endpoint queue ran out before total_count
  double overlap_tolerance = 0.05;

  friend bool operator==(const RoadScenario&, const RoadScenario&) = default;
};

// Index of a candidate with minimal usage; ties are broken uniformly with
// `rng`. Throws PreconditionError when `candidates` is empty.
std::size_t select_least_used(std::span<const ComponentTemplate> candidates, const UsageCounter& usage, Rng& rng);

// Draws parameters for `tmpl` starting at `start`. Values are rounded so they
// survive the 9-digit JSON form unchanged.
ComponentParams sample_params(const ComponentTemplate& tmpl, const Pose& start, const Constraints& constraints,
                              Rng& rng);

// Up to max_instantiation_retries parameter draws at the endpoint pose; the
// first instance that instantiates and overlaps none of `covered` wins.
// Throws PreconditionError if the template's start signature differs from
// the endpoint's.
std::optional<ComponentInstance> try_instantiate_at(const Endpoint& endpoint, const ComponentTemplate& tmpl,
                                                    const Constraints& constraints,
                                                    std::span<const Footprint> covered, Rng& rng);

// Called before every selection with the viable candidates and the current
// usage, then with the chosen index.
using SelectionObserver =
    std::function<void(std::span<const ComponentTemplate> candidates, const UsageCounter& usage, std::size_t chosen)>;

struct GenerationOptions {
  GenerationMode mode = GenerationMode::Guided;
  SelectionObserver observer;
};

// Builds one scenario with up to `total_count` components. Updates `usage`
// for every placed instance. Throws InstantiationError only when no catalog
// template can be placed at the origin.
RoadScenario generate_scenario(std::span<const ComponentTemplate> catalog, int total_count,
                               const Constraints& constraints, UsageCounter& usage, Rng& rng,
                               const GenerationOptions& options = {});

// Checks every scenario invariant; throws ValidationError naming the first
// failure: "structure", "signature-match", "pose-match", "connectivity",
// "no-overlap".
void validate_scenario(const RoadScenario& scenario);

struct GenerationBudget {
  enum class Kind { Count, Duration };
  Kind kind = Kind::Count;
  std::uint64_t count = 1;
  std::chrono::milliseconds duration{0};

  static GenerationBudget scenarios(std::uint64_t n);
  static GenerationBudget wall_clock(std::chrono::milliseconds d);
};

// Batch state: one usage counter shared across scenarios and a batch-level
// stream that seeds each scenario.
class BatchGenerator {
 public:
  BatchGenerator(std::vector<ComponentTemplate> catalog, Constraints constraints, GenerationMode mode,
                 int total_count, std::uint64_t seed);

  RoadScenario next();
  const UsageCounter& usage() const noexcept { return usage_; }
  std::size_t produced() const noexcept { return produced_; }
  void set_observer(SelectionObserver observer) { options_.observer = std::move(observer); }

 private:
  std::vector<ComponentTemplate> catalog_;
  Constraints constraints_;
  GenerationOptions options_;
  int total_count_;
  Rng batch_rng_;
  UsageCounter usage_;
  std::size_t produced_ = 0;
};

std::vector<RoadScenario> generate_batch(GenerationMode mode, const GenerationBudget& budget, int total_count,
                                         const Constraints& constraints,
                                         std::span<const ComponentTemplate> catalog, std::uint64_t seed);

// Coverage over a batch in generation order.
struct CoverageReport {
  std::size_t catalog_size = 0;
  std::size_t templates_covered = 0;
  std::size_t placed_components = 0;
  std::optional<std::size_t> scenarios_to_coverage;   // 1-based
  std::optional<std::size_t> components_to_coverage;  // 1-based
  std::array<std::size_t, kKindCount> kind_histogram{};
};

CoverageReport coverage(std::span<const RoadScenario> scenarios, std::span<const ComponentTemplate> catalog);

}  // namespace roadgen
