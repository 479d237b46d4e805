#include "roadgen/generation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "roadgen/errors.hpp"

namespace roadgen {

// Fraction of the road half-width a sampled U-turn may use up in curvature.
constexpr double kUTurnCurvatureShare = 0.8;

std::string_view mode_name(GenerationMode mode) { return mode == GenerationMode::Guided ? "guided" : "random"; }

std::optional<GenerationMode> parse_mode(std::string_view name) {
  if (name == "guided") return GenerationMode::Guided;
  if (name == "random") return GenerationMode::Random;
  return std::nullopt;
}

std::uint64_t UsageCounter::count(int template_id) const {
  const auto it = counts_.find(template_id);
  return it == counts_.end() ? 0 : it->second;
}

void UsageCounter::increment(int template_id) {
  ++counts_[template_id];
  ++total_;
}

void UsageCounter::reset() {
  counts_.clear();
  total_ = 0;
}

std::size_t select_least_used(std::span<const ComponentTemplate> candidates, const UsageCounter& usage, Rng& rng) {
  if (candidates.empty()) throw PreconditionError("select_least_used: no candidates");
  std::uint64_t best = usage.count(candidates[0].template_id);
  for (const ComponentTemplate& t : candidates) best = std::min(best, usage.count(t.template_id));
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (usage.count(candidates[i].template_id) == best) tied.push_back(i);
  }
  return tied[rng.index(tied.size())];
}

ComponentParams sample_params(const ComponentTemplate& tmpl, const Pose& start, const Constraints& constraints,
                              Rng& rng) {
  ComponentParams p;
  p.start = canonical_pose(start);
  const Range& lr = constraints.length_for(tmpl.kind);
  p.length = canonical_real(rng.uniform(lr.min, lr.max));
  p.lane_width = canonical_real(rng.uniform(constraints.lane_width_range.min, constraints.lane_width_range.max));

  if (tmpl.kind == ComponentKind::Curve) {
    const double magnitude = deg_to_rad(rng.uniform(constraints.curve_turn_deg.min, constraints.curve_turn_deg.max));
    const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
    const double turn = sign * magnitude;
    const double radius = p.length / magnitude;
    const double h = p.start.heading;
    const Point2 p0 = p.start.position;
    const Point2 p3 = p0 + sign * radius * (left_normal(h) - left_normal(h + turn));
    const double handle = 4.0 / 3.0 * std::tan(magnitude / 4.0) * radius;
    const auto canon = [](Point2 q) { return Point2{canonical_real(q.x), canonical_real(q.y)}; };
    p.kind_specific = CurveParams{p0, canon(p0 + handle * direction(h)), canon(p3 - handle * direction(h + turn)),
                                  canon(p3)};
  } else if (tmpl.kind == ComponentKind::UTurn) {
    // Apex curvature of the turn is 32 (D/2 + X) / (9 D^2); keep it well inside
    // the road half-width by capping the apex and widening the spacing if needed.
    const double road = tmpl.signature.lane_count * p.lane_width;
    const double a = 9.0 * kUTurnCurvatureShare / (16.0 * road);
    const auto apex_cap = [&](double d) { return a * d * d - 0.5 * d; };
    double spacing = road + rng.uniform(constraints.uturn_gap.min, constraints.uturn_gap.max);
    if (apex_cap(spacing) < constraints.uturn_apex.min) {
      spacing = (0.5 + std::sqrt(0.25 + 4.0 * a * constraints.uturn_apex.min)) / (2.0 * a);
    }
    const double hi = std::min(constraints.uturn_apex.max, apex_cap(spacing));
    const double apex = rng.uniform(constraints.uturn_apex.min, std::max(constraints.uturn_apex.min, hi));
    p.kind_specific = UTurnParams{canonical_real(spacing), canonical_real(apex)};
  }
  return p;
}

std::optional<ComponentInstance> try_instantiate_at(const Endpoint& endpoint, const ComponentTemplate& tmpl,
                                                    const Constraints& constraints,
                                                    std::span<const Footprint> covered, Rng& rng) {
  if (tmpl.signature != endpoint.signature) {
    throw PreconditionError("try_instantiate_at: template signature " + to_string(tmpl.signature) +
                            " does not match endpoint " + to_string(endpoint.signature));
  }
  for (int attempt = 0; attempt < constraints.max_instantiation_retries; ++attempt) {
    const ComponentParams params = sample_params(tmpl, endpoint.pose, constraints, rng);
    std::optional<ComponentInstance> inst;
    try {
      inst.emplace(instantiate(tmpl, params));
    } catch (const InstantiationError&) {
      continue;
    }
    const bool blocked = std::any_of(covered.begin(), covered.end(), [&](const Footprint& f) {
      return footprints_overlap(inst->footprint, f, constraints.overlap_tolerance);
    });
    if (!blocked) return inst;
  }
  return std::nullopt;
}

namespace {

std::size_t choose(std::span<const ComponentTemplate> candidates, const UsageCounter& usage, Rng& rng,
                   const GenerationOptions& options) {
  const std::size_t pick = options.mode == GenerationMode::Guided ? select_least_used(candidates, usage, rng)
                                                                  : rng.index(candidates.size());
  if (options.observer) options.observer(candidates, usage, pick);
  return pick;
}

void place(RoadScenario& scenario, ComponentInstance inst, UsageCounter& usage, std::deque<Endpoint>& queue) {
  assign_id(inst, static_cast<int>(scenario.instances.size()));
  usage.increment(inst.tmpl.template_id);
  for (const Endpoint& e : inst.endpoints) queue.push_back(e);
  scenario.covered_area.push_back(inst.footprint);
  scenario.instances.push_back(std::move(inst));
}

}  // namespace

RoadScenario generate_scenario(std::span<const ComponentTemplate> catalog, int total_count,
                               const Constraints& constraints, UsageCounter& usage, Rng& rng,
                               const GenerationOptions& options) {
  if (catalog.empty()) throw PreconditionError("generate_scenario: empty catalog");
  if (total_count < 1) throw PreconditionError("generate_scenario: total_count must be >= 1");

  RoadScenario scenario;
  scenario.seed = rng.seed();
  scenario.overlap_tolerance = constraints.overlap_tolerance;
  std::deque<Endpoint> queue;

  std::vector<ComponentTemplate> pool(catalog.begin(), catalog.end());
  const Endpoint origin{Pose{}, {}, -1, 0};
  while (!pool.empty()) {
    const std::size_t pick = choose(pool, usage, rng, options);
    Endpoint at = origin;
    at.signature = pool[pick].signature;
    std::optional<ComponentInstance> inst = try_instantiate_at(at, pool[pick], constraints, {}, rng);
    if (inst) {
      place(scenario, std::move(*inst), usage, queue);
      break;
    }
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  if (scenario.instances.empty()) throw InstantiationError("no catalog template can be instantiated");

  int count = 1;
  while (count < total_count && !queue.empty()) {
    const Endpoint p = queue.front();
    queue.pop_front();
    const bool coin = rng.bernoulli(constraints.expansion_probability);
    if (!(coin || queue.empty())) continue;

    std::vector<ComponentTemplate> cands = candidates_for(p.signature, catalog);
    while (!cands.empty()) {
      const std::size_t pick = choose(cands, usage, rng, options);
      std::optional<ComponentInstance> inst =
          try_instantiate_at(p, cands[pick], constraints, scenario.covered_area, rng);
      if (inst) {
        const int to = static_cast<int>(scenario.instances.size());
        scenario.connections.push_back(Connection{EndpointRef{p.owner, p.index}, to});
        place(scenario, std::move(*inst), usage, queue);
        ++count;
        break;
      }
      cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }
  scenario.is_short = count < total_count;
  return scenario;
}

namespace {

bool poses_match(const Pose& a, const Pose& b) {
  const double scale = std::max({1.0, norm(a.position), norm(b.position)});
  return distance(a.position, b.position) <= 1e-7 * scale &&
         std::abs(heading_difference(a.heading, b.heading)) <= 1e-7;
}

}  // namespace

void validate_scenario(const RoadScenario& s) {
  const int n = static_cast<int>(s.instances.size());
  if (n == 0) throw ValidationError("structure", "scenario has no instances");
  if (s.covered_area.size() != s.instances.size()) {
    throw ValidationError("structure", "covered area must hold one footprint per instance");
  }
  for (int i = 0; i < n; ++i) {
    const ComponentInstance& inst = s.instances[static_cast<std::size_t>(i)];
    if (inst.id != i) throw ValidationError("structure", "instance ids must equal their positions");
    if (!(s.covered_area[static_cast<std::size_t>(i)] == inst.footprint)) {
      throw ValidationError("structure", "covered area differs from instance footprints");
    }
    if (static_cast<int>(inst.endpoints.size()) != endpoint_count(inst.tmpl.kind)) {
      throw ValidationError("structure", "instance " + std::to_string(i) + " has the wrong endpoint count");
    }
    for (std::size_t j = 0; j < inst.endpoints.size(); ++j) {
      const Endpoint& e = inst.endpoints[j];
      if (e.owner != i || e.index != static_cast<int>(j) || e.signature != inst.tmpl.endpoint_signatures[j]) {
        throw ValidationError("signature-match",
                              "endpoint " + std::to_string(j) + " of instance " + std::to_string(i) +
                                  " differs from its template declaration");
      }
    }
  }

  std::set<std::pair<int, int>> used;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const Connection& c : s.connections) {
    if (c.from.instance < 0 || c.from.instance >= n || c.to_instance < 0 || c.to_instance >= n ||
        c.from.instance == c.to_instance) {
      throw ValidationError("structure", "connection references an unknown instance");
    }
    const ComponentInstance& from = s.instances[static_cast<std::size_t>(c.from.instance)];
    if (c.from.endpoint < 0 || c.from.endpoint >= static_cast<int>(from.endpoints.size())) {
      throw ValidationError("structure", "connection references an unknown endpoint");
    }
    if (!used.insert({c.from.instance, c.from.endpoint}).second) {
      throw ValidationError("structure", "endpoint connected twice");
    }
    const Endpoint& e = from.endpoints[static_cast<std::size_t>(c.from.endpoint)];
    const ComponentInstance& to = s.instances[static_cast<std::size_t>(c.to_instance)];
    if (to.tmpl.signature != e.signature) {
      throw ValidationError("signature-match", "instance " + std::to_string(c.to_instance) + " starts with " +
                                                   to_string(to.tmpl.signature) + " but endpoint is " +
                                                   to_string(e.signature));
    }
    if (!poses_match(to.params.start, e.pose)) {
      throw ValidationError("pose-match",
                            "instance " + std::to_string(c.to_instance) + " does not start at its endpoint");
    }
    parent[static_cast<std::size_t>(find(c.from.instance))] = find(c.to_instance);
  }
  for (int i = 1; i < n; ++i) {
    if (find(i) != find(0)) {
      throw ValidationError("connectivity", "instance " + std::to_string(i) + " is not connected");
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (footprints_overlap(s.instances[static_cast<std::size_t>(i)].footprint,
                             s.instances[static_cast<std::size_t>(j)].footprint, s.overlap_tolerance)) {
        throw ValidationError("no-overlap",
                              "instances " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
  }
}

GenerationBudget GenerationBudget::scenarios(std::uint64_t n) {
  if (n == 0) throw PreconditionError("budget must be positive");
  GenerationBudget b;
  b.kind = Kind::Count;
  b.count = n;
  return b;
}

GenerationBudget GenerationBudget::wall_clock(std::chrono::milliseconds d) {
  if (d.count() <= 0) throw PreconditionError("budget must be positive");
  GenerationBudget b;
  b.kind = Kind::Duration;
  b.duration = d;
  return b;
}

BatchGenerator::BatchGenerator(std::vector<ComponentTemplate> catalog, Constraints constraints, GenerationMode mode,
                               int total_count, std::uint64_t seed)
    : catalog_(std::move(catalog)), constraints_(std::move(constraints)), total_count_(total_count), batch_rng_(seed) {
  constraints_.validate();
  if (total_count < 1) throw PreconditionError("total_count must be >= 1");
  options_.mode = mode;
}

RoadScenario BatchGenerator::next() {
  Rng rng(batch_rng_.next_u64());
  RoadScenario s = generate_scenario(catalog_, total_count_, constraints_, usage_, rng, options_);
  ++produced_;
  return s;
}

std::vector<RoadScenario> generate_batch(GenerationMode mode, const GenerationBudget& budget, int total_count,
                                         const Constraints& constraints,
                                         std::span<const ComponentTemplate> catalog, std::uint64_t seed) {
  BatchGenerator gen(std::vector<ComponentTemplate>(catalog.begin(), catalog.end()), constraints, mode,
                     total_count, seed);
  std::vector<RoadScenario> out;
  if (budget.kind == GenerationBudget::Kind::Count) {
    out.reserve(budget.count);
    while (out.size() < budget.count) out.push_back(gen.next());
    return out;
  }
  const auto deadline = std::chrono::steady_clock::now() + budget.duration;
  while (std::chrono::steady_clock::now() < deadline) out.push_back(gen.next());
  return out;
}

CoverageReport coverage(std::span<const RoadScenario> scenarios, std::span<const ComponentTemplate> catalog) {
  CoverageReport r;
  r.catalog_size = catalog.size();
  std::set<int> wanted;
  for (const ComponentTemplate& t : catalog) wanted.insert(t.template_id);
  std::set<int> seen;
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    for (const ComponentInstance& inst : scenarios[si].instances) {
      ++r.placed_components;
      ++r.kind_histogram[static_cast<std::size_t>(inst.tmpl.kind)];
      if (wanted.count(inst.tmpl.template_id) != 0) seen.insert(inst.tmpl.template_id);
      if (!r.components_to_coverage && !wanted.empty() && seen.size() == wanted.size()) {
        r.components_to_coverage = r.placed_components;
        r.scenarios_to_coverage = si + 1;
      }
    }
  }
  r.templates_covered = seen.size();
  return r;
}

}  // namespace roadgen
