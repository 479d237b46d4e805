#include "roadgen/roadgen.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "roadgen/catalog.hpp"
#include "roadgen/constraints.hpp"
#include "roadgen/errors.hpp"
#include "roadgen/export.hpp"
#include "roadgen/generation.hpp"
#include "roadgen/topology.hpp"

using namespace roadgen;

struct rg_catalog {
  std::vector<ComponentTemplate> templates;
};

struct rg_constraints {
  Constraints value;
};

struct rg_scenario {
  RoadScenario value;
  DocumentMetadata metadata;
};

struct rg_batch {
  std::vector<rg_scenario> items;
};

struct rg_generator {
  BatchGenerator gen;
  GenerationMode mode;
  std::string catalog_hash;
};

namespace {

thread_local std::string g_last_error = "no error";
thread_local std::size_t g_parse_line = 0;
thread_local std::size_t g_parse_column = 0;

rg_status fail(rg_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <typename F>
rg_status guard(F&& body) noexcept {
  try {
    return body();
  } catch (const ParseError& e) {
    g_parse_line = e.line();
    g_parse_column = e.column();
    return fail(RG_PARSE, e.what());
  } catch (const ValidationError& e) {
    return fail(RG_VALIDATION, e.what());
  } catch (const InstantiationError& e) {
    return fail(RG_VALIDATION, e.what());
  } catch (const PreconditionError& e) {
    return fail(RG_PRECONDITION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RG_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RG_INTERNAL, e.what());
  } catch (...) {
    return fail(RG_INTERNAL, "unknown error");
  }
}

rg_status missing(const char* what) { return fail(RG_INVALID_ARGUMENT, what); }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

std::optional<GenerationMode> to_mode(rg_mode mode) {
  if (mode == RG_MODE_GUIDED) return GenerationMode::Guided;
  if (mode == RG_MODE_RANDOM) return GenerationMode::Random;
  return std::nullopt;
}

}  // namespace

extern "C" {

const char* rg_last_error(void) { return g_last_error.c_str(); }

void rg_last_parse_position(size_t* line, size_t* column) {
  if (line != nullptr) *line = g_parse_line;
  if (column != nullptr) *column = g_parse_column;
}

void rg_string_free(char* text) { std::free(text); }

const char* rg_kind_name(int kind) {
  if (kind < 0 || kind >= static_cast<int>(kKindCount)) return nullptr;
  return kind_name(static_cast<ComponentKind>(kind)).data();
}

const char* rg_marking_name(int marking) {
  if (marking < 0 || marking >= static_cast<int>(kMarkingCount)) return nullptr;
  return marking_name(static_cast<LaneMarking>(marking)).data();
}

rg_status rg_catalog_default(rg_catalog** out) {
  if (out == nullptr) return missing("rg_catalog_default: null out");
  return guard([&] {
    *out = new rg_catalog{default_catalog()};
    return RG_OK;
  });
}

rg_status rg_catalog_from_text(const char* text, size_t length, rg_catalog** out) {
  if (out == nullptr || text == nullptr) return missing("rg_catalog_from_text: null argument");
  return guard([&] {
    *out = new rg_catalog{build_catalog(parse_catalog_table(std::string_view(text, length)))};
    return RG_OK;
  });
}

void rg_catalog_free(rg_catalog* catalog) { delete catalog; }

size_t rg_catalog_size(const rg_catalog* catalog) { return catalog == nullptr ? 0 : catalog->templates.size(); }

rg_status rg_catalog_listing(const rg_catalog* catalog, char** out) {
  if (catalog == nullptr || out == nullptr) return missing("rg_catalog_listing: null argument");
  return guard([&] {
    *out = dup_string(catalog_listing(catalog->templates));
    return RG_OK;
  });
}

rg_status rg_catalog_hash(const rg_catalog* catalog, char** out) {
  if (catalog == nullptr || out == nullptr) return missing("rg_catalog_hash: null argument");
  return guard([&] {
    *out = dup_string(catalog_hash(catalog->templates));
    return RG_OK;
  });
}

rg_status rg_constraints_default(rg_constraints** out) {
  if (out == nullptr) return missing("rg_constraints_default: null out");
  return guard([&] {
    *out = new rg_constraints{default_constraints()};
    return RG_OK;
  });
}

rg_status rg_constraints_from_text(const char* text, size_t length, rg_constraints** out) {
  if (out == nullptr || text == nullptr) return missing("rg_constraints_from_text: null argument");
  return guard([&] {
    *out = new rg_constraints{parse_constraints(std::string_view(text, length))};
    return RG_OK;
  });
}

void rg_constraints_free(rg_constraints* constraints) { delete constraints; }

rg_status rg_constraints_to_json(const rg_constraints* constraints, char** out) {
  if (constraints == nullptr || out == nullptr) return missing("rg_constraints_to_json: null argument");
  return guard([&] {
    *out = dup_string(constraints_to_json(constraints->value));
    return RG_OK;
  });
}

rg_status rg_generator_new(const rg_catalog* catalog, const rg_constraints* constraints, rg_mode mode,
                           int total_count, uint64_t seed, rg_generator** out) {
  if (catalog == nullptr || constraints == nullptr || out == nullptr) {
    return missing("rg_generator_new: null argument");
  }
  const auto m = to_mode(mode);
  if (!m) return missing("rg_generator_new: unknown mode");
  return guard([&] {
    if (catalog->templates.empty()) throw PreconditionError("catalog is empty");
    *out = new rg_generator{BatchGenerator(catalog->templates, constraints->value, *m, total_count, seed), *m,
                            catalog_hash(catalog->templates)};
    return RG_OK;
  });
}

rg_status rg_generator_next(rg_generator* generator, rg_scenario** out) {
  if (generator == nullptr || out == nullptr) return missing("rg_generator_next: null argument");
  return guard([&] {
    const auto index = static_cast<std::int64_t>(generator->gen.produced());
    RoadScenario s = generator->gen.next();
    *out = new rg_scenario{std::move(s),
                           DocumentMetadata{std::string(mode_name(generator->mode)), generator->catalog_hash, index}};
    return RG_OK;
  });
}

void rg_generator_free(rg_generator* generator) { delete generator; }

rg_status rg_generate(const rg_catalog* catalog, const rg_constraints* constraints, rg_mode mode,
                      rg_budget_kind budget_kind, uint64_t budget_value, int total_count, uint64_t seed,
                      rg_batch** out) {
  if (catalog == nullptr || constraints == nullptr || out == nullptr) return missing("rg_generate: null argument");
  const auto m = to_mode(mode);
  if (!m) return missing("rg_generate: unknown mode");
  if (budget_kind != RG_BUDGET_COUNT && budget_kind != RG_BUDGET_MILLISECONDS) {
    return missing("rg_generate: unknown budget kind");
  }
  return guard([&] {
    if (catalog->templates.empty()) throw PreconditionError("catalog is empty");
    const GenerationBudget budget =
        budget_kind == RG_BUDGET_COUNT
            ? GenerationBudget::scenarios(budget_value)
            : GenerationBudget::wall_clock(std::chrono::milliseconds(static_cast<std::int64_t>(budget_value)));
    std::vector<RoadScenario> scenarios =
        generate_batch(*m, budget, total_count, constraints->value, catalog->templates, seed);
    auto batch = std::make_unique<rg_batch>();
    const std::string hash = catalog_hash(catalog->templates);
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
      batch->items.push_back(
          rg_scenario{std::move(scenarios[i]),
                      DocumentMetadata{std::string(mode_name(*m)), hash, static_cast<std::int64_t>(i)}});
    }
    *out = batch.release();
    return RG_OK;
  });
}

size_t rg_batch_size(const rg_batch* batch) { return batch == nullptr ? 0 : batch->items.size(); }

const rg_scenario* rg_batch_at(const rg_batch* batch, size_t index) {
  if (batch == nullptr || index >= batch->items.size()) return nullptr;
  return &batch->items[index];
}

void rg_batch_free(rg_batch* batch) { delete batch; }

rg_status rg_scenario_from_json(const char* text, size_t length, rg_scenario** out) {
  if (text == nullptr || out == nullptr) return missing("rg_scenario_from_json: null argument");
  return guard([&] {
    DocumentMetadata meta;
    RoadScenario s = from_json(std::string_view(text, length), &meta);
    *out = new rg_scenario{std::move(s), std::move(meta)};
    return RG_OK;
  });
}

rg_status rg_scenario_clone(const rg_scenario* scenario, rg_scenario** out) {
  if (scenario == nullptr || out == nullptr) return missing("rg_scenario_clone: null argument");
  return guard([&] {
    *out = new rg_scenario(*scenario);
    return RG_OK;
  });
}

void rg_scenario_free(rg_scenario* scenario) { delete scenario; }

rg_status rg_scenario_set_metadata(rg_scenario* scenario, const char* mode, const char* catalog_hash,
                                   int64_t batch_index) {
  if (scenario == nullptr) return missing("rg_scenario_set_metadata: null scenario");
  return guard([&] {
    scenario->metadata = DocumentMetadata{mode == nullptr ? "" : mode, catalog_hash == nullptr ? "" : catalog_hash,
                                          batch_index};
    return RG_OK;
  });
}

const char* rg_scenario_mode(const rg_scenario* scenario) {
  return scenario == nullptr ? "" : scenario->metadata.mode.c_str();
}

const char* rg_scenario_catalog_hash(const rg_scenario* scenario) {
  return scenario == nullptr ? "" : scenario->metadata.catalog_hash.c_str();
}

int64_t rg_scenario_batch_index(const rg_scenario* scenario) {
  return scenario == nullptr ? -1 : scenario->metadata.batch_index;
}

rg_status rg_scenario_to_json(const rg_scenario* scenario, char** out) {
  if (scenario == nullptr || out == nullptr) return missing("rg_scenario_to_json: null argument");
  return guard([&] {
    *out = dup_string(to_json(scenario->value, scenario->metadata));
    return RG_OK;
  });
}

rg_status rg_scenario_to_xodr(const rg_scenario* scenario, char** out) {
  if (scenario == nullptr || out == nullptr) return missing("rg_scenario_to_xodr: null argument");
  return guard([&] {
    *out = dup_string(to_opendrive(scenario->value));
    return RG_OK;
  });
}

rg_status rg_scenario_to_svg(const rg_scenario* scenario, double scale, char** out) {
  if (scenario == nullptr || out == nullptr) return missing("rg_scenario_to_svg: null argument");
  return guard([&] {
    *out = dup_string(to_svg(scenario->value, scale));
    return RG_OK;
  });
}

uint64_t rg_scenario_seed(const rg_scenario* scenario) { return scenario == nullptr ? 0 : scenario->value.seed; }

int rg_scenario_is_short(const rg_scenario* scenario) {
  return scenario != nullptr && scenario->value.is_short ? 1 : 0;
}

size_t rg_scenario_instance_count(const rg_scenario* scenario) {
  return scenario == nullptr ? 0 : scenario->value.instances.size();
}

size_t rg_scenario_connection_count(const rg_scenario* scenario) {
  return scenario == nullptr ? 0 : scenario->value.connections.size();
}

rg_status rg_scenario_instance(const rg_scenario* scenario, size_t index, rg_instance_info* out) {
  if (scenario == nullptr || out == nullptr) return missing("rg_scenario_instance: null argument");
  if (index >= scenario->value.instances.size()) return missing("rg_scenario_instance: index out of range");
  const ComponentInstance& inst = scenario->value.instances[index];
  out->id = inst.id;
  out->template_id = inst.tmpl.template_id;
  out->kind = static_cast<int32_t>(inst.tmpl.kind);
  out->variant = static_cast<int32_t>(inst.tmpl.variant);
  out->lane_count = inst.tmpl.signature.lane_count;
  out->marking = static_cast<int32_t>(inst.tmpl.signature.marking);
  out->bidirectional = inst.tmpl.signature.bidirectional ? 1 : 0;
  out->endpoint_count = static_cast<int32_t>(inst.endpoints.size());
  out->length = inst.params.length;
  out->lane_width = inst.params.lane_width;
  out->start_x = inst.params.start.position.x;
  out->start_y = inst.params.start.position.y;
  out->start_heading = inst.params.start.heading;
  return RG_OK;
}

rg_status rg_scenario_validate(const rg_scenario* scenario) {
  if (scenario == nullptr) return missing("rg_scenario_validate: null scenario");
  return guard([&] {
    validate_scenario(scenario->value);
    return RG_OK;
  });
}

rg_status rg_similarity(const rg_scenario* a, const rg_scenario* b, double* out) {
  if (a == nullptr || b == nullptr || out == nullptr) return missing("rg_similarity: null argument");
  return guard([&] {
    *out = similarity(to_graph(a->value), to_graph(b->value));
    return RG_OK;
  });
}

rg_status rg_deduplicate(const rg_scenario* const* scenarios, size_t count, double threshold, size_t* kept_indices,
                         size_t* kept_count) {
  if ((scenarios == nullptr && count > 0) || kept_count == nullptr || (kept_indices == nullptr && count > 0)) {
    return missing("rg_deduplicate: null argument");
  }
  return guard([&] {
    std::vector<TopologyGraph> graphs;
    graphs.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (scenarios[i] == nullptr) throw PreconditionError("rg_deduplicate: null scenario in input");
      graphs.push_back(to_graph(scenarios[i]->value));
    }
    const std::vector<std::size_t> kept = deduplicate_indices(graphs, threshold);
    for (size_t i = 0; i < kept.size(); ++i) kept_indices[i] = kept[i];
    *kept_count = kept.size();
    return RG_OK;
  });
}

rg_status rg_uniqueness_rate(size_t before, size_t after, double* out) {
  if (out == nullptr) return missing("rg_uniqueness_rate: null out");
  return guard([&] {
    *out = uniqueness_rate(before, after);
    return RG_OK;
  });
}

rg_status rg_coverage(const rg_scenario* const* scenarios, size_t count, const rg_catalog* catalog,
                      rg_coverage_report* out) {
  if ((scenarios == nullptr && count > 0) || catalog == nullptr || out == nullptr) {
    return missing("rg_coverage: null argument");
  }
  return guard([&] {
    std::vector<RoadScenario> list;
    list.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (scenarios[i] == nullptr) throw PreconditionError("rg_coverage: null scenario in input");
      list.push_back(scenarios[i]->value);
    }
    const CoverageReport r = coverage(list, catalog->templates);
    out->catalog_size = r.catalog_size;
    out->templates_covered = r.templates_covered;
    out->placed_components = r.placed_components;
    out->scenarios_to_coverage = r.scenarios_to_coverage ? static_cast<int64_t>(*r.scenarios_to_coverage) : -1;
    out->components_to_coverage = r.components_to_coverage ? static_cast<int64_t>(*r.components_to_coverage) : -1;
    for (std::size_t k = 0; k < kKindCount; ++k) out->kind_histogram[k] = r.kind_histogram[k];
    return RG_OK;
  });
}

rg_status rg_validate_xodr(const char* text, size_t length, char** problems) {
  if (text == nullptr || problems == nullptr) return missing("rg_validate_xodr: null argument");
  return guard([&] {
    std::string joined;
    for (const std::string& p : validate_opendrive(std::string_view(text, length))) joined += p + "\n";
    *problems = dup_string(joined);
    return RG_OK;
  });
}

rg_status rg_check_xml(const char* text, size_t length) {
  if (text == nullptr) return missing("rg_check_xml: null text");
  return guard([&] {
    if (const auto problem = check_xml(std::string_view(text, length))) return fail(RG_PARSE, problem->c_str());
    return RG_OK;
  });
}

}  // extern "C"
