#pragma once

namespace roadgen {

// Shipped data files, embedded at configure time.
const char* default_catalog_text();
const char* default_constraints_text();

}  // namespace roadgen
