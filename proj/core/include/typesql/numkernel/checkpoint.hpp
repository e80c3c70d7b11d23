#pragma once

#include <filesystem>
#include <iosfwd>

#include "typesql/numkernel/param_store.hpp"

namespace typesql {

// Binary layout, all integers unsigned 32-bit little-endian:
//   "TSQ1" | N | N × (name_len | name bytes | rank | dims... | float32 LE data...)
// Records are written in name order.

void write_checkpoint(std::ostream& out, const ParamStore& store);
void save_checkpoint(const std::filesystem::path& path, const ParamStore& store);

/// Fills `store` from a checkpoint. The stored name set and every shape must
/// match the store exactly; otherwise throws and leaves `store` untouched.
void read_checkpoint(std::istream& in, ParamStore& store);
void load_checkpoint(const std::filesystem::path& path, ParamStore& store);

}  // namespace typesql
