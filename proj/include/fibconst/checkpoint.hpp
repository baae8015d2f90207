#pragma once

#include <string>
#include <utility>

#include "fibconst/stream.hpp"

namespace fibconst {

// Versioned binary checkpoint: magic bytes, format version, the cursor
// (term index, Fibonacci pair as length-prefixed little-endian magnitude
// bytes, suffix carry), the full counter bank, and a whole-file checksum.
// Saving requires a cursor at a term boundary (pos_in_term == 0), which is
// the only state the engine ever exposes.
//
// The write is atomic: data goes to a sibling temp file first, then renames
// over the target, so an interrupted save never corrupts an older good
// checkpoint.
void checkpoint_save(const FibCursor& cursor, const CounterBank& bank,
                     const std::string& path);

// Validates magic, version, structure, and checksum; corrupt or truncated
// files raise IntegrityError with the failing byte offset, foreign versions
// raise VersionError, missing files raise IoError.
std::pair<FibCursor, CounterBank> checkpoint_load(const std::string& path);

}  // namespace fibconst
