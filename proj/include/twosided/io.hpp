#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "twosided/complex.hpp"
#include "twosided/enumeration.hpp"
#include "twosided/group_table.hpp"

namespace twosided {

inline constexpr std::uint32_t kCacheVersion = 1;

/// Binary cache image:
///   "TSXG" | u32 version | u16 label length, label | u8 n | u32 |W|
///   | n*n u16 Coxeter matrix | u8 length width (1 or 2), lengths
///   | u32 left table | u32 right table | u32 inverses
///   | left descent masks | right descent masks (ceil(n/8) bytes each)
///   | u32 longest | u32 crc32 of everything before it.
/// All integers little-endian.
std::vector<std::uint8_t> serialize_group(const GroupTable &table);
/// Throws CorruptCache on any malformed or inconsistent image.
GroupTable deserialize_group(const std::vector<std::uint8_t> &bytes);

std::filesystem::path cache_path(const std::filesystem::path &dir, const CoxeterSystem &system);

struct CachedGroup {
  GroupTable table;
  std::filesystem::path path;
  bool hit = false;
};

/// Loads the group from `dir` when a cache file exists (checksum verified),
/// otherwise builds and writes it.  The image is written to a temporary file
/// and renamed into place.
CachedGroup load_or_build(std::string_view type_spec, const std::filesystem::path &dir,
                          std::uint64_t budget = kDefaultElementBudget);

enum class Format { Json, Csv, Dot, Text };
Format parse_format(std::string_view name);

using Rows = std::vector<std::vector<std::int64_t>>;

/// Right-aligned columns, one matrix row per line.
void write_matrix_text(std::ostream &os, const Rows &rows);
/// Header row "c0,c1,..." followed by integer rows.
void write_matrix_csv(std::ostream &os, const Rows &rows);

/// Hasse diagram of the faces with rank in [min_rank, max_rank].
/// Nodes in complex index order, edges sorted.  Refuses more than
/// `max_faces` faces with CapacityExceeded.
void write_hasse_dot(std::ostream &os, const XiComplex &complex, int min_rank, int max_rank,
                     std::uint64_t max_faces = 20'000);
/// Hasse diagram of the Coxeter-complex ideal inside the complex.
void write_sigma_dot(std::ostream &os, const XiComplex &complex,
                     std::uint64_t max_faces = 20'000);
/// JSON array of {face, rank, table} for every face; type A only.
void write_contingency_json(std::ostream &os, const XiComplex &complex,
                            std::uint64_t max_faces = 20'000);

} // namespace twosided
