#include "twosided/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "twosided/contingency.hpp"
#include "twosided/errors.hpp"

namespace twosided {

namespace {

constexpr char kMagic[4] = {'T', 'S', 'X', 'G'};

class Writer {
public:
  void bytes(const void *p, std::size_t n) {
    auto *b = static_cast<const std::uint8_t *>(p);
    out_.insert(out_.end(), b, b + n);
  }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(v & 0xff);
    u8(v >> 8);
  }
  void u32(std::uint32_t v) {
    for (int k = 0; k < 4; ++k)
      u8((v >> (8 * k)) & 0xff);
  }
  std::vector<std::uint8_t> &data() { return out_; }

private:
  std::vector<std::uint8_t> out_;
};

class Reader {
public:
  Reader(const std::uint8_t *p, std::size_t n) : p_(p), n_(n) {}
  const std::uint8_t *take(std::size_t k) {
    if (k > n_ - pos_)
      throw CorruptCache("cache image is truncated");
    const std::uint8_t *at = p_ + pos_;
    pos_ += k;
    return at;
  }
  std::uint8_t u8() { return *take(1); }
  std::uint16_t u16() {
    const auto *b = take(2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t u32() {
    const auto *b = take(4);
    return std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) | (std::uint32_t{b[2]} << 16) |
           (std::uint32_t{b[3]} << 24);
  }
  std::size_t remaining() const { return n_ - pos_; }

private:
  const std::uint8_t *p_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

std::uint32_t checksum(const std::uint8_t *p, std::size_t n) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // crc32 takes a uInt length; feed large images in chunks.
  while (n > 0) {
    const uInt chunk = static_cast<uInt>(std::min<std::size_t>(n, 1u << 30));
    crc = crc32(crc, p, chunk);
    p += chunk;
    n -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

int mask_bytes(int n) { return (n + 7) / 8; }

void put_masks(Writer &w, std::span<const GenSet> masks, int n) {
  for (GenSet m : masks)
    for (int k = 0; k < mask_bytes(n); ++k)
      w.u8((m.bits() >> (8 * k)) & 0xff);
}

std::vector<GenSet> get_masks(Reader &r, std::uint32_t count, int n) {
  std::vector<GenSet> out(count);
  for (auto &m : out) {
    std::uint32_t bits = 0;
    for (int k = 0; k < mask_bytes(n); ++k)
      bits |= std::uint32_t{r.u8()} << (8 * k);
    if (bits >> n)
      throw CorruptCache("descent mask uses bits beyond the rank");
    m = GenSet(bits);
  }
  return out;
}

std::vector<std::uint32_t> get_u32s(Reader &r, std::size_t count, std::uint32_t bound) {
  std::vector<std::uint32_t> out(count);
  for (auto &v : out) {
    v = r.u32();
    if (v >= bound)
      throw CorruptCache("element id out of range");
  }
  return out;
}

void require_small(const XiComplex &complex, std::uint64_t max_faces) {
  if (complex.size() > max_faces)
    throw CapacityExceeded("export of " + complex.table().system().label() + " would have " +
                           std::to_string(complex.size()) + " faces (limit " +
                           std::to_string(max_faces) + ")");
}

std::string quoted(const std::string &s) {
  std::ostringstream os;
  os << std::quoted(s);
  return os.str();
}

/// Cover edges among the faces accepted by `keep`, as sorted index pairs.
template <typename Keep>
std::vector<std::pair<std::uint64_t, std::uint64_t>> cover_edges(const XiComplex &complex,
                                                                 Keep keep) {
  const GroupTable &table = complex.table();
  const int n = table.rank();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  for (std::uint64_t i = 0; i < complex.size(); ++i) {
    const Face g = complex.face_at(i);
    if (!keep(g))
      continue;
    for (const Face &f : lower_interval(table, g))
      if (f.rank(n) + 1 == g.rank(n) && keep(f))
        edges.emplace_back(complex.index_of(f), i);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

template <typename Keep>
void write_dot(std::ostream &os, const XiComplex &complex, const std::string &name, Keep keep) {
  const GroupTable &table = complex.table();
  const int n = table.rank();
  os << "digraph " << quoted(name) << " {\n  rankdir=BT;\n";
  for (std::uint64_t i = 0; i < complex.size(); ++i) {
    const Face f = complex.face_at(i);
    if (keep(f))
      os << "  f" << i << " [label=" << quoted(face_label(table, f)) << ", rank=" << f.rank(n)
         << "];\n";
  }
  for (const auto &[a, b] : cover_edges(complex, keep))
    os << "  f" << a << " -> f" << b << ";\n";
  os << "}\n";
}

} // namespace

std::vector<std::uint8_t> serialize_group(const GroupTable &table) {
  const int n = table.rank();
  const std::string label = table.system().label();
  Writer w;
  w.bytes(kMagic, 4);
  w.u32(kCacheVersion);
  w.u16(static_cast<std::uint16_t>(label.size()));
  w.bytes(label.data(), label.size());
  w.u8(static_cast<std::uint8_t>(n));
  w.u32(table.order());
  for (int m : table.system().matrix().entries())
    w.u16(static_cast<std::uint16_t>(m));
  const bool narrow = table.max_length() < 256;
  w.u8(narrow ? 1 : 2);
  for (std::uint16_t len : table.lengths())
    narrow ? w.u8(static_cast<std::uint8_t>(len)) : w.u16(len);
  for (std::uint32_t v : table.left_table())
    w.u32(v);
  for (std::uint32_t v : table.right_table())
    w.u32(v);
  for (std::uint32_t v : table.inverses())
    w.u32(v);
  put_masks(w, table.left_descents(), n);
  put_masks(w, table.right_descents(), n);
  w.u32(table.longest().value);
  w.u32(checksum(w.data().data(), w.data().size()));
  return std::move(w.data());
}

GroupTable deserialize_group(const std::vector<std::uint8_t> &bytes) {
  if (bytes.size() < 8)
    throw CorruptCache("cache image is truncated");
  const std::size_t body = bytes.size() - 4;
  Reader tail(bytes.data() + body, 4);
  if (tail.u32() != checksum(bytes.data(), body))
    throw CorruptCache("cache checksum mismatch");

  Reader r(bytes.data(), body);
  if (!std::equal(kMagic, kMagic + 4, r.take(4)))
    throw CorruptCache("not a group cache file");
  if (const auto version = r.u32(); version != kCacheVersion)
    throw CorruptCache("unsupported cache version " + std::to_string(version));
  const std::uint16_t label_size = r.u16();
  const auto *label_bytes = r.take(label_size);
  const std::string label(label_bytes, label_bytes + label_size);
  const int n = r.u8();
  if (n < 1 || n > kMaxRank)
    throw CorruptCache("cache rank out of range");
  const std::uint32_t order = r.u32();
  if (order == 0)
    throw CorruptCache("cache holds an empty group");

  std::vector<int> entries(static_cast<std::size_t>(n) * n);
  for (int &m : entries)
    m = r.u16();
  std::optional<CoxeterSystem> system;
  try {
    system.emplace(classify_finite(CoxeterMatrix(n, entries)));
  } catch (const Error &e) {
    throw CorruptCache(std::string("cache holds an invalid Coxeter matrix: ") + e.what());
  }
  if (system->label() != label)
    throw CorruptCache("cache label " + label + " does not match its matrix");

  const int width = r.u8();
  if (width != 1 && width != 2)
    throw CorruptCache("bad length width");
  std::vector<std::uint16_t> length(order);
  for (auto &len : length)
    len = width == 1 ? r.u8() : r.u16();
  const std::size_t cells = static_cast<std::size_t>(order) * n;
  auto left = get_u32s(r, cells, order);
  auto right = get_u32s(r, cells, order);
  auto inverse = get_u32s(r, order, order);
  auto des_left = get_masks(r, order, n);
  auto des_right = get_masks(r, order, n);
  const std::uint32_t longest = r.u32();
  if (longest >= order)
    throw CorruptCache("longest element id out of range");
  if (r.remaining() != 0)
    throw CorruptCache("trailing bytes in cache image");
  try {
    return GroupTable(std::move(*system), std::move(length), std::move(left), std::move(right),
                      std::move(des_left), std::move(des_right), std::move(inverse),
                      ElementId(longest));
  } catch (const InvariantViolation &e) {
    throw CorruptCache(std::string("cache tables are inconsistent: ") + e.what());
  }
}

std::filesystem::path cache_path(const std::filesystem::path &dir, const CoxeterSystem &system) {
  return dir / (system.label() + ".tsg");
}

CachedGroup load_or_build(std::string_view type_spec, const std::filesystem::path &dir,
                          std::uint64_t budget) {
  CoxeterSystem system = classify_finite(parse_type_spec(type_spec));
  if (system.order() > budget)
    throw CapacityExceeded(system.label() + " has " + std::to_string(system.order()) +
                           " elements, over the budget of " + std::to_string(budget));
  const auto path = cache_path(dir, system);
  if (std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    GroupTable table = deserialize_group(bytes);
    if (table.system().matrix() != system.matrix())
      throw CorruptCache(path.string() + " holds a different Coxeter matrix");
    return {std::move(table), path, true};
  }
  GroupTable table = build_group(system, budget);
  const auto bytes = serialize_group(table);
  std::filesystem::create_directories(dir);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
      throw InvalidArgument("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
  return {std::move(table), path, false};
}

Format parse_format(std::string_view name) {
  if (name == "json")
    return Format::Json;
  if (name == "csv")
    return Format::Csv;
  if (name == "dot")
    return Format::Dot;
  if (name == "text")
    return Format::Text;
  throw InvalidArgument("unknown format '" + std::string(name) + "'");
}

void write_matrix_text(std::ostream &os, const Rows &rows) {
  std::size_t width = 1;
  for (const auto &row : rows)
    for (auto v : row)
      width = std::max(width, std::to_string(v).size());
  for (const auto &row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      os << (j ? " " : "") << std::setw(static_cast<int>(width)) << row[j];
    os << '\n';
  }
}

void write_matrix_csv(std::ostream &os, const Rows &rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t j = 0; j < cols; ++j)
    os << (j ? "," : "") << 'c' << j;
  os << '\n';
  for (const auto &row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      os << (j ? "," : "") << row[j];
    os << '\n';
  }
}

void write_hasse_dot(std::ostream &os, const XiComplex &complex, int min_rank, int max_rank,
                     std::uint64_t max_faces) {
  require_small(complex, max_faces);
  const int n = complex.rank();
  write_dot(os, complex, "Xi " + complex.table().system().label(), [&](const Face &f) {
    const int r = f.rank(n);
    return r >= min_rank && r <= max_rank;
  });
}

void write_sigma_dot(std::ostream &os, const XiComplex &complex, std::uint64_t max_faces) {
  require_small(complex, max_faces);
  const SigmaReport sigma = coxeter_subcomplex(complex);
  std::vector<std::uint8_t> in_ideal(complex.size(), 0);
  for (const Face &f : sigma.ideal)
    in_ideal[complex.index_of(f)] = 1;
  write_dot(os, complex, "Sigma " + complex.table().system().label(),
            [&](const Face &f) { return in_ideal[complex.index_of(f)] != 0; });
}

void write_contingency_json(std::ostream &os, const XiComplex &complex,
                            std::uint64_t max_faces) {
  require_small(complex, max_faces);
  const GroupTable &table = complex.table();
  nlohmann::json out = nlohmann::json::array();
  for (std::uint64_t i = 0; i < complex.size(); ++i) {
    const Face f = complex.face_at(i);
    out.push_back({{"face", face_label(table, f)},
                   {"rank", f.rank(table.rank())},
                   {"table", face_to_table(table, f).display()}});
  }
  os << out.dump(1) << '\n';
}

} // namespace twosided
