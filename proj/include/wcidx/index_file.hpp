#pragma once
/// On-disk index format.
///
///   "WCIX" | version u32 LE | sections...
///   section: id u32 LE | payload length u64 LE | payload | FNV-1a-64 of payload
///
/// Sections: 1 build parameters, 2 resolved alphabet bytes, 3 raw text,
/// 4 suffix array (u32 LE each), 5 node mark bits.  A loader rebuilds the
/// index deterministically from the text and parameters, then cross-checks
/// the stored suffix array and mark bits against the rebuilt ones, so a
/// loaded index behaves identically to a freshly built one or fails loudly.

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "wcidx/common.hpp"
#include "wcidx/index.hpp"

namespace wcidx {

inline constexpr u32 kIndexFileVersion = 1;

namespace detail {

inline constexpr u32 kSecParams = 1;
inline constexpr u32 kSecAlphabet = 2;
inline constexpr u32 kSecText = 3;
inline constexpr u32 kSecSa = 4;
inline constexpr u32 kSecMarks = 5;

inline u64 fnv1a64(const std::vector<unsigned char>& data) {
  u64 h = 14695981039346656037ull;
  for (unsigned char b : data) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

inline void put_u32(std::vector<unsigned char>& out, u32 v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
inline void put_u64(std::vector<unsigned char>& out, u64 v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

class Reader {
 public:
  Reader(const unsigned char* p, std::size_t len) : p_(p), len_(len) {}
  u32 u32le() {
    need(4);
    u32 v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<u32>(p_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  u64 u64le() {
    need(8);
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<u64>(p_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }
  std::vector<unsigned char> bytes(u64 count) {
    need(count);
    std::vector<unsigned char> out(p_ + pos_, p_ + pos_ + count);
    pos_ += count;
    return out;
  }
  bool done() const { return pos_ == len_; }

 private:
  void need(u64 count) const {
    if (count > len_ - pos_) throw FormatError("index file: truncated");
  }
  const unsigned char* p_;
  std::size_t len_;
  std::size_t pos_ = 0;
};

inline void add_section(std::vector<unsigned char>& out, u32 id,
                        const std::vector<unsigned char>& payload) {
  put_u32(out, id);
  put_u64(out, payload.size());
  out.insert(out.end(), payload.begin(), payload.end());
  put_u64(out, fnv1a64(payload));
}

}  // namespace detail

inline std::vector<unsigned char> serialize_index(const WildcardIndex& ix) {
  using namespace detail;
  std::vector<unsigned char> out;
  out.insert(out.end(), {'W', 'C', 'I', 'X'});
  put_u32(out, kIndexFileVersion);

  std::vector<unsigned char> params;
  put_u32(params, ix.params.tau);
  put_u32(params, ix.params.lambda);
  put_u32(params, static_cast<u32>(ix.params.level));
  put_u32(params, ix.params.c_d);
  put_u32(params, ix.params.c_h);
  put_u32(params, ix.params.micro_block);
  put_u32(params, ix.params.sa_step);
  put_u32(params, static_cast<u32>(ix.params.alphabet.size()));
  for (char c : ix.params.alphabet) params.push_back(static_cast<unsigned char>(c));
  add_section(out, kSecParams, params);

  std::vector<unsigned char> alpha(ix.text.alphabet().bytes.begin(),
                                   ix.text.alphabet().bytes.end());
  add_section(out, kSecAlphabet, alpha);

  const u32 n = ix.text.n();
  std::vector<unsigned char> text;
  text.reserve(n - 1);
  for (u32 i = 0; i + 1 < n; ++i) text.push_back(ix.text.alphabet().decode(ix.text.text()[i]));
  add_section(out, kSecText, text);

  std::vector<unsigned char> sa;
  sa.reserve(4ull * n);
  for (u32 r : ix.text.sa()) put_u32(sa, r);
  add_section(out, kSecSa, sa);

  std::vector<unsigned char> marks;
  const u32 nodes = ix.tree.node_count();
  put_u32(marks, nodes);
  unsigned char acc = 0;
  for (u32 v = 0; v < nodes; ++v) {
    if (ix.partition.is_marked(v)) acc |= static_cast<unsigned char>(1u << (v % 8));
    if (v % 8 == 7) {
      marks.push_back(acc);
      acc = 0;
    }
  }
  if (nodes % 8 != 0) marks.push_back(acc);
  add_section(out, kSecMarks, marks);
  return out;
}

inline std::unique_ptr<WildcardIndex> deserialize_index(const unsigned char* data,
                                                        std::size_t len) {
  using namespace detail;
  Reader r(data, len);
  auto magic = r.bytes(4);
  if (std::memcmp(magic.data(), "WCIX", 4) != 0)
    throw FormatError("index file: bad magic");
  u32 version = r.u32le();
  if (version != kIndexFileVersion)
    throw FormatError("index file: unsupported version " + std::to_string(version));

  std::map<u32, std::vector<unsigned char>> secs;
  while (!r.done()) {
    u32 id = r.u32le();
    u64 plen = r.u64le();
    std::vector<unsigned char> payload = r.bytes(plen);
    u64 sum = r.u64le();
    if (sum != fnv1a64(payload))
      throw FormatError("index file: checksum mismatch in section " + std::to_string(id));
    if (id < kSecParams || id > kSecMarks)
      throw FormatError("index file: unknown section " + std::to_string(id));
    if (!secs.emplace(id, std::move(payload)).second)
      throw FormatError("index file: duplicate section " + std::to_string(id));
  }
  for (u32 id = kSecParams; id <= kSecMarks; ++id)
    if (!secs.count(id)) throw FormatError("index file: missing section " + std::to_string(id));

  const auto& pp = secs[kSecParams];
  Reader pr(pp.data(), pp.size());
  IndexParams ps;
  ps.tau = pr.u32le();
  ps.lambda = pr.u32le();
  u32 level = pr.u32le();
  if (level > static_cast<u32>(SamplingLevel::sampled))
    throw FormatError("index file: bad sampling level");
  ps.level = static_cast<SamplingLevel>(level);
  ps.c_d = pr.u32le();
  ps.c_h = pr.u32le();
  ps.micro_block = pr.u32le();
  ps.sa_step = pr.u32le();
  u32 alen = pr.u32le();
  auto abytes = pr.bytes(alen);
  ps.alphabet.assign(abytes.begin(), abytes.end());
  if (!pr.done()) throw FormatError("index file: trailing bytes in parameters");

  const auto& tp = secs[kSecText];
  std::string raw(tp.begin(), tp.end());
  std::unique_ptr<WildcardIndex> ixp;
  try {
    ixp = build_index(raw, ps);
  } catch (const UsageError& e) {
    throw FormatError(std::string("index file: stored parameters rejected: ") + e.what());
  }
  const WildcardIndex& ix = *ixp;

  const auto& ap = secs[kSecAlphabet];
  const auto& bytes = ix.text.alphabet().bytes;
  if (ap.size() != bytes.size() || !std::equal(ap.begin(), ap.end(), bytes.begin()))
    throw FormatError("index file: stored alphabet disagrees with the rebuilt one");

  const auto& sp = secs[kSecSa];
  std::span<const u32> sa = ix.text.sa();
  if (sp.size() != 4ull * sa.size())
    throw FormatError("index file: suffix array size mismatch");
  Reader sr(sp.data(), sp.size());
  for (u32 i = 0; i < sa.size(); ++i)
    if (sr.u32le() != sa[i])
      throw FormatError("index file: stored suffix array disagrees with the rebuilt one");

  const auto& mpesec = secs[kSecMarks];
  Reader mr(mpesec.data(), mpesec.size());
  u32 nodes = mr.u32le();
  if (nodes != ix.tree.node_count())
    throw FormatError("index file: node count mismatch");
  auto mbits = mr.bytes((nodes + 7) / 8);
  if (!mr.done()) throw FormatError("index file: trailing bytes in mark section");
  for (u32 v = 0; v < nodes; ++v) {
    bool stored = (mbits[v / 8] >> (v % 8)) & 1u;
    if (stored != ix.partition.is_marked(v))
      throw FormatError("index file: stored marks disagree with the rebuilt ones");
  }
  return ixp;
}

inline void save_index(const WildcardIndex& ix, const std::string& path) {
  std::vector<unsigned char> buf = serialize_index(ix);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!f) throw UsageError("write failed: " + path);
}

inline std::unique_ptr<WildcardIndex> load_index(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open: " + path);
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(f)),
                                 std::istreambuf_iterator<char>());
  return deserialize_index(buf.data(), buf.size());
}

}  // namespace wcidx
