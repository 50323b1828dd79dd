#pragma once

#include <zlib.h>

#include <cstdint>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "jcfinder/errors.hpp"

namespace jcfinder::zip {

struct Entry {
  std::string name;
  std::string data;
};

namespace detail {

inline std::uint32_t u16(std::string_view s, std::size_t at) {
  if (at + 2 > s.size()) throw IoError("zip: truncated record");
  return static_cast<std::uint8_t>(s[at]) | (static_cast<std::uint32_t>(static_cast<std::uint8_t>(s[at + 1])) << 8);
}

inline std::uint32_t u32(std::string_view s, std::size_t at) { return u16(s, at) | (u16(s, at + 2) << 16); }

inline void put16(std::string& out, std::uint32_t v) {
  out += static_cast<char>(v & 0xff);
  out += static_cast<char>((v >> 8) & 0xff);
}

inline void put32(std::string& out, std::uint32_t v) {
  put16(out, v & 0xffff);
  put16(out, v >> 16);
}

inline std::string inflate_raw(std::string_view in, std::size_t expected) {
  std::string out(expected, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw IoError("zip: inflateInit failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const auto produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected) throw IoError("zip: corrupt deflate stream");
  return out;
}

inline std::string deflate_raw(std::string_view in) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK)
    throw IoError("zip: deflateInit failed");
  std::string out(deflateBound(&zs, static_cast<uLong>(in.size())), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw IoError("zip: deflate failed");
  return out;
}

}  // namespace detail

// Reads every file entry of a zip archive held in memory (stored or deflated entries).
inline std::vector<Entry> read_archive(std::string_view bytes) {
  using detail::u16;
  using detail::u32;
  if (bytes.size() < 22) throw IoError("zip: archive too small");
  std::size_t eocd = std::string_view::npos;
  const std::size_t lowest = bytes.size() > 22 + 0xffff ? bytes.size() - 22 - 0xffff : 0;
  for (std::size_t p = bytes.size() - 22 + 1; p-- > lowest;) {
    if (u32(bytes, p) == 0x06054b50) {
      eocd = p;
      break;
    }
  }
  if (eocd == std::string_view::npos) throw IoError("zip: end of central directory not found");
  const std::uint32_t count = u16(bytes, eocd + 10);
  std::size_t at = u32(bytes, eocd + 16);
  std::vector<Entry> out;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (u32(bytes, at) != 0x02014b50) throw IoError("zip: bad central directory entry");
    const std::uint32_t method = u16(bytes, at + 10);
    const std::uint32_t csize = u32(bytes, at + 20);
    const std::uint32_t usize = u32(bytes, at + 24);
    const std::uint32_t name_len = u16(bytes, at + 28);
    const std::uint32_t extra_len = u16(bytes, at + 30);
    const std::uint32_t comment_len = u16(bytes, at + 32);
    const std::uint32_t local = u32(bytes, at + 42);
    if (at + 46 + name_len > bytes.size()) throw IoError("zip: truncated central directory");
    Entry e;
    e.name = std::string(bytes.substr(at + 46, name_len));
    at += 46 + name_len + extra_len + comment_len;
    if (!e.name.empty() && e.name.back() == '/') continue;
    if (u32(bytes, local) != 0x04034b50) throw IoError("zip: bad local header for " + e.name);
    const std::size_t data_at = local + 30 + u16(bytes, local + 26) + u16(bytes, local + 28);
    if (data_at + csize > bytes.size()) throw IoError("zip: truncated data for " + e.name);
    const auto payload = bytes.substr(data_at, csize);
    if (method == 0) e.data = std::string(payload);
    else if (method == 8) e.data = detail::inflate_raw(payload, usize);
    else throw IoError("zip: unsupported compression method for " + e.name);
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<Entry> read_archive_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open archive " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_archive(bytes);
}

// Serializes entries as a deflated zip archive with fixed timestamps, so equal input
// yields identical bytes.
inline std::string write_archive(const std::vector<Entry>& entries) {
  using detail::put16;
  using detail::put32;
  std::string out, central;
  for (const auto& e : entries) {
    const auto packed = detail::deflate_raw(e.data);
    const auto crc = static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(e.data.data()), static_cast<uInt>(e.data.size())));
    const auto offset = static_cast<std::uint32_t>(out.size());
    auto header = [&](std::string& dst, bool central_record) {
      put32(dst, central_record ? 0x02014b50 : 0x04034b50);
      if (central_record) put16(dst, 20);
      put16(dst, 20);  // version needed
      put16(dst, 0x0800);  // UTF-8 names
      put16(dst, 8);
      put16(dst, 0);       // mod time
      put16(dst, 0x21);    // mod date: 1980-01-01
      put32(dst, crc);
      put32(dst, static_cast<std::uint32_t>(packed.size()));
      put32(dst, static_cast<std::uint32_t>(e.data.size()));
      put16(dst, static_cast<std::uint32_t>(e.name.size()));
      put16(dst, 0);
      if (central_record) {
        put16(dst, 0);
        put16(dst, 0);
        put16(dst, 0);
        put32(dst, 0);
        put32(dst, offset);
      }
      dst += e.name;
    };
    header(out, false);
    out += packed;
    header(central, true);
  }
  const auto cd_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  put32(out, 0x06054b50);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<std::uint32_t>(entries.size()));
  put16(out, static_cast<std::uint32_t>(entries.size()));
  put32(out, static_cast<std::uint32_t>(central.size()));
  put32(out, cd_offset);
  put16(out, 0);
  return out;
}

}  // namespace jcfinder::zip
