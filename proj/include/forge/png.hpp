#pragma once

#include <zlib.h>

#include <array>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "forge/errors.hpp"
#include "forge/image.hpp"

namespace forge {

namespace detail {

inline constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
  return (std::uint32_t{in[at]} << 24) | (std::uint32_t{in[at + 1]} << 16) |
         (std::uint32_t{in[at + 2]} << 8) | std::uint32_t{in[at + 3]};
}

inline void put_chunk(std::vector<std::uint8_t>& out, const char type[4],
                      std::span<const std::uint8_t> data) {
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, out.data() + start, static_cast<uInt>(out.size() - start));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

inline std::uint8_t paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return static_cast<std::uint8_t>(a);
  if (pb <= pc) return static_cast<std::uint8_t>(b);
  return static_cast<std::uint8_t>(c);
}

}  // namespace detail

/// 8-bit grayscale PNG, filter 0 on every row, zlib level 6.
inline std::vector<std::uint8_t> encode_png(const Image& img) {
  std::vector<std::uint8_t> out(detail::kPngSignature.begin(), detail::kPngSignature.end());
  std::vector<std::uint8_t> ihdr;
  detail::put_u32(ihdr, static_cast<std::uint32_t>(img.width));
  detail::put_u32(ihdr, static_cast<std::uint32_t>(img.height));
  ihdr.insert(ihdr.end(), {8, 0, 0, 0, 0});
  detail::put_chunk(out, "IHDR", ihdr);

  const std::size_t stride = static_cast<std::size_t>(img.width);
  std::vector<std::uint8_t> raw;
  raw.reserve((stride + 1) * static_cast<std::size_t>(img.height));
  for (int y = 0; y < img.height; ++y) {
    raw.push_back(0);
    auto row = img.pixels.begin() + static_cast<std::ptrdiff_t>(stride * static_cast<std::size_t>(y));
    raw.insert(raw.end(), row, row + static_cast<std::ptrdiff_t>(stride));
  }
  uLongf packed_len = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> packed(packed_len);
  if (compress2(packed.data(), &packed_len, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
    throw Error("zlib compression failed");
  packed.resize(packed_len);
  detail::put_chunk(out, "IDAT", packed);
  detail::put_chunk(out, "IEND", {});
  return out;
}

/// Decodes 8-bit grayscale, non-interlaced PNGs (all five row filters).
inline Image decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || !std::equal(detail::kPngSignature.begin(), detail::kPngSignature.end(), bytes.begin()))
    throw Error("not a PNG file");
  std::size_t pos = 8;
  int width = 0, height = 0;
  std::vector<std::uint8_t> idat;
  bool seen_end = false;
  while (pos + 12 <= bytes.size() && !seen_end) {
    const std::uint32_t len = detail::get_u32(bytes, pos);
    if (pos + 12 + len > bytes.size()) throw Error("truncated PNG chunk");
    const std::string type(reinterpret_cast<const char*>(bytes.data() + pos + 4), 4);
    auto data = bytes.subspan(pos + 8, len);
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, bytes.data() + pos + 4, static_cast<uInt>(len + 4));
    if (static_cast<std::uint32_t>(crc) != detail::get_u32(bytes, pos + 8 + len))
      throw Error("PNG chunk CRC mismatch");
    if (type == "IHDR") {
      if (len != 13) throw Error("bad IHDR");
      width = static_cast<int>(detail::get_u32(data, 0));
      height = static_cast<int>(detail::get_u32(data, 4));
      if (data[8] != 8 || data[9] != 0 || data[12] != 0)
        throw Error("only 8-bit grayscale non-interlaced PNGs are supported");
    } else if (type == "IDAT") {
      idat.insert(idat.end(), data.begin(), data.end());
    } else if (type == "IEND") {
      seen_end = true;
    }
    pos += 12 + len;
  }
  if (width <= 0 || height <= 0 || !seen_end) throw Error("incomplete PNG");

  const std::size_t stride = static_cast<std::size_t>(width);
  uLongf raw_len = static_cast<uLongf>((stride + 1) * static_cast<std::size_t>(height));
  std::vector<std::uint8_t> raw(raw_len);
  if (uncompress(raw.data(), &raw_len, idat.data(), static_cast<uLong>(idat.size())) != Z_OK ||
      raw_len != raw.size())
    throw Error("PNG image data is corrupt");

  Image img(width, height);
  for (int y = 0; y < height; ++y) {
    const std::uint8_t filter = raw[static_cast<std::size_t>(y) * (stride + 1)];
    const std::uint8_t* src = raw.data() + static_cast<std::size_t>(y) * (stride + 1) + 1;
    for (int x = 0; x < width; ++x) {
      const int a = x > 0 ? img.at(x - 1, y) : 0;
      const int b = y > 0 ? img.at(x, y - 1) : 0;
      const int c = (x > 0 && y > 0) ? img.at(x - 1, y - 1) : 0;
      int v = src[x];
      switch (filter) {
        case 0: break;
        case 1: v += a; break;
        case 2: v += b; break;
        case 3: v += (a + b) / 2; break;
        case 4: v += detail::paeth(a, b, c); break;
        default: throw Error("unknown PNG filter type");
      }
      img.at(x, y) = static_cast<std::uint8_t>(v);
    }
  }
  return img;
}

inline void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failed: " + path);
}

inline std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for reading: " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace forge
