#include <gtest/gtest.h>

#include <zlib.h>

#include <set>

#include "forge/composition_task.hpp"
#include "forge/image.hpp"
#include "forge/png.hpp"
#include "forge/render.hpp"
#include "support.hpp"

using namespace forge;
namespace ts = testing_support;

namespace {

std::set<std::uint8_t> levels_in(const Image& img) { return {img.pixels.begin(), img.pixels.end()}; }

BlockSet wall(bool with_hidden) {
  std::vector<Cell> cells;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) cells.push_back({x, y, 1});
  if (with_hidden) cells.push_back({1, 1, 0});
  return BlockSet(cells);
}

// Independent PNG writer with a chosen filter per row.
std::vector<std::uint8_t> png_with_filters(const Image& img, const std::vector<int>& filters) {
  std::vector<std::uint8_t> raw;
  const int w = img.width;
  for (int y = 0; y < img.height; ++y) {
    const int f = filters[static_cast<std::size_t>(y) % filters.size()];
    raw.push_back(static_cast<std::uint8_t>(f));
    for (int x = 0; x < w; ++x) {
      const int a = x ? img.at(x - 1, y) : 0, b = y ? img.at(x, y - 1) : 0, c = x && y ? img.at(x - 1, y - 1) : 0;
      int pred = 0;
      if (f == 1) pred = a;
      if (f == 2) pred = b;
      if (f == 3) pred = (a + b) / 2;
      if (f == 4) {
        const int p = a + b - c, pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
        pred = pa <= pb && pa <= pc ? a : (pb <= pc ? b : c);
      }
      raw.push_back(static_cast<std::uint8_t>(img.at(x, y) - pred));
    }
  }
  uLongf n = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> z(n);
  compress(z.data(), &n, raw.data(), static_cast<uLong>(raw.size()));
  z.resize(n);
  std::vector<std::uint8_t> out{0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  auto chunk = [&](const char* type, const std::vector<std::uint8_t>& data) {
    const auto len = static_cast<std::uint32_t>(data.size());
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(len >> s));
    std::vector<std::uint8_t> body(type, type + 4);
    body.insert(body.end(), data.begin(), data.end());
    out.insert(out.end(), body.begin(), body.end());
    const auto crc = static_cast<std::uint32_t>(crc32(0, body.data(), static_cast<uInt>(body.size())));
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(crc >> s));
  };
  std::vector<std::uint8_t> ihdr;
  for (auto v : {img.width, img.height})
    for (int s = 24; s >= 0; s -= 8) ihdr.push_back(static_cast<std::uint8_t>(static_cast<std::uint32_t>(v) >> s));
  ihdr.insert(ihdr.end(), {8, 0, 0, 0, 0});
  chunk("IHDR", ihdr);
  chunk("IDAT", z);
  chunk("IEND", {});
  return out;
}

}  // namespace

TEST(RenderPolyomino, DeterministicAndSized) {
  const BlockSet b = build_polyomino({{4, 5, 3}, {0, 2}});
  for (int size : {224, 112, 64}) {
    const Image a = render_polyomino(b, 33.3, 221.7, {}, size);
    EXPECT_EQ(a, render_polyomino(b, 33.3, 221.7, {}, size));
    EXPECT_EQ(a.width, size);
    EXPECT_EQ(a.height, size);
    EXPECT_EQ(a.at(0, 0), kWhite);
    EXPECT_GT(a.count_below(128), 0u);
  }
}

TEST(RenderPolyomino, SingleCubeShowsThreeShadedFaces) {
  const BlockSet cube({{0, 0, 0}});
  const RenderStyle style;
  const Image img = render_polyomino(cube, 45, 45, style);
  const auto lv = levels_in(img);
  for (auto s : style.shades) EXPECT_TRUE(lv.count(s)) << int(s);
  EXPECT_TRUE(lv.count(style.outline_level));
  std::set<std::uint8_t> figure;
  for (auto v : lv)
    if (v != kWhite && v != style.outline_level) figure.insert(v);
  EXPECT_EQ(figure.size(), 3u);
  // Hexagonal silhouette: the corners of the dark bounding box stay white.
  int x0 = img.width, x1 = -1, y0 = img.height, y1 = -1;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      if (img.at(x, y) != kWhite) x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
  for (auto [x, y] : {std::pair{x0, y0}, {x1, y0}, {x0, y1}, {x1, y1}}) EXPECT_EQ(img.at(x, y), kWhite);
}

TEST(RenderPolyomino, FrontViewShowsOneShade) {
  const Image img = render_polyomino(BlockSet({{0, 0, 0}}), 0, 0, {}, 224);
  std::set<std::uint8_t> figure;
  for (auto v : levels_in(img))
    if (v != kWhite && v != 20) figure.insert(v);
  EXPECT_EQ(figure.size(), 1u);
}

TEST(RenderPolyomino, HiddenBlocksDrawNothing) {
  // A bar pointing at the camera looks like its nearest cube.
  const BlockSet bar({{0, 0, 0}, {0, 0, 1}, {0, 0, 2}});
  const BlockSet front({{0, 0, 2}});
  EXPECT_EQ(render_polyomino(bar, 0, 0), render_polyomino(front, 0, 0));
  for (auto [v, h] : {std::pair{0.0, 0.0}, {20.0, 25.0}, {-30.0, 15.0}, {17.5, -35.2}})
    EXPECT_EQ(render_polyomino(wall(true), v, h), render_polyomino(wall(false), v, h)) << v << "," << h;
  // Seen from behind the same block is visible.
  EXPECT_NE(render_polyomino(wall(true), 0, 200), render_polyomino(wall(false), 0, 200));
}

TEST(RenderPolyomino, StyleValidation) {
  RenderStyle s;
  s.shades = {90, 90, 205};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  RenderStyle m;
  m.margin = 0.3;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(RenderPolygon, FullSquareIsBlack) {
  for (int size : {224, 112, 64}) {
    const Image img = render_polygon(Polygon::canvas_square(), size);
    EXPECT_EQ(img.count_below(128), static_cast<std::size_t>(size * size));
  }
  const Image band = render_polygon(Polygon::rectangle(0, 56, 224, 168));
  EXPECT_EQ(band.count_below(128), 25088u);
  EXPECT_EQ(band, render_polygon(Polygon::rectangle(0, 56, 224, 168)));
}

TEST(RenderPolygon, MatchesPixelCentreOracleAndArea) {
  Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    const Polygon p = generate_original(rng).polygon;
    for (int size : {224, 112, 64}) {
      const long got = static_cast<long>(render_polygon(p, size).count_below(128));
      const long want = ts::pixel_centre_count(p, size);
      EXPECT_LE(std::abs(got - want), size) << "size " << size;
      if (size == 224) {
        const double area = polygon_area(p).get_d();
        EXPECT_LE(std::abs(got - area) / area, 0.005);
      }
    }
  }
}

TEST(RenderMontage, PlacesEveryPiece) {
  const std::vector<Polygon> pieces(4, Polygon::canvas_square());
  const Image img = render_montage(pieces, 224);
  EXPECT_EQ(img.count_below(128), 224u * 224u);
  const Image two = render_montage({Polygon::canvas_square(), Polygon::canvas_square()}, 224);
  EXPECT_EQ(two.count_below(128), 2u * 112u * 112u);
}

TEST(Image, PadAndRescale) {
  Image black(224, 224, kBlack);
  EXPECT_EQ(pad_and_rescale(black, 0), black);
  const Image padded = pad_image(black, 50);
  EXPECT_EQ(padded.width, 324);
  EXPECT_EQ(padded.height, 324);
  const Image out = pad_and_rescale(black, 50);
  EXPECT_EQ(out.width, 224);
  EXPECT_EQ(out.height, 224);
  const double expect = 224.0 * 224.0 * (224.0 / 324.0) * (224.0 / 324.0);
  EXPECT_NEAR(static_cast<double>(out.count_below(128)), expect, 0.02 * expect);
  EXPECT_EQ(out.at(0, 0), kWhite);
  EXPECT_EQ(out.at(112, 112), kBlack);
  const Image white(224, 224, kWhite);
  EXPECT_EQ(pad_and_rescale(white, 50), white);
  EXPECT_THROW(pad_image(black, -1), std::invalid_argument);
}

TEST(Png, RoundTripHeaderAndStability) {
  const Image img = render_polyomino(build_polyomino({{3, 4, 5}, {1, 3}}), 40, 130);
  const auto bytes = encode_png(img);
  EXPECT_EQ(decode_png(bytes), img);
  EXPECT_EQ(bytes, encode_png(img));
  ASSERT_GT(bytes.size(), 33u);
  EXPECT_EQ(std::string(bytes.begin() + 12, bytes.begin() + 16), "IHDR");
  const auto be32 = [&](std::size_t at) {
    return (std::uint32_t{bytes[at]} << 24) | (std::uint32_t{bytes[at + 1]} << 16) | (std::uint32_t{bytes[at + 2]} << 8) |
           bytes[at + 3];
  };
  EXPECT_EQ(be32(16), 224u);
  EXPECT_EQ(be32(20), 224u);
  EXPECT_EQ(bytes[24], 8);  // bit depth
  EXPECT_EQ(bytes[25], 0);  // grayscale
}

TEST(Png, DecodesAllRowFilters) {
  Image img(37, 23);
  Rng rng(1);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  EXPECT_EQ(decode_png(png_with_filters(img, {0, 1, 2, 3, 4})), img);
  EXPECT_EQ(decode_png(png_with_filters(img, {4, 3})), img);
}

TEST(Png, RejectsCorruption) {
  auto bytes = encode_png(Image(8, 8));
  auto bad_crc = bytes;
  bad_crc[20] ^= 1;
  EXPECT_THROW(decode_png(bad_crc), Error);
  auto bad_sig = bytes;
  bad_sig[1] = 'X';
  EXPECT_THROW(decode_png(bad_sig), Error);
  bytes.resize(bytes.size() - 12);
  EXPECT_THROW(decode_png(bytes), Error);
}
