#include <png.h>

#include <cctype>
#include <csetjmp>
#include <fstream>
#include <iterator>
#include <optional>

#include "tumorseg/raster.hpp"

namespace tumorseg {

namespace {

// Header tokenizer shared by P2 and P5. Comments run from '#' to end of line
// and may appear anywhere whitespace is allowed in the header.
class PnmScanner {
 public:
  explicit PnmScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Returns nullopt at end of input; throws on a non-numeric token.
  std::optional<long> next_uint(ErrorCode on_garbage) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) return std::nullopt;
    if (!std::isdigit(bytes_[pos_])) throw Error(on_garbage, "PGM: expected an unsigned integer");
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1'000'000'000L) throw Error(on_garbage, "PGM: integer out of range");
      ++pos_;
    }
    return v;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
  std::uint8_t at(std::size_t i) const { return bytes_[i]; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open for writing " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed " + path.string());
}

bool is_png(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

struct PngReadState {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t n) {
  auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (st->pos + n > st->bytes.size()) png_error(png, "truncated PNG stream");
  std::copy_n(st->bytes.begin() + static_cast<std::ptrdiff_t>(st->pos), n, out);
  st->pos += n;
}

// Decodes an 8-bit gray or RGB PNG (palette and alpha are normalized away).
RgbImage decode_png(std::span<const std::uint8_t> bytes) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw Error(ErrorCode::kIo, "PNG: cannot allocate decoder");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error(ErrorCode::kIo, "PNG: cannot allocate decoder");
  }

  PngReadState state{bytes, 0};
  // Declared before setjmp so a longjmp out of libpng never skips a destructor.
  std::vector<std::uint8_t> rows;
  std::vector<png_bytep> row_ptrs;
  png_uint_32 w = 0;
  png_uint_32 h = 0;
  int bit_depth = 0;
  int color_type = 0;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::kTruncatedPayload, "PNG: corrupt or truncated stream");
  }
  png_set_read_fn(png, &state, png_read_from_memory);
  png_read_info(png, info);
  png_get_IHDR(png, info, &w, &h, &bit_depth, &color_type, nullptr, nullptr, nullptr);
  if (bit_depth == 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::kUnsupportedMaxval, "PNG: 16-bit samples are not supported");
  }
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) {
    png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
  }
  png_read_update_info(png, info);

  const int channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  rows.resize(stride * h);
  row_ptrs.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) row_ptrs[y] = rows.data() + y * stride;
  png_read_image(png, row_ptrs.data());
  png_destroy_read_struct(&png, &info, nullptr);

  std::vector<Rgb> px(static_cast<std::size_t>(w) * h);
  for (png_uint_32 y = 0; y < h; ++y) {
    for (png_uint_32 x = 0; x < w; ++x) {
      const std::uint8_t* s = row_ptrs[y] + static_cast<std::size_t>(x) * channels;
      px[static_cast<std::size_t>(y) * w + x] = channels >= 3 ? Rgb{s[0], s[1], s[2]} : Rgb{s[0], s[0], s[0]};
    }
  }
  return RgbImage(static_cast<int>(w), static_cast<int>(h), std::move(px));
}

RgbImage gray_as_rgb(const GrayImage& g) {
  std::vector<Rgb> px(g.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = Rgb{g[i], g[i], g[i]};
  return RgbImage(g.width(), g.height(), std::move(px));
}

}  // namespace

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw Error(ErrorCode::kMalformedHeader, "PGM: missing magic number");
  const char kind = static_cast<char>(bytes[1]);
  if (kind != '2' && kind != '5') {
    throw Error(ErrorCode::kUnsupportedFormat,
                std::string("PNM variant P") + kind + " is not an 8-bit grayscale map");
  }
  PnmScanner scan(bytes);
  scan.advance(2);
  if (scan.remaining() == 0 || !(std::isspace(scan.at(scan.pos())) || scan.at(scan.pos()) == '#'))
    throw Error(ErrorCode::kMalformedHeader, "PGM: magic number must be followed by whitespace");

  const auto w = scan.next_uint(ErrorCode::kMalformedHeader);
  const auto h = scan.next_uint(ErrorCode::kMalformedHeader);
  const auto maxval = scan.next_uint(ErrorCode::kMalformedHeader);
  if (!w || !h || !maxval) throw Error(ErrorCode::kMalformedHeader, "PGM: incomplete header");
  if (*w < 1 || *h < 1) throw Error(ErrorCode::kMalformedHeader, "PGM: zero dimension");
  if (*maxval < 1) throw Error(ErrorCode::kMalformedHeader, "PGM: maxval must be positive");
  if (*maxval > 255) throw Error(ErrorCode::kUnsupportedMaxval, "PGM: maxval above 255 is not supported");

  const std::size_t n = static_cast<std::size_t>(*w) * static_cast<std::size_t>(*h);
  std::vector<std::uint8_t> px(n);
  if (kind == '5') {
    // Exactly one whitespace byte separates maxval from the raster.
    if (scan.remaining() == 0) throw Error(ErrorCode::kTruncatedPayload, "PGM: no raster data");
    if (!std::isspace(scan.at(scan.pos()))) throw Error(ErrorCode::kMalformedHeader, "PGM: bad header terminator");
    scan.advance(1);
    if (scan.remaining() < n) throw Error(ErrorCode::kTruncatedPayload, "PGM: raster shorter than width*height");
    for (std::size_t i = 0; i < n; ++i) {
      px[i] = scan.at(scan.pos() + i);
      if (px[i] > *maxval) throw Error(ErrorCode::kMalformedPayload, "PGM: sample exceeds maxval");
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = scan.next_uint(ErrorCode::kMalformedPayload);
      if (!v) throw Error(ErrorCode::kTruncatedPayload, "PGM: fewer samples than width*height");
      if (*v > *maxval) throw Error(ErrorCode::kMalformedPayload, "PGM: sample exceeds maxval");
      px[i] = static_cast<std::uint8_t>(*v);
    }
  }
  return GrayImage(static_cast<int>(*w), static_cast<int>(*h), std::move(px));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.values().begin(), img.values().end());
  return out;
}

GrayImage load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (is_png(bytes)) {
    return rgb_to_gray(decode_png(bytes));
  }
  return decode_pgm(bytes);
}

RgbImage load_rgb(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (is_png(bytes)) return decode_png(bytes);
  return gray_as_rgb(decode_pgm(bytes));
}

void save_image(const GrayImage& img, const std::filesystem::path& path) {
  write_file(path, encode_pgm(img));
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
  std::vector<std::uint8_t> px(mask.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = mask[i] ? 255 : 0;
  save_image(GrayImage(mask.width(), mask.height(), std::move(px)), path);
}

BinaryMask load_mask(const std::filesystem::path& path) {
  const GrayImage g = load_image(path);
  std::vector<std::uint8_t> bits(g.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = g[i] >= 128 ? 1 : 0;
  return BinaryMask(g.width(), g.height(), std::move(bits));
}

}  // namespace tumorseg
