#include "rmbmi/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "rmbmi/errors.hpp"

namespace rmbmi {

namespace {

// Next whitespace-delimited PNM header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;
}

int header_int(std::istream& in, const char* what) {
  const std::string token = header_token(in);
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw FormatError(std::string("PGM: bad ") + what + " '" + token + "'");
  }
}

struct PngImageDeleter {
  void operator()(png_image* image) const {
    png_image_free(image);
    delete image;
  }
};

GrayImage load_png(const std::filesystem::path& path) {
  std::unique_ptr<png_image, PngImageDeleter> image(new png_image{});
  image->version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(image.get(), path.c_str())) {
    throw FormatError("PNG " + path.string() + ": " + image->message);
  }
  const auto format = image->format;
  if (format & PNG_FORMAT_FLAG_LINEAR) {
    throw FormatError("PNG " + path.string() + ": unsupported bit depth (16-bit)");
  }
  if (format & PNG_FORMAT_FLAG_ALPHA) {
    throw FormatError("PNG " + path.string() + ": alpha channel is not supported");
  }
  const int width = static_cast<int>(image->width);
  const int height = static_cast<int>(image->height);
  if (width == 0 || height == 0) throw FormatError("PNG " + path.string() + ": zero-sized image");

  const bool color = (format & PNG_FORMAT_FLAG_COLOR) != 0;
  image->format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = color ? 3 : 1;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(*image));
  if (!png_image_finish_read(image.get(), nullptr, buffer.data(), 0, nullptr)) {
    throw FormatError("PNG " + path.string() + ": " + image->message);
  }

  std::vector<double> pixels(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const png_byte* p = buffer.data() + i * channels;
    pixels[i] = color ? 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2] : p[0];
  }
  return GrayImage(width, height, std::move(pixels));
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  if (header_token(in) != "P5") throw FormatError("PGM: expected binary 'P5' magic");
  const int width = header_int(in, "width");
  const int height = header_int(in, "height");
  const int maxval = header_int(in, "maxval");
  if (width <= 0 || height <= 0) throw FormatError("PGM: zero-sized image");
  if (maxval <= 0 || maxval > 255) {
    throw FormatError("PGM: unsupported bit depth (maxval " + std::to_string(maxval) + ")");
  }
  // header_token consumed exactly one whitespace byte after maxval
  std::vector<unsigned char> raw(static_cast<std::size_t>(width) * height);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
    throw FormatError("PGM: truncated pixel data");
  }
  std::vector<double> pixels(raw.begin(), raw.end());
  return GrayImage(width, height, std::move(pixels));
}

GrayImage load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<unsigned char, 8> magic{};
  in.read(reinterpret_cast<char*>(magic.data()), magic.size());
  const auto got = in.gcount();
  if (got >= 2 && magic[0] == 'P' && magic[1] == '5') {
    in.clear();
    in.seekg(0);
    return read_pgm(in);
  }
  constexpr std::array<unsigned char, 8> kPngMagic{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (got == 8 && magic == kPngMagic) {
    in.close();
    return load_png(path);
  }
  throw FormatError(path.string() + ": not a binary PGM (P5) or PNG file");
}

void write_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<unsigned char> raw(img.size());
  std::transform(img.pixels().begin(), img.pixels().end(), raw.begin(), [](double v) {
    return static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L));
  });
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_pgm(out, img);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace rmbmi
