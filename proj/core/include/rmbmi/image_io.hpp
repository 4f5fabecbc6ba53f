#pragma once

#include <filesystem>
#include <iosfwd>

#include "rmbmi/image.hpp"

namespace rmbmi {

/// Loads a binary PGM (P5, maxval <= 255) or an 8-bit gray / 24-bit RGB PNG.
/// RGB is converted with luma = 0.299 R + 0.587 G + 0.114 B.
/// Throws IoError when the file cannot be read and FormatError for
/// malformed or unsupported content.
GrayImage load_image(const std::filesystem::path& path);

GrayImage read_pgm(std::istream& in);

/// Writes binary PGM; intensities are rounded to nearest and clamped to [0, 255].
void write_pgm(std::ostream& out, const GrayImage& img);
void save_pgm(const std::filesystem::path& path, const GrayImage& img);

}  // namespace rmbmi
