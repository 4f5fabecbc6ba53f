#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rmbmi/image.hpp"

namespace rmbmi {

/// object: an off-center disk of random size (55-85% of the usable radius).
/// full_frame: a centered disk covering the whole usable radius, like a
/// photograph cropped to the rotation-safe circle.
enum class TextureLayout { object, full_frame };

std::string to_string(TextureLayout layout);
TextureLayout parse_texture_layout(const std::string& name);

/// Smooth random texture on a black background: anisotropic Gaussian blobs
/// and a low-frequency ripple on a disk placed per `layout`, with a random
/// radial profile, brightness and illumination gradient. Content stays
/// within about 94% of the inscribed radius and fades out over its last few
/// pixels. Any square size works; features scale with it. The layout only
/// changes the disk, so the same seed gives the same texture in both.
GrayImage synthetic_texture(int size, std::uint64_t seed,
                            TextureLayout layout = TextureLayout::object);

/// Rasterized centered disk: pixels whose center lies within `radius` of the
/// image center get `value`, the rest 0.
GrayImage synthetic_disk(int width, int height, double radius, double value);

/// `count` textures of one size with seeds derived from `seed`.
std::vector<GrayImage> synthetic_corpus(int count, int size, std::uint64_t seed,
                                        TextureLayout layout = TextureLayout::object);

/// Writes corpus images as img_00.pgm, img_01.pgm, ... into `dir`.
void write_corpus(const std::filesystem::path& dir, const std::vector<GrayImage>& images);

}  // namespace rmbmi
