#ifndef HEMOPRIOR_IO_IMAGE_H_
#define HEMOPRIOR_IO_IMAGE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace hemoprior {

// Decoded RGB frame, row-major interleaved (R,G,B), components in [0,1].
struct RgbFrame {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  RgbFrame() = default;
  RgbFrame(int w, int h);

  std::size_t num_pixels() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  double& at(int x, int y, int c) {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  double at(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }

  // Throws ValidationError when the size or value-range invariants fail.
  void Validate() const;
};

// Decodes an 8-bit PNG or JPEG; each 8-bit value v maps to v/255.
// Throws DecodeError with the failing offset or codec message.
RgbFrame DecodeImage(std::span<const std::uint8_t> bytes);
RgbFrame ReadImageFile(const std::filesystem::path& path);

// Quantizes to 8 bits (round-to-nearest) and encodes as RGB PNG.
std::vector<std::uint8_t> EncodePng(const RgbFrame& frame);
std::vector<std::uint8_t> EncodeJpeg(const RgbFrame& frame, int quality = 95);
// Single-channel 8-bit PNG; values are clamped to [0,1] first.
std::vector<std::uint8_t> EncodeGrayPng(int width, int height,
                                        std::span<const double> values);

void WriteFile(const std::filesystem::path& path,
               std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> ReadFile(const std::filesystem::path& path);

bool IsImagePath(const std::filesystem::path& path);

}  // namespace hemoprior

#endif  // HEMOPRIOR_IO_IMAGE_H_
