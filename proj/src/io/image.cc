#include "hemoprior/io/image.h"

#include <png.h>
#include <stdio.h>
#include <jpeglib.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "hemoprior/errors.h"

namespace hemoprior {

RgbFrame::RgbFrame(int w, int h) : width(w), height(h) {
  if (w < 0 || h < 0) throw ValidationError("negative frame size");
  data.assign(num_pixels() * 3, 0.0);
}

void RgbFrame::Validate() const {
  if (width <= 0 || height <= 0) throw ValidationError("frame has empty extent");
  if (data.size() != num_pixels() * 3) {
    throw ValidationError("frame data length does not match width*height*3");
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    double v = data[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw ValidationError("frame component " + std::to_string(i) +
                            " outside [0,1]: " + std::to_string(v));
    }
  }
}

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};

RgbFrame FromBytes(int w, int h, const std::uint8_t* rgb) {
  RgbFrame frame(w, h);
  for (std::size_t i = 0; i < frame.data.size(); ++i) frame.data[i] = rgb[i] / 255.0;
  return frame;
}

RgbFrame DecodePng(std::span<const std::uint8_t> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    std::string msg = image.message;
    png_image_free(&image);
    throw DecodeError("PNG header: " + msg);
  }
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw DecodeError("PNG has zero extent");
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw DecodeError("PNG data: " + msg);
  }
  return FromBytes(static_cast<int>(image.width), static_cast<int>(image.height),
                   buffer.data());
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void JpegErrorExit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// Only trivially destructible locals live across setjmp here; the output
// buffer is owned by the caller.
bool DecodeJpegInto(std::span<const std::uint8_t> bytes, std::vector<std::uint8_t>* out,
                    int* width, int* height, JpegErrorManager* err,
                    std::size_t* offset) {
  jpeg_decompress_struct cinfo;
  cinfo.err = jpeg_std_error(&err->base);
  err->base.error_exit = JpegErrorExit;
  if (setjmp(err->jump)) {
    if (cinfo.src != nullptr) *offset = bytes.size() - cinfo.src->bytes_in_buffer;
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  *width = static_cast<int>(cinfo.output_width);
  *height = static_cast<int>(cinfo.output_height);
  const std::size_t stride = static_cast<std::size_t>(*width) * 3;
  out->resize(stride * static_cast<std::size_t>(*height));
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out->data() + stride * cinfo.output_scanline;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

RgbFrame DecodeJpeg(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> buffer;
  int w = 0, h = 0;
  JpegErrorManager err{};
  std::size_t offset = 0;
  if (!DecodeJpegInto(bytes, &buffer, &w, &h, &err, &offset)) {
    throw DecodeError("JPEG decode failed near offset " + std::to_string(offset) +
                      ": " + err.message);
  }
  return FromBytes(w, h, buffer.data());
}

std::uint8_t Quantize(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

std::vector<std::uint8_t> EncodePngRaw(int width, int height, int format, int channels,
                                       const std::vector<std::uint8_t>& pixels) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = static_cast<png_uint_32>(format);
  png_alloc_size_t size = 0;
  const png_int_32 stride = width * channels;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels.data(), stride, nullptr)) {
    throw ValidationError(std::string("PNG encode: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels.data(), stride,
                                 nullptr)) {
    throw ValidationError(std::string("PNG encode: ") + image.message);
  }
  out.resize(size);
  return out;
}

bool EncodeJpegInto(const std::vector<std::uint8_t>& pixels, int width, int height,
                    int quality, unsigned char** out, unsigned long* out_size,
                    JpegErrorManager* err) {
  jpeg_compress_struct cinfo;
  cinfo.err = jpeg_std_error(&err->base);
  err->base.error_exit = JpegErrorExit;
  if (setjmp(err->jump)) {
    jpeg_destroy_compress(&cinfo);
    return false;
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, out, out_size);
  cinfo.image_width = static_cast<JDIMENSION>(width);
  cinfo.image_height = static_cast<JDIMENSION>(height);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  const std::size_t stride = static_cast<std::size_t>(width) * 3;
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<std::uint8_t*>(pixels.data()) + stride * cinfo.next_scanline;
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  return true;
}

}  // namespace

std::vector<std::uint8_t> EncodeJpeg(const RgbFrame& frame, int quality) {
  std::vector<std::uint8_t> pixels(frame.data.size());
  std::transform(frame.data.begin(), frame.data.end(), pixels.begin(), Quantize);
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  JpegErrorManager err{};
  bool ok = EncodeJpegInto(pixels, frame.width, frame.height, quality, &buffer, &size, &err);
  std::vector<std::uint8_t> out;
  if (ok) out.assign(buffer, buffer + size);
  std::free(buffer);
  if (!ok) throw ValidationError(std::string("JPEG encode: ") + err.message);
  return out;
}

RgbFrame DecodeImage(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 8 && std::equal(std::begin(kPngSignature), std::end(kPngSignature),
                                      bytes.begin())) {
    return DecodePng(bytes);
  }
  if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) {
    return DecodeJpeg(bytes);
  }
  throw DecodeError("unrecognized image signature at offset 0 (" +
                    std::to_string(bytes.size()) + " bytes); expected PNG or JPEG");
}

RgbFrame ReadImageFile(const std::filesystem::path& path) {
  auto bytes = ReadFile(path);
  try {
    return DecodeImage(bytes);
  } catch (const DecodeError& e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> EncodePng(const RgbFrame& frame) {
  std::vector<std::uint8_t> pixels(frame.data.size());
  std::transform(frame.data.begin(), frame.data.end(), pixels.begin(), Quantize);
  return EncodePngRaw(frame.width, frame.height, PNG_FORMAT_RGB, 3, pixels);
}

std::vector<std::uint8_t> EncodeGrayPng(int width, int height,
                                        std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ValidationError("gray image size mismatch");
  }
  std::vector<std::uint8_t> pixels(values.size());
  std::transform(values.begin(), values.end(), pixels.begin(), Quantize);
  return EncodePngRaw(width, height, PNG_FORMAT_GRAY, 1, pixels);
}

void WriteFile(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ValidationError("write failed: " + path.string());
}

std::vector<std::uint8_t> ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open: " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

bool IsImagePath(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace hemoprior
