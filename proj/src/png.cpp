// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/png.hpp"

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <vector>

#include "vcot/errors.hpp"

namespace vcot::png {
namespace {

void write_to_bytes(png_structp png_ptr, png_bytep data, png_size_t length) {
  auto* out = static_cast<Bytes*>(png_get_io_ptr(png_ptr));
  out->insert(out->end(), data, data + length);
}

void flush_noop(png_structp) {}

struct ReadCursor {
  std::span<const std::uint8_t> data;
  std::size_t offset = 0;
};

void read_from_span(png_structp png_ptr, png_bytep out, png_size_t length) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png_ptr));
  if (cur->offset + length > cur->data.size()) png_error(png_ptr, "truncated");
  std::memcpy(out, cur->data.data() + cur->offset, length);
  cur->offset += length;
}

void silent_warning(png_structp, png_const_charp) {}

[[noreturn]] void silent_error(png_structp png_ptr, png_const_charp) { png_longjmp(png_ptr, 1); }

}  // namespace

Bytes encode_solid(std::uint32_t width, std::uint32_t height, Rgb color,
                   const std::map<std::string, std::string>& text) {
  if (width == 0 || height == 0) throw PreconditionError("png: empty image");
  png_structp png_ptr = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, silent_error, silent_warning);
  if (!png_ptr) throw Error("png: out of memory");
  png_infop info = png_create_info_struct(png_ptr);
  Bytes out;
  std::vector<std::uint8_t> row(static_cast<std::size_t>(width) * 3);
  for (std::size_t x = 0; x < width; ++x) std::memcpy(&row[x * 3], color.data(), 3);

  if (setjmp(png_jmpbuf(png_ptr))) {
    png_destroy_write_struct(&png_ptr, &info);
    throw Error("png: encoding failed");
  }
  png_set_write_fn(png_ptr, &out, write_to_bytes, flush_noop);
  png_set_IHDR(png_ptr, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  // Fixed settings keep the byte stream reproducible.
  png_set_compression_level(png_ptr, 9);
  png_set_filter(png_ptr, PNG_FILTER_TYPE_BASE, PNG_FILTER_NONE);

  std::vector<png_text> chunks;
  std::vector<std::string> keys, values;
  keys.reserve(text.size());
  values.reserve(text.size());
  for (const auto& [k, v] : text) {
    keys.push_back(k);
    values.push_back(v);
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    png_text t{};
    t.compression = PNG_TEXT_COMPRESSION_NONE;
    t.key = keys[i].data();
    t.text = values[i].data();
    t.text_length = values[i].size();
    chunks.push_back(t);
  }
  if (!chunks.empty()) png_set_text(png_ptr, info, chunks.data(), static_cast<int>(chunks.size()));

  png_write_info(png_ptr, info);
  for (std::uint32_t y = 0; y < height; ++y) png_write_row(png_ptr, row.data());
  png_write_end(png_ptr, info);
  png_destroy_write_struct(&png_ptr, &info);
  return out;
}

std::optional<ImageInfo> inspect(std::span<const std::uint8_t> data) {
  if (data.size() < 8 || png_sig_cmp(data.data(), 0, 8) != 0) return std::nullopt;
  png_structp png_ptr = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, silent_error, silent_warning);
  if (!png_ptr) return std::nullopt;
  png_infop info = png_create_info_struct(png_ptr);
  png_infop end_info = png_create_info_struct(png_ptr);
  ReadCursor cursor{data, 0};
  ImageInfo result;
  std::vector<std::uint8_t> row;

  if (setjmp(png_jmpbuf(png_ptr))) {
    png_destroy_read_struct(&png_ptr, &info, &end_info);
    return std::nullopt;
  }
  png_set_read_fn(png_ptr, &cursor, read_from_span);
  png_read_info(png_ptr, info);
  result.width = png_get_image_width(png_ptr, info);
  result.height = png_get_image_height(png_ptr, info);
  png_set_expand(png_ptr);
  png_set_strip_16(png_ptr);
  png_set_strip_alpha(png_ptr);
  png_set_gray_to_rgb(png_ptr);
  const int passes = png_set_interlace_handling(png_ptr);
  png_read_update_info(png_ptr, info);
  row.resize(png_get_rowbytes(png_ptr, info));
  for (int p = 0; p < passes; ++p) {
    for (std::uint32_t y = 0; y < result.height; ++y) {
      png_read_row(png_ptr, row.data(), nullptr);
      if (p == 0 && y == 0) std::memcpy(result.top_left.data(), row.data(), 3);
    }
  }
  png_read_end(png_ptr, end_info);

  for (png_infop i : {info, end_info}) {
    png_textp texts = nullptr;
    int count = 0;
    png_get_text(png_ptr, i, &texts, &count);
    for (int t = 0; t < count; ++t)
      result.text.emplace(texts[t].key, std::string(texts[t].text, texts[t].text_length));
  }
  png_destroy_read_struct(&png_ptr, &info, &end_info);
  return result;
}

}  // namespace vcot::png
