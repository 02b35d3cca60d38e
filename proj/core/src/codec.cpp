#include "skyblur/codec.hpp"

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "skyblur/errors.hpp"

namespace skyblur {

namespace {

constexpr unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

bool looks_like_png(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 8 && std::memcmp(bytes.data(), kPngMagic, 8) == 0;
}

bool looks_like_jpeg(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 2 && bytes[0] == 0xFF && bytes[1] == 0xD8;
}

std::uint8_t quantize(double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

// ---------------------------------------------------------------------------
// PNG
// ---------------------------------------------------------------------------

struct PngMemReader {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t count) {
    auto* reader = static_cast<PngMemReader*>(png_get_io_ptr(png));
    if (reader->pos + count > reader->size) {
        png_error(png, "unexpected end of PNG stream");
    }
    std::memcpy(out, reader->data + reader->pos, count);
    reader->pos += count;
}

void png_mem_write(png_structp png, png_bytep data, png_size_t count) {
    auto* sink = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    sink->insert(sink->end(), data, data + count);
}

void png_mem_flush(png_structp) {}

RgbRaster decode_png(std::span<const std::uint8_t> bytes) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw MalformedImage("failed to initialize PNG reader");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw MalformedImage("failed to initialize PNG reader");
    }

    PngMemReader reader{bytes.data(), bytes.size(), 0};
    std::vector<std::uint8_t> raw;
    std::vector<png_bytep> rows;
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 0;
    int channels = 0;
    std::size_t rowbytes = 0;

    // libpng reports errors via longjmp back to this point; the jump only
    // crosses libpng's own C frames.
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw MalformedImage("malformed PNG stream");
    }

    png_set_read_fn(png, &reader, png_mem_read);
    png_read_info(png, info);

    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    const png_byte color_type = png_get_color_type(png, info);
    const png_byte depth = png_get_bit_depth(png, info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
    }
    png_set_strip_alpha(png);
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    bit_depth = png_get_bit_depth(png, info);
    channels = png_get_channels(png, info);
    rowbytes = png_get_rowbytes(png, info);
    if (channels != 3 || (bit_depth != 8 && bit_depth != 16)) {
        png_error(png, "unexpected channel layout after transforms");
    }

    raw.resize(rowbytes * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        rows[y] = raw.data() + static_cast<std::size_t>(y) * rowbytes;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    RgbRaster img(static_cast<int>(width), static_cast<int>(height));
    for (png_uint_32 y = 0; y < height; ++y) {
        const std::uint8_t* row = raw.data() + static_cast<std::size_t>(y) * rowbytes;
        for (png_uint_32 x = 0; x < width; ++x) {
            Rgb& px = img.at(static_cast<int>(x), static_cast<int>(y));
            if (bit_depth == 8) {
                px.r = row[3 * x + 0];
                px.g = row[3 * x + 1];
                px.b = row[3 * x + 2];
            } else {
                // Network byte order, scaled into the canonical 8-bit range.
                const auto sample = [&](png_uint_32 c) {
                    const std::size_t o = 6 * static_cast<std::size_t>(x) + 2 * c;
                    const unsigned v = (static_cast<unsigned>(row[o]) << 8) | row[o + 1];
                    return static_cast<double>(v) * (255.0 / 65535.0);
                };
                px.r = sample(0);
                px.g = sample(1);
                px.b = sample(2);
            }
        }
    }
    return img;
}

std::vector<std::uint8_t> encode_png_impl(int width, int height, int color_type,
                                          const std::vector<std::uint8_t>& raw,
                                          std::size_t rowbytes) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error("failed to initialize PNG writer");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error("failed to initialize PNG writer");
    }

    std::vector<std::uint8_t> out;
    std::vector<png_bytep> rows(static_cast<std::size_t>(height));

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error("PNG encoding failed");
    }

    png_set_write_fn(png, &out, png_mem_write, png_mem_flush);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 8, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < height; ++y) {
        rows[static_cast<std::size_t>(y)] =
            const_cast<png_bytep>(raw.data() + static_cast<std::size_t>(y) * rowbytes);
    }
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

// ---------------------------------------------------------------------------
// JPEG
// ---------------------------------------------------------------------------

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit_longjmp(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

void jpeg_emit_nothing(j_common_ptr, int) {}

RgbRaster decode_jpeg(std::span<const std::uint8_t> bytes) {
    jpeg_decompress_struct cinfo{};
    JpegErrorMgr jerr{};
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = jpeg_error_exit_longjmp;
    jerr.pub.emit_message = jpeg_emit_nothing;

    std::vector<Rgb> pixels;
    std::vector<JSAMPLE> row;
    int width = 0;
    int height = 0;

    if (setjmp(jerr.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw MalformedImage(std::string("malformed JPEG stream: ") + jerr.message);
    }

    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, const_cast<unsigned char*>(bytes.data()),
                 static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    width = static_cast<int>(cinfo.output_width);
    height = static_cast<int>(cinfo.output_height);
    pixels.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    row.resize(static_cast<std::size_t>(width) * 3);

    while (cinfo.output_scanline < cinfo.output_height) {
        const int y = static_cast<int>(cinfo.output_scanline);
        JSAMPROW rp = row.data();
        jpeg_read_scanlines(&cinfo, &rp, 1);
        for (int x = 0; x < width; ++x) {
            Rgb& px = pixels[static_cast<std::size_t>(y) * width + x];
            px.r = row[3 * static_cast<std::size_t>(x) + 0];
            px.g = row[3 * static_cast<std::size_t>(x) + 1];
            px.b = row[3 * static_cast<std::size_t>(x) + 2];
        }
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return RgbRaster(width, height, std::move(pixels));
}

}  // namespace

RgbRaster decode_image(std::span<const std::uint8_t> bytes) {
    if (looks_like_png(bytes)) return decode_png(bytes);
    if (looks_like_jpeg(bytes)) return decode_jpeg(bytes);
    throw UnsupportedFormat("input is neither a PNG nor a JPEG stream");
}

std::vector<std::uint8_t> encode_png(const GrayRaster& img) {
    const int w = img.width();
    const int h = img.height();
    std::vector<std::uint8_t> raw(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            raw[static_cast<std::size_t>(y) * w + x] = quantize(img.at(x, y));
        }
    }
    return encode_png_impl(w, h, PNG_COLOR_TYPE_GRAY, raw, static_cast<std::size_t>(w));
}

std::vector<std::uint8_t> encode_png(const RgbRaster& img) {
    const int w = img.width();
    const int h = img.height();
    std::vector<std::uint8_t> raw(static_cast<std::size_t>(w) * h * 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const Rgb& px = img.at(x, y);
            const std::size_t o = (static_cast<std::size_t>(y) * w + x) * 3;
            raw[o + 0] = quantize(px.r);
            raw[o + 1] = quantize(px.g);
            raw[o + 2] = quantize(px.b);
        }
    }
    return encode_png_impl(w, h, PNG_COLOR_TYPE_RGB, raw, static_cast<std::size_t>(w) * 3);
}

std::vector<std::uint8_t> encode_jpeg(const RgbRaster& img, int quality) {
    jpeg_compress_struct cinfo{};
    JpegErrorMgr jerr{};
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = jpeg_error_exit_longjmp;

    unsigned char* mem = nullptr;
    unsigned long mem_size = 0;

    if (setjmp(jerr.jump)) {
        jpeg_destroy_compress(&cinfo);
        std::free(mem);
        throw Error(std::string("JPEG encoding failed: ") + jerr.message);
    }

    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &mem, &mem_size);
    cinfo.image_width = static_cast<JDIMENSION>(img.width());
    cinfo.image_height = static_cast<JDIMENSION>(img.height());
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, std::clamp(quality, 1, 100), TRUE);
    jpeg_start_compress(&cinfo, TRUE);

    std::vector<JSAMPLE> row(static_cast<std::size_t>(img.width()) * 3);
    while (cinfo.next_scanline < cinfo.image_height) {
        const int y = static_cast<int>(cinfo.next_scanline);
        for (int x = 0; x < img.width(); ++x) {
            const Rgb& px = img.at(x, y);
            row[3 * static_cast<std::size_t>(x) + 0] = quantize(px.r);
            row[3 * static_cast<std::size_t>(x) + 1] = quantize(px.g);
            row[3 * static_cast<std::size_t>(x) + 2] = quantize(px.b);
        }
        JSAMPROW rp = row.data();
        jpeg_write_scanlines(&cinfo, &rp, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);

    std::vector<std::uint8_t> out(mem, mem + mem_size);
    std::free(mem);
    return out;
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file for reading: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on file: " + path.string());
    return bytes;
}

void write_binary_file(const std::filesystem::path& path,
                       std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failure on file: " + path.string());
}

RgbRaster load_image(const std::filesystem::path& path) {
    return decode_image(read_binary_file(path));
}

}  // namespace skyblur
