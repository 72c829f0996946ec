#include <freqspec/raster.hpp>

#include <freqspec/error.hpp>

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

#include <jpeglib.h>

namespace freqspec {

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

bool is_png(std::span<const std::uint8_t> b) {
    return b.size() >= 8 && std::memcmp(b.data(), kPngSignature, 8) == 0;
}

bool is_jpeg(std::span<const std::uint8_t> b) {
    return b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF;
}

std::uint8_t quantize(double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

// ---- PNG ----

struct PngReadState {
    std::span<const std::uint8_t> bytes;
    std::size_t offset = 0;
    std::string error;
};

void png_read_callback(png_structp png, png_bytep out, png_size_t count) {
    auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (st->offset + count > st->bytes.size()) png_error(png, "truncated PNG stream");
    std::memcpy(out, st->bytes.data() + st->offset, count);
    st->offset += count;
}

void png_error_callback(png_structp png, png_const_charp msg) {
    auto* st = static_cast<PngReadState*>(png_get_error_ptr(png));
    if (st) st->error = msg;
    png_longjmp(png, 1);
}

void png_warning_callback(png_structp, png_const_charp) {}

struct PngDecoded {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> pixels;
};

// Decodes into `out`; returns false on a libpng error (message in state.error).
bool png_decode_into(PngReadState* state, PngDecoded* out) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, state, png_error_callback, png_warning_callback);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    png_set_read_fn(png, state, png_read_callback);
    png_read_info(png, info);

    const png_byte color = png_get_color_type(png, info);
    const png_byte depth = png_get_bit_depth(png, info);
    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    out->width = static_cast<int>(png_get_image_width(png, info));
    out->height = static_cast<int>(png_get_image_height(png, info));
    out->channels = png_get_channels(png, info);
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    out->pixels.resize(rowbytes * out->height);
    std::vector<png_bytep> rows(out->height);
    for (int y = 0; y < out->height; ++y) rows[y] = out->pixels.data() + rowbytes * y;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

Raster decode_png(std::span<const std::uint8_t> bytes) {
    auto state = std::make_unique<PngReadState>();
    state->bytes = bytes;
    auto decoded = std::make_unique<PngDecoded>();
    if (!png_decode_into(state.get(), decoded.get()))
        throw Error(ErrorCode::CorruptStream, "PNG: " + state->error);
    if (decoded->channels != 1 && decoded->channels != 3)
        throw Error(ErrorCode::UnsupportedFormat, "PNG: unexpected channel count");
    std::vector<double> data(decoded->pixels.begin(), decoded->pixels.end());
    return Raster(decoded->width, decoded->height, decoded->channels, std::move(data));
}

void png_write_callback(png_structp png, png_bytep data, png_size_t length) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + length);
}

void png_flush_callback(png_structp) {}

bool png_encode_into(const std::vector<std::uint8_t>* pixels, int width, int height, int channels,
                     std::vector<std::uint8_t>* out, PngReadState* errstate) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, errstate, png_error_callback, png_warning_callback);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        return false;
    }
    png_set_write_fn(png, out, png_write_callback, png_flush_callback);
    png_set_IHDR(png, info, width, height, 8, channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const std::size_t rowbytes = static_cast<std::size_t>(width) * channels;
    for (int y = 0; y < height; ++y)
        png_write_row(png, const_cast<png_bytep>(pixels->data() + rowbytes * y));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

// ---- JPEG ----

struct JpegErrorManager {
    jpeg_error_mgr base;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

void jpeg_silent(j_common_ptr, int) {}

struct JpegDecoded {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> pixels;
};

bool jpeg_decode_into(std::span<const std::uint8_t> bytes, JpegDecoded* out, JpegErrorManager* err,
                      bool header_only) {
    jpeg_decompress_struct cinfo;
    cinfo.err = jpeg_std_error(&err->base);
    err->base.error_exit = jpeg_error_exit;
    err->base.emit_message = jpeg_silent;
    if (setjmp(err->jump)) {
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, const_cast<unsigned char*>(bytes.data()), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    out->width = static_cast<int>(cinfo.image_width);
    out->height = static_cast<int>(cinfo.image_height);
    if (header_only) {
        jpeg_destroy_decompress(&cinfo);
        return true;
    }
    if (cinfo.progressive_mode) {
        std::snprintf(err->message, sizeof(err->message), "progressive JPEG is not supported");
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
    cinfo.dct_method = JDCT_ISLOW;
    jpeg_start_decompress(&cinfo);
    out->channels = cinfo.output_components;
    const std::size_t rowbytes = static_cast<std::size_t>(cinfo.output_width) * cinfo.output_components;
    out->pixels.resize(rowbytes * cinfo.output_height);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = out->pixels.data() + rowbytes * cinfo.output_scanline;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return true;
}

Raster decode_jpeg(std::span<const std::uint8_t> bytes) {
    auto err = std::make_unique<JpegErrorManager>();
    err->message[0] = '\0';
    auto decoded = std::make_unique<JpegDecoded>();
    if (!jpeg_decode_into(bytes, decoded.get(), err.get(), false)) {
        const std::string msg = err->message;
        if (msg.find("progressive") != std::string::npos) throw Error(ErrorCode::UnsupportedFormat, "JPEG: " + msg);
        throw Error(ErrorCode::CorruptStream, "JPEG: " + msg);
    }
    std::vector<double> data(decoded->pixels.begin(), decoded->pixels.end());
    return Raster(decoded->width, decoded->height, decoded->channels, std::move(data));
}

bool jpeg_encode_into(const std::vector<std::uint8_t>* pixels, int width, int height, int channels, int quality,
                      std::vector<std::uint8_t>* out, JpegErrorManager* err) {
    jpeg_compress_struct cinfo;
    cinfo.err = jpeg_std_error(&err->base);
    err->base.error_exit = jpeg_error_exit;
    err->base.emit_message = jpeg_silent;
    unsigned char* buffer = nullptr;
    unsigned long size = 0;
    if (setjmp(err->jump)) {
        jpeg_destroy_compress(&cinfo);
        std::free(buffer);
        return false;
    }
    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &buffer, &size);
    cinfo.image_width = static_cast<JDIMENSION>(width);
    cinfo.image_height = static_cast<JDIMENSION>(height);
    cinfo.input_components = channels;
    cinfo.in_color_space = channels == 3 ? JCS_RGB : JCS_GRAYSCALE;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    cinfo.dct_method = JDCT_ISLOW;
    cinfo.optimize_coding = FALSE;
    for (int i = 0; i < cinfo.num_components; ++i) {
        cinfo.comp_info[i].h_samp_factor = 1;
        cinfo.comp_info[i].v_samp_factor = 1;
    }
    jpeg_start_compress(&cinfo, TRUE);
    const std::size_t rowbytes = static_cast<std::size_t>(width) * channels;
    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = const_cast<JSAMPROW>(pixels->data() + rowbytes * cinfo.next_scanline);
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    out->assign(buffer, buffer + size);
    jpeg_destroy_compress(&cinfo);
    std::free(buffer);
    return true;
}

std::vector<std::uint8_t> quantize_all(const Raster& img) {
    std::vector<std::uint8_t> px(img.size());
    const auto d = img.data();
    std::transform(d.begin(), d.end(), px.begin(), quantize);
    return px;
}

}  // namespace

Raster decode_image(std::span<const std::uint8_t> bytes) {
    if (is_png(bytes)) return decode_png(bytes);
    if (is_jpeg(bytes)) return decode_jpeg(bytes);
    throw Error(ErrorCode::UnsupportedFormat, "unrecognized image container");
}

ImageDims probe_dimensions(std::span<const std::uint8_t> bytes) {
    if (is_png(bytes)) {
        // IHDR is always the first chunk: 8 signature + 4 length + 4 type, then width/height big-endian.
        if (bytes.size() < 24 || std::memcmp(bytes.data() + 12, "IHDR", 4) != 0)
            throw Error(ErrorCode::CorruptStream, "PNG: missing IHDR");
        auto be32 = [&](std::size_t o) {
            return (static_cast<std::uint32_t>(bytes[o]) << 24) | (static_cast<std::uint32_t>(bytes[o + 1]) << 16) |
                   (static_cast<std::uint32_t>(bytes[o + 2]) << 8) | static_cast<std::uint32_t>(bytes[o + 3]);
        };
        return {static_cast<int>(be32(16)), static_cast<int>(be32(20))};
    }
    if (is_jpeg(bytes)) {
        auto err = std::make_unique<JpegErrorManager>();
        err->message[0] = '\0';
        auto decoded = std::make_unique<JpegDecoded>();
        if (!jpeg_decode_into(bytes, decoded.get(), err.get(), true))
            throw Error(ErrorCode::CorruptStream, std::string("JPEG: ") + err->message);
        return {decoded->width, decoded->height};
    }
    throw Error(ErrorCode::UnsupportedFormat, "unrecognized image container");
}

std::vector<std::uint8_t> encode_png(const Raster& img) {
    if (img.empty()) throw Error(ErrorCode::ZeroDimension, "cannot encode an empty raster");
    const auto px = quantize_all(img);
    std::vector<std::uint8_t> out;
    auto state = std::make_unique<PngReadState>();
    if (!png_encode_into(&px, img.width(), img.height(), img.channels(), &out, state.get()))
        throw Error(ErrorCode::IoFailure, "PNG encode: " + state->error);
    return out;
}

std::vector<std::uint8_t> encode_pgm(const Raster& img) {
    if (img.channels() != 1) throw Error(ErrorCode::InvalidArgument, "PGM export needs a single-channel raster");
    const std::string header = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    const auto px = quantize_all(img);
    out.insert(out.end(), px.begin(), px.end());
    return out;
}

std::vector<std::uint8_t> encode_jpeg(const Raster& img, int quality) {
    if (quality < 1 || quality > 100) throw Error(ErrorCode::InvalidQuality, "JPEG quality must be in 1..100");
    if (img.empty()) throw Error(ErrorCode::ZeroDimension, "cannot encode an empty raster");
    const auto px = quantize_all(img);
    std::vector<std::uint8_t> out;
    auto err = std::make_unique<JpegErrorManager>();
    err->message[0] = '\0';
    if (!jpeg_encode_into(&px, img.width(), img.height(), img.channels(), quality, &out, err.get()))
        throw Error(ErrorCode::IoFailure, std::string("JPEG encode: ") + err->message);
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::IoFailure, "read failed: " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path.string());
}

Raster load_image(const std::filesystem::path& path) {
    return decode_image(read_file(path));
}

void save_image(const Raster& img, const std::filesystem::path& path) {
    if (path.extension() == ".pgm") {
        write_file(path, encode_pgm(img));
    } else {
        write_file(path, encode_png(img));
    }
}

}  // namespace freqspec
