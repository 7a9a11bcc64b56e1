#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "aesthetics/imaging.hpp"

namespace aesthetics {

namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw InvalidArgument("image dimensions must be at least 1x1, got " + std::to_string(width) +
                              "x" + std::to_string(height));
    }
}

void check_dims(int width, int height, std::size_t count) {
    check_dims(width, height);
    if (count != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw InvalidArgument("pixel count does not match " + std::to_string(width) + "x" +
                              std::to_string(height));
    }
}

/// Cursor over the raw file bytes for the text part of a PNM header.
class PnmReader {
public:
    PnmReader(const std::string& bytes, const std::string& path) : bytes_(bytes), path_(path) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw FormatError(path_ + ": " + what);
    }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long read_uint() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            fail("truncated or malformed header");
        }
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) fail("header value out of range");
            ++pos_;
        }
        return value;
    }

    /// Exactly one whitespace byte separates the header from binary data.
    void skip_single_space() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
            fail("missing separator before pixel data");
        }
        ++pos_;
    }

    std::size_t pos() const { return pos_; }
    void advance(std::size_t n) { pos_ += n; }

private:
    const std::string& bytes_;
    const std::string& path_;
    std::size_t pos_ = 0;
};

std::uint8_t rescale(long value, long maxval) {
    if (maxval == 255) return static_cast<std::uint8_t>(value);
    return static_cast<std::uint8_t>((value * 255 + maxval / 2) / maxval);
}

}  // namespace

RgbImage::RgbImage(int width, int height, Rgb fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

RgbImage::RgbImage(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width, height, pixels_.size());
}

GrayImage::GrayImage(int width, int height, double fill) : width_(width), height_(height) {
    check_dims(width, height);
    values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    check_dims(width, height, values_.size());
}

RgbImage load_image(const std::filesystem::path& path) {
    const std::string name = path.string();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(name + ": cannot open file");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError(name + ": read failed");

    PnmReader reader(bytes, name);
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '6' && bytes[1] != '3')) {
        reader.fail("unsupported or corrupt image format (expected P6 or P3 pixmap)");
    }
    const bool binary = bytes[1] == '6';
    reader.advance(2);
    const long width = reader.read_uint();
    const long height = reader.read_uint();
    const long maxval = reader.read_uint();
    if (width < 1 || height < 1) reader.fail("zero image dimension");
    if (width * height > 400'000'000L) reader.fail("image too large");
    if (maxval < 1 || maxval > 255) reader.fail("only 8-bit pixmaps are supported");

    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<Rgb> pixels(count);
    if (binary) {
        reader.skip_single_space();
        if (bytes.size() - reader.pos() < count * 3) reader.fail("truncated pixel data");
        const auto* data = reinterpret_cast<const unsigned char*>(bytes.data() + reader.pos());
        for (std::size_t i = 0; i < count; ++i) {
            pixels[i] = {rescale(data[3 * i], maxval), rescale(data[3 * i + 1], maxval),
                         rescale(data[3 * i + 2], maxval)};
        }
    } else {
        for (auto& p : pixels) {
            long rgb[3];
            for (long& c : rgb) {
                c = reader.read_uint();
                if (c > maxval) reader.fail("sample exceeds maxval");
            }
            p = {rescale(rgb[0], maxval), rescale(rgb[1], maxval), rescale(rgb[2], maxval)};
        }
    }
    return RgbImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

void save_ppm(const std::filesystem::path& path, const RgbImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
    for (const Rgb& p : img.pixels()) {
        const char bytes[3] = {static_cast<char>(p.r), static_cast<char>(p.g), static_cast<char>(p.b)};
        out.write(bytes, 3);
    }
    if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace aesthetics
