#include <algorithm>
#include <cmath>
#include <string>

#include "aesthetics/imaging.hpp"

namespace aesthetics {

GrayImage to_grayscale(const RgbImage& img) {
    GrayImage out(img.width(), img.height());
    auto dst = out.values();
    auto src = img.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = 0.299 * src[i].r + 0.587 * src[i].g + 0.114 * src[i].b;
    }
    return out;
}

GrayImage channel(const RgbImage& img, int index) {
    if (index < 0 || index > 2) throw InvalidArgument("channel index must be 0, 1 or 2");
    GrayImage out(img.width(), img.height());
    auto dst = out.values();
    auto src = img.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) {
        const Rgb& p = src[i];
        dst[i] = index == 0 ? p.r : (index == 1 ? p.g : p.b);
    }
    return out;
}

GrayImage laplacian_filter(const GrayImage& in, double alpha) {
    if (in.width() < 3 || in.height() < 3) {
        throw InvalidArgument("laplacian_filter: image must be at least 3x3, got " +
                              std::to_string(in.width()) + "x" + std::to_string(in.height()));
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("laplacian_filter: alpha must be in [0,1]");

    // The kernel sums to zero, so it is applied to differences from the center
    // pixel; flat regions then give exactly 0 rather than rounding residue.
    const double corner = alpha / (alpha + 1.0);
    const double side = (1.0 - alpha) / (alpha + 1.0);

    const int w = in.width();
    const int h = in.height();
    GrayImage out(w, h);
    for (int r = 0; r < h; ++r) {
        const int up = std::max(r - 1, 0);
        const int down = std::min(r + 1, h - 1);
        for (int c = 0; c < w; ++c) {
            const int left = std::max(c - 1, 0);
            const int right = std::min(c + 1, w - 1);
            const double x = in.at(r, c);
            const double corners = (in.at(up, left) - x) + (in.at(up, right) - x) + (in.at(down, left) - x) +
                                   (in.at(down, right) - x);
            const double sides = (in.at(up, c) - x) + (in.at(down, c) - x) + (in.at(r, left) - x) + (in.at(r, right) - x);
            out.at(r, c) = corner * corners + side * sides;
        }
    }
    return out;
}

GrayImage resize_bilinear(const GrayImage& in, int width, int height) {
    if (width < 1 || height < 1) throw InvalidArgument("resize_bilinear: target must be at least 1x1");
    if (width == in.width() && height == in.height()) return in;

    const double sx = static_cast<double>(in.width()) / width;
    const double sy = static_cast<double>(in.height()) / height;
    GrayImage out(width, height);
    for (int r = 0; r < height; ++r) {
        const double y = std::clamp((r + 0.5) * sy - 0.5, 0.0, static_cast<double>(in.height() - 1));
        const int y0 = static_cast<int>(std::floor(y));
        const int y1 = std::min(y0 + 1, in.height() - 1);
        const double fy = y - y0;
        for (int c = 0; c < width; ++c) {
            const double x = std::clamp((c + 0.5) * sx - 0.5, 0.0, static_cast<double>(in.width() - 1));
            const int x0 = static_cast<int>(std::floor(x));
            const int x1 = std::min(x0 + 1, in.width() - 1);
            const double fx = x - x0;
            const double top = in.at(y0, x0) * (1.0 - fx) + in.at(y0, x1) * fx;
            const double bottom = in.at(y1, x0) * (1.0 - fx) + in.at(y1, x1) * fx;
            out.at(r, c) = top * (1.0 - fy) + bottom * fy;
        }
    }
    return out;
}

namespace {

struct Tap {
    int index;
    double weight;
};

/// Coverage weights of source cells for each destination cell along one axis.
std::vector<std::vector<Tap>> area_taps(int src, int dst) {
    const double scale = static_cast<double>(src) / dst;
    std::vector<std::vector<Tap>> taps(dst);
    for (int d = 0; d < dst; ++d) {
        const double lo = d * scale;
        const double hi = (d + 1) * scale;
        for (int s = static_cast<int>(std::floor(lo)); s < src && s < hi; ++s) {
            const double overlap = std::min(hi, s + 1.0) - std::max(lo, static_cast<double>(s));
            if (overlap > 0.0) taps[d].push_back({s, overlap / scale});
        }
    }
    return taps;
}

}  // namespace

GrayImage resize_area(const GrayImage& in, int width, int height) {
    if (width < 1 || height < 1) throw InvalidArgument("resize_area: target must be at least 1x1");
    if (width == in.width() && height == in.height()) return in;

    const auto col_taps = area_taps(in.width(), width);
    const auto row_taps = area_taps(in.height(), height);
    GrayImage rows_done(width, in.height());
    for (int r = 0; r < in.height(); ++r) {
        for (int c = 0; c < width; ++c) {
            double acc = 0.0;
            for (const Tap& t : col_taps[c]) acc += t.weight * in.at(r, t.index);
            rows_done.at(r, c) = acc;
        }
    }
    GrayImage out(width, height);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            double acc = 0.0;
            for (const Tap& t : row_taps[r]) acc += t.weight * rows_done.at(t.index, c);
            out.at(r, c) = acc;
        }
    }
    return out;
}

HsvPixel rgb_to_hsv(Rgb p) {
    const double r = p.r / 255.0;
    const double g = p.g / 255.0;
    const double b = p.b / 255.0;
    const double hi = std::max({r, g, b});
    const double lo = std::min({r, g, b});
    const double delta = hi - lo;

    HsvPixel out;
    out.v = hi;
    out.s = hi > 0.0 ? delta / hi : 0.0;
    if (delta > 0.0) {
        double h;
        if (p.r >= p.g && p.r >= p.b) {
            h = 60.0 * ((g - b) / delta);
        } else if (p.g >= p.b) {
            h = 60.0 * ((b - r) / delta + 2.0);
        } else {
            h = 60.0 * ((r - g) / delta + 4.0);
        }
        if (h < 0.0) h += 360.0;
        if (h >= 360.0) h -= 360.0;
        out.h = h;
    }
    return out;
}

namespace {

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * radius + 1);
    double total = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
        kernel[i + radius] = v;
        total += v;
    }
    for (double& v : kernel) v /= total;
    return kernel;
}

}  // namespace

RgbImage gaussian_blur(const RgbImage& img, double sigma) {
    if (sigma <= 0.0) return img;
    const auto kernel = gaussian_kernel(sigma);
    const int radius = static_cast<int>(kernel.size() / 2);
    const int w = img.width();
    const int h = img.height();

    // Horizontal then vertical pass per channel, kept in doubles until the end.
    std::vector<double> tmp(static_cast<std::size_t>(w) * h * 3);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc[3] = {0.0, 0.0, 0.0};
            for (int k = -radius; k <= radius; ++k) {
                const Rgb& p = img.at(r, std::clamp(c + k, 0, w - 1));
                const double wk = kernel[k + radius];
                acc[0] += wk * p.r;
                acc[1] += wk * p.g;
                acc[2] += wk * p.b;
            }
            const std::size_t base = (static_cast<std::size_t>(r) * w + c) * 3;
            tmp[base] = acc[0];
            tmp[base + 1] = acc[1];
            tmp[base + 2] = acc[2];
        }
    }

    auto to_byte = [](double v) {
        return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    };
    RgbImage out(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            double acc[3] = {0.0, 0.0, 0.0};
            for (int k = -radius; k <= radius; ++k) {
                const std::size_t base = (static_cast<std::size_t>(std::clamp(r + k, 0, h - 1)) * w + c) * 3;
                const double wk = kernel[k + radius];
                acc[0] += wk * tmp[base];
                acc[1] += wk * tmp[base + 1];
                acc[2] += wk * tmp[base + 2];
            }
            out.at(r, c) = {to_byte(acc[0]), to_byte(acc[1]), to_byte(acc[2])};
        }
    }
    return out;
}

RgbImage crop(const RgbImage& img, const Rect& region) {
    if (region.row_min < 0 || region.col_min < 0 || region.row_max >= img.height() ||
        region.col_max >= img.width() || region.rows() < 1 || region.cols() < 1) {
        throw InvalidArgument("crop: region outside image bounds");
    }
    RgbImage out(region.cols(), region.rows());
    for (int r = 0; r < region.rows(); ++r) {
        for (int c = 0; c < region.cols(); ++c) {
            out.at(r, c) = img.at(region.row_min + r, region.col_min + c);
        }
    }
    return out;
}

}  // namespace aesthetics
