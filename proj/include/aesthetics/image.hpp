#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aesthetics/errors.hpp"

namespace aesthetics {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Inclusive pixel rectangle.
struct Rect {
    int row_min = 0;
    int row_max = 0;
    int col_min = 0;
    int col_max = 0;

    int rows() const { return row_max - row_min + 1; }
    int cols() const { return col_max - col_min + 1; }
    long long area() const { return static_cast<long long>(rows()) * cols(); }
    bool contains(int row, int col) const {
        return row >= row_min && row <= row_max && col >= col_min && col <= col_max;
    }

    friend bool operator==(const Rect&, const Rect&) = default;
};

/// Row-major 8-bit RGB raster.
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height, Rgb fill = {});
    RgbImage(int width, int height, std::vector<Rgb> pixels);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }
    bool empty() const { return pixels_.empty(); }

    Rgb& at(int row, int col) { return pixels_[index(row, col)]; }
    const Rgb& at(int row, int col) const { return pixels_[index(row, col)]; }

    std::span<Rgb> pixels() { return pixels_; }
    std::span<const Rgb> pixels() const { return pixels_; }

    Rect bounds() const { return {0, height_ - 1, 0, width_ - 1}; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<Rgb> pixels_;
};

/// Row-major real-valued single channel image.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, double fill = 0.0);
    GrayImage(int width, int height, std::vector<double> values);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return values_.size(); }

    double& at(int row, int col) { return values_[index(row, col)]; }
    double at(int row, int col) const { return values_[index(row, col)]; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

}  // namespace aesthetics
