#pragma once

#include <string>
#include <vector>

#include "mobmap/types.hpp"

namespace mobmap {

/// 8-bit RGB raster, row-major from the top-left corner.
struct ImageRgb {
    int width = 0;
    int height = 0;
    std::vector<Rgb8> pixels;

    ImageRgb() = default;
    ImageRgb(int w, int h, Rgb8 fill = {0, 0, 0})
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    Rgb8& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    const Rgb8& at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    bool contains(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
};

ImageRgb load_ppm(const std::string& path);
void save_ppm(const ImageRgb& image, const std::string& path);

}  // namespace mobmap
