#include "mobmap/image.hpp"

#include <fstream>

namespace mobmap {

static_assert(sizeof(Rgb8) == 3, "Rgb8 must be tightly packed for raw raster IO");

ImageRgb load_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    auto next_token = [&]() -> std::string {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw IoError(path + ": truncated PPM header");
    };

    if (next_token() != "P6") throw IoError(path + ": not a binary PPM (P6)");
    const int width = std::stoi(next_token());
    const int height = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (width <= 0 || height <= 0) throw IoError(path + ": bad PPM dimensions");
    if (maxval != 255) throw IoError(path + ": only maxval 255 PPM is supported");
    in.get();  // single whitespace after maxval

    ImageRgb img(width, height);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size() * 3));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size() * 3)) {
        throw IoError(path + ": truncated PPM pixel data");
    }
    return img;
}

void save_ppm(const ImageRgb& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size() * 3));
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace mobmap
