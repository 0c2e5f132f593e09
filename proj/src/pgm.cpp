#include "ifslab/pgm.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace ifslab {

void write_pgm(const std::string& path, const PointCloud& cloud,
               std::size_t width, std::size_t height) {
    if (cloud.dim() != 2) throw std::invalid_argument("write_pgm: cloud must be 2-D");
    if (width == 0 || height == 0)
        throw std::invalid_argument("write_pgm: zero image size");
    if (cloud.empty()) throw std::invalid_argument("write_pgm: empty cloud");

    auto [lo, hi] = cloud.bounding_box();
    double sx = hi[0] - lo[0], sy = hi[1] - lo[1];
    if (sx <= 0) sx = 1.0;
    if (sy <= 0) sy = 1.0;

    std::vector<std::uint32_t> hits(width * height, 0);
    std::uint32_t peak = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        Point p = cloud.point(i);
        auto px = static_cast<std::size_t>((p[0] - lo[0]) / sx * (double)(width - 1) + 0.5);
        auto py = static_cast<std::size_t>((p[1] - lo[1]) / sy * (double)(height - 1) + 0.5);
        px = std::min(px, width - 1);
        py = std::min(py, height - 1);
        // image row 0 is the top, world y grows upward
        std::uint32_t& cell = hits[(height - 1 - py) * width + px];
        peak = std::max(peak, ++cell);
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
    out << "P5\n" << width << " " << height << "\n255\n";
    std::vector<unsigned char> row(width);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            std::uint32_t h = hits[y * width + x];
            row[x] = h == 0 ? 0
                            : static_cast<unsigned char>(64 + (191ull * h) / peak);
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(width));
    }
    if (!out) throw std::runtime_error("write_pgm: write failed: " + path);
}

}  // namespace ifslab
