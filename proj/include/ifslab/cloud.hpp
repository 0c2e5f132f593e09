#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ifslab {

using Point = std::vector<double>;

/// Finite set of points in R^m, stored coordinate-major (one contiguous
/// array per axis) so the distance kernels can stream it.
class PointCloud {
public:
    explicit PointCloud(std::size_t dim);
    PointCloud(std::size_t dim, const std::vector<Point>& points);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    void add(const Point& p);
    void add(const double* p);

    double coord(std::size_t axis, std::size_t i) const { return axes_[axis][i]; }
    const std::vector<double>& axis(std::size_t axis) const { return axes_[axis]; }
    Point point(std::size_t i) const;

    /// dim pointers into the coordinate arrays, for the kernels.
    std::vector<const double*> coord_ptrs() const;

    /// Axis-aligned bounding box (lo, hi). Throws on empty cloud.
    std::pair<Point, Point> bounding_box() const;

private:
    std::size_t dim_;
    std::size_t size_ = 0;
    std::vector<std::vector<double>> axes_;
};

double euclidean(const Point& a, const Point& b);

/// max pairwise distance; 0 for singletons.
double diameter(const PointCloud& a);

/// min over y in a of d(x, y).
double point_set_distance(const Point& x, const PointCloud& a);

/// max over x in a of d(x, b).
double directed_hausdorff(const PointCloud& a, const PointCloud& b);

/// Hausdorff-Pompeiu distance; grid-accelerated for large clouds, value
/// bit-identical to hausdorff_brute.
double hausdorff(const PointCloud& a, const PointCloud& b);
double hausdorff_brute(const PointCloud& a, const PointCloud& b);

/// true iff every point of a lies strictly within eps of some point of b.
bool within_dilation(const PointCloud& a, const PointCloud& b, double eps);

/// Keep the first point inserted per grid cell of size `cell`; pass-through
/// for cell <= 0.
PointCloud snap_dedup(const PointCloud& a, double cell);

/// Merge b into a, deduplicating at cell size (first-inserted wins).
void merge_dedup(PointCloud& a, const PointCloud& b, double cell);

/// CSV, one point per row, '#' comments allowed, no header.
void write_csv(std::ostream& out, const PointCloud& a);
PointCloud read_csv(std::istream& in);
void write_csv_file(const std::string& path, const PointCloud& a);
PointCloud read_csv_file(const std::string& path);

/// Uniform-grid index over a fixed cloud. Nearest-point queries return the
/// same squared distance values as a brute scan (expanding ring search with
/// the scalar pair arithmetic; min reduction is exact).
class CloudGrid {
public:
    explicit CloudGrid(const PointCloud& cloud);

    bool usable() const { return usable_; }

    /// min over the cloud of squared distance to x.
    double min_dist_sq(const Point& x) const;

private:
    const PointCloud& cloud_;
    bool usable_ = false;
    double cell_ = 0;
    Point lo_;
    std::vector<long long> dims_;     // cells per axis
    std::vector<long long> strides_;
    std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace ifslab
