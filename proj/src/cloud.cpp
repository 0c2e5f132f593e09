#include "ifslab/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "ifslab/kernels.hpp"
#include "ifslab/numfmt.hpp"

namespace ifslab {

PointCloud::PointCloud(std::size_t dim) : dim_(dim), axes_(dim) {
    if (dim == 0) throw std::invalid_argument("PointCloud: dimension must be >= 1");
}

PointCloud::PointCloud(std::size_t dim, const std::vector<Point>& points)
    : PointCloud(dim) {
    for (const Point& p : points) add(p);
}

void PointCloud::add(const Point& p) {
    if (p.size() != dim_)
        throw std::invalid_argument("PointCloud::add: dimension mismatch");
    add(p.data());
}

void PointCloud::add(const double* p) {
    for (std::size_t d = 0; d < dim_; ++d) {
        if (!std::isfinite(p[d]))
            throw std::invalid_argument("PointCloud::add: non-finite coordinate");
        axes_[d].push_back(p[d]);
    }
    ++size_;
}

Point PointCloud::point(std::size_t i) const {
    Point p(dim_);
    for (std::size_t d = 0; d < dim_; ++d) p[d] = axes_[d][i];
    return p;
}

std::vector<const double*> PointCloud::coord_ptrs() const {
    std::vector<const double*> ptrs(dim_);
    for (std::size_t d = 0; d < dim_; ++d) ptrs[d] = axes_[d].data();
    return ptrs;
}

std::pair<Point, Point> PointCloud::bounding_box() const {
    if (empty()) throw std::invalid_argument("bounding_box: empty cloud");
    Point lo(dim_), hi(dim_);
    for (std::size_t d = 0; d < dim_; ++d) {
        auto [mn, mx] = std::minmax_element(axes_[d].begin(), axes_[d].end());
        lo[d] = *mn;
        hi[d] = *mx;
    }
    return {lo, hi};
}

double euclidean(const Point& a, const Point& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("euclidean: dimension mismatch");
    double acc = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        double diff = a[d] - b[d];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

namespace {

void require_same_dim(const PointCloud& a, const PointCloud& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("cloud dimension mismatch");
}

void require_nonempty(const PointCloud& a) {
    if (a.empty()) throw std::invalid_argument("empty cloud");
}

}  // namespace

double diameter(const PointCloud& a) {
    require_nonempty(a);
    auto ptrs = a.coord_ptrs();
    Point x(a.dim());
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        for (std::size_t d = 0; d < a.dim(); ++d) x[d] = a.coord(d, i);
        // pairs (i, j>i); kernel over the tail suffices for the max
        std::vector<const double*> tail(a.dim());
        for (std::size_t d = 0; d < a.dim(); ++d) tail[d] = ptrs[d] + i + 1;
        best = std::max(best, kernels::max_dist_sq(tail.data(), a.dim(),
                                                   a.size() - i - 1, x.data()));
    }
    return std::sqrt(best);
}

double point_set_distance(const Point& x, const PointCloud& a) {
    require_nonempty(a);
    if (x.size() != a.dim())
        throw std::invalid_argument("point_set_distance: dimension mismatch");
    auto ptrs = a.coord_ptrs();
    return std::sqrt(kernels::min_dist_sq(ptrs.data(), a.dim(), a.size(), x.data()));
}

namespace {

double directed_sq_brute(const PointCloud& a, const PointCloud& b) {
    auto ptrs = b.coord_ptrs();
    Point x(a.dim());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t d = 0; d < a.dim(); ++d) x[d] = a.coord(d, i);
        worst = std::max(worst, kernels::min_dist_sq(ptrs.data(), b.dim(),
                                                     b.size(), x.data()));
    }
    return worst;
}

double directed_sq_grid(const PointCloud& a, const CloudGrid& grid) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, grid.min_dist_sq(a.point(i)));
    return worst;
}

constexpr std::size_t kGridThreshold = 512;

}  // namespace

double directed_hausdorff(const PointCloud& a, const PointCloud& b) {
    require_same_dim(a, b);
    require_nonempty(a);
    require_nonempty(b);
    if (a.size() * b.size() > kGridThreshold * kGridThreshold && b.dim() <= 3) {
        CloudGrid grid(b);
        if (grid.usable()) return std::sqrt(directed_sq_grid(a, grid));
    }
    return std::sqrt(directed_sq_brute(a, b));
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff_brute(const PointCloud& a, const PointCloud& b) {
    require_same_dim(a, b);
    require_nonempty(a);
    require_nonempty(b);
    return std::sqrt(std::max(directed_sq_brute(a, b), directed_sq_brute(b, a)));
}

bool within_dilation(const PointCloud& a, const PointCloud& b, double eps) {
    require_same_dim(a, b);
    require_nonempty(a);
    require_nonempty(b);
    if (eps <= 0) throw std::invalid_argument("within_dilation: eps must be > 0");
    return directed_hausdorff(a, b) < eps;
}

namespace {

struct CellKey {
    std::vector<long long> c;
    bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const {
        std::size_t h = 1469598103934665603ull;
        for (long long v : k.c) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

CellKey cell_of(const Point& p, double cell) {
    CellKey key;
    key.c.resize(p.size());
    for (std::size_t d = 0; d < p.size(); ++d)
        key.c[d] = static_cast<long long>(std::floor(p[d] / cell));
    return key;
}

}  // namespace

PointCloud snap_dedup(const PointCloud& a, double cell) {
    if (cell <= 0) return a;
    PointCloud out(a.dim());
    merge_dedup(out, a, cell);
    return out;
}

void merge_dedup(PointCloud& a, const PointCloud& b, double cell) {
    require_same_dim(a, b);
    if (cell <= 0) {
        for (std::size_t i = 0; i < b.size(); ++i) a.add(b.point(i));
        return;
    }
    std::unordered_map<CellKey, std::size_t, CellKeyHash> seen;
    seen.reserve(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        seen.emplace(cell_of(a.point(i), cell), i);
    for (std::size_t i = 0; i < b.size(); ++i) {
        Point p = b.point(i);
        if (seen.emplace(cell_of(p, cell), a.size()).second) a.add(p);
    }
}

void write_csv(std::ostream& out, const PointCloud& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t d = 0; d < a.dim(); ++d) {
            if (d) out << ',';
            out << format_double(a.coord(d, i));
        }
        out << '\n';
    }
}

PointCloud read_csv(std::istream& in) {
    std::vector<Point> points;
    std::string line;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        Point p;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::size_t pos = 0;
            p.push_back(std::stod(tok, &pos));
        }
        if (p.empty()) continue;
        if (dim == 0) dim = p.size();
        if (p.size() != dim)
            throw std::runtime_error("read_csv: inconsistent column count");
        points.push_back(std::move(p));
    }
    if (points.empty()) throw std::runtime_error("read_csv: no points");
    return PointCloud(dim, points);
}

void write_csv_file(const std::string& path, const PointCloud& a) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_csv(out, a);
}

PointCloud read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_csv(in);
}

CloudGrid::CloudGrid(const PointCloud& cloud) : cloud_(cloud) {
    const std::size_t dim = cloud.dim();
    if (dim > 3 || cloud.size() < 2) return;
    auto [lo, hi] = cloud.bounding_box();
    double extent = 0.0;
    for (std::size_t d = 0; d < dim; ++d) extent = std::max(extent, hi[d] - lo[d]);
    if (extent <= 0.0) return;
    double per_axis = std::ceil(std::pow(static_cast<double>(cloud.size()), 1.0 / dim));
    cell_ = extent / per_axis;
    lo_ = lo;
    dims_.resize(dim);
    strides_.resize(dim);
    long long total = 1;
    for (std::size_t d = 0; d < dim; ++d) {
        dims_[d] = static_cast<long long>(std::floor((hi[d] - lo[d]) / cell_)) + 1;
        strides_[d] = total;
        total *= dims_[d];
        if (total > static_cast<long long>(8 * cloud.size() + 64)) return;
    }
    buckets_.assign(static_cast<std::size_t>(total), {});
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        long long idx = 0;
        for (std::size_t d = 0; d < dim; ++d) {
            long long c = static_cast<long long>(
                std::floor((cloud.coord(d, i) - lo_[d]) / cell_));
            c = std::clamp(c, 0ll, dims_[d] - 1);
            idx += c * strides_[d];
        }
        buckets_[static_cast<std::size_t>(idx)].push_back(i);
    }
    usable_ = true;
}

double CloudGrid::min_dist_sq(const Point& x) const {
    const std::size_t dim = cloud_.dim();
    if (!usable_) {
        auto ptrs = cloud_.coord_ptrs();
        return kernels::min_dist_sq(ptrs.data(), dim, cloud_.size(), x.data());
    }
    std::vector<long long> c(dim);
    long long ring_hi = 0;  // ring reaching the farthest occupied cell
    for (std::size_t d = 0; d < dim; ++d) {
        c[d] = static_cast<long long>(std::floor((x[d] - lo_[d]) / cell_));
        ring_hi = std::max({ring_hi, std::llabs(c[d]), std::llabs(dims_[d] - 1 - c[d])});
    }
    double best = std::numeric_limits<double>::infinity();
    auto scan_bucket = [&](long long idx) {
        for (std::size_t i : buckets_[static_cast<std::size_t>(idx)]) {
            double acc = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                double diff = x[d] - cloud_.coord(d, i);
                acc += diff * diff;
            }
            best = std::min(best, acc);
        }
    };
    for (long long r = 0; r <= ring_hi; ++r) {
        // cells at Chebyshev distance exactly r from c, clamped in bounds
        std::vector<long long> off(dim);
        std::vector<long long> lo_off(dim), hi_off(dim);
        bool feasible = true;
        for (std::size_t d = 0; d < dim; ++d) {
            lo_off[d] = std::max(-r, -c[d]);
            hi_off[d] = std::min(r, dims_[d] - 1 - c[d]);
            if (lo_off[d] > hi_off[d]) feasible = false;
            off[d] = lo_off[d];
        }
        if (feasible) {
            for (;;) {
                long long cheb = 0;
                for (std::size_t d = 0; d < dim; ++d)
                    cheb = std::max(cheb, std::llabs(off[d]));
                if (cheb == r) {
                    long long idx = 0;
                    for (std::size_t d = 0; d < dim; ++d)
                        idx += (c[d] + off[d]) * strides_[d];
                    scan_bucket(idx);
                }
                std::size_t d = 0;
                for (; d < dim; ++d) {
                    if (++off[d] <= hi_off[d]) break;
                    off[d] = lo_off[d];
                }
                if (d == dim) break;
            }
        }
        // points in rings beyond r lie at distance >= (r-1)*cell_ (the -1
        // absorbs the boundary clamp at bucket insertion)
        double bound = static_cast<double>(std::max(r - 1, 0ll)) * cell_;
        if (best <= bound * bound) break;
    }
    return best;
}

}  // namespace ifslab
