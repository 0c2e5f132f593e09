#include "ifslab/maps.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ifslab/numfmt.hpp"

namespace ifslab {

ComparisonFunction ComparisonFunction::linear(double c) {
    if (!(c > 0.0 && c < 1.0))
        throw std::invalid_argument("linear comparison function needs 0 < c < 1");
    ComparisonFunction phi;
    phi.family_ = Family::linear;
    phi.c_ = c;
    return phi;
}

ComparisonFunction ComparisonFunction::rational() {
    ComparisonFunction phi;
    phi.family_ = Family::rational;
    phi.c_ = 0;
    return phi;
}

ComparisonFunction ComparisonFunction::table(std::vector<double> knots,
                                             std::vector<double> values) {
    if (knots.empty() || knots.size() != values.size())
        throw std::invalid_argument("table comparison function: bad knot/value sizes");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (knots[i] <= 0 || values[i] < 0)
            throw std::invalid_argument("table comparison function: knots must be > 0, values >= 0");
        if (i > 0 && (knots[i] <= knots[i - 1] || values[i] < values[i - 1]))
            throw std::invalid_argument("table comparison function: knots/values must increase");
        if (values[i] >= knots[i])
            throw std::invalid_argument("table comparison function: needs phi(t) < t at every knot");
    }
    ComparisonFunction phi;
    phi.family_ = Family::table;
    phi.c_ = 0;
    phi.knots_ = std::move(knots);
    phi.values_ = std::move(values);
    return phi;
}

double ComparisonFunction::operator()(double t) const {
    if (t < 0) throw std::invalid_argument("comparison function: t must be >= 0");
    switch (family_) {
        case Family::linear: return c_ * t;
        case Family::rational: return t / (1.0 + t);
        case Family::table: {
            // step value of the last knot <= t; 0 below the first knot
            auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
            if (it == knots_.begin()) return 0.0;
            return values_[static_cast<std::size_t>(it - knots_.begin()) - 1];
        }
    }
    return 0.0;
}

double ComparisonFunction::iterate(double t, std::size_t n) const {
    for (std::size_t k = 0; k < n; ++k) t = (*this)(t);
    return t;
}

std::string ComparisonFunction::describe() const {
    switch (family_) {
        case Family::linear: return "linear(c=" + format_double(c_) + ")";
        case Family::rational: return "rational";
        case Family::table: return "table(" + std::to_string(knots_.size()) + " knots)";
    }
    return "?";
}

ContractionMap::ContractionMap(AffineMap affine,
                               std::optional<ComparisonFunction> witness)
    : kind_(Kind::affine), affine_(std::move(affine)), witness_(std::move(witness)) {
    std::size_t m = affine_.offset.size();
    if (m == 0 || affine_.matrix.size() != m * m)
        throw std::invalid_argument("affine map: matrix must be dim x dim");
    dim_ = m;
    if (witness_ && witness_->family() == ComparisonFunction::Family::linear) {
        double norm = operator_norm(affine_.matrix, dim_);
        if (norm > witness_->linear_coefficient() + 1e-9)
            throw std::invalid_argument(
                "affine map: operator norm " + format_double(norm) +
                " exceeds the declared linear witness c=" +
                format_double(witness_->linear_coefficient()));
    }
}

ContractionMap::ContractionMap(std::size_t dim, SinusoidalMap map,
                               std::optional<ComparisonFunction> witness)
    : kind_(Kind::sinusoidal), dim_(dim), sinusoidal_(std::move(map)),
      witness_(std::move(witness)) {
    if (dim_ == 0 || sinusoidal_.offset.size() != dim_)
        throw std::invalid_argument("sinusoidal map: offset must have length dim");
}

const AffineMap& ContractionMap::affine() const {
    if (!is_affine()) throw std::logic_error("not an affine map");
    return affine_;
}

const SinusoidalMap& ContractionMap::sinusoidal() const {
    if (kind_ != Kind::sinusoidal) throw std::logic_error("not a sinusoidal map");
    return sinusoidal_;
}

Point ContractionMap::eval(const Point& x) const {
    if (x.size() != dim_)
        throw std::invalid_argument("eval_map: dimension mismatch");
    Point y(dim_);
    if (kind_ == Kind::affine) {
        for (std::size_t r = 0; r < dim_; ++r) {
            double acc = affine_.offset[r];
            for (std::size_t c = 0; c < dim_; ++c)
                acc += affine_.matrix[r * dim_ + c] * x[c];
            y[r] = acc;
        }
    } else {
        for (std::size_t d = 0; d < dim_; ++d)
            y[d] = sinusoidal_.amplitude * std::sin(x[d]) + sinusoidal_.offset[d];
    }
    for (double v : y)
        if (!std::isfinite(v)) throw std::runtime_error("eval_map: non-finite result");
    return y;
}

double operator_norm(const std::vector<double>& matrix, std::size_t dim) {
    if (matrix.size() != dim * dim)
        throw std::invalid_argument("operator_norm: matrix must be dim x dim");
    // power iteration on L^T L
    std::vector<double> v(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    std::vector<double> lv(dim), w(dim);
    double lambda = 0.0;
    for (int iter = 0; iter < 50; ++iter) {
        for (std::size_t r = 0; r < dim; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < dim; ++c) acc += matrix[r * dim + c] * v[c];
            lv[r] = acc;
        }
        for (std::size_t c = 0; c < dim; ++c) {
            double acc = 0.0;
            for (std::size_t r = 0; r < dim; ++r) acc += matrix[r * dim + c] * lv[r];
            w[c] = acc;
        }
        double norm_w = 0.0;
        for (double x : w) norm_w += x * x;
        norm_w = std::sqrt(norm_w);
        if (norm_w == 0.0) return 0.0;
        double next = norm_w;  // Rayleigh estimate of lambda_max(L^T L)
        for (std::size_t c = 0; c < dim; ++c) v[c] = w[c] / norm_w;
        if (iter > 0 && std::abs(next - lambda) <= 1e-12 * std::max(next, 1.0)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(lambda);
}

AffineMap compose_affine(const AffineMap& g, const AffineMap& h, std::size_t dim) {
    AffineMap out;
    out.matrix.assign(dim * dim, 0.0);
    out.offset.assign(dim, 0.0);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k)
                acc += g.matrix[r * dim + k] * h.matrix[k * dim + c];
            out.matrix[r * dim + c] = acc;
        }
        double acc = g.offset[r];
        for (std::size_t k = 0; k < dim; ++k)
            acc += g.matrix[r * dim + k] * h.offset[k];
        out.offset[r] = acc;
    }
    return out;
}

AffineMap compose_word_affine(const std::vector<ContractionMap>& maps, const Word& w) {
    if (maps.empty()) throw std::invalid_argument("no maps");
    std::size_t dim = maps[0].dim();
    AffineMap acc;
    acc.matrix.assign(dim * dim, 0.0);
    for (std::size_t d = 0; d < dim; ++d) acc.matrix[d * dim + d] = 1.0;
    acc.offset.assign(dim, 0.0);
    for (std::size_t i = 0; i < w.size(); ++i)
        acc = compose_affine(acc, maps[static_cast<std::size_t>(w[i])].affine(), dim);
    return acc;
}

Point affine_fixed_point(const AffineMap& f, std::size_t dim) {
    // Gaussian elimination with partial pivoting on (I - L) x = b
    std::vector<double> a(dim * dim);
    std::vector<double> b = f.offset;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            a[r * dim + c] = (r == c ? 1.0 : 0.0) - f.matrix[r * dim + c];
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < dim; ++r)
            if (std::abs(a[r * dim + col]) > std::abs(a[pivot * dim + col])) pivot = r;
        if (std::abs(a[pivot * dim + col]) < 1e-14)
            throw std::runtime_error("affine_fixed_point: 1 is (numerically) an eigenvalue of L");
        if (pivot != col) {
            for (std::size_t c = col; c < dim; ++c)
                std::swap(a[pivot * dim + c], a[col * dim + c]);
            std::swap(b[pivot], b[col]);
        }
        for (std::size_t r = col + 1; r < dim; ++r) {
            double factor = a[r * dim + col] / a[col * dim + col];
            for (std::size_t c = col; c < dim; ++c)
                a[r * dim + c] -= factor * a[col * dim + c];
            b[r] -= factor * b[col];
        }
    }
    Point x(dim);
    for (std::size_t r = dim; r-- > 0;) {
        double acc = b[r];
        for (std::size_t c = r + 1; c < dim; ++c) acc -= a[r * dim + c] * x[c];
        x[r] = acc / a[r * dim + r];
    }
    return x;
}

Point eval_word(const std::vector<ContractionMap>& maps, const Word& w, const Point& x) {
    Point y = x;
    for (std::size_t i = w.size(); i-- > 0;) {
        int letter = w[i];
        if (letter < 0 || static_cast<std::size_t>(letter) >= maps.size())
            throw std::invalid_argument("eval_word: letter out of range");
        y = maps[static_cast<std::size_t>(letter)].eval(y);
    }
    return y;
}

PointCloud map_cloud(const ContractionMap& f, const PointCloud& cloud) {
    PointCloud out(cloud.dim());
    for (std::size_t i = 0; i < cloud.size(); ++i) out.add(f.eval(cloud.point(i)));
    return out;
}

PointCloud word_image(const std::vector<ContractionMap>& maps, const Word& w,
                      const PointCloud& cloud) {
    PointCloud out(cloud.dim());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        out.add(eval_word(maps, w, cloud.point(i)));
    return out;
}

PhiCheckReport check_phi_contractive(const ContractionMap& f,
                                     const ComparisonFunction& phi,
                                     std::size_t samples, const Point& lo,
                                     const Point& hi, std::uint64_t seed,
                                     double tol) {
    if (samples < 1) throw std::invalid_argument("check_phi_contractive: samples >= 1");
    if (lo.size() != f.dim() || hi.size() != f.dim())
        throw std::invalid_argument("check_phi_contractive: region dimension mismatch");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&] {
        Point p(f.dim());
        for (std::size_t d = 0; d < f.dim(); ++d)
            p[d] = lo[d] + (hi[d] - lo[d]) * unit(rng);
        return p;
    };
    PhiCheckReport report;
    report.samples = samples;
    for (std::size_t i = 0; i < samples; ++i) {
        Point x = draw(), y = draw();
        double lhs = euclidean(f.eval(x), f.eval(y));
        double rhs = phi(euclidean(x, y));
        if (lhs > rhs + tol)
            report.violations.push_back({std::move(x), std::move(y), lhs, rhs});
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const PhiViolation& a, const PhiViolation& b) {
                  return a.lhs - a.rhs > b.lhs - b.rhs;
              });
    return report;
}

}  // namespace ifslab
