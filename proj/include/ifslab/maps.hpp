#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifslab/cloud.hpp"
#include "ifslab/words.hpp"

namespace ifslab {

/// Comparison function: increasing, right-continuous, phi(t) < t for t > 0.
/// Table-based functions are right-continuous step functions by
/// construction; the other axioms are validated on the knots.
class ComparisonFunction {
public:
    enum class Family { linear, rational, table };

    static ComparisonFunction linear(double c);
    static ComparisonFunction rational();
    static ComparisonFunction table(std::vector<double> knots,
                                    std::vector<double> values);

    Family family() const { return family_; }
    double linear_coefficient() const { return c_; }

    double operator()(double t) const;
    double iterate(double t, std::size_t n) const;

    bool operator==(const ComparisonFunction&) const = default;

    std::string describe() const;

private:
    ComparisonFunction() = default;
    Family family_ = Family::linear;
    double c_ = 0.5;
    std::vector<double> knots_, values_;
};

struct AffineMap {
    std::vector<double> matrix;  // row-major, dim x dim
    std::vector<double> offset;
};

/// f_d(x) = amplitude * sin(x_d) + offset_d, Lipschitz |amplitude|.
struct SinusoidalMap {
    double amplitude = 0.5;
    std::vector<double> offset;
};

/// One map of an IFS: affine or a named nonlinear family, with an optional
/// comparison-function witness for its contractivity.
class ContractionMap {
public:
    enum class Kind { affine, sinusoidal };

    ContractionMap(AffineMap affine,
                   std::optional<ComparisonFunction> witness = std::nullopt);
    ContractionMap(std::size_t dim, SinusoidalMap map,
                   std::optional<ComparisonFunction> witness = std::nullopt);

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    bool is_affine() const { return kind_ == Kind::affine; }
    const AffineMap& affine() const;
    const SinusoidalMap& sinusoidal() const;
    const std::optional<ComparisonFunction>& witness() const { return witness_; }

    Point eval(const Point& x) const;

private:
    Kind kind_;
    std::size_t dim_;
    AffineMap affine_;
    SinusoidalMap sinusoidal_;
    std::optional<ComparisonFunction> witness_;
};

/// Spectral norm by power iteration on L^T L (50 iterations or relative
/// change below 1e-12).
double operator_norm(const std::vector<double>& matrix, std::size_t dim);

/// Composition g(h(x)) of two affine maps.
AffineMap compose_affine(const AffineMap& g, const AffineMap& h,
                         std::size_t dim);

/// The affine map f_w = f_{w1} o ... o f_{wn}; identity for the empty word.
AffineMap compose_word_affine(const std::vector<ContractionMap>& maps,
                              const Word& w);

/// Unique fixed point of an affine contraction: solve (I - L) x = b.
Point affine_fixed_point(const AffineMap& f, std::size_t dim);

/// f_w(x) with the composition order f_{w1} o ... o f_{wn} (the last letter
/// acts first); the empty word is the identity.
Point eval_word(const std::vector<ContractionMap>& maps, const Word& w,
                const Point& x);

/// Image cloud {f(x) : x in cloud}.
PointCloud map_cloud(const ContractionMap& f, const PointCloud& cloud);
PointCloud word_image(const std::vector<ContractionMap>& maps, const Word& w,
                      const PointCloud& cloud);

struct PhiViolation {
    Point x, y;
    double lhs;  // d(f(x), f(y))
    double rhs;  // phi(d(x, y))
};

struct PhiCheckReport {
    std::size_t samples = 0;
    std::vector<PhiViolation> violations;  // sorted by excess, worst first
    bool clean() const { return violations.empty(); }
};

/// Sample pairs uniformly in the box [lo, hi] and flag pairs with
/// d(f(x), f(y)) > phi(d(x, y)) + tol. An empty report is evidence, not
/// proof.
PhiCheckReport check_phi_contractive(const ContractionMap& f,
                                     const ComparisonFunction& phi,
                                     std::size_t samples, const Point& lo,
                                     const Point& hi, std::uint64_t seed,
                                     double tol = 1e-12);

}  // namespace ifslab
