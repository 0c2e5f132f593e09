#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ifslab/cloud.hpp"
#include "ifslab/maps.hpp"
#include "ifslab/words.hpp"

namespace ifslab {

struct Tolerances {
    double tol_point = 1e-9;
    double tol_attr = 1e-6;
    std::size_t max_depth = 10000;  // fixed-point iteration budget
    double dedup_cell = -1.0;       // < 0: derive as tol_attr / 4
    std::size_t word_cap = 1000000;
    std::size_t max_attractor_iters = 200;

    double cell() const { return dedup_cell > 0 ? dedup_cell : tol_attr / 4.0; }
};

/// An IFS on R^m: one contraction map per alphabet letter.
class IfsInstance {
public:
    IfsInstance(std::vector<ContractionMap> maps, Tolerances tol = {});

    std::size_t dim() const { return dim_; }
    const std::vector<ContractionMap>& maps() const { return maps_; }
    const ContractionMap& map(std::size_t i) const { return maps_[i]; }
    Alphabet alphabet() const { return Alphabet(maps_.size()); }
    const Tolerances& tol() const { return tol_; }
    bool all_affine() const;

    /// Shared witness if every map declares the same one.
    std::optional<ComparisonFunction> common_witness() const;

private:
    std::size_t dim_;
    std::vector<ContractionMap> maps_;
    Tolerances tol_;
};

struct AttractorResult {
    PointCloud cloud;
    std::size_t iterations = 0;
    double final_step_hausdorff = 0.0;
    bool converged = false;
};

struct DiminishingCertificate {
    std::vector<std::size_t> depths;
    std::vector<double> max_diams;
    std::optional<std::vector<double>> phi_bounds;  // phi^[n](diam B)
    double threshold = 0.0;
    bool verdict = false;  // strictly decreasing and below threshold at max depth
};

/// F_S(B): union of the maps' images, deduplicated at the instance cell.
PointCloud fractal_operator(const IfsInstance& S, const PointCloud& B);

/// Iterate F_S from the seed until the Hausdorff step drops below tol_attr
/// or the iteration budget runs out; non-convergence is reported, not thrown.
AttractorResult attractor(const IfsInstance& S, const PointCloud& seed);

/// pi(a) = f_pre(p*) with p* the fixed point of f_period. Closed form when
/// all maps are affine, Banach iteration otherwise.
Point coding_map(const IfsInstance& S, const AddressSpec& a);

/// Unique fixed point of f_w for non-empty w.
Point word_fixed_point(const IfsInstance& S, const Word& w);

DiminishingCertificate diminishing_certificate(
    const IfsInstance& S, const PointCloud& B, std::size_t max_n,
    std::optional<double> threshold = std::nullopt);

/// Finite stand-in for M_B: attractor cloud united with F_S^[k](B) for
/// k = 0..n_max. Throws if the attractor did not converge or the result
/// fails the forward-invariance check at cloud resolution.
PointCloud invariant_superset(const IfsInstance& S, const PointCloud& B,
                              std::size_t n_max);
PointCloud invariant_superset(const IfsInstance& S, const PointCloud& B,
                              std::size_t n_max, const AttractorResult& attr);

/// Random-orbit attractor sampler; deterministic for a fixed seed.
PointCloud chaos_game(const IfsInstance& S, std::size_t steps,
                      std::size_t burn_in, std::uint64_t rng_seed);

}  // namespace ifslab
