#include "ifslab/ifs.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ifslab {

IfsInstance::IfsInstance(std::vector<ContractionMap> maps, Tolerances tol)
    : maps_(std::move(maps)), tol_(tol) {
    if (maps_.empty()) throw std::invalid_argument("IfsInstance: needs >= 1 map");
    dim_ = maps_[0].dim();
    for (const auto& f : maps_)
        if (f.dim() != dim_)
            throw std::invalid_argument("IfsInstance: maps disagree on dimension");
}

bool IfsInstance::all_affine() const {
    for (const auto& f : maps_)
        if (!f.is_affine()) return false;
    return true;
}

std::optional<ComparisonFunction> IfsInstance::common_witness() const {
    if (!maps_[0].witness()) return std::nullopt;
    const ComparisonFunction& phi = *maps_[0].witness();
    for (const auto& f : maps_)
        if (!f.witness() || !(*f.witness() == phi)) return std::nullopt;
    return phi;
}

PointCloud fractal_operator(const IfsInstance& S, const PointCloud& B) {
    if (B.dim() != S.dim())
        throw std::invalid_argument("fractal_operator: dimension mismatch");
    if (B.empty()) throw std::invalid_argument("fractal_operator: empty cloud");
    PointCloud out(S.dim());
    double cell = S.tol().cell();
    for (const auto& f : S.maps()) merge_dedup(out, map_cloud(f, B), cell);
    return out;
}

AttractorResult attractor(const IfsInstance& S, const PointCloud& seed) {
    if (seed.empty()) throw std::invalid_argument("attractor: empty seed");
    AttractorResult result{snap_dedup(seed, S.tol().cell())};
    for (std::size_t k = 0; k < S.tol().max_attractor_iters; ++k) {
        PointCloud next = fractal_operator(S, result.cloud);
        double step = hausdorff(result.cloud, next);
        result.cloud = std::move(next);
        result.iterations = k + 1;
        result.final_step_hausdorff = step;
        if (step < S.tol().tol_attr) {
            result.converged = true;
            break;
        }
    }
    return result;
}

namespace {

// Banach iteration of f_w from the origin.
Point iterate_word_fixed_point(const IfsInstance& S, const Word& w) {
    Point x(S.dim(), 0.0);
    for (std::size_t k = 0; k < S.tol().max_depth; ++k) {
        Point next = eval_word(S.maps(), w, x);
        double step = euclidean(x, next);
        x = std::move(next);
        if (step < S.tol().tol_point) return x;
    }
    throw std::runtime_error("word fixed point: iteration budget exhausted before tol_point");
}

}  // namespace

Point word_fixed_point(const IfsInstance& S, const Word& w) {
    if (w.empty())
        throw std::invalid_argument("word_fixed_point: empty word");
    if (S.all_affine())
        return affine_fixed_point(compose_word_affine(S.maps(), w), S.dim());
    return iterate_word_fixed_point(S, w);
}

Point coding_map(const IfsInstance& S, const AddressSpec& a) {
    Point p = word_fixed_point(S, a.period());
    return eval_word(S.maps(), a.preperiod(), p);
}

DiminishingCertificate diminishing_certificate(const IfsInstance& S,
                                               const PointCloud& B,
                                               std::size_t max_n,
                                               std::optional<double> threshold) {
    if (B.empty()) throw std::invalid_argument("diminishing_certificate: empty cloud");
    DiminishingCertificate cert;
    cert.threshold = threshold.value_or(S.tol().tol_attr);
    auto witness = S.common_witness();
    if (witness) cert.phi_bounds.emplace();
    double diam_b = diameter(B);
    for (std::size_t n = 1; n <= max_n; ++n) {
        double worst = 0.0;
        for (const Word& w : enumerate_words(S.alphabet(), n, S.tol().word_cap))
            worst = std::max(worst, diameter(word_image(S.maps(), w, B)));
        cert.depths.push_back(n);
        cert.max_diams.push_back(worst);
        if (witness) cert.phi_bounds->push_back(witness->iterate(diam_b, n));
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < cert.max_diams.size(); ++i)
        if (cert.max_diams[i] >= cert.max_diams[i - 1] && cert.max_diams[i - 1] > 0)
            decreasing = false;
    cert.verdict = decreasing && !cert.max_diams.empty() &&
                   cert.max_diams.back() < cert.threshold;
    return cert;
}

PointCloud invariant_superset(const IfsInstance& S, const PointCloud& B,
                              std::size_t n_max) {
    return invariant_superset(S, B, n_max, attractor(S, B));
}

PointCloud invariant_superset(const IfsInstance& S, const PointCloud& B,
                              std::size_t n_max, const AttractorResult& attr) {
    if (!attr.converged)
        throw std::runtime_error("invariant_superset: attractor not converged");
    double cell = S.tol().cell();
    PointCloud out = snap_dedup(attr.cloud, cell);
    PointCloud layer = snap_dedup(B, cell);
    merge_dedup(out, layer, cell);
    for (std::size_t k = 0; k < n_max; ++k) {
        layer = fractal_operator(S, layer);
        merge_dedup(out, layer, cell);
    }
    double slack = 2.0 * cell * std::sqrt(static_cast<double>(S.dim())) +
                   S.tol().tol_attr;
    if (!within_dilation(fractal_operator(S, out), out, slack))
        throw std::runtime_error(
            "invariant_superset: forward-invariance check failed at cloud resolution");
    return out;
}

PointCloud chaos_game(const IfsInstance& S, std::size_t steps,
                      std::size_t burn_in, std::uint64_t rng_seed) {
    if (steps <= burn_in)
        throw std::invalid_argument("chaos_game: needs steps > burn_in");
    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<std::size_t> pick(0, S.maps().size() - 1);
    Point x(S.dim(), 0.0);
    PointCloud out(S.dim());
    for (std::size_t k = 0; k < steps; ++k) {
        x = S.map(pick(rng)).eval(x);
        if (k >= burn_in) out.add(x);
    }
    return out;
}

}  // namespace ifslab
