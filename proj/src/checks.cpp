#include "ifslab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "ifslab/numfmt.hpp"

namespace ifslab {

namespace {

std::string point_str(const Point& p) {
    std::string s = "(";
    for (std::size_t d = 0; d < p.size(); ++d) {
        if (d) s += ',';
        s += format_double(p[d]);
    }
    return s + ")";
}

PointCloud random_cloud(std::mt19937_64& rng, std::size_t dim, std::size_t n) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PointCloud cloud(dim);
    Point p(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) p[d] = unit(rng);
        cloud.add(p);
    }
    return cloud;
}

void merge_plain(PointCloud& a, const PointCloud& b) {
    for (std::size_t i = 0; i < b.size(); ++i) a.add(b.point(i));
}

}  // namespace

std::string check_line(const CheckReport& r) {
    std::string line = "CHECK " + r.id + (r.passed ? " PASS" : " FAIL") +
                       " residual=" + format_double(r.residual);
    if (!r.params.empty()) line += " params=\"" + r.params + "\"";
    if (!r.witness.empty()) line += " witness=\"" + r.witness + "\"";
    if (!r.error.empty()) line += " error=\"" + r.error + "\"";
    return line;
}

CheckReport check_union_inequality(std::size_t trials, std::size_t family_size,
                                   std::size_t cloud_size, std::uint64_t rng_seed,
                                   std::size_t dim) {
    if (trials < 1 || family_size < 1 || cloud_size < 1)
        throw std::invalid_argument("check_union_inequality: all counts >= 1");
    CheckReport report;
    report.id = "union_inequality";
    report.params = "trials=" + std::to_string(trials) +
                    " family_size=" + std::to_string(family_size) +
                    " cloud_size=" + std::to_string(cloud_size) +
                    " seed=" + std::to_string(rng_seed);
    std::mt19937_64 rng(rng_seed);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        PointCloud union_h(dim), union_k(dim);
        double member_max = 0.0;
        for (std::size_t i = 0; i < family_size; ++i) {
            PointCloud h = random_cloud(rng, dim, cloud_size);
            PointCloud k = random_cloud(rng, dim, cloud_size);
            member_max = std::max(member_max, hausdorff(h, k));
            merge_plain(union_h, h);
            merge_plain(union_k, k);
        }
        double residual = hausdorff(union_h, union_k) - member_max;
        if (residual > worst) {
            worst = residual;
            report.witness = "trial=" + std::to_string(t);
        }
    }
    report.residual = worst;
    report.passed = worst <= 1e-12;
    return report;
}

CheckReport check_equivariance(const IfsInstance& S,
                               const std::vector<AddressSpec>& addresses) {
    CheckReport report;
    report.id = "equivariance";
    report.params = "addresses=" + std::to_string(addresses.size()) +
                    " letters=" + std::to_string(S.maps().size());
    double tol = 10.0 * S.tol().tol_point;
    double worst = 0.0;
    try {
        for (const AddressSpec& a : addresses) {
            Point pa = coding_map(S, a);
            for (std::size_t i = 0; i < S.maps().size(); ++i) {
                Point lhs = S.map(i).eval(pa);
                Point rhs = coding_map(S, shift_insert(static_cast<int>(i), a));
                double r = euclidean(lhs, rhs);
                if (r > worst) {
                    worst = r;
                    report.witness =
                        "address=" + a.to_string() + " letter=" + std::to_string(i);
                }
            }
        }
        report.residual = worst;
        report.passed = worst <= tol;
    } catch (const std::exception& e) {
        report.error = e.what();
        report.residual = std::numeric_limits<double>::infinity();
        report.passed = false;
    }
    return report;
}

CheckReport check_point_fibred(const IfsInstance& S, const PointCloud& B,
                               const std::vector<std::size_t>& depths,
                               const std::vector<AddressSpec>& addresses,
                               std::string id) {
    CheckReport report;
    report.id = std::move(id);
    report.params = "B=" + std::to_string(B.size()) + "pts depths=" +
                    std::to_string(depths.empty() ? 0 : depths.back()) +
                    " addresses=" + std::to_string(addresses.size());
    try {
        if (depths.empty() || !std::is_sorted(depths.begin(), depths.end()))
            throw std::invalid_argument("depths must be increasing");
        // close the address sample under the shift so the sup is monotone
        std::set<std::string> seen;
        std::vector<AddressSpec> sample;
        for (const AddressSpec& a : addresses)
            if (seen.insert(a.to_string()).second) sample.push_back(a);
        for (std::size_t i = 0; i < sample.size(); ++i) {
            AddressSpec shifted = shift_drop(sample[i]);
            if (seen.insert(shifted.to_string()).second) sample.push_back(shifted);
        }
        std::vector<Point> targets;
        targets.reserve(sample.size());
        for (const AddressSpec& a : sample) targets.push_back(coding_map(S, a));

        std::vector<double> s;
        s.reserve(depths.size());
        std::string worst_witness;
        for (std::size_t n : depths) {
            double sn = 0.0;
            for (std::size_t j = 0; j < sample.size(); ++j) {
                Word w = prefix(sample[j], n);
                for (std::size_t i = 0; i < B.size(); ++i) {
                    double r = euclidean(eval_word(S.maps(), w, B.point(i)),
                                         targets[j]);
                    if (r > sn) {
                        sn = r;
                        worst_witness = "address=" + sample[j].to_string() +
                                        " depth=" + std::to_string(n) +
                                        " x=" + point_str(B.point(i));
                    }
                }
            }
            s.push_back(sn);
        }
        double max_increase = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < s.size(); ++i)
            max_increase = std::max(max_increase, s[i] - s[i - 1]);
        double final_margin = s.back() - S.tol().tol_attr;
        report.residual = std::max(max_increase, final_margin);
        report.passed = max_increase <= 1e-12 && s.back() < S.tol().tol_attr;
        report.witness = worst_witness;
    } catch (const std::exception& e) {
        report.error = e.what();
        report.residual = std::numeric_limits<double>::infinity();
        report.passed = false;
    }
    return report;
}

CheckReport check_fixed_points(const IfsInstance& S, std::size_t max_word_len) {
    CheckReport report;
    report.id = "fixed_points";
    report.params = "max_word_len=" + std::to_string(max_word_len);
    double worst = 0.0;
    try {
        for (std::size_t len = 1; len <= max_word_len; ++len) {
            for (const Word& w : enumerate_words(S.alphabet(), len, S.tol().word_cap)) {
                double r = euclidean(word_fixed_point(S, w),
                                     coding_map(S, periodicize(w)));
                if (r > worst) {
                    worst = r;
                    report.witness = "word=" + w.to_string();
                }
            }
        }
        report.residual = worst;
        report.passed = worst <= 10.0 * S.tol().tol_point;
    } catch (const std::exception& e) {
        report.error = e.what();
        report.residual = std::numeric_limits<double>::infinity();
        report.passed = false;
    }
    return report;
}

CheckReport check_periodic_density(const IfsInstance& S,
                                   const std::vector<std::size_t>& word_lens,
                                   const PointCloud& attractor_cloud,
                                   std::optional<double> threshold) {
    CheckReport report;
    report.id = "periodic_density";
    double final_threshold =
        threshold.value_or(10.0 * S.tol().tol_attr + S.tol().cell());
    report.params = "lens=" + std::to_string(word_lens.size()) +
                    " max_len=" + std::to_string(word_lens.empty() ? 0 : word_lens.back()) +
                    " threshold=" + format_double(final_threshold);
    try {
        if (word_lens.empty() || !std::is_sorted(word_lens.begin(), word_lens.end()))
            throw std::invalid_argument("word_lens must be increasing");
        PointCloud periodic(S.dim());
        std::vector<double> e;
        std::size_t len = 0;
        for (std::size_t target : word_lens) {
            for (; len < target; ) {
                ++len;
                for (const Word& w : enumerate_words(S.alphabet(), len, S.tol().word_cap))
                    periodic.add(word_fixed_point(S, w));
            }
            e.push_back(directed_hausdorff(attractor_cloud, periodic));
        }
        bool decreasing = true;
        for (std::size_t i = 1; i < e.size(); ++i)
            // ties are fine once e_L sits below the resolution threshold
            if (!(e[i] < e[i - 1] || (e[i] <= e[i - 1] && e[i] < final_threshold)))
                decreasing = false;
        report.residual = e.back() - final_threshold;
        report.passed = decreasing && e.back() < final_threshold;
        report.witness = "e_final=" + format_double(e.back());
        if (!decreasing) report.witness += " not_strictly_decreasing";
    } catch (const std::exception& e) {
        report.error = e.what();
        report.residual = std::numeric_limits<double>::infinity();
        report.passed = false;
    }
    return report;
}

namespace {

AddressSpec random_address(Alphabet alphabet, std::mt19937_64& rng,
                           std::size_t max_pre, std::size_t max_per) {
    std::uniform_int_distribution<std::size_t> pre_len(0, max_pre);
    std::uniform_int_distribution<std::size_t> per_len(1, max_per);
    std::uniform_int_distribution<int> letter(0, static_cast<int>(alphabet.size) - 1);
    std::vector<int> pre(pre_len(rng)), per(per_len(rng));
    for (int& l : pre) l = letter(rng);
    for (int& l : per) l = letter(rng);
    return AddressSpec(Word(alphabet, std::move(pre)), Word(alphabet, std::move(per)));
}

}  // namespace

std::vector<AddressSpec> sample_addresses(Alphabet alphabet, std::size_t max_period,
                                          std::size_t extra, std::uint64_t rng_seed) {
    std::vector<AddressSpec> out;
    std::set<std::string> seen;
    auto push = [&](AddressSpec a) {
        if (seen.insert(a.to_string()).second) out.push_back(std::move(a));
    };
    for (std::size_t len = 1; len <= max_period; ++len)
        for (const Word& w : enumerate_words(alphabet, len))
            push(periodicize(w));
    std::mt19937_64 rng(rng_seed);
    for (std::size_t i = 0; i < extra; ++i)
        push(random_address(alphabet, rng, 3, 4));
    return out;
}

CheckReport check_pi_continuity(const IfsInstance& S,
                                const std::vector<std::size_t>& m_depths,
                                const PointCloud& invariant_cloud,
                                std::uint64_t rng_seed) {
    CheckReport report;
    report.id = "pi_continuity";
    report.params = "depths=" + std::to_string(m_depths.size()) +
                    " M=" + std::to_string(invariant_cloud.size()) + "pts" +
                    " seed=" + std::to_string(rng_seed);
    try {
        std::mt19937_64 rng(rng_seed);
        Alphabet alphabet = S.alphabet();
        std::uniform_int_distribution<int> letter(0, static_cast<int>(alphabet.size) - 1);
        // stride-subsampled reference cloud keeps the image diameters cheap;
        // the two coding-map points are re-added below so the bound stays valid
        PointCloud reference(S.dim());
        std::size_t stride = std::max<std::size_t>(1, invariant_cloud.size() / 2048);
        for (std::size_t i = 0; i < invariant_cloud.size(); i += stride)
            reference.add(invariant_cloud.point(i));

        double worst = -std::numeric_limits<double>::infinity();
        const std::size_t pairs_per_depth = 5;
        for (std::size_t m : m_depths) {
            for (std::size_t p = 0; p < pairs_per_depth; ++p) {
                std::vector<int> beta_letters(m);
                for (int& l : beta_letters) l = letter(rng);
                Word beta(alphabet, beta_letters);
                AddressSpec suffix_a = random_address(alphabet, rng, 2, 3);
                AddressSpec suffix_b = random_address(alphabet, rng, 2, 3);
                if (alphabet.size > 1) {
                    // force a mismatch right after the shared prefix
                    while (suffix_b.letter_at(0) == suffix_a.letter_at(0))
                        suffix_b = shift_insert((suffix_b.letter_at(0) + 1) %
                                                    static_cast<int>(alphabet.size),
                                                suffix_b);
                }
                AddressSpec a = suffix_a, b = suffix_b;
                for (std::size_t i = m; i-- > 0;) {
                    a = shift_insert(beta[i], a);
                    b = shift_insert(beta[i], b);
                }
                double d = euclidean(coding_map(S, a), coding_map(S, b));
                PointCloud image = word_image(S.maps(), beta, reference);
                image.add(eval_word(S.maps(), beta, coding_map(S, suffix_a)));
                image.add(eval_word(S.maps(), beta, coding_map(S, suffix_b)));
                double bound = diameter(image);
                double r = d - bound;
                if (r > worst) {
                    worst = r;
                    report.witness = "a=" + a.to_string() + " b=" + b.to_string() +
                                     " prefix_len=" + std::to_string(m);
                }
            }
        }
        report.residual = worst;
        report.passed = worst <= 1e-12;
    } catch (const std::exception& e) {
        report.error = e.what();
        report.residual = std::numeric_limits<double>::infinity();
        report.passed = false;
    }
    return report;
}

namespace {

PointCloud box_corners(const Point& lo, const Point& hi) {
    std::size_t dim = lo.size();
    PointCloud out(dim);
    if (dim <= 3) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
            Point p(dim);
            for (std::size_t d = 0; d < dim; ++d)
                p[d] = (mask >> d) & 1 ? hi[d] : lo[d];
            out.add(p);
        }
    } else {
        out.add(lo);
        out.add(hi);
    }
    return out;
}

std::size_t depth_within(std::size_t alphabet_size, std::size_t budget,
                         std::size_t cap) {
    std::size_t n = 0, count = 1;
    while (n < cap && count <= budget / alphabet_size) {
        count *= alphabet_size;
        ++n;
    }
    return std::max<std::size_t>(n, 1);
}

}  // namespace

ChainResult run_implication_chain(const IfsInstance& S, std::uint64_t rng_seed) {
    ChainResult chain;
    const Tolerances& tol = S.tol();
    const std::size_t dim = S.dim();
    const double cell = tol.cell();
    const double root_m = std::sqrt(static_cast<double>(dim));

    PointCloud origin(dim, {Point(dim, 0.0)});
    AttractorResult attr = attractor(S, origin);

    Point lo(dim, -2.0), hi(dim, 2.0);
    if (attr.converged) {
        auto [alo, ahi] = attr.cloud.bounding_box();
        double pad = 0.0;
        for (std::size_t d = 0; d < dim; ++d) pad = std::max(pad, ahi[d] - alo[d]);
        pad = 0.25 * (pad + 1.0);
        for (std::size_t d = 0; d < dim; ++d) {
            lo[d] = alo[d] - pad;
            hi[d] = ahi[d] + pad;
        }
    }
    PointCloud corners = box_corners(lo, hi);
    std::vector<AddressSpec> addresses =
        sample_addresses(S.alphabet(), 2, 16, rng_seed);

    // 1': sampled phi-contractivity of every map over the reference box
    {
        CheckReport r;
        r.id = "1prime_phi_contractive";
        r.params = "samples=10000/map box=" + point_str(lo) + ".." + point_str(hi);
        bool all_witnessed = true;
        double worst = 0.0;
        for (std::size_t i = 0; i < S.maps().size(); ++i) {
            const auto& f = S.map(i);
            if (!f.witness()) {
                all_witnessed = false;
                r.witness = "map " + std::to_string(i) + " has no witness";
                break;
            }
            PhiCheckReport pr = check_phi_contractive(f, *f.witness(), 10000, lo,
                                                      hi, rng_seed + i);
            if (!pr.clean()) {
                double excess = pr.violations.front().lhs - pr.violations.front().rhs;
                if (excess > worst) {
                    worst = excess;
                    r.witness = "map " + std::to_string(i) +
                                " x=" + point_str(pr.violations.front().x) +
                                " y=" + point_str(pr.violations.front().y);
                }
            }
        }
        r.residual = all_witnessed ? worst
                                   : std::numeric_limits<double>::infinity();
        r.passed = all_witnessed && worst <= 1e-12;
        chain.reports.push_back(std::move(r));
    }

    // 4': diminishing certificate on the box corners; with a shared witness
    // the threshold is the phi-iterate bound, otherwise tol_attr
    {
        std::size_t max_n = depth_within(S.maps().size(), 6561, 8);
        auto phi = S.common_witness();
        double diam_b = diameter(corners);
        double threshold = phi ? phi->iterate(diam_b, max_n) * (1.0 + 1e-9) + 1e-12
                               : tol.tol_attr;
        CheckReport r;
        try {
            DiminishingCertificate cert =
                diminishing_certificate(S, corners, max_n, threshold);
            r.residual = cert.max_diams.back() - threshold;
            r.passed = cert.verdict;
            r.witness = "max_diam_final=" + format_double(cert.max_diams.back());
        } catch (const std::exception& e) {
            r.error = e.what();
            r.residual = std::numeric_limits<double>::infinity();
        }
        r.id = "4prime_diminishing";
        r.params = "max_n=" + std::to_string(max_n) +
                   " threshold=" + format_double(threshold);
        chain.reports.push_back(std::move(r));
    }

    // 3': uniform point-fibredness over the box corners
    std::vector<std::size_t> depths;
    for (std::size_t n = 1; n <= 14; ++n) depths.push_back(n);
    chain.reports.push_back(check_point_fibred(S, corners, depths, addresses,
                                               "3prime_uniform_point_fibred"));

    // 2': localized variant on small balls around sampled centers
    {
        double eta = 0.05 * (euclidean(lo, hi) + 1.0);
        CheckReport merged;
        merged.id = "2prime_local_point_fibred";
        merged.params = "eta=" + format_double(eta) + " centers=2";
        merged.passed = true;
        merged.residual = -std::numeric_limits<double>::infinity();
        Point centroid(dim);
        for (std::size_t d = 0; d < dim; ++d) centroid[d] = 0.5 * (lo[d] + hi[d]);
        for (const Point& center : {corners.point(0), centroid}) {
            PointCloud ball(dim);
            ball.add(center);
            for (std::size_t d = 0; d < dim; ++d) {
                Point p = center;
                p[d] += eta;
                ball.add(p);
                p[d] -= 2 * eta;
                ball.add(p);
            }
            CheckReport r = check_point_fibred(S, ball, depths, addresses, "2prime");
            merged.passed = merged.passed && r.passed;
            if (r.residual > merged.residual) {
                merged.residual = r.residual;
                merged.witness = r.witness;
            }
            if (!r.error.empty()) merged.error = r.error;
        }
        chain.reports.push_back(std::move(merged));
    }

    // 5': attractor exists, coding map is equivariant, lands in the
    // attractor cloud, and (affine case) periodic points cover it
    {
        CheckReport r;
        r.id = "5prime_attractor_coding";
        if (!attr.converged) {
            r.passed = false;
            r.residual = std::numeric_limits<double>::infinity();
            r.error = "attractor not converged";
        } else {
            try {
                CheckReport equiv = check_equivariance(S, addresses);
                double contain = 0.0;
                for (const AddressSpec& a : addresses)
                    contain = std::max(
                        contain, point_set_distance(coding_map(S, a), attr.cloud));
                double contain_tol = 4.0 * (tol.tol_attr + cell * root_m);

                double cover_margin = -1.0;
                std::string cover_note = "coverage=skipped(non-affine)";
                if (S.all_affine()) {
                    std::size_t len = depth_within(S.maps().size(), 1000, 6);
                    PointCloud periodic(dim);
                    double max_norm = 0.0;
                    for (std::size_t l = 1; l <= len; ++l)
                        for (const Word& w : enumerate_words(S.alphabet(), l)) {
                            AffineMap fw = compose_word_affine(S.maps(), w);
                            periodic.add(affine_fixed_point(fw, dim));
                            if (l == len)
                                max_norm = std::max(max_norm,
                                                    operator_norm(fw.matrix, dim));
                        }
                    double attr_diam = diameter(attr.cloud);
                    double cover_tol = max_norm * (attr_diam + 4 * cell) +
                                       2 * cell * root_m + 4 * tol.tol_attr;
                    double e = directed_hausdorff(attr.cloud, periodic);
                    cover_margin = e - cover_tol;
                    cover_note = "coverage_e=" + format_double(e) +
                                 " coverage_tol=" + format_double(cover_tol);
                }
                r.params = "containment_tol=" + format_double(contain_tol) + " " +
                           cover_note;
                r.residual = std::max({equiv.residual - 10.0 * tol.tol_point,
                                       contain - contain_tol, cover_margin});
                r.passed = equiv.passed && contain <= contain_tol &&
                           cover_margin <= 0.0;
                r.witness = "containment=" + format_double(contain);
                if (!equiv.error.empty()) {
                    r.error = equiv.error;
                    r.passed = false;
                }
            } catch (const std::exception& e) {
                r.error = e.what();
                r.residual = std::numeric_limits<double>::infinity();
                r.passed = false;
            }
        }
        chain.reports.push_back(std::move(r));
    }

    bool p1 = chain.reports[0].passed, p4 = chain.reports[1].passed,
         p3 = chain.reports[2].passed, p2 = chain.reports[3].passed,
         p5 = chain.reports[4].passed;
    auto implies = [](bool a, bool b) { return !a || b; };
    chain.consistent = implies(p1, p4) && implies(p4, p3) && implies(p3, p2) &&
                       implies(p4, p5) && implies(p5, p2);
    return chain;
}

}  // namespace ifslab
