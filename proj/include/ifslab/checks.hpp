#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifslab/cloud.hpp"
#include "ifslab/ifs.hpp"
#include "ifslab/words.hpp"

namespace ifslab {

struct CheckReport {
    std::string id;
    bool passed = false;
    double residual = 0.0;
    std::string witness;  // inputs achieving the worst residual
    std::string params;
    std::string error;  // non-empty if the check aborted; implies failed
};

/// One machine-parsable record: CHECK <id> <PASS|FAIL> residual=<r> ...
std::string check_line(const CheckReport& r);

/// H_d(union H_i, union K_i) <= max_i H_d(H_i, K_i) on random families.
CheckReport check_union_inequality(std::size_t trials, std::size_t family_size,
                                   std::size_t cloud_size, std::uint64_t rng_seed,
                                   std::size_t dim = 2);

/// f_i(pi(a)) vs pi(tau_i(a)) over all letters and the given addresses.
CheckReport check_equivariance(const IfsInstance& S,
                               const std::vector<AddressSpec>& addresses);

/// s_n = max over addresses and x in B of d(f_{[w]_n}(x), pi(w)); passes if
/// s_n is non-increasing (to 1e-12) and the final s_n is below tol_attr.
/// The address sample is closed under the shift before evaluation, which
/// makes the non-increase a theorem for phi-contractive systems.
CheckReport check_point_fibred(const IfsInstance& S, const PointCloud& B,
                               const std::vector<std::size_t>& depths,
                               const std::vector<AddressSpec>& addresses,
                               std::string id = "point_fibred");

/// word_fixed_point(w) vs coding_map(periodicize(w)) over |w| <= max_word_len.
CheckReport check_fixed_points(const IfsInstance& S, std::size_t max_word_len);

/// e_L = directed Hausdorff from the attractor cloud to the periodic-point
/// cloud P_L (fixed points of all words with |w| <= L); passes if e_L is
/// strictly decreasing and the final e_L is below the threshold.
CheckReport check_periodic_density(const IfsInstance& S,
                                   const std::vector<std::size_t>& word_lens,
                                   const PointCloud& attractor_cloud,
                                   std::optional<double> threshold = std::nullopt);

/// d(pi(a), pi(b)) <= diam(f_beta(M)) for address pairs sharing exactly the
/// length-m prefix beta, M a forward-invariant reference cloud.
CheckReport check_pi_continuity(const IfsInstance& S,
                                const std::vector<std::size_t>& m_depths,
                                const PointCloud& invariant_cloud,
                                std::uint64_t rng_seed);

/// Default deterministic address sample: all periodic addresses with period
/// length <= max_period plus `extra` seeded preperiod/period combinations.
std::vector<AddressSpec> sample_addresses(Alphabet alphabet,
                                          std::size_t max_period,
                                          std::size_t extra,
                                          std::uint64_t rng_seed);

struct ChainResult {
    std::vector<CheckReport> reports;  // 1', 4', 3', 2', 5' in run order
    bool consistent = false;
};

/// Runs the condition suite 1' (phi-contractive), 4' (diameter diminishing),
/// 3' (uniformly point fibred), 2' (locally uniformly point fibred) and
/// 5' (attractor + equivariant continuous coding) and reports whether the
/// pass pattern respects the proven implications
/// 1'->4', 4'->3', 3'->2', 4'->5', 5'->2'.
ChainResult run_implication_chain(const IfsInstance& S, std::uint64_t rng_seed);

}  // namespace ifslab
