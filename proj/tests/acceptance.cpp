// Acceptance gate: one line per criterion, exit 0 iff all pass.
// Usage: acceptance <path-to-ifslab-cli> <configs-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ifslab/checks.hpp"
#include "ifslab/cloud.hpp"
#include "ifslab/ifs.hpp"
#include "ifslab/maps.hpp"
#include "ifslab/words.hpp"

using namespace ifslab;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int n, const std::string& what, bool ok, double seconds,
            double limit_seconds, const std::string& detail = "") {
    bool passed = ok && seconds < limit_seconds;
    if (!passed) ++g_failures;
    std::printf("ACCEPT %2d %s %s time=%.2fs limit=%.0fs%s%s\n", n,
                passed ? "PASS" : "FAIL", what.c_str(), seconds, limit_seconds,
                detail.empty() ? "" : " ", detail.c_str());
    std::fflush(stdout);
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

PointCloud random_cloud(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    PointCloud c(2);
    for (std::size_t i = 0; i < n; ++i) c.add(Point{unit(rng), unit(rng)});
    return c;
}

IfsInstance cantor() {
    std::vector<ContractionMap> maps;
    maps.emplace_back(AffineMap{{1.0 / 3.0}, {0.0}},
                      ComparisonFunction::linear(1.0 / 3.0));
    maps.emplace_back(AffineMap{{1.0 / 3.0}, {2.0 / 3.0}},
                      ComparisonFunction::linear(1.0 / 3.0));
    return IfsInstance(std::move(maps));
}

IfsInstance sierpinski() {
    Tolerances tol;
    tol.tol_attr = 0.002;
    std::vector<ContractionMap> maps;
    for (Point v : {Point{0.0, 0.0}, Point{0.5, 0.0}, Point{0.0, 0.5}})
        maps.emplace_back(AffineMap{{0.5, 0.0, 0.0, 0.5}, v},
                          ComparisonFunction::linear(0.5));
    return IfsInstance(std::move(maps), tol);
}

PointCloud single(double x) {
    PointCloud c(1);
    c.add(Point{x});
    return c;
}

// H_d recovered by bisecting the dilation predicate; the limit must agree
// with the direct computation to 1 ulp.
double bisect_hausdorff(const PointCloud& a, const PointCloud& b, double hi) {
    double lo = 0.0;
    for (int i = 0; i < 90; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (within_dilation(a, b, mid) && within_dilation(b, a, mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

void criterion_1() {
    Timer t;
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> size(1, 20);
    double worst = 0.0;
    bool ulp_ok = true;
    for (int i = 0; i < 500; ++i) {
        PointCloud a = random_cloud(rng, size(rng));
        PointCloud b = random_cloud(rng, size(rng));
        PointCloud c = random_cloud(rng, size(rng));
        double ab = hausdorff(a, b);
        if (ab != hausdorff(b, a)) worst = std::max(worst, 1.0);
        worst = std::max(worst, ab - hausdorff(a, c) - hausdorff(c, b));
        double bis = bisect_hausdorff(a, b, 8.0);
        if (bis < std::nextafter(ab, 0.0) ||
            bis > std::nextafter(ab, std::numeric_limits<double>::infinity()))
            ulp_ok = false;
    }
    report(1, "hausdorff metric axioms + bisection consistency",
           worst <= 1e-12 && ulp_ok, t.seconds(), 5.0,
           "residual=" + std::to_string(worst));
}

void criterion_2() {
    Timer t;
    CheckReport r = check_union_inequality(100, 4, 20, 202);
    report(2, "union inequality (Prop 2.2)", r.passed && r.residual <= 1e-12,
           t.seconds(), 1.0);
}

void criterion_3() {
    Timer t;
    IfsInstance S = cantor();
    AttractorResult attr = attractor(S, single(0.0));
    PointCloud oracle(1);
    for (const Word& w : enumerate_words(S.alphabet(), 10))
        oracle.add(eval_word(S.maps(), w, Point{0.0}));
    bool ok = attr.converged &&
              hausdorff(attr.cloud, oracle) <=
                  S.tol().tol_attr + std::pow(3.0, -10);
    ok = ok &&
         std::abs(coding_map(S, AddressSpec::parse(S.alphabet(), "|0"))[0]) <= 1e-9 &&
         std::abs(coding_map(S, AddressSpec::parse(S.alphabet(), "|1"))[0] - 1.0) <=
             1e-9;
    ok = ok &&
         std::abs(word_fixed_point(S, Word::parse(S.alphabet(), "0.1"))[0] - 0.25) <=
             1e-9 &&
         std::abs(word_fixed_point(S, Word::parse(S.alphabet(), "1.0"))[0] - 0.75) <=
             1e-9;
    report(3, "cantor attractor, coding map, word fixed points", ok, t.seconds(), 5.0);
}

void criterion_4() {
    Timer t;
    IfsInstance S = cantor();
    PointCloud B(1);
    B.add(Point{0.0});
    B.add(Point{1.0});
    DiminishingCertificate cert = diminishing_certificate(S, B, 10);
    bool ok = cert.max_diams.size() == 10 && cert.phi_bounds.has_value();
    for (std::size_t i = 0; ok && i < 10; ++i) {
        double expected = std::pow(3.0, -(double)(i + 1));
        ok = std::abs(cert.max_diams[i] - expected) <= 1e-12 &&
             cert.max_diams[i] <= (*cert.phi_bounds)[i] + 1e-12;
    }
    std::vector<ContractionMap> id_maps;
    id_maps.emplace_back(AffineMap{{1.0}, {0.0}});
    DiminishingCertificate flat =
        diminishing_certificate(IfsInstance(std::move(id_maps)), B, 10);
    for (double d : flat.max_diams) ok = ok && d == 1.0;
    ok = ok && !flat.verdict;
    report(4, "diminishing certificate 3^-n + identity non-verdict", ok,
           t.seconds(), 2.0);
}

void criterion_5() {
    Timer t;
    bool ok = true;
    double worst = 0.0;
    for (const IfsInstance& S : {cantor(), sierpinski()}) {
        auto addresses = sample_addresses(S.alphabet(), 3, 12, 505);
        if (addresses.size() > 20)
            addresses.erase(addresses.begin() + 20, addresses.end());
        CheckReport r = check_equivariance(S, addresses);
        ok = ok && r.passed && r.residual <= 10 * S.tol().tol_point;
        worst = std::max(worst, r.residual);
    }
    report(5, "coding map equivariance (Prop 3.3)", ok, t.seconds(), 2.0,
           "residual=" + std::to_string(worst));
}

void criterion_6() {
    Timer t;
    bool ok = true;
    for (const IfsInstance& S : {cantor(), sierpinski()}) {
        CheckReport r = check_fixed_points(S, 4);
        ok = ok && r.passed;
    }
    report(6, "fixed points match periodic coding (Prop 3.6)", ok, t.seconds(), 5.0);
}

void criterion_7() {
    Timer t;
    IfsInstance S = cantor();
    AttractorResult attr = attractor(S, single(0.0));
    double resolution = S.tol().tol_attr + S.tol().cell();
    CheckReport r = check_periodic_density(S, {2, 4, 6, 8}, attr.cloud,
                                           std::pow(3.0, -8) + resolution);
    report(7, "periodic point density (Prop 3.7)", attr.converged && r.passed,
           t.seconds(), 10.0);
}

void criterion_8() {
    Timer t;
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    std::uniform_real_distribution<double> norm_pick(0.25, 0.65);
    std::uniform_real_distribution<double> off(0.0, 0.3);
    std::uniform_int_distribution<int> nmaps(2, 3);
    int inconsistent = 0, not_all_passed = 0;
    for (int trial = 0; trial < 50; ++trial) {
        int k = nmaps(rng);
        std::vector<AffineMap> raw;
        double max_norm = 0.0;
        for (int i = 0; i < k; ++i) {
            AffineMap f;
            f.matrix = {entry(rng), entry(rng), entry(rng), entry(rng)};
            double nrm = operator_norm(f.matrix, 2);
            double target = norm_pick(rng);
            if (nrm < 1e-6) {
                f.matrix = {target, 0.0, 0.0, target};
                nrm = target;
            } else {
                for (double& v : f.matrix) v *= target / nrm;
                nrm = operator_norm(f.matrix, 2);
            }
            max_norm = std::max(max_norm, nrm);
            f.offset = {off(rng), off(rng)};
            raw.push_back(std::move(f));
        }
        ComparisonFunction phi =
            ComparisonFunction::linear(std::min(0.99, max_norm * (1 + 1e-6)));
        Tolerances tol;
        tol.tol_attr = 0.05;
        std::vector<ContractionMap> maps;
        for (AffineMap& f : raw) maps.emplace_back(std::move(f), phi);
        IfsInstance S(std::move(maps), tol);
        ChainResult chain = run_implication_chain(S, 808 + trial);
        if (!chain.consistent) ++inconsistent;
        for (const CheckReport& r : chain.reports)
            if (!r.passed) ++not_all_passed;
    }
    report(8, "implication chain on 50 random contractive systems",
           inconsistent == 0, t.seconds(), 60.0,
           "inconsistent=" + std::to_string(inconsistent) +
               " failed_reports=" + std::to_string(not_all_passed));
}

void criterion_9() {
    Timer t;
    bool ok = true;
    std::string detail;
    for (const IfsInstance& S : {cantor(), sierpinski()}) {
        std::size_t d = S.dim();
        PointCloud seed(d);
        seed.add(Point(d, 0.0));
        AttractorResult attr = attractor(S, seed);
        double h = hausdorff(chaos_game(S, 100000, 100, 909), attr.cloud);
        ok = ok && attr.converged && h <= 10 * S.tol().tol_attr;
        detail += (detail.empty() ? "h=" : ",") + std::to_string(h);
    }
    report(9, "chaos game cross-oracle", ok, t.seconds(), 5.0, detail);
}

// Criterion 10: every CLI command byte-identical across two runs.
struct CliRun {
    int exit_code = -1;
    std::string stdout_text;
};

CliRun run_cli(const std::string& cli, const std::string& args,
               const fs::path& stdout_file) {
    std::string cmd = "IFSLAB_SEED=4242 " + cli + " " + args + " > " +
                      stdout_file.string() + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    CliRun r;
    r.exit_code = rc;
    std::ifstream in(stdout_file, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    r.stdout_text = buf.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion_10(const std::string& cli, const std::string& configs) {
    Timer t;
    fs::path dir = fs::temp_directory_path() / "ifslab_accept";
    fs::create_directories(dir);
    std::string cantor_cfg = configs + "/cantor.json";
    std::string sier_cfg = configs + "/sierpinski.json";

    struct Cmd {
        std::string name, args;
        std::string out_file;  // snapshotted between the two identical runs
    };
    fs::path a1 = dir / "a.csv";
    fs::path r1 = dir / "r.pgm";
    std::vector<Cmd> cmds = {
        {"attractor", cantor_cfg + " " + a1.string(), a1.string()},
        {"address", cantor_cfg + " \"0|1\"", ""},
        {"fixpoint", cantor_cfg + " 0.1", ""},
        {"verify", cantor_cfg, ""},
        {"certificate", cantor_cfg, ""},
        {"render", sier_cfg + " " + r1.string() + " --steps 200000", r1.string()},
        {"explore --trials 5", "", ""},
    };

    bool ok = true;
    std::string detail;
    int idx = 0;
    for (const Cmd& cmd : cmds) {
        CliRun x = run_cli(cli, cmd.name + " " + cmd.args,
                           dir / ("o" + std::to_string(idx) + "a.txt"));
        std::string first_bytes;
        if (!cmd.out_file.empty()) first_bytes = slurp(cmd.out_file);
        CliRun y = run_cli(cli, cmd.name + " " + cmd.args,
                           dir / ("o" + std::to_string(idx) + "b.txt"));
        bool same = x.exit_code == y.exit_code && x.stdout_text == y.stdout_text;
        if (same && !cmd.out_file.empty()) same = first_bytes == slurp(cmd.out_file);
        if (!same) {
            ok = false;
            detail += " mismatch:" + cmd.name;
        }
        ++idx;
    }
    // hausdorff command on the cloud written above
    CliRun hx = run_cli(cli, "hausdorff " + a1.string() + " " + a1.string(),
                        dir / "h1.txt");
    CliRun hy = run_cli(cli, "hausdorff " + a1.string() + " " + a1.string(),
                        dir / "h2.txt");
    if (!(hx.exit_code == hy.exit_code && hx.stdout_text == hy.stdout_text &&
          hx.stdout_text == "0\n")) {
        ok = false;
        detail += " mismatch:hausdorff";
    }
    report(10, "CLI determinism across repeated runs", ok, t.seconds(), 120.0,
           detail);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <ifslab-cli> <configs-dir>\n";
        return 2;
    }
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(argv[1], argv[2]);
    if (g_failures) {
        std::printf("ACCEPTANCE FAIL (%d criterion(s))\n", g_failures);
        return 1;
    }
    std::printf("ACCEPTANCE PASS\n");
    return 0;
}
