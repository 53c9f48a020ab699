// Acceptance suite. Usage: frct_acceptance [criterion-number]
// Prints one PASS/FAIL line per criterion; exit status is nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli_harness.hpp"
#include "frct/frct.hpp"
#include "oracles.hpp"

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

// 1. Lossless round trip over 200 randomized images.
Outcome lossless_round_trip() {
    Outcome o;
    std::mt19937_64 rng(2024);
    struct Shape { std::size_t w, h; };
    const std::vector<Shape> fixed{{3, 3}, {17, 23}, {64, 64}, {256, 256}};
    const auto start = std::chrono::steady_clock::now();
    int failures = 0;
    for (int i = 0; i < 200; ++i) {
        Shape s = i % 5 < 4 ? fixed[static_cast<std::size_t>(i % 5)]
                            : Shape{1 + rng() % 100, 1 + rng() % 100};
        const std::size_t ch = (i / 5) % 2 ? 3 : 1;
        const std::size_t b = (i / 10) % 2 ? 32 : 8;
        const auto img = oracle::random_image(s.w, s.h, ch, rng);
        const auto params = frct::derive_params("key-" + std::to_string(rng()), b);
        const auto bytes = frct::encode_container(frct::encrypt_image(img, params));
        if (frct::decrypt_image(frct::decode_container(bytes), params) != img) ++failures;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(failures == 0, std::to_string(failures) + " of 200 images not restored exactly");
    o.check(secs < 120.0, "runtime " + fmt(secs) + " s exceeds 120 s");
    o.note("200 images, " + fmt(secs) + " s");
    return o;
}

// 2. FFT vs direct DFT on every power-of-two shape up to 64x64.
Outcome fft_oracle_equivalence() {
    Outcome o;
    std::mt19937_64 rng(7);
    double worst_fwd = 0, worst_inv = 0, worst_rt = 0, worst_parseval = 0;
    for (std::size_t r = 1; r <= 64; r *= 2)
        for (std::size_t c = 1; c <= 64; c *= 2) {
            const auto g = oracle::random_grid(r, c, rng);
            const auto f_fast = frct::fft2(g);
            const auto f_naive = frct::dft2_naive(g);
            worst_fwd = std::max(worst_fwd, frct::max_abs_diff(f_fast, f_naive));
            worst_inv = std::max(worst_inv, frct::max_abs_diff(frct::ifft2(g), frct::idft2_naive(g)));
            worst_rt = std::max(worst_rt, frct::max_abs_diff(frct::ifft2(f_fast), g));
            worst_rt = std::max(worst_rt, frct::max_abs_diff(frct::idft2_naive(f_naive), g));
            double e_space = 0, e_freq = 0;
            for (const auto& z : g.values()) e_space += std::norm(z);
            for (const auto& z : f_naive.values()) e_freq += std::norm(z);
            e_freq /= static_cast<double>(g.size());
            worst_parseval = std::max(worst_parseval, std::abs(e_space - e_freq) / e_space);
        }
    o.check(worst_fwd < 1e-6, "fft2 vs dft2_naive " + fmt(worst_fwd));
    o.check(worst_inv < 1e-6, "ifft2 vs idft2_naive " + fmt(worst_inv));
    o.check(worst_rt < 1e-9, "round trip " + fmt(worst_rt));
    o.check(worst_parseval < 1e-9, "Parseval relative " + fmt(worst_parseval));
    o.note("max errors fwd " + fmt(worst_fwd) + ", inv " + fmt(worst_inv) + ", round trip " + fmt(worst_rt) +
           ", Parseval " + fmt(worst_parseval));
    return o;
}

// 3. Arnold map bijectivity, inverse, period, and the 2x2 orbit.
Outcome arnold_correctness() {
    Outcome o;
    for (std::size_t n : {2u, 4u, 8u, 16u, 32u, 64u}) {
        for (std::uint32_t k : {1u, 3u, 7u}) {
            std::vector<bool> hit(n * n, false);
            bool bijective = true, inverse_ok = true;
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) {
                    const auto to = frct::arnold_forward({x, y}, {n, k});
                    const std::size_t idx = to.x * n + to.y;
                    if (hit[idx]) bijective = false;
                    hit[idx] = true;
                    if (frct::arnold_inverse(to, {n, k}) != frct::Coord{x, y}) inverse_ok = false;
                }
            o.check(bijective, "collision N=" + std::to_string(n) + " k=" + std::to_string(k));
            o.check(inverse_ok, "inverse failed N=" + std::to_string(n) + " k=" + std::to_string(k));
        }
        const auto period = static_cast<std::uint32_t>(oracle::arnold_period(n));
        bool identity = true;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (frct::arnold_forward({x, y}, {n, period}) != frct::Coord{x, y}) identity = false;
        o.check(identity, "period " + std::to_string(period) + " not identity for N=" + std::to_string(n));
    }
    const frct::Coord c0{1, 0};
    o.check(frct::arnold_forward(c0, {2, 1}) == frct::Coord{1, 1} &&
                frct::arnold_forward(c0, {2, 2}) == frct::Coord{0, 1} &&
                frct::arnold_forward(c0, {2, 3}) == frct::Coord{1, 0},
            "N=2 orbit (1,0)->(1,1)->(0,1)->(1,0) broken");
    return o;
}

// 4. Keystream and shuffle golden vectors, round trips.
Outcome permutation_determinism() {
    Outcome o;
    for (int run = 0; run < 2; ++run) {
        o.check(frct::SplitMix64(0).next() == 0xE220A8397B1DCDAFULL, "SplitMix64(0) golden");
        const auto p = frct::gen_permutation(0, 4);
        o.check(std::vector<std::size_t>(p.mapping().begin(), p.mapping().end()) ==
                    std::vector<std::size_t>{2, 1, 0, 3},
                "gen_permutation(0, 4) golden");
    }
    std::mt19937_64 rng(4);
    for (std::size_t n : {1u, 2u, 10u, 100u, 1000u, 4096u, 10000u}) {
        std::vector<double> data(n);
        for (auto& v : data) v = static_cast<double>(rng());
        const auto p = frct::gen_permutation(rng(), n);
        o.check(frct::invert_permutation(frct::apply_permutation(data, p), p) == data,
                "apply/invert n=" + std::to_string(n));
        o.check(frct::apply_permutation(frct::invert_permutation(data, p), p) == data,
                "invert/apply n=" + std::to_string(n));
    }
    return o;
}

// 5. Timing trends from the benchmark harness.
Outcome performance_trends() {
    Outcome o;
    frct::BenchConfig cfg;
    cfg.image_sizes = {256, 512, 1024};
    cfg.schemes = {"fractal-naive-dft", "fractal-fft", "fractal-fft-parallel"};
    cfg.repetitions = 5;
    const auto start = std::chrono::steady_clock::now();
    const auto rows = frct::run_bench(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << frct::emit_table(rows, frct::TableFormat::markdown);

    auto find = [&](const std::string& scheme, std::size_t size) -> const frct::BenchRow& {
        return *std::find_if(rows.begin(), rows.end(),
                             [&](const auto& r) { return r.scheme == scheme && r.image_size == size; });
    };
    const double naive512 = find("fractal-naive-dft", 512).encrypt_seconds;
    const double fft512 = find("fractal-fft", 512).encrypt_seconds;
    o.check(naive512 >= 5.0 * fft512, "512x512 speedup only " + fmt(naive512 / fft512) + "x");
    o.note("512x512 naive/fft speedup " + fmt(naive512 / fft512) + "x");

    const unsigned cores = std::thread::hardware_concurrency();
    const double par512 = find("fractal-fft-parallel", 512).encrypt_seconds;
    if (cores >= 4) {
        o.check(par512 <= fft512, "parallel " + fmt(par512) + " s > serial " + fmt(fft512) + " s");
    } else {
        o.note("parallel<=serial not applicable on " + std::to_string(cores) + " core(s) (needs >=4); measured " +
               fmt(par512) + " vs " + fmt(fft512) + " s");
    }

    for (const auto& scheme : cfg.schemes) {
        double prev = 0;
        for (std::size_t size : cfg.image_sizes) {
            const auto& r = find(scheme, size);
            o.check(r.encrypt_seconds >= prev, scheme + " encrypt time decreased at " + std::to_string(size));
            prev = r.encrypt_seconds;
            const double ratio = std::max(r.encrypt_seconds, r.decrypt_seconds) /
                                 std::min(r.encrypt_seconds, r.decrypt_seconds);
            o.check(ratio <= 2.0, scheme + " enc/dec ratio " + fmt(ratio) + " at " + std::to_string(size));
        }
    }
    o.check(secs < 600.0, "bench runtime " + fmt(secs) + " s exceeds 600 s");
    o.note("bench runtime " + fmt(secs) + " s");
    return o;
}

// 6. Histogram of the quantized ciphertext rendering vs the plaintext.
Outcome histogram_flatness() {
    Outcome o;
    for (const char* name : {"astronaut", "coffee", "chelsea"}) {
        const auto img = frct::load_image(std::string(FRCT_TEST_DATA_DIR) + "/" + name + ".ppm");
        const auto params = frct::derive_params("histogram-check", 32, frct::Mode::quantized);
        const auto rendered = frct::render_quantized(frct::encrypt_image(img, params));
        const auto hp = frct::histogram(img);
        const auto hc = frct::histogram(rendered);
        for (std::size_t c = 0; c < hp.size(); ++c) {
            const double ep = frct::shannon_entropy(hp[c]), ec = frct::shannon_entropy(hc[c]);
            const double xp = frct::chi_square_uniform(hp[c]), xc = frct::chi_square_uniform(hc[c]);
            const std::string tag = std::string(name) + "[" + std::to_string(c) + "]";
            o.check(ec > ep, tag + " entropy " + fmt(ec) + " <= plain " + fmt(ep));
            o.check(xc < xp, tag + " chi2 " + fmt(xc) + " >= plain " + fmt(xp));
        }
    }
    return o;
}

// 7. Metric golden values.
Outcome metrics_golden() {
    Outcome o;
    const frct::ImageBuffer black(32, 32, 1, std::vector<std::uint8_t>(1024, 0));
    const frct::ImageBuffer white(32, 32, 1, std::vector<std::uint8_t>(1024, 255));
    o.check(frct::psnr(black, white) == 0.0, "psnr(all-0, all-255) = " + fmt(frct::psnr(black, white)));

    frct::ImageBuffer a(48, 48, 3);
    std::mt19937_64 rng(77);
    for (auto& v : a.samples()) v = static_cast<std::uint8_t>(rng() % 250);
    auto b = a;
    for (auto& v : b.samples()) v = static_cast<std::uint8_t>(v + 5);
    const double p = frct::psnr(a, b);
    o.check(std::abs(p - 34.15) <= 0.01, "psnr +5 offset = " + fmt(p));
    o.check(frct::ssim(a, a) == 1.0, "ssim(a, a) != 1");
    o.check(frct::ssim(black, black) == 1.0, "ssim(flat, flat) != 1");
    return o;
}

// 8. CLI contract through the filesystem.
Outcome cli_contract() {
    Outcome o;
    const std::string bin = FRCT_CLI_PATH;
    cli::TempDir dir("acceptance");
    auto q = [](const std::string& s) { return "'" + s + "'"; };
    std::mt19937_64 rng(8);
    const auto in = dir.file("in.ppm"), enc = dir.file("c.frct"), out = dir.file("out.ppm");
    frct::save_image(oracle::random_image(45, 31, 3, rng), in);

    auto r = cli::run(bin, "encrypt --in " + q(in) + " --out " + q(enc) + " --key s3cret");
    o.check(r.code == 0, "encrypt exit " + std::to_string(r.code));
    r = cli::run(bin, "decrypt --in " + q(enc) + " --out " + q(out) + " --key s3cret");
    o.check(r.code == 0, "decrypt exit " + std::to_string(r.code));
    o.check(cli::slurp(out) == cli::slurp(in), "decrypted file differs from input");

    const auto bytes = frct::read_file_bytes(enc);
    const auto header = frct::decode_header(bytes);
    const auto again = frct::encode_header(header);
    o.check(std::equal(again.begin(), again.end(), bytes.begin()), "header re-encode differs");

    const auto wrong_out = dir.file("wrong.ppm");
    r = cli::run(bin, "decrypt --in " + q(enc) + " --out " + q(wrong_out) + " --key nope");
    o.check(r.code == 5, "wrong key exit " + std::to_string(r.code));
    o.check(!std::filesystem::exists(wrong_out), "wrong key produced output");

    r = cli::run(bin, "encrypt --in " + q(in) + " --out " + q(enc) + " --key k --block-size 48");
    o.check(r.code == 2, "bad block size exit " + std::to_string(r.code));

    std::filesystem::resize_file(enc, 20);
    r = cli::run(bin, "decrypt --in " + q(enc) + " --out " + q(out) + " --key s3cret");
    o.check(r.code == 3, "truncated container exit " + std::to_string(r.code));

    const auto small = dir.file("small.ppm");
    frct::save_image(oracle::random_image(45, 30, 3, rng), small);
    r = cli::run(bin, "metrics --ref " + q(in) + " --test " + q(small));
    o.check(r.code == 4, "shape mismatch exit " + std::to_string(r.code));
    return o;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "lossless round trip", lossless_round_trip},
        {2, "FFT oracle equivalence", fft_oracle_equivalence},
        {3, "Arnold correctness", arnold_correctness},
        {4, "permutation determinism", permutation_determinism},
        {5, "performance trends", performance_trends},
        {6, "histogram flatness", histogram_flatness},
        {7, "metrics golden values", metrics_golden},
        {8, "CLI contract", cli_contract},
    };
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    bool all_pass = true;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        all_pass = all_pass && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name << ")"
                  << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
    }
    return all_pass ? 0 : 1;
}
