#pragma once

// Benchmark harness: times encrypt/decrypt of deterministic synthetic images
// under several schemes and reports the median over repetitions together with
// the fidelity of the decrypted output.

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "frct/error.hpp"
#include "frct/image.hpp"
#include "frct/keys.hpp"
#include "frct/metrics.hpp"
#include "frct/permute.hpp"
#include "frct/pipeline.hpp"
#include "frct/report.hpp"

namespace frct {

inline constexpr std::string_view kSchemeNaiveDft = "fractal-naive-dft";
inline constexpr std::string_view kSchemeFft = "fractal-fft";
inline constexpr std::string_view kSchemeFftParallel = "fractal-fft-parallel";
inline constexpr std::string_view kSchemeAesCtr = "aes-ctr-baseline";

inline const std::vector<std::string>& all_scheme_names() {
    static const std::vector<std::string> names{std::string(kSchemeNaiveDft), std::string(kSchemeFft),
                                                std::string(kSchemeFftParallel),
                                                std::string(kSchemeAesCtr)};
    return names;
}

// ---------------------------------------------------------------------------
// AES-128-CTR baseline

using AesKey = std::array<std::uint8_t, 16>;
using CounterBlock = std::array<std::uint8_t, 16>;

struct AesCtrCiphertext {
    CounterBlock counter_base{};
    std::vector<std::uint8_t> bytes;
};

namespace detail {

inline std::vector<std::uint8_t> aes128_ctr(std::span<const std::uint8_t> in, const AesKey& key,
                                            const CounterBlock& counter) {
    std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(),
                                                                        &EVP_CIPHER_CTX_free);
    if (!ctx) throw Error("aes-ctr: cannot allocate cipher context");
    if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ctr(), nullptr, key.data(), counter.data()) != 1)
        throw Error("aes-ctr: init failed");
    std::vector<std::uint8_t> out(in.size());
    int len = 0;
    std::size_t done = 0;
    // EVP takes int lengths.
    constexpr std::size_t kChunk = 1u << 30;
    while (done < in.size()) {
        const int n = static_cast<int>(std::min(kChunk, in.size() - done));
        if (EVP_EncryptUpdate(ctx.get(), out.data() + done, &len, in.data() + done, n) != 1)
            throw Error("aes-ctr: update failed");
        done += static_cast<std::size_t>(len);
    }
    if (EVP_EncryptFinal_ex(ctx.get(), out.data() + done, &len) != 1)
        throw Error("aes-ctr: final failed");
    return out;
}

}  // namespace detail

/// AES-128-CTR over the raw sample bytes with a caller-chosen counter base.
inline AesCtrCiphertext aes_ctr_encrypt(const ImageBuffer& img, const AesKey& key,
                                        const CounterBlock& counter_base) {
    return {counter_base, detail::aes128_ctr(img.samples(), key, counter_base)};
}

/// Same, with a fresh random counter base recorded in the result.
inline AesCtrCiphertext aes_ctr_baseline_encrypt(const ImageBuffer& img, const AesKey& key) {
    CounterBlock base{};
    if (RAND_bytes(base.data(), static_cast<int>(base.size())) != 1)
        throw Error("aes-ctr: RAND_bytes failed");
    return aes_ctr_encrypt(img, key, base);
}

inline ImageBuffer aes_ctr_baseline_decrypt(const AesCtrCiphertext& ct, const AesKey& key,
                                            std::size_t width, std::size_t height,
                                            std::size_t channels) {
    return ImageBuffer(width, height, channels, detail::aes128_ctr(ct.bytes, key, ct.counter_base));
}

// ---------------------------------------------------------------------------
// Harness

struct BenchConfig {
    std::vector<std::size_t> image_sizes{256, 512, 1024};
    std::vector<std::string> schemes = all_scheme_names();
    std::size_t repetitions = 5;
    std::uint64_t seed = 1;
    std::size_t block_size = kDefaultBlockSize;
    std::string passphrase = "frct-bench";

    void validate() const {
        detail::require(repetitions >= 1, "bench: repetitions must be >= 1");
        detail::require(valid_block_size(block_size), "bench: invalid block size");
        for (auto s : image_sizes)
            detail::require(s >= block_size, "bench: image sizes must be >= block size");
    }
};

struct BenchRow {
    std::string scheme;
    std::size_t image_size = 0;
    double encrypt_seconds = 0.0;
    double decrypt_seconds = 0.0;
    double psnr_db = 0.0;
    double ssim = 0.0;
    bool skipped = false;
};

/// One encrypt + decrypt cycle of a scheme.
struct SchemeRun {
    ImageBuffer decrypted;
    double encrypt_seconds = 0.0;
    double decrypt_seconds = 0.0;
};

using SchemeAdapter = std::function<SchemeRun(const ImageBuffer&)>;
using SchemeRegistry = std::map<std::string, SchemeAdapter, std::less<>>;

/// Square grayscale test image: smooth diagonal gradient plus seeded noise.
inline ImageBuffer synthetic_image(std::size_t size, std::uint64_t seed) {
    detail::require(size >= 1, "synthetic_image: size must be >= 1");
    ImageBuffer img(size, size, 1);
    SplitMix64 rng(seed ^ (static_cast<std::uint64_t>(size) * 0x9E3779B97F4A7C15ULL));
    auto s = img.samples();
    const double span = size > 1 ? static_cast<double>(2 * (size - 1)) : 1.0;
    for (std::size_t y = 0; y < size; ++y)
        for (std::size_t x = 0; x < size; ++x) {
            const double ramp = 200.0 * static_cast<double>(x + y) / span;
            const double noise = static_cast<double>(rng.next() % 56);
            s[y * size + x] = quantize_sample(ramp + noise);
        }
    return img;
}

inline SchemeAdapter fractal_adapter(const CipherParams& params, PipelineOptions opts) {
    return [params, opts](const ImageBuffer& img) {
        auto enc = timed([&] { return encrypt_image(img, params, opts); });
        auto dec = timed([&] { return decrypt_image(enc.value, params, opts); });
        return SchemeRun{std::move(dec.value), enc.seconds, dec.seconds};
    };
}

inline SchemeAdapter aes_ctr_adapter(const AesKey& key) {
    return [key](const ImageBuffer& img) {
        auto enc = timed([&] { return aes_ctr_baseline_encrypt(img, key); });
        auto dec = timed([&] {
            return aes_ctr_baseline_decrypt(enc.value, key, img.width(), img.height(), img.channels());
        });
        return SchemeRun{std::move(dec.value), enc.seconds, dec.seconds};
    };
}

/// The four built-in schemes, keyed from cfg.passphrase.
inline SchemeRegistry default_schemes(const BenchConfig& cfg) {
    const CipherParams params = derive_params(cfg.passphrase, cfg.block_size, Mode::lossless);
    const Digest256 h = sha256(cfg.passphrase);
    AesKey aes_key{};
    std::copy_n(h.begin() + 16, aes_key.size(), aes_key.begin());

    SchemeRegistry reg;
    reg.emplace(kSchemeNaiveDft, fractal_adapter(params, {Transform::naive, 1}));
    reg.emplace(kSchemeFft, fractal_adapter(params, {Transform::fast, 1}));
    reg.emplace(kSchemeFftParallel, fractal_adapter(params, {Transform::fast, 0}));
    reg.emplace(kSchemeAesCtr, aes_ctr_adapter(aes_key));
    return reg;
}

inline double median(std::vector<double> v) {
    detail::require(!v.empty(), "median of empty set");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Runs every (scheme, size) cell serially. Unknown schemes yield skipped rows.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg, const SchemeRegistry& registry) {
    cfg.validate();
    std::vector<BenchRow> rows;
    for (const auto& name : cfg.schemes) {
        for (std::size_t size : cfg.image_sizes) {
            BenchRow row;
            row.scheme = name;
            row.image_size = size;
            auto it = registry.find(name);
            if (it == registry.end()) {
                row.skipped = true;
                row.encrypt_seconds = row.decrypt_seconds = row.psnr_db = row.ssim =
                    std::numeric_limits<double>::quiet_NaN();
                rows.push_back(row);
                continue;
            }
            const ImageBuffer img = synthetic_image(size, cfg.seed);
            std::vector<double> enc, dec;
            ImageBuffer last;
            for (std::size_t r = 0; r < cfg.repetitions; ++r) {
                SchemeRun run = it->second(img);
                enc.push_back(run.encrypt_seconds);
                dec.push_back(run.decrypt_seconds);
                last = std::move(run.decrypted);
            }
            row.encrypt_seconds = median(enc);
            row.decrypt_seconds = median(dec);
            row.psnr_db = psnr(img, last);
            row.ssim = ssim(img, last);
            rows.push_back(row);
        }
    }
    return rows;
}

inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
    return run_bench(cfg, default_schemes(cfg));
}

// ---------------------------------------------------------------------------
// Tables

enum class TableFormat { csv, markdown };

inline constexpr std::string_view kBenchCsvHeader =
    "scheme,image_size,encrypt_seconds,decrypt_seconds,psnr_db,ssim,status";

namespace detail {

inline std::string cell(const BenchRow& r, double v) { return r.skipped ? "" : format_number(v); }

}  // namespace detail

inline std::string emit_table(const std::vector<BenchRow>& rows, TableFormat format) {
    std::ostringstream out;
    if (format == TableFormat::csv) {
        out << kBenchCsvHeader << '\n';
        for (const auto& r : rows)
            out << r.scheme << ',' << r.image_size << ',' << detail::cell(r, r.encrypt_seconds) << ','
                << detail::cell(r, r.decrypt_seconds) << ',' << detail::cell(r, r.psnr_db) << ','
                << detail::cell(r, r.ssim) << ',' << (r.skipped ? "skipped" : "ok") << '\n';
        return out.str();
    }
    out << "| Method | Image Size | Encryption Time (seconds) | Decryption Time (seconds) | PSNR (dB) | SSIM |\n"
        << "|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        out << "| " << r.scheme << " | " << r.image_size << " x " << r.image_size << " | ";
        if (r.skipped) {
            out << "skipped | skipped | skipped | skipped |\n";
            continue;
        }
        out << format_number(r.encrypt_seconds) << " | " << format_number(r.decrypt_seconds) << " | "
            << format_number(r.psnr_db) << " | " << format_number(r.ssim) << " |\n";
    }
    return out.str();
}

/// Inverse of emit_table(..., csv).
inline std::vector<BenchRow> parse_bench_csv(std::string_view text) {
    std::vector<BenchRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kBenchCsvHeader) throw FormatError("bench csv: bad header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != 7) throw FormatError("bench csv: expected 7 fields");
        BenchRow r;
        r.scheme = f[0];
        r.image_size = static_cast<std::size_t>(parse_number(f[1]));
        r.skipped = f[6] == "skipped";
        auto num = [&](const std::string& s) {
            return s.empty() ? std::numeric_limits<double>::quiet_NaN() : parse_number(s);
        };
        r.encrypt_seconds = num(f[2]);
        r.decrypt_seconds = num(f[3]);
        r.psnr_db = num(f[4]);
        r.ssim = num(f[5]);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace frct
