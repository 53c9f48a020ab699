// frct: command-line front end.
//
// Exit codes: 0 success, 2 usage, 3 I/O or format, 4 precondition, 5 wrong key.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "frct/frct.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kIoFormat = 3,
    kPrecondition = 4,
    kWrongKey = 5,
};

struct EncryptArgs {
    std::string in, out, key;
    std::size_t block_size = frct::kDefaultBlockSize;
    std::string mode = "lossless";
};

struct DecryptArgs {
    std::string in, out, key;
};

struct MetricsArgs {
    std::string ref, test, format = "csv";
};

struct HistogramArgs {
    std::string in, out;
};

struct BenchArgs {
    std::vector<std::size_t> sizes{256, 512};
    std::vector<std::string> schemes{"all"};
    std::size_t reps = 5;
    std::string format = "markdown";
    std::uint64_t seed = 1;
    std::size_t block_size = frct::kDefaultBlockSize;
};

int cmd_encrypt(const EncryptArgs& a) {
    const frct::Mode mode = a.mode == "quantized" ? frct::Mode::quantized : frct::Mode::lossless;
    const frct::ImageBuffer img = frct::load_image(a.in);
    const frct::CipherParams params = frct::derive_params(a.key, a.block_size, mode);
    std::cerr << "arnold_iterations=" << params.arnold_iterations
              << " key_fingerprint=" << frct::to_hex(params.key_fingerprint) << '\n';

    const auto container = frct::encrypt_image(img, params);
    if (mode == frct::Mode::lossless)
        frct::write_file_bytes(a.out, frct::encode_container(container));
    else
        frct::save_image(frct::render_quantized(container), a.out);
    return kOk;
}

int cmd_decrypt(const DecryptArgs& a) {
    const auto bytes = frct::read_file_bytes(a.in);
    const frct::EncryptedContainer container = frct::decode_container(bytes);
    const auto& h = container.header;
    const frct::CipherParams params = frct::derive_params(a.key, h.block_size, h.mode);
    const frct::ImageBuffer img = frct::decrypt_image(container, params);
    frct::save_image(img, a.out);
    return kOk;
}

int cmd_metrics(const MetricsArgs& a) {
    const auto ref = frct::load_image(a.ref);
    const auto test = frct::load_image(a.test);
    const auto report = frct::compute_report(ref, test);
    if (a.format == "json")
        std::cout << frct::report_json(report).dump(2) << '\n';
    else
        std::cout << frct::report_csv(report);
    return kOk;
}

int cmd_histogram(const HistogramArgs& a) {
    const auto img = frct::load_image(a.in);
    const std::string csv = frct::histogram_csv(frct::histogram(img));
    frct::write_file_bytes(a.out, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
    return kOk;
}

int cmd_bench(const BenchArgs& a) {
    frct::BenchConfig cfg;
    cfg.image_sizes = a.sizes;
    cfg.repetitions = a.reps;
    cfg.seed = a.seed;
    cfg.block_size = a.block_size;
    cfg.schemes.clear();
    for (const auto& s : a.schemes) {
        if (s == "all") {
            for (const auto& n : frct::all_scheme_names()) cfg.schemes.push_back(n);
        } else {
            cfg.schemes.push_back(s);
        }
    }
    const auto rows = frct::run_bench(cfg);
    std::cout << frct::emit_table(rows, a.format == "csv" ? frct::TableFormat::csv
                                                          : frct::TableFormat::markdown);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-Fourier / Arnold cat map image cipher"};
    app.require_subcommand(1);

    const std::vector<std::size_t> block_sizes{8, 16, 32, 64, 128};

    EncryptArgs enc;
    auto* enc_cmd = app.add_subcommand("encrypt", "Encrypt a PGM/PPM image");
    enc_cmd->add_option("--in", enc.in, "Input PGM/PPM image")->required();
    enc_cmd->add_option("--out", enc.out, "Output container (or quantized image)")->required();
    enc_cmd->add_option("--key", enc.key, "Passphrase")->envname("FRCT_KEY")->required();
    enc_cmd->add_option("--block-size", enc.block_size, "Block size")
        ->check(CLI::IsMember(block_sizes))
        ->capture_default_str();
    enc_cmd->add_option("--mode", enc.mode, "lossless or quantized")
        ->check(CLI::IsMember({"lossless", "quantized"}))
        ->capture_default_str();

    DecryptArgs dec;
    auto* dec_cmd = app.add_subcommand("decrypt", "Decrypt a container to PGM/PPM");
    dec_cmd->add_option("--in", dec.in, "Input container")->required();
    dec_cmd->add_option("--out", dec.out, "Output PGM/PPM image")->required();
    dec_cmd->add_option("--key", dec.key, "Passphrase")->envname("FRCT_KEY")->required();

    MetricsArgs met;
    auto* met_cmd = app.add_subcommand("metrics", "PSNR/SSIM and histogram statistics");
    met_cmd->add_option("--ref", met.ref, "Reference image")->required();
    met_cmd->add_option("--test", met.test, "Test image")->required();
    met_cmd->add_option("--format", met.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    HistogramArgs hist;
    auto* hist_cmd = app.add_subcommand("histogram", "Write a 256-bin per-channel histogram CSV");
    hist_cmd->add_option("--in", hist.in, "Input image")->required();
    hist_cmd->add_option("--out", hist.out, "Output CSV")->required();

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark harness");
    bench_cmd->add_option("--sizes", bench.sizes, "Square image sizes")->delimiter(',')->capture_default_str();
    std::vector<std::string> scheme_choices = frct::all_scheme_names();
    scheme_choices.emplace_back("all");
    bench_cmd->add_option("--schemes", bench.schemes, "Schemes, comma separated, or 'all'")
        ->delimiter(',')
        ->check(CLI::IsMember(scheme_choices))
        ->capture_default_str();
    bench_cmd->add_option("--reps", bench.reps, "Repetitions (median reported)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--format", bench.format, "csv or markdown")
        ->check(CLI::IsMember({"csv", "markdown"}))
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Synthetic image seed")->capture_default_str();
    bench_cmd->add_option("--block-size", bench.block_size, "Block size")
        ->check(CLI::IsMember(block_sizes))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*enc_cmd) return cmd_encrypt(enc);
        if (*dec_cmd) return cmd_decrypt(dec);
        if (*met_cmd) return cmd_metrics(met);
        if (*hist_cmd) return cmd_histogram(hist);
        if (*bench_cmd) return cmd_bench(bench);
    } catch (const frct::WrongKeyError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kWrongKey;
    } catch (const frct::PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kPrecondition;
    } catch (const frct::FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoFormat;
    } catch (const frct::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoFormat;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kUsage;
}
