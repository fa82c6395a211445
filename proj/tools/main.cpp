#include <CLI11.hpp>

#include "qexpand/cache.hpp"
#include "qexpand/families.hpp"
#include "qexpand/numeric.hpp"
#include "qexpand/runner.hpp"
#include "qexpand/version.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

std::string trimmed(const std::string& s) {
    const size_t first = s.find_first_not_of(" \t");
    if (first == std::string::npos)
        return "";
    const size_t last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::optional<std::vector<qexpand::Int>> parse_sequence(const std::string& text) {
    std::vector<qexpand::Int> terms;
    size_t start = 0;
    for (;;) {
        const size_t comma = text.find(',', start);
        const std::string token =
            trimmed(text.substr(start, comma == std::string::npos ? std::string::npos
                                                                  : comma - start));
        auto value = qexpand::int_from_string(token);
        if (!value)
            return std::nullopt;
        terms.push_back(std::move(*value));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return terms;
}

std::optional<std::array<long, 3>> parse_triple(const std::string& text) {
    std::array<long, 3> out{};
    size_t start = 0;
    for (int part = 0; part < 3; ++part) {
        const size_t comma = text.find(',', start);
        const bool last = part == 2;
        if (last != (comma == std::string::npos))
            return std::nullopt;
        const std::string token =
            trimmed(text.substr(start, last ? std::string::npos : comma - start));
        auto value = qexpand::int_from_string(token);
        if (!value || !value->fits_slong_p())
            return std::nullopt;
        out[static_cast<size_t>(part)] = value->get_si();
        start = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    using qexpand::Command;
    qexpand::RunConfig cfg;

    std::string format = "plain";
    std::string cache_dir;
    bool no_cache = false;
    std::string sequence_text;
    std::string mutate_text;
    long c_param = -1;
    long scan_d = 2, scan_kmax = 10, scan_imax = 10, scan_rmax = 3;

    CLI::App app{"qexpand — exact expansion coefficients, structure constants, and "
                 "identity proofs for binomial-product families and their q-analogs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qexpand::kToolVersion);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv", "plain"}))
            ->capture_default_str();
        cmd->add_option("--jobs", cfg.jobs, "worker threads for grid commands")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--cache-dir", cache_dir,
                        "cache directory (default: QEXPAND_CACHE_DIR, else ~/.cache/qexpand)");
        cmd->add_flag("--no-cache", no_cache, "compute without reading or writing the cache");
        cmd->add_option("--seed", cfg.seed, "seed recorded in the cache key")
            ->capture_default_str();
        return cmd;
    };
    auto add_family = [&](CLI::App* cmd, bool with_c) {
        cmd->add_option("--family", cfg.family,
                        "family id, e.g. C-2.1.1, C-2.1.2:c=1, Q-3.2, D:d=2")
            ->required();
        if (with_c)
            cmd->add_option("--c", c_param,
                            "column shift for C-2.1.2 / Q-3.1.2 (alternative to :c= in the id)")
                ->check(CLI::NonNegativeNumber);
    };

    CLI::App* verify = add_common(app.add_subcommand(
        "verify", "prove the classical product identities f(n,i)f(n,k) = sum_j S f(n,j) "
                  "for every k <= K, i <= I"));
    add_family(verify, true);
    verify->add_option("--k", cfg.k, "largest k")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    verify->add_option("--i", cfg.i, "largest i")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    verify->add_option("--mutate-s", mutate_text)->group(""); // test hook: "k,j,i"

    CLI::App* qverify = add_common(app.add_subcommand(
        "qverify", "prove the q product identities and exponent laws of a q family"));
    add_family(qverify, true);
    qverify->add_option("--k", cfg.k, "largest k")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    qverify->add_option("--i", cfg.i, "largest i")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    qverify->add_option("--mutate-s", mutate_text)->group("");

    CLI::App* coeffs = add_common(app.add_subcommand(
        "coeffs", "expansion coefficients of f(n,k)^r in the family's own basis"));
    add_family(coeffs, true);
    coeffs->add_option("--k", cfg.k, "index to expand")->required()
        ->check(CLI::NonNegativeNumber);
    coeffs->add_option("--r", cfg.r, "power")->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI::App* schmidt = add_common(app.add_subcommand(
        "schmidt", "the numbers c^(r)_k defined by sum_k binom(n,k)^r binom(n+k,k)^r "
                   "= sum_k binom(n,k) binom(n+k,k) c^(r)_k"));
    schmidt->add_option("--r", cfg.r, "power")->check(CLI::PositiveNumber)
        ->capture_default_str();
    schmidt->add_option("--nmax", cfg.nmax, "largest index")->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    CLI::App* discover = add_common(app.add_subcommand(
        "discover", "re-derive structure constants from raw data: a regression against "
                    "the closed form when one exists, the discovered tables otherwise"));
    add_family(discover, true);
    discover->add_option("--k", cfg.k, "largest k")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    discover->add_option("--i", cfg.i, "largest i")->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    CLI::App* guess = add_common(app.add_subcommand(
        "guess", "fit a polynomial-coefficient recurrence to an integer sequence"));
    guess->add_option("--sequence", sequence_text, "comma-separated terms t(0), t(1), ...")
        ->required();
    guess->add_option("--max-order", cfg.max_order, "largest recurrence order tried")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    guess->add_option("--max-degree", cfg.max_coeff_degree,
                      "largest coefficient degree tried")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    CLI::App* scan = add_common(app.add_subcommand(
        "scan", "integrality scan of the discovered S_d tables and the coefficient "
                "tables they generate for the family binom(n+dk, k)"));
    scan->add_option("--d", scan_d, "family parameter d")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    scan->add_option("--kmax", scan_kmax, "largest k")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    scan->add_option("--imax", scan_imax, "largest i")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    scan->add_option("--rmax", scan_rmax, "largest power")->check(CLI::PositiveNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? qexpand::kExitOk : qexpand::kExitUsage;
    }

    if (verify->parsed())
        cfg.command = Command::verify;
    else if (qverify->parsed())
        cfg.command = Command::qverify;
    else if (coeffs->parsed())
        cfg.command = Command::coeffs;
    else if (schmidt->parsed())
        cfg.command = Command::schmidt;
    else if (discover->parsed())
        cfg.command = Command::discover;
    else if (guess->parsed())
        cfg.command = Command::guess;
    else if (scan->parsed()) {
        cfg.command = Command::scan;
        cfg.d = scan_d;
        cfg.k = scan_kmax;
        cfg.i = scan_imax;
        cfg.r = scan_rmax;
    }

    cfg.format = *qexpand::parse_format(format);

    if (no_cache)
        cfg.cache_dir.clear();
    else if (!cache_dir.empty())
        cfg.cache_dir = cache_dir;
    else
        cfg.cache_dir = qexpand::Cache::default_dir();

    if (c_param >= 0) {
        if (cfg.family.find(':') != std::string::npos) {
            std::cerr << "error: give the shift either inside --family or via --c, not both\n";
            return qexpand::kExitUsage;
        }
        auto fid = qexpand::FamilyId::parse(cfg.family);
        if (!fid || !(fid->base == qexpand::FamilyId::Base::C212 ||
                      fid->base == qexpand::FamilyId::Base::Q312)) {
            std::cerr << "error: --c applies only to C-2.1.2 and Q-3.1.2\n";
            return qexpand::kExitUsage;
        }
        fid->param = c_param;
        cfg.family = fid->str();
    }

    if (guess->parsed()) {
        auto seq = parse_sequence(sequence_text);
        if (!seq) {
            std::cerr << "error: --sequence must be comma-separated integers\n";
            return qexpand::kExitUsage;
        }
        cfg.sequence = std::move(*seq);
    }

    if (!mutate_text.empty()) {
        auto triple = parse_triple(mutate_text);
        if (!triple) {
            std::cerr << "error: --mutate-s expects three comma-separated integers k,j,i\n";
            return qexpand::kExitUsage;
        }
        cfg.mutate_s = *triple;
    }

    return qexpand::run(cfg, std::cout, std::cerr);
}
