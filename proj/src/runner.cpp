#include "qexpand/runner.hpp"

#include "qexpand/cache.hpp"
#include "qexpand/coefficients.hpp"
#include "qexpand/discovery.hpp"
#include "qexpand/errors.hpp"
#include "qexpand/families.hpp"
#include "qexpand/verify.hpp"
#include "qexpand/version.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace qexpand {
namespace {

// Requests the run() contract maps to exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Outcome {
    int status = kExitOk;
    std::string output;
};

const char* command_name(Command c) {
    switch (c) {
    case Command::verify: return "verify";
    case Command::qverify: return "qverify";
    case Command::coeffs: return "coeffs";
    case Command::schmidt: return "schmidt";
    case Command::discover: return "discover";
    case Command::guess: return "guess";
    case Command::scan: return "scan";
    }
    throw arithmetic_bug("unhandled command");
}

void require_bound(long v, const char* name) {
    if (v < 0)
        throw UsageError(std::string(name) + " must be nonnegative");
}

// Runs fn over indices 0..n-1 on `jobs` workers and returns the results in
// index order, so the schedule can never reorder output. The first failing
// index wins when several workers throw, keeping errors deterministic too.
template <typename T>
std::vector<T> parallel_map(long n, long jobs, const std::function<T(long)>& fn) {
    std::vector<std::optional<T>> slots(static_cast<size_t>(n));
    std::vector<std::exception_ptr> failures(static_cast<size_t>(n));
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            const long idx = next.fetch_add(1);
            if (idx >= n)
                return;
            try {
                slots[static_cast<size_t>(idx)] = fn(idx);
            } catch (...) {
                failures[static_cast<size_t>(idx)] = std::current_exception();
            }
        }
    };
    const long workers = std::min(std::max(jobs, 1L), std::max(n, 1L));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (long t = 0; t < workers; ++t)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    for (long idx = 0; idx < n; ++idx)
        if (failures[static_cast<size_t>(idx)])
            std::rethrow_exception(failures[static_cast<size_t>(idx)]);
    std::vector<T> out;
    out.reserve(static_cast<size_t>(n));
    for (auto& slot : slots)
        out.push_back(std::move(*slot));
    return out;
}

FamilySpec resolve_family(const RunConfig& cfg) {
    if (cfg.family.empty())
        throw UsageError("this command needs --family");
    auto fid = FamilyId::parse(cfg.family);
    if (!fid)
        throw UsageError("unknown family id \"" + cfg.family + '"');
    FamilySpec fam = make_family(*fid);
    if (cfg.mutate_s) {
        if (!fam.has_closed_S())
            throw UsageError("--mutate-s needs a family with closed-form structure constants");
        fam = with_perturbed_S(std::move(fam), (*cfg.mutate_s)[0], (*cfg.mutate_s)[1],
                               (*cfg.mutate_s)[2]);
    }
    return fam;
}

template <typename T>
std::string render(OutputFormat format, const T& value) {
    switch (format) {
    case OutputFormat::json: return to_json(value) + "\n";
    case OutputFormat::csv: return to_csv(value);
    case OutputFormat::plain: return to_plain(value);
    }
    throw arithmetic_bug("unhandled output format");
}

int status_of(const std::vector<ProofReport>& reports) {
    for (const ProofReport& rep : reports)
        if (rep.status == ProofStatus::falsified)
            return kExitFalsified;
    return kExitOk;
}

Outcome run_verify(const RunConfig& cfg) {
    require_bound(cfg.k, "--k");
    require_bound(cfg.i, "--i");
    const FamilySpec fam = resolve_family(cfg);
    if (fam.kind != FamilyKind::classical)
        throw UsageError("verify expects a classical family; use qverify for " + fam.id.str());
    const long cols = cfg.i + 1;
    const long cells = (cfg.k + 1) * cols;
    const auto reports = parallel_map<ProofReport>(cells, cfg.jobs, [&](long idx) {
        return verify_product_identity_classical(fam, idx / cols, idx % cols);
    });
    return Outcome{status_of(reports), render(cfg.format, reports)};
}

Outcome run_qverify(const RunConfig& cfg) {
    require_bound(cfg.k, "--k");
    require_bound(cfg.i, "--i");
    const FamilySpec fam = resolve_family(cfg);
    if (fam.kind != FamilyKind::q)
        throw UsageError("qverify expects a q family; use verify for " + fam.id.str());
    std::vector<ProofReport> reports;
    reports.push_back(verify_exponent_laws(fam));
    const long cols = cfg.i + 1;
    const long cells = (cfg.k + 1) * cols;
    auto grid = parallel_map<ProofReport>(cells, cfg.jobs, [&](long idx) {
        return verify_product_identity_q(fam, idx / cols, idx % cols);
    });
    reports.insert(reports.end(), std::make_move_iterator(grid.begin()),
                   std::make_move_iterator(grid.end()));
    return Outcome{status_of(reports), render(cfg.format, reports)};
}

Outcome run_coeffs(const RunConfig& cfg) {
    require_bound(cfg.k, "--k");
    if (cfg.r < 1)
        throw UsageError("--r must be at least 1");
    const FamilySpec fam = resolve_family(cfg);
    if (fam.kind == FamilyKind::q) {
        const QTable table = p_table_q(fam, cfg.k, cfg.r);
        return Outcome{kExitOk, render(cfg.format, table)};
    }
    const IntTable table = fam.S_int ? a_table_recursive(fam, cfg.k, cfg.r)
                                     : a_table_direct(fam, cfg.k, cfg.r);
    return Outcome{kExitOk, render(cfg.format, table)};
}

Outcome run_schmidt(const RunConfig& cfg) {
    require_bound(cfg.nmax, "--nmax");
    if (cfg.r < 1)
        throw UsageError("--r must be at least 1");
    const SchmidtRow row = schmidt_c(cfg.r, cfg.nmax);
    return Outcome{row.all_integral() ? kExitOk : kExitFalsified, render(cfg.format, row)};
}

Outcome run_discover(const RunConfig& cfg) {
    require_bound(cfg.k, "--k");
    require_bound(cfg.i, "--i");
    const FamilySpec fam = resolve_family(cfg);
    if (fam.kind != FamilyKind::classical)
        throw UsageError("discover works on classical families; got " + fam.id.str());

    // Families with published closed forms get the regression treatment:
    // re-derive every S value from raw data and compare.
    if (fam.has_closed_S()) {
        const ProofReport rep = rediscover_closed_forms(fam, cfg.k, cfg.i);
        const int status =
            rep.status == ProofStatus::falsified ? kExitFalsified : kExitOk;
        return Outcome{status, render(cfg.format, rep)};
    }

    // No closed form: the discovered tables are the result itself.
    const long cols = cfg.i + 1;
    const long cells = (cfg.k + 1) * cols;
    auto f = [&fam](long n, long kk) -> Int { return fam.eval_f_int(n, kk); };
    const auto rows = parallel_map<DiscoveredS>(cells, cfg.jobs, [&](long idx) {
        const long kk = idx / cols;
        const long ii = idx % cols;
        auto row = discover_S(f, kk, ii, std::nullopt, fam.id.str());
        if (row)
            return *row;
        // A graded basis always admits an expansion; an unsolvable cell is a
        // finding, reported as a non-integral placeholder row.
        DiscoveredS missing;
        missing.family_tag = fam.id.str();
        missing.k = kk;
        missing.i = ii;
        missing.support = JRange{0, -1};
        missing.integral = false;
        return missing;
    });
    int status = kExitOk;
    for (const DiscoveredS& row : rows)
        if (!row.integral)
            status = kExitFalsified;
    return Outcome{status, render(cfg.format, rows)};
}

Outcome run_guess(const RunConfig& cfg) {
    if (cfg.sequence.empty())
        throw UsageError("guess needs --sequence with comma-separated integer terms");
    require_bound(cfg.max_order, "--max-order");
    require_bound(cfg.max_coeff_degree, "--max-degree");
    const auto cand = guess_recurrence(cfg.sequence, cfg.max_order, cfg.max_coeff_degree);
    if (cand)
        return Outcome{kExitOk, render(cfg.format, *cand)};
    std::string output;
    switch (cfg.format) {
    case OutputFormat::json: output = "null\n"; break;
    case OutputFormat::csv: output = "l,e,coefficient\n"; break;
    case OutputFormat::plain:
        output = "no recurrence found within the search bounds (order <= " +
                 std::to_string(cfg.max_order) + ", coefficient degree <= " +
                 std::to_string(cfg.max_coeff_degree) + ")\n";
        break;
    }
    return Outcome{kExitOk, output};
}

Outcome run_scan(const RunConfig& cfg, Cache& cache) {
    require_bound(cfg.d, "--d");
    require_bound(cfg.k, "--k");
    require_bound(cfg.i, "--i");
    if (cfg.r < 1)
        throw UsageError("--r must be at least 1");
    KVStore kv = cache.kv();
    const ProofReport rep =
        conjecture_4_1_scan(cfg.d, cfg.k, cfg.i, cfg.r, cache.enabled() ? &kv : nullptr);
    const int status = rep.status == ProofStatus::falsified ? kExitFalsified : kExitOk;
    return Outcome{status, render(cfg.format, rep)};
}

Outcome dispatch(const RunConfig& cfg, Cache& cache) {
    switch (cfg.command) {
    case Command::verify: return run_verify(cfg);
    case Command::qverify: return run_qverify(cfg);
    case Command::coeffs: return run_coeffs(cfg);
    case Command::schmidt: return run_schmidt(cfg);
    case Command::discover: return run_discover(cfg);
    case Command::guess: return run_guess(cfg);
    case Command::scan: return run_scan(cfg, cache);
    }
    throw arithmetic_bug("unhandled command");
}

// Canonical request descriptor. jobs and cache_dir are deliberately absent:
// neither may change the bytes a request produces.
std::string cache_key(const RunConfig& cfg) {
    std::ostringstream key;
    key << "run:v=" << kToolVersion << ";cmd=" << command_name(cfg.command)
        << ";family=" << cfg.family << ";k=" << cfg.k << ";i=" << cfg.i << ";r=" << cfg.r
        << ";d=" << cfg.d << ";nmax=" << cfg.nmax << ";order=" << cfg.max_order
        << ";degree=" << cfg.max_coeff_degree << ";format=" << to_string(cfg.format)
        << ";seed=" << cfg.seed;
    if (cfg.mutate_s)
        key << ";mutate=" << (*cfg.mutate_s)[0] << ',' << (*cfg.mutate_s)[1] << ','
            << (*cfg.mutate_s)[2];
    if (!cfg.sequence.empty()) {
        key << ";seq=";
        for (size_t t = 0; t < cfg.sequence.size(); ++t) {
            if (t)
                key << ',';
            key << int_to_string(cfg.sequence[t]);
        }
    }
    return key.str();
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.jobs < 1)
            throw UsageError("--jobs must be at least 1");

        Cache cache = config.cache_dir.empty()
                          ? Cache()
                          : Cache(config.cache_dir,
                                  [&err](const std::string& msg) { err << msg << "\n"; });
        const std::string key = cache_key(config);

        if (cache.enabled()) {
            if (auto hit = cache.get(key)) {
                const size_t nl = hit->find('\n');
                if (nl != std::string::npos) {
                    const std::string status = hit->substr(0, nl);
                    if (status == "0" || status == "1") {
                        out << hit->substr(nl + 1);
                        return status == "0" ? kExitOk : kExitFalsified;
                    }
                }
                // Undecodable entry: fall through and recompute.
            }
        }

        const Outcome outcome = dispatch(config, cache);
        out << outcome.output;
        if (cache.enabled())
            cache.put(key, std::to_string(outcome.status) + "\n" + outcome.output);
        return outcome.status;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const falsification_error& e) {
        err << "falsified: " << e.what() << "\n";
        return kExitFalsified;
    } catch (const capability_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace qexpand
