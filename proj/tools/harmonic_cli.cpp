// Command-line front end: every experiment is a subcommand with CSV/JSON
// output plus a reproducibility manifest.  Exit codes: 0 success, 2 parse or
// domain error, 3 not-found result under --strict.

#include <chrono>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "harmonic/convergence.hpp"
#include "harmonic/diophantine.hpp"
#include "harmonic/expsums.hpp"
#include "harmonic/phase.hpp"
#include "harmonic/sequences.hpp"
#include "harmonic/serialize.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// "power:1.2" | "power_log:1:2" | "oscillating:1.5" | "file:path"
harmonic::CoefficientSequence parse_seq(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "power") return harmonic::CoefficientSequence::power(std::stod(rest));
    if (kind == "power_log") {
        const auto c2 = rest.find(':');
        if (c2 == std::string::npos)
            throw std::domain_error("--seq power_log needs two parameters a:b");
        return harmonic::CoefficientSequence::power_log(std::stod(rest.substr(0, c2)),
                                                        std::stod(rest.substr(c2 + 1)));
    }
    if (kind == "oscillating")
        return harmonic::CoefficientSequence::oscillating(std::stod(rest));
    if (kind == "file") return harmonic::CoefficientSequence::from_file(rest);
    throw std::domain_error("unknown sequence spec '" + spec +
                            "' (power:a, power_log:a:b, oscillating:a, file:path)");
}

struct CommonOpts {
    int precision = 30;
    int threads = 1;
    std::string out;            // output file; empty = stdout
    std::string format = "json";  // csv | json
    bool strict = false;
};

void add_common(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--precision", c.precision,
                    "phase precision in decimal digits")
        ->envname("HARMONIC_PRECISION")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--threads", c.threads, "worker threads for scans")
        ->check(CLI::Range(1, 256))
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--out", c.out, "output file (default: stdout)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--format", c.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_flag("--strict", c.strict, "exit 3 on not-found results");
}

// Emit the result, then the manifest (file sibling of --out, or stderr).
void emit(const CommonOpts& c, const std::string& command,
          const std::vector<std::string>& argv_copy, const json& params,
          const std::string& payload, double wall_s) {
    std::string out_path = "-";
    if (c.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + c.out);
        f << payload;
        out_path = c.out;
    }
    json manifest{{"command", command},
                  {"command_line", argv_copy},
                  {"parameters", params},
                  {"version", kVersion},
                  {"precision", c.precision},
                  {"threads", c.threads},
                  {"wall_time_s", wall_s},
                  {"outputs", json::array({json{
                                  {"path", out_path},
                                  {"bytes", payload.size()},
                                  {"fnv1a64", hex64(fnv1a64(payload))}}})}};
    if (c.out.empty()) {
        std::cerr << manifest.dump() << "\n";
    } else {
        std::ofstream mf(c.out + ".manifest.json", std::ios::binary);
        mf << manifest.dump(2) << "\n";
    }
}

// explicitly-set options of a subcommand, as string values
json collect_params(const CLI::App* sub) {
    json p = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->count() == 0 || opt->get_name().empty()) continue;
        const auto& rs = opt->results();
        std::string v;
        for (size_t i = 0; i < rs.size(); ++i) v += (i ? "," : "") + rs[i];
        p[opt->get_name()] = v;
    }
    return p;
}

std::string csv_row_exp(const harmonic::ExpSumResult& r) {
    using harmonic::format_double;
    std::string out = "start,count,alpha,x,re,im,abs,max_phase_error\n";
    out += std::to_string(r.start) + "," + std::to_string(r.count) + "," +
           format_double(r.alpha) + "," + format_double(r.x) + "," +
           format_double(r.value.real()) + "," + format_double(r.value.imag()) + "," +
           format_double(std::abs(r.value)) + "," + format_double(r.max_phase_error) +
           "\n";
    return out;
}

// --config key=value files become extra command-line tokens, inserted right
// after the subcommand name so later explicit flags win (TakeLast policy)
std::vector<std::string> apply_config(std::vector<std::string> args) {
    std::string path;
    for (size_t i = 1; i < args.size(); ++i) {
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw std::domain_error("--config requires a file path");
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream f(path);
    if (!f) throw std::domain_error("cannot open config file " + path);
    std::vector<std::string> extra;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::domain_error(path + ":" + std::to_string(lineno) +
                                    ": expected key=value");
        extra.push_back("--" + line.substr(0, eq) + "=" + line.substr(eq + 1));
    }
    // insert after the subcommand name (args[1] when present)
    const size_t at = args.size() >= 2 && args[1][0] != '-' ? 2 : 1;
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(),
                extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> raw(argv, argv + argc);

    CLI::App app{"numerical experiments on trigonometric series with fractional-power "
                 "harmonics: partial sums, slope scans, sequence classification, "
                 "convergence verdicts, bad-point searches, square-free sieve"};
    app.require_subcommand(1);
    // --config is pre-processed; declared here so it shows in --help
    std::string config_dummy;
    app.add_option("--config", config_dummy,
                   "key=value file of default flag values for the subcommand");

    // ---- sum ----
    CommonOpts sum_c;
    double sum_alpha = 0.0;
    std::optional<double> sum_x, sum_t;
    std::int64_t sum_k = 0, sum_start = 1;
    auto* sum = app.add_subcommand(
        "sum", "partial sum: e-sum over x (period-1) or sine sum over raw angle t");
    sum->add_option("--alpha", sum_alpha, "harmonic exponent")->required();
    auto* ox = sum->add_option("--x", sum_x, "period-1 argument (exponential sum)");
    auto* ot = sum->add_option("--t", sum_t, "raw angle (sine sum)");
    ox->excludes(ot);
    sum->add_option("--k", sum_k, "last index")->required();
    sum->add_option("--start", sum_start, "first index (sine sums)");
    add_common(sum, sum_c);

    // ---- scan ----
    CommonOpts scan_c;
    double scan_alpha = 0.0, scan_xlo = 0.05, scan_xhi = 0.5;
    double scan_tlo = 1.0, scan_thi = 2.0;
    int scan_grid = 200;
    std::int64_t scan_kmax = 4096, scan_l = 0, scan_L = 0;
    bool scan_tail = false;
    std::string scan_seq = "power:1.0";
    auto* scan = app.add_subcommand(
        "scan", "sup |V_k(x)| at dyadic k with log-log slope fit, or a tail scan");
    scan->add_option("--alpha", scan_alpha, "harmonic exponent")->required();
    scan->add_option("--x-lo", scan_xlo, "left end of the x window");
    scan->add_option("--x-hi", scan_xhi, "right end of the x window");
    scan->add_option("--grid", scan_grid, "points in the x (or t) grid");
    scan->add_option("--kmax", scan_kmax, "largest dyadic k");
    scan->add_flag("--tail", scan_tail, "scan a series tail over a t grid instead");
    scan->add_option("--l", scan_l, "tail start (with --tail)");
    scan->add_option("--L", scan_L, "tail end (with --tail)");
    scan->add_option("--t-lo", scan_tlo, "left end of the t grid (with --tail)");
    scan->add_option("--t-hi", scan_thi, "right end of the t grid (with --tail)");
    scan->add_option("--seq", scan_seq, "coefficients (with --tail)");
    add_common(scan, scan_c);

    // ---- classify ----
    CommonOpts cls_c;
    std::string cls_seq;
    std::int64_t cls_llo = 1, cls_lhi = 100, cls_kmax = 10000;
    auto* cls = app.add_subcommand(
        "classify", "estimate the domination/variation class constants of a sequence");
    cls->add_option("--seq", cls_seq, "power:a | power_log:a:b | oscillating:a | file:path")
        ->required();
    cls->add_option("--l-lo", cls_llo, "smallest window start");
    cls->add_option("--l-hi", cls_lhi, "largest window start");
    cls->add_option("--kmax", cls_kmax, "truncation index");
    add_common(cls, cls_c);

    // ---- verdict ----
    CommonOpts ver_c;
    std::string ver_seq;
    double ver_alpha = 0.0, ver_Lf = 0.0, ver_tlo = 1.0, ver_thi = 2.0;
    int ver_grid = 60;
    std::vector<std::int64_t> ver_schedule;
    auto* ver = app.add_subcommand(
        "verdict", "tail-decay trend along an l-schedule with precondition statistics");
    ver->add_option("--seq", ver_seq, "coefficient sequence spec")->required();
    ver->add_option("--alpha", ver_alpha, "harmonic exponent")->required();
    ver->add_option("--schedule", ver_schedule, "comma-separated l values")
        ->required()
        ->delimiter(',');
    ver->add_option("--L-factor", ver_Lf, "L = ceil(factor*l); <= 0 picks 2^(1/alpha)");
    ver->add_option("--t-lo", ver_tlo, "left end of the t grid");
    ver->add_option("--t-hi", ver_thi, "right end of the t grid");
    ver->add_option("--grid", ver_grid, "points in the t grid");
    add_common(ver, ver_c);

    // ---- badpoint ----
    CommonOpts bad_c;
    double bad_alpha = 0.0, bad_thr = 0.8, bad_xlo = 0.01, bad_xhi = 3.0;
    std::int64_t bad_L = 50, bad_l = 0;
    int bad_grid = 400;
    std::string bad_mode = "partial-sum", bad_seq;
    auto* bad = app.add_subcommand(
        "badpoint", "search for a point where the sines align / partial sums stay large");
    bad->add_option("--alpha", bad_alpha, "harmonic exponent")->required();
    bad->add_option("--L", bad_L, "constraint range limit");
    bad->add_option("--mode", bad_mode, "alignment | partial-sum")
        ->check(CLI::IsMember({"alignment", "partial-sum"}));
    bad->add_option("--threshold", bad_thr, "minimum aligned sine (alignment mode)");
    bad->add_option("--x-lo", bad_xlo, "left end of the search range");
    bad->add_option("--x-hi", bad_xhi, "right end of the search range");
    bad->add_option("--grid", bad_grid, "coarse grid points");
    bad->add_option("--seq", bad_seq, "if set, attach a divergence lower bound");
    bad->add_option("--l", bad_l, "divergence bound window start (with --seq)");
    add_common(bad, bad_c);

    // ---- sieve ----
    CommonOpts sv_c;
    std::int64_t sv_N = 1000000, sv_count_at = 0;
    std::string sv_save, sv_load;
    auto* sv = app.add_subcommand("sieve", "square-free table: build, save, load, count");
    sv->add_option("--N", sv_N, "sieve limit");
    sv->add_option("--save", sv_save, "write the bitset table to this file");
    sv->add_option("--load", sv_load, "load a table instead of sieving");
    sv->add_option("--count-at", sv_count_at, "also report the count at this index");
    add_common(sv, sv_c);

    // config-file tokens may duplicate explicit flags; the last value wins
    for (CLI::App* s : app.get_subcommands({}))
        for (CLI::Option* o : s->get_options())
            if (o->get_expected_min() > 0 && o->get_items_expected_max() == 1)
                o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::vector<std::string> args;
    try {
        args = apply_config(raw);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    try {
        std::vector<const char*> cargs;
        cargs.reserve(args.size());
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // help/version exit 0, parse failures exit 2
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto wall = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    try {
        if (sum->parsed()) {
            harmonic::HarmonicExponent exp(sum_alpha, sum_c.precision);
            harmonic::ExpSumResult r{};
            std::string kind;
            if (sum_x) {
                r = harmonic::exp_sum(exp, *sum_x, sum_k);
                kind = "exp";
            } else if (sum_t) {
                r = harmonic::sine_sum(exp, *sum_t, sum_start, sum_k);
                kind = "sine";
            } else {
                throw std::domain_error("sum: one of --x or --t is required");
            }
            json j = harmonic::to_json(r);
            j["command"] = "sum";
            j["kind"] = kind;
            const std::string payload =
                sum_c.format == "csv" ? csv_row_exp(r) : j.dump(2) + "\n";
            emit(sum_c, "sum", raw, collect_params(sum), payload, wall());
            return 0;
        }

        if (scan->parsed()) {
            json j;
            std::string payload;
            if (scan_tail) {
                if (scan_l < 1 || scan_L <= scan_l)
                    throw std::domain_error("scan --tail: requires 1 <= --l < --L");
                harmonic::HarmonicExponent exp(scan_alpha, scan_c.precision);
                const harmonic::TailQuery q{scan_l, scan_L,
                                            harmonic::linspace(scan_tlo, scan_thi, scan_grid),
                                            harmonic::SeriesKind::Sine};
                const auto rep =
                    harmonic::series_tail(parse_seq(scan_seq), exp, q, scan_c.threads);
                j = harmonic::to_json(rep);
                j["command"] = "scan";
                j["mode"] = "tail";
                if (scan_c.format == "csv") {
                    payload = "t,value\n";
                    for (size_t i = 0; i < rep.trace.size(); ++i)
                        payload += harmonic::format_double(q.t_grid[i]) + "," +
                                   harmonic::format_double(rep.trace[i]) + "\n";
                } else {
                    payload = j.dump(2) + "\n";
                }
            } else {
                harmonic::HarmonicExponent exp(scan_alpha, scan_c.precision);
                const auto est = harmonic::empirical_exponent(
                    exp, scan_xlo, scan_xhi, scan_grid, scan_kmax, scan_c.threads);
                j = harmonic::to_json(est);
                j["command"] = "scan";
                j["mode"] = "slope";
                payload = scan_c.format == "csv" ? harmonic::exponent_trace_csv(est)
                                                 : j.dump(2) + "\n";
            }
            emit(scan_c, "scan", raw, collect_params(scan), payload, wall());
            return 0;
        }

        if (cls->parsed()) {
            const auto rep = harmonic::estimate_class_constants(parse_seq(cls_seq),
                                                                cls_llo, cls_lhi, cls_kmax);
            json j = harmonic::to_json(rep);
            j["command"] = "classify";
            std::string payload;
            if (cls_c.format == "csv") {
                payload = "A_min,B_min,V_min,V_diverging,is_monotone\n";
                payload += harmonic::format_double(rep.A_min) + "," +
                           harmonic::format_double(rep.B_min) + "," +
                           harmonic::format_double(rep.V_min) + "," +
                           (rep.V_diverging ? "1," : "0,") +
                           (rep.is_monotone ? "1" : "0") + "\n";
            } else {
                payload = j.dump(2) + "\n";
            }
            emit(cls_c, "classify", raw, collect_params(cls), payload, wall());
            return 0;
        }

        if (ver->parsed()) {
            harmonic::HarmonicExponent exp(ver_alpha, ver_c.precision);
            const auto v = harmonic::uniform_convergence_verdict(
                parse_seq(ver_seq), exp, harmonic::linspace(ver_tlo, ver_thi, ver_grid),
                ver_schedule, ver_Lf, ver_c.threads);
            json j = harmonic::to_json(v);
            j["command"] = "verdict";
            const std::string payload = ver_c.format == "csv"
                                            ? harmonic::verdict_trace_csv(v)
                                            : j.dump(2) + "\n";
            emit(ver_c, "verdict", raw, collect_params(ver), payload, wall());
            return 0;
        }

        if (bad->parsed()) {
            harmonic::HarmonicExponent exp(bad_alpha, bad_c.precision);
            harmonic::BadPointResult r{};
            if (bad_mode == "alignment")
                r = harmonic::bad_point_search_alignment(exp, bad_L, bad_thr, bad_xlo,
                                                         bad_xhi, bad_grid);
            else
                r = harmonic::bad_point_search_partial_sum(exp, bad_L, bad_xlo, bad_xhi,
                                                           bad_grid);
            json j = harmonic::to_json(r);
            j["command"] = "badpoint";
            j["mode"] = bad_mode;
            if (!bad_seq.empty()) {
                if (bad_l < 1 || bad_l >= bad_L)
                    throw std::domain_error("badpoint --seq: requires 1 <= --l < --L");
                j["divergence"] = harmonic::to_json(
                    harmonic::divergence_lower_bound(parse_seq(bad_seq), r, bad_l, bad_L));
            }
            std::string payload;
            if (bad_c.format == "csv") {
                payload = "k,partial_sum,bound\n";
                for (const auto& c : r.certificates)
                    payload += std::to_string(c.k) + "," +
                               harmonic::format_double(c.partial_sum) + "," +
                               harmonic::format_double(c.bound) + "\n";
                if (r.certificates.empty())
                    payload += "0," + harmonic::format_double(r.min_aligned_sine) + "," +
                               harmonic::format_double(r.threshold) + "\n";
            } else {
                payload = j.dump(2) + "\n";
            }
            emit(bad_c, "badpoint", raw, collect_params(bad), payload, wall());
            if (!r.found && bad_c.strict) return 3;
            return 0;
        }

        if (sv->parsed()) {
            std::optional<harmonic::SquareFreeTable> table;
            if (!sv_load.empty())
                table = harmonic::SquareFreeTable::load(sv_load);
            else
                table = harmonic::squarefree_sieve(sv_N);
            if (!sv_save.empty()) table->save(sv_save);
            json j{{"command", "sieve"},
                   {"N", table->size()},
                   {"count", table->count(table->size())},
                   {"density", table->density()}};
            if (sv_count_at >= 1 && sv_count_at <= table->size())
                j["count_at"] = json{{"k", sv_count_at}, {"count", table->count(sv_count_at)}};
            std::string payload;
            if (sv_c.format == "csv") {
                payload = "N,count,density\n";
                payload += std::to_string(table->size()) + "," +
                           std::to_string(table->count(table->size())) + "," +
                           harmonic::format_double(table->density()) + "\n";
            } else {
                payload = j.dump(2) + "\n";
            }
            emit(sv_c, "sieve", raw, collect_params(sv), payload, wall());
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;  // unreachable: a subcommand is required
}
