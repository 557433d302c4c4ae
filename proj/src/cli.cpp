#include "qnd/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnd/io.hpp"
#include "qnd/measures.hpp"
#include "qnd/optimize.hpp"
#include "qnd/parallel.hpp"
#include "qnd/regions.hpp"
#include "qnd/sampling.hpp"
#include "qnd/verify.hpp"

namespace qnd::cli {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

PauliObservable parse_axis(const std::string& token) {
    if (token == "x") return PauliObservable::x();
    if (token == "y") return PauliObservable::y();
    if (token == "z") return PauliObservable::z();
    std::istringstream in(token);
    Vec3 v;
    char c1 = 0, c2 = 0;
    if (!(in >> v.x >> c1 >> v.y >> c2 >> v.z) || c1 != ',' || c2 != ',')
        throw ParseError("axis", "expected x | y | z | three comma-separated numbers, got '" +
                                     token + "'");
    if (v.norm() < 1e-12) throw ParseError("axis", "axis must be nonzero");
    return PauliObservable(v);
}

std::string axis_string(const PauliObservable& o) {
    return "[" + fmt(o.axis().x) + ", " + fmt(o.axis().y) + ", " + fmt(o.axis().z) + "]";
}

const char* update_kind_name(const Instrument& inst) {
    if (std::holds_alternative<LuedersUpdate>(inst.update)) return "lueders";
    if (std::holds_alternative<PurityPreservingUpdate>(inst.update)) return "purity-preserving";
    if (std::holds_alternative<MeasurePrepareUpdate>(inst.update)) return "measure-prepare";
    return "kraus";
}

int cmd_eval(const std::string& path, const std::string& obs_a, const std::string& obs_b,
             const std::string& mode, bool as_json, const std::string& out_path) {
    const InstrumentFile file = load_instrument_file(path);
    const Instrument& inst = file.instrument;
    const PauliObservable a = parse_axis(obs_a);
    const PauliObservable b = parse_axis(obs_b);
    const ObservablePair pair(a, b);

    Correction corr = Correction::identity(inst.outcomes());
    std::string mode_used = mode;
    if (mode == "file") {
        if (!file.correction)
            throw ParseError("correction", "correction mode 'file' but the file has none");
        corr = *file.correction;
    } else if (mode == "heuristic") {
        corr = heuristic_alignment(inst.povm, b);
    } else if (mode == "identity") {
        // keep identity
    } else if (mode != "refine") {
        throw ParseError("correction-mode",
                         "expected file | identity | heuristic | refine, got '" + mode + "'");
    }

    const NoiseResult na = noise(inst.povm, a);
    const NoiseResult nb = noise(inst.povm, b);
    DisturbanceResult dist =
        mode == "refine" ? disturbance_optimized(inst, b, OptimizeStrategy::refine)
                         : disturbance_corrected(inst, b, corr);

    const double bound = maassen_uffink_bound(pair.dot);
    const bool identity_corr = mode == "identity";
    const bool is_lueders = std::holds_alternative<LuedersUpdate>(inst.update);

    struct Check {
        std::string name;
        double residual;
        std::string expectation;
    };
    std::vector<Check> checks;
    checks.push_back({"joint-noise bound", na.value + nb.value - bound, ">= 0"});
    checks.push_back({"noise-disturbance bound", na.value + dist.value - bound, ">= 0"});
    if (pair.orthogonal()) {
        checks.push_back({"orthogonal noise sum", na.value + nb.value - 1.0, ">= 0"});
        checks.push_back(
            {"frontier margin", dist.value - nd_curve_disturbance_at(na.value), ">= 0 if the conjectured frontier holds"});
    }
    if (inst.outcomes() == 2 && pair.orthogonal()) {
        checks.push_back(
            {"dichotomic noise tradeoff", nn_dichotomic_relation(na.value, nb.value), "<= 0"});
        checks.push_back({"noise-disturbance g^2 sum - 1",
                          luders_relation(na.value, dist.value),
                          "<= 0 uncorrected; > 0 exhibits a correction-enabled violation"});
    }
    if (is_lueders && identity_corr && pair.orthogonal())
        checks.push_back(
            {"square-root-dynamics tradeoff", luders_relation(na.value, dist.value), "<= 0"});

    const PovmReport report = validate(inst.povm);
    if (as_json) {
        json j;
        j["instrument"] = {{"path", path},
                           {"kind", update_kind_name(inst)},
                           {"outcomes", inst.outcomes()},
                           {"normalization_residual", report.normalization_residual}};
        j["observables"] = {{"a", {a.axis().x, a.axis().y, a.axis().z}},
                            {"b", {b.axis().x, b.axis().y, b.axis().z}},
                            {"dot", pair.dot}};
        j["correction_mode"] = mode_used;
        j["noise_a"] = na.value;
        j["noise_b"] = nb.value;
        j["disturbance_b"] = dist.value;
        json per = json::array();
        for (const auto& [p, h] : na.per_outcome) per.push_back({{"p", p}, {"entropy", h}});
        j["noise_a_per_outcome"] = per;
        json cj = json::array();
        for (const Check& c : checks)
            cj.push_back({{"name", c.name}, {"residual", c.residual}, {"expected", c.expectation}});
        j["checks"] = cj;
        const std::string text = j.dump(2) + "\n";
        std::cout << text;
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw FileError("cannot write '" + out_path + "'");
            out << text;
        }
        return kExitOk;
    }

    std::cout << "instrument: " << path << " (" << update_kind_name(inst) << ", "
              << inst.outcomes() << " outcomes, normalization residual "
              << fmt(report.normalization_residual) << ")\n";
    std::cout << "observables: A = " << axis_string(a) << ", B = " << axis_string(b)
              << ", a.b = " << fmt(pair.dot) << "\n";
    std::cout << "correction mode: " << mode_used << "\n";
    std::cout << "N(A) = " << fmt(na.value) << "\n";
    for (std::size_t m = 0; m < na.per_outcome.size(); ++m)
        std::cout << "  outcome " << m << ": p = " << fmt(na.per_outcome[m].first)
                  << ", H(A|rho_m) = " << fmt(na.per_outcome[m].second) << "\n";
    std::cout << "N(B) = " << fmt(nb.value) << "\n";
    std::cout << "D(B) = " << fmt(dist.value) << "\n";
    std::cout << "checks:\n";
    for (const Check& c : checks)
        std::cout << "  " << c.name << ": residual = " << fmt(c.residual) << " (expected "
                  << c.expectation << ")\n";
    return kExitOk;
}

int cmd_boundary(const std::string& region, double dot, std::size_t samples,
                 const std::string& out) {
    if (out.empty()) throw ParseError("--out", "boundary requires an output path");
    if (std::abs(dot) > 1.0) throw DomainError("|dot| must be <= 1");
    std::vector<RegionPoint> points;
    if (region == "nd-conjecture") {
        if (dot != 0.0)
            throw DomainError("the conjectured frontier is defined for orthogonal "
                              "observables only (dot = 0)");
        points = nd_boundary_curve(samples);
    } else {
        const PauliObservable a = PauliObservable::z();
        const Vec3 b_axis = kZAxis * dot + kXAxis * std::sqrt(std::max(1.0 - dot * dot, 0.0));
        const ObservablePair pair(a, PauliObservable(b_axis));
        if (region == "prep")
            points = prep_boundary_points(pair, samples);
        else if (region == "nn")
            points = nn_boundary_points(pair, samples);
        else
            throw ParseError("--region", "expected prep | nn | nd-conjecture, got '" + region +
                                             "'");
    }
    write_region_csv(out, points);
    std::cout << "wrote " << points.size() << " boundary points to " << out << "\n";
    return kExitOk;
}

int cmd_sample(int outcomes, std::size_t count, std::uint64_t seed,
               const std::string& optimize_mode, const std::string& sampler, bool sphere,
               const std::string& out, unsigned threads) {
    if (out.empty()) throw ParseError("--out", "sample requires an output path");
    if (outcomes < 2 || outcomes > 8) throw DomainError("outcomes must be in [2, 8]");
    if (count < 1) throw DomainError("count must be >= 1");

    SamplerConfig cfg;
    cfg.seed = seed;
    cfg.outcomes = outcomes;
    cfg.plane_xz = !sphere;
    if (sampler == "rank1")
        cfg.rank_profile = RankProfile::all_rank_one;
    else if (sampler == "general")
        cfg.rank_profile = RankProfile::general;
    else if (sampler == "dichotomic")
        cfg.rank_profile = RankProfile::dichotomic_mixed_rank;
    else if (sampler == "auto")
        cfg.rank_profile =
            outcomes == 2 ? RankProfile::dichotomic_mixed_rank : RankProfile::all_rank_one;
    else
        throw ParseError("--sampler", "expected auto | rank1 | general | dichotomic");
    if (cfg.rank_profile == RankProfile::dichotomic_mixed_rank && outcomes != 2)
        throw DomainError("the dichotomic sampler requires --outcomes 2");

    OptimizeStrategy strategy = OptimizeStrategy::heuristic;
    bool identity_only = false;
    if (optimize_mode == "identity")
        identity_only = true;
    else if (optimize_mode == "refine")
        strategy = OptimizeStrategy::refine;
    else if (optimize_mode != "heuristic")
        throw ParseError("--optimize", "expected identity | heuristic | refine");

    const PauliObservable z = PauliObservable::z(), x = PauliObservable::x();
    std::vector<RegionPoint> rows(count);
    parallel_for(
        count,
        [&](std::size_t i) {
            const Povm povm = sample_povm(cfg, i);
            const double n = noise(povm, z).value;
            double d;
            if (identity_only) {
                d = disturbance_identity_lueders(povm, x).value;
            } else {
                const Instrument inst = Instrument::lueders(povm);
                d = disturbance_optimized(inst, x, strategy).value;
            }
            rows[i] = {n, d, RegionKind::nd, "i=" + std::to_string(i)};
        },
        threads);
    write_region_csv(out, rows);
    std::cout << "wrote " << rows.size() << " sampled noise-disturbance points to " << out
              << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& suite, unsigned threads, bool as_json) {
    const std::vector<CheckResult> results = run_suite(suite, threads);
    bool all_pass = true;
    if (as_json) {
        json j = json::array();
        for (const CheckResult& r : results) {
            j.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            all_pass = all_pass && r.pass;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const CheckResult& r : results) {
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << "\n"
                      << "       " << r.detail << "\n";
            all_pass = all_pass && r.pass;
        }
        std::cout << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES above\n");
    }
    return all_pass ? kExitOk : kExitVerifyFail;
}

int cmd_plot(const std::vector<std::string>& csv_paths, const std::string& out) {
    if (out.empty()) throw ParseError("--out", "plot requires an output path");
    if (csv_paths.empty()) throw ParseError("csv", "plot requires at least one CSV input");
    std::vector<PlotSeries> series;
    for (const std::string& path : csv_paths) {
        PlotSeries s;
        s.label = std::filesystem::path(path).stem().string();
        s.points = read_region_csv(path);
        series.push_back(std::move(s));
    }
    write_svg_plot(out, series);
    std::cout << "wrote plot with " << series.size() << " series to " << out << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"information-theoretic noise and disturbance of qubit measurements"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0;
    std::string out_path;
    bool as_json = false;
    unsigned threads = 0;
    app.add_option("--seed", seed, "sampler seed");
    app.add_option("--out", out_path, "output file path");
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");

    auto* eval = app.add_subcommand("eval", "evaluate noise and disturbance of an instrument");
    std::string inst_path, obs_a = "z", obs_b = "x", corr_mode = "identity";
    eval->add_option("instrument", inst_path, "instrument JSON file")->required();
    eval->add_option("--obs-a", obs_a, "first observable axis (x|y|z|x,y,z)");
    eval->add_option("--obs-b", obs_b, "second observable axis");
    eval->add_option("--correction", corr_mode, "file | identity | heuristic | refine");

    auto* boundary = app.add_subcommand("boundary", "emit a region boundary as CSV");
    std::string region = "nn";
    double dot = 0.0;
    std::size_t samples = 512;
    boundary->add_option("--region", region, "prep | nn | nd-conjecture")->required();
    boundary->add_option("--dot", dot, "observable overlap a.b");
    boundary->add_option("--samples", samples, "number of boundary points");

    auto* sample = app.add_subcommand("sample", "sample noise-disturbance points as CSV");
    int outcomes = 3;
    std::size_t count = 1000;
    std::string optimize_mode = "heuristic", sampler = "auto";
    bool sphere = false;
    sample->add_option("--outcomes", outcomes, "POVM outcomes (2-8)");
    sample->add_option("--count", count, "number of instruments");
    sample->add_option("--optimize", optimize_mode, "identity | heuristic | refine");
    sample->add_option("--sampler", sampler, "auto | rank1 | general | dichotomic");
    sample->add_flag("--sphere", sphere, "sample the full Bloch sphere (default: xz-plane)");

    auto* verify = app.add_subcommand("verify", "run reproduction check suites");
    std::string suite = "all";
    verify->add_option("--suite", suite, "counterexamples | lueders | nn-tight | oracles | all");

    auto* plot = app.add_subcommand("plot", "render region CSVs as a deterministic SVG");
    std::vector<std::string> csv_paths;
    plot->add_option("csv", csv_paths, "input CSV files");

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    storage.insert(storage.begin(), "qnd");
    argv.reserve(storage.size());
    for (std::string& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (eval->parsed())
            return cmd_eval(inst_path, obs_a, obs_b, corr_mode, as_json, out_path);
        if (boundary->parsed()) return cmd_boundary(region, dot, samples, out_path);
        if (sample->parsed())
            return cmd_sample(outcomes, count, seed, optimize_mode, sampler, sphere, out_path,
                              threads);
        if (verify->parsed()) return cmd_verify(suite, threads, as_json);
        if (plot->parsed()) return cmd_plot(csv_paths, out_path);
        std::cerr << "no subcommand selected\n";
        return kExitParse;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    } catch (const FileError& e) {
        std::cerr << "file error: " << e.what() << "\n";
        return kExitFile;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModel;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModel;
    }
}

}  // namespace qnd::cli
