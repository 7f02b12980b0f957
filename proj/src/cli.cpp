#include "sifs/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sifs/engine.hpp"
#include "sifs/fixtures.hpp"
#include "sifs/io_csv.hpp"
#include "sifs/io_json.hpp"
#include "sifs/pgm.hpp"
#include "sifs/sampling.hpp"

namespace sifs::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

// Classification caches all pairwise distances; keep samples desk-sized.
constexpr std::size_t kMaxSamplePoints = 4096;

// The library handles any dimension; the CLI sticks to the 1-3 range its
// rendering and box flags are built for.
void require_cli_dimension(const MetricSpace& space) {
    if (!space.is_finite() && (space.dimension < 1 || space.dimension > 3))
        throw input_error("the CLI supports continuous spaces of dimension 1-3 "
                          "(got " + std::to_string(space.dimension) + ")");
}

Box parse_box(const std::string& text, int dimension) {
    std::vector<std::pair<double, double>> ranges;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ';')) {
        double lo = 0.0, hi = 0.0;
        if (std::sscanf(part.c_str(), "%lf,%lf", &lo, &hi) != 2 || !(lo < hi))
            throw input_error("--box: expected lo,hi pairs separated by ';', got \"" +
                              text + "\"");
        ranges.emplace_back(lo, hi);
    }
    if (ranges.size() == 1 && dimension > 1)
        ranges.assign(static_cast<std::size_t>(dimension), ranges[0]);
    if (ranges.size() != static_cast<std::size_t>(dimension))
        throw input_error("--box: need one lo,hi range per dimension");
    Box box;
    for (const auto& [lo, hi] : ranges) {
        box.min.push_back(lo);
        box.max.push_back(hi);
    }
    return box;
}

struct ClassifyArgs {
    std::string space_path, map_path;
    std::string sample = "grid:100";
    std::string box_text;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string expect;
};

int run_classify(const ClassifyArgs& args) {
    const MetricSpace space = space_from_json(load_json_file(args.space_path));
    require_cli_dimension(space);
    const ContractionMap map = map_from_json(load_json_file(args.map_path));

    Box box;
    if (!space.is_finite())
        box = args.box_text.empty() ? unit_box(space.dimension)
                                    : parse_box(args.box_text, space.dimension);
    SampleSpec sample = make_sample(space, args.sample, box, args.seed);
    if (sample.points.size() > kMaxSamplePoints)
        throw input_error("sample of " + std::to_string(sample.points.size()) +
                          " points exceeds the limit of " +
                          std::to_string(kMaxSamplePoints) +
                          "; use a coarser --sample");

    const ClassificationReport report =
        classify(space, map, sample.points, sample.description);
    const json out = classification_to_json(report, sample.points, space);
    const std::string text = out.dump(2) + "\n";
    std::cout << text;
    if (!args.out_path.empty()) write_file_atomic(args.out_path, text);

    if (!args.expect.empty() && args.expect != to_string(report.verdict)) {
        std::cerr << "classify: expected verdict " << args.expect << ", got "
                  << to_string(report.verdict) << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

struct HausdorffArgs {
    std::string a_path, b_path;
    std::string kind = "euclidean";
    bool accelerated = false;
};

int run_hausdorff(const HausdorffArgs& args) {
    const CompactSet a = load_set_csv(args.a_path);
    const CompactSet b = load_set_csv(args.b_path);
    if (a.is_index_set() || b.is_index_set())
        throw input_error("hausdorff: CSV sets must carry coordinates (dim >= 1)");
    if (a.dim() != b.dim())
        throw input_error("hausdorff: sets have different dimensions");
    const MetricSpace space = make_continuous_space(
        metric_kind_from_string(args.kind), static_cast<int>(a.dim()));
    require_cli_dimension(space);
    const double h = args.accelerated ? hausdorff_accelerated(space, a, b)
                                      : hausdorff(space, a, b);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g\n", h);
    std::cout << buf;
    return kExitOk;
}

struct AttractArgs {
    std::string config_path;
    std::string out_path = "attractor.csv";
    std::string trace_path = "trace.csv";
    std::string cert_path = "cert.json";
    double tol_override = 0.0;
    double resolution_override = 0.0;
    int max_iter_override = 0;
};

int run_attract(const AttractArgs& args) {
    SifsConfig config = config_from_json(load_json_file(args.config_path));
    if (args.tol_override > 0.0) config.tolerance = args.tol_override;
    if (args.resolution_override > 0.0) config.resolution = args.resolution_override;
    if (args.max_iter_override > 0) config.max_iter = args.max_iter_override;

    require_cli_dimension(config.space);
    BuiltSystem built = build_system(config);
    const SeedsRunResult run =
        run_attractor_seeds(built.sifs, built.seeds, config.tolerance, config.max_iter);

    write_file_atomic(args.out_path, set_to_csv(run.primary().attractor));
    write_file_atomic(args.trace_path, trace_to_csv(run.primary().trace));
    json cert = certificate_to_json(run.primary().certificate);
    cert["seeds"] = built.seeds.size();
    cert["sample"] = built.sample_description;
    const std::string cert_text = cert.dump(2) + "\n";
    write_file_atomic(args.cert_path, cert_text);
    std::cout << cert_text;

    for (const AttractorResult& r : run.per_seed)
        if (r.trace.stop_reason != StopReason::tolerance_met) {
            std::cerr << "attract: a seed stopped with " << to_string(r.trace.stop_reason)
                      << "\n";
            return kExitCheckFailed;
        }
    return kExitOk;
}

struct RenderArgs {
    std::string in_path, out_path;
    int width = 800, height = 800;
};

int run_render(const RenderArgs& args) {
    if (args.width < 1 || args.height < 1)
        throw input_error("render: width and height must be positive");
    const CompactSet set = load_set_csv(args.in_path);
    write_file_atomic(args.out_path, render_pgm(set, args.width, args.height));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

struct SelftestArgs {
    std::string filter;
    std::string out_dir = "selftest_out";
    std::string fixtures_dir;  // load fixtures from here instead of bundling
};

class Selftest {
public:
    explicit Selftest(const SelftestArgs& args) : args_(args) {}

    int run() {
        fs::create_directories(args_.out_dir);
        prepare_fixtures();
        run_fixture("fivepoint", [this] { return fivepoint(); });
        run_fixture("halving", [this] { return halving(); });
        run_fixture("ladder", [this] { return ladder(); });
        run_fixture("cantor", [this] { return attractor_fixture("cantor", 1.0 / 3.0); });
        run_fixture("sierpinski",
                    [this] { return attractor_fixture("sierpinski", 0.5); });
        if (ran_ == 0) {
            std::cerr << "selftest: no fixture matches filter \"" << args_.filter
                      << "\"\n";
            return kExitInputError;
        }
        std::printf("%d/%d fixtures passed\n", passed_, ran_);
        return passed_ == ran_ ? kExitOk : kExitCheckFailed;
    }

private:
    void prepare_fixtures() {
        if (!args_.fixtures_dir.empty()) {
            fixtures_path_ = args_.fixtures_dir;
            return;
        }
        fixtures_path_ = (fs::path(args_.out_dir) / "fixtures").string();
        fs::create_directories(fixtures_path_);
        for (const auto& f : fixtures::fixture_files())
            write_file_atomic((fs::path(fixtures_path_) / f.name).string(), f.content);
    }

    json fixture_json(const std::string& name) {
        return load_json_file((fs::path(fixtures_path_) / name).string());
    }

    std::string out_file(const std::string& name) {
        return (fs::path(args_.out_dir) / name).string();
    }

    template <typename Fn>
    void run_fixture(const std::string& name, Fn&& body) {
        if (!args_.filter.empty() && name.find(args_.filter) == std::string::npos)
            return;
        ++ran_;
        detail_.clear();
        const bool ok = body();
        std::printf("%s %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                    detail_.empty() ? "" : ": ", detail_.c_str());
        if (ok) ++passed_;
    }

    bool fivepoint() {
        const MetricSpace space = space_from_json(fixture_json("fivepoint_space.json"));
        const ContractionMap map = map_from_json(fixture_json("fivepoint_map.json"));
        const SampleSpec sample = make_sample(space, "all", Box{}, 1);
        const ClassificationReport report =
            classify(space, map, sample.points, sample.description);
        write_file_atomic(out_file("fivepoint_report.json"),
                          classification_to_json(report, sample.points, space).dump(2) + "\n");

        if (report.verdict != ClassificationReport::Verdict::suzuki_only)
            return fail("verdict " + to_string(report.verdict));
        if (!report.banach_witness || std::abs(report.banach_witness->ratio - 4.0) > 1e-12)
            return fail("missing or wrong Banach witness");
        if (!report.minimal_m_suzuki) return fail("no Suzuki factor found");

        // Every orbit must settle on the same fixed point.
        int fixed = -1;
        int steps_from_43 = 0;
        for (std::size_t i = 0; i < space.size(); ++i) {
            const auto [point, trace] =
                fixed_point_iterate(space, map, Point::idx(static_cast<int>(i)), 1e-9, 50);
            if (!trace.converged()) return fail("orbit did not converge");
            if (fixed < 0) fixed = point.index;
            if (point.index != fixed) return fail("orbits disagree on the fixed point");
            if (i == 4) steps_from_43 = static_cast<int>(trace.steps.size());
        }
        if (fixed != 0) return fail("unexpected fixed point index");
        if (steps_from_43 > 3) return fail("slow orbit from the far corner point");
        char buf[120];
        std::snprintf(buf, sizeof buf, "suzuki_only, minimal m %.6f, witness ratio 4",
                      *report.minimal_m_suzuki);
        return pass(buf);
    }

    bool halving() {
        const MetricSpace space = space_from_json(fixture_json("halving_space.json"));
        const ContractionMap map = map_from_json(fixture_json("halving_map.json"));
        const SampleSpec sample = make_sample(space, "grid:101", unit_box(1), 1);
        const ClassificationReport report =
            classify(space, map, sample.points, sample.description);
        write_file_atomic(out_file("halving_report.json"),
                          classification_to_json(report, sample.points, space).dump(2) + "\n");

        if (report.verdict != ClassificationReport::Verdict::banach)
            return fail("verdict " + to_string(report.verdict));
        if (!report.minimal_m_banach || std::abs(*report.minimal_m_banach - 0.5) > 1e-6)
            return fail("minimal Banach factor is off");
        const auto [point, trace] =
            fixed_point_iterate(space, map, Point::at({1.0}), 1e-9, 100);
        if (!trace.converged() || std::abs(point.coords[0]) > 1e-9)
            return fail("orbit from 1.0 missed the fixed point");
        return pass("banach, minimal m 0.5, orbit reaches 0");
    }

    bool ladder() {
        const MetricSpace space = space_from_json(fixture_json("ladder_space.json"));
        const ContractionMap map = map_from_json(fixture_json("ladder_map.json"));
        const std::vector<Point> sample = fixtures::ladder_sample();
        const ClassificationReport report = classify(space, map, sample, "ladder sample");
        if (report.verdict == ClassificationReport::Verdict::neither)
            return fail("no factor below 1 passes on the sample");
        for (const Point& start : sample) {
            const auto [point, trace] = fixed_point_iterate(space, map, start, 1e-9, 200);
            if (!trace.converged()) return fail("orbit did not converge");
            if (std::abs(point.coords[0]) > 1e-9)
                return fail("orbit settled away from 0");
        }
        char buf[120];
        std::snprintf(buf, sizeof buf, "%zu orbits reach 0 within 1e-9", sample.size());
        return pass(buf);
    }

    bool attractor_fixture(const std::string& name, double analytic_factor) {
        const SifsConfig config = config_from_json(fixture_json(name + ".json"));
        const BuiltSystem built = build_system(config);
        const SeedsRunResult run = run_attractor_seeds(built.sifs, built.seeds,
                                                       config.tolerance, config.max_iter);

        write_file_atomic(out_file(name + "_attractor.csv"),
                          set_to_csv(run.primary().attractor));
        write_file_atomic(out_file(name + "_trace.csv"),
                          trace_to_csv(run.primary().trace));
        json cert = certificate_to_json(run.primary().certificate);
        cert["seeds"] = built.seeds.size();
        write_file_atomic(out_file(name + "_cert.json"), cert.dump(2) + "\n");
        if (built.sifs.space.dimension <= 2)
            write_file_atomic(out_file(name + ".pgm"),
                              render_pgm(run.primary().attractor, 400, 400));

        for (const AttractorResult& r : run.per_seed) {
            if (r.trace.stop_reason != StopReason::tolerance_met)
                return fail("stopped with " + to_string(r.trace.stop_reason));
            if (!(r.certificate.self_referential_residual < config.tolerance))
                return fail("self-referential residual too large");
            for (double ratio : tail_ratios(r.trace, built.sifs.resolution))
                if (std::abs(ratio - analytic_factor) > 0.05)
                    return fail("tail ratio drifted from the analytic factor");
        }
        const double agreement_budget = 2.0 * config.tolerance + 2.0 * config.resolution;
        if (!(run.start_independence_residual <= agreement_budget))
            return fail("seed attractors disagree");
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "%zu seeds, %zu points, residual %.2e, seed agreement %.2e",
                      built.seeds.size(), run.primary().attractor.size(),
                      run.primary().certificate.self_referential_residual,
                      run.start_independence_residual);
        return pass(buf);
    }

    // Ratios whose numerator and denominator both clear the meaningful-
    // distance threshold; at most the last five.
    static std::vector<double> tail_ratios(const ConvergenceTrace& trace,
                                           double resolution) {
        const double floor = kProbeMeaningfulFactor * resolution;
        std::vector<double> ratios;
        for (std::size_t t = 1; t < trace.steps.size(); ++t) {
            if (trace.steps[t - 1].dist > floor && trace.steps[t].dist > floor)
                ratios.push_back(trace.steps[t].ratio);
        }
        if (ratios.size() > 5) ratios.erase(ratios.begin(), ratios.end() - 5);
        return ratios;
    }

    bool pass(const std::string& detail) {
        detail_ = detail;
        return true;
    }
    bool fail(const std::string& detail) {
        detail_ = detail;
        return false;
    }

    SelftestArgs args_;
    std::string fixtures_path_;
    std::string detail_;
    int ran_ = 0;
    int passed_ = 0;
};

int run_selftest(const SelftestArgs& args) { return Selftest(args).run(); }

}  // namespace

std::string version_string() {
    return "sifs 1.0.0 (fixtures " + fixtures::suite_hash_hex() + ")";
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"Suzuki iterated function systems: contraction checking, "
                 "Hausdorff distances, and deterministic fractal attractors"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    ClassifyArgs classify_args;
    auto* cmd_classify = app.add_subcommand(
        "classify", "Classify a map as banach / suzuki_only / neither on a sample");
    cmd_classify->add_option("--space", classify_args.space_path, "Space JSON file")
        ->required();
    cmd_classify->add_option("--map", classify_args.map_path, "Map JSON file")
        ->required();
    cmd_classify->add_option("--sample", classify_args.sample,
                             "Sample spec: grid:N or random:N (finite spaces use "
                             "every point)");
    cmd_classify->add_option("--box", classify_args.box_text,
                             "Sampling box lo,hi[;lo,hi...] (default unit box)");
    cmd_classify->add_option("--seed", classify_args.seed, "Seed for random sampling");
    cmd_classify->add_option("--out", classify_args.out_path, "Also write report here");
    cmd_classify->add_option("--expect", classify_args.expect,
                             "Fail (exit 1) unless the verdict matches")
        ->check(CLI::IsMember({"banach", "suzuki_only", "neither"}));

    HausdorffArgs hausdorff_args;
    auto* cmd_hausdorff =
        app.add_subcommand("hausdorff", "Hausdorff distance between two CSV point sets");
    cmd_hausdorff->add_option("--a", hausdorff_args.a_path, "First set CSV")->required();
    cmd_hausdorff->add_option("--b", hausdorff_args.b_path, "Second set CSV")->required();
    cmd_hausdorff->add_option("--kind", hausdorff_args.kind, "Metric kind")
        ->check(CLI::IsMember({"euclidean", "taxicab", "chebyshev"}));
    cmd_hausdorff->add_flag("--accelerated", hausdorff_args.accelerated,
                            "Use the bucket-grid path (same value, faster)");

    AttractArgs attract_args;
    auto* cmd_attract =
        app.add_subcommand("attract", "Iterate the set operator to its attractor");
    cmd_attract->add_option("--config", attract_args.config_path, "System config JSON")
        ->required();
    cmd_attract->add_option("--out", attract_args.out_path, "Attractor CSV output");
    cmd_attract->add_option("--trace", attract_args.trace_path, "Trace CSV output");
    cmd_attract->add_option("--cert", attract_args.cert_path, "Certificate JSON output");
    cmd_attract->add_option("--tol", attract_args.tol_override, "Tolerance override");
    cmd_attract->add_option("--resolution", attract_args.resolution_override,
                            "Grid resolution override");
    cmd_attract->add_option("--max-iter", attract_args.max_iter_override,
                            "Iteration cap override");

    RenderArgs render_args;
    auto* cmd_render = app.add_subcommand("render", "Rasterize a point set CSV to PGM");
    cmd_render->add_option("--in", render_args.in_path, "Point set CSV")->required();
    cmd_render->add_option("--out", render_args.out_path, "PGM output path")->required();
    cmd_render->add_option("--width", render_args.width, "Image width");
    cmd_render->add_option("--height", render_args.height, "Image height");

    SelftestArgs selftest_args;
    auto* cmd_selftest =
        app.add_subcommand("selftest", "Run the bundled reference fixtures");
    cmd_selftest->add_option("--filter", selftest_args.filter,
                             "Run only fixtures whose name contains this");
    cmd_selftest->add_option("--out-dir", selftest_args.out_dir, "Output directory");
    cmd_selftest->add_option("--fixtures-dir", selftest_args.fixtures_dir,
                             "Load fixture files from here instead of the bundle");

    std::vector<std::string> argv_storage;
    argv_storage.push_back("sifs");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& s : argv_storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (cmd_classify->parsed()) return run_classify(classify_args);
        if (cmd_hausdorff->parsed()) return run_hausdorff(hausdorff_args);
        if (cmd_attract->parsed()) return run_attract(attract_args);
        if (cmd_render->parsed()) return run_render(render_args);
        if (cmd_selftest->parsed()) return run_selftest(selftest_args);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace sifs::cli
