// perron-lattice: certify hypothesis constants on integer sphere slices,
// search for approximate eigenvectors, refute concavity/scalability, and
// simulate the built-in models.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "perron/config_io.hpp"

namespace {

using namespace perron;

int env_threads() {
    const char* env = std::getenv("PERRON_LATTICE_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

LatticeVector parse_csv_vector(const std::string& text) {
    LatticeVector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw invalid_input("bad integer in vector: " + item);
        }
    }
    if (out.empty()) throw invalid_input("empty vector");
    return out;
}

json error_json(const std::string& category, const std::string& message) {
    return json{{"error", category}, {"message", message}};
}

json certification_error_json(const certification_error& e) {
    json j = error_json("certification_failure", e.what());
    const auto kind_name = [](certification_error::Kind k) {
        switch (k) {
            case certification_error::Kind::zero_image: return "zero_image";
            case certification_error::Kind::zero_positivity: return "zero_positivity";
            case certification_error::Kind::infinite_image_distance:
                return "infinite_image_distance";
            case certification_error::Kind::empty_slice: return "empty_slice";
            case certification_error::Kind::internal: return "internal";
        }
        return "unknown";
    };
    j["kind"] = kind_name(e.kind);
    if (!e.witness_x.empty()) j["witness_x"] = e.witness_x;
    if (!e.witness_y.empty()) j["witness_y"] = e.witness_y;
    if (e.coordinate >= 0) j["coordinate"] = e.coordinate;
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct CommonFlags {
    std::string map_path;
    Int k = 0;
    std::string c_text;
    int threads = env_threads();
    std::uint64_t seed = 0;
};

SphereSlice make_slice(int d, Int k, const std::string& c_text) {
    std::optional<Rat> c;
    if (!c_text.empty()) c = parse_rat(c_text);
    return SphereSlice(d, k, c);
}

RunManifest make_manifest(const std::string& subcommand, json flags,
                          const std::optional<std::string>& config_bytes, int threads,
                          std::optional<std::uint64_t> seed) {
    RunManifest m;
    m.subcommand = subcommand;
    m.flags = std::move(flags);
    if (config_bytes) m.config_digest = content_digest(*config_bytes);
    m.version = kToolVersion;
    m.timestamp = iso_timestamp();
    m.seed = seed;
    m.threads = threads;
    return m;
}

int cmd_analyze(const CommonFlags& cf, bool sample, std::uint64_t sample_pairs,
                std::uint64_t pair_cap) {
    const std::string bytes = read_file(cf.map_path);
    const IntegerMap map = parse_map_config(json::parse(bytes));
    const SphereSlice slice = make_slice(map.dim(), cf.k, cf.c_text);

    CertifyOptions opts;
    opts.threads = cf.threads;
    opts.pair_cap = pair_cap;
    opts.sample = sample;
    opts.sample_pairs = sample_pairs;
    opts.seed = cf.seed;

    const ConstantsCertificate cert = certify_constants(map, slice, opts);

    json flags{{"map", cf.map_path}, {"k", cf.k},     {"c", cf.c_text},
               {"sample", sample},   {"pair_cap", pair_cap}};
    if (sample) flags["sample_pairs"] = sample_pairs;
    json out = certificate_to_json(cert);
    out["manifest"] = manifest_to_json(make_manifest(
        "analyze", flags, bytes, cf.threads,
        sample ? std::optional<std::uint64_t>(cf.seed) : std::nullopt));
    emit(out);
    return 0;
}

int cmd_find(const CommonFlags& cf, bool corollary, bool heuristic, const std::string& start_text,
             int max_steps) {
    const std::string bytes = read_file(cf.map_path);
    const IntegerMap map = parse_map_config(json::parse(bytes));
    const SphereSlice slice = make_slice(map.dim(), cf.k, cf.c_text);

    CertifyOptions opts;
    opts.threads = cf.threads;
    const ConstantsCertificate cert = certify_constants(map, slice, opts);

    json flags{{"map", cf.map_path},
               {"k", cf.k},
               {"c", cf.c_text},
               {"verify_corollary", corollary},
               {"heuristic", heuristic}};

    ResidualReport report;
    std::optional<HeuristicResult> hres;
    if (heuristic) {
        if (start_text.empty()) throw invalid_input("--heuristic needs --start");
        hres = heuristic_iterate(map, slice, parse_csv_vector(start_text), max_steps);
        report.slice = slice;
        report.y = hres->best;
        report.image = map.evaluate(hres->best);
        report.residual_sq = hres->best_residual_sq;
        report.residual = hres->best_residual;
        report.bound = theorem_bound(cert.L, cert.c, slice.d, slice.k);
        report.corollary_epsilon = report.bound * rat_to_double(1 / cert.c);
        report.search_mode = ResidualReport::SearchMode::heuristic;
        flags["start"] = start_text;
        flags["max_steps"] = max_steps;
    } else {
        report = find_best(map, slice, cert, cf.threads);
    }
    if (corollary) verify_corollary(report, cert.a, cert.b);

    json out = residual_report_to_json(report);
    if (hres) {
        json traj = json::array();
        for (const auto& p : hres->trajectory) traj.push_back(p);
        out["trajectory"] = traj;
        out["cycle"] = hres->cycle;
        if (hres->cycle) out["cycle_start"] = hres->cycle_start;
        out["clamped"] = hres->clamped;
    }
    out["manifest"] =
        manifest_to_json(make_manifest("find", flags, bytes, cf.threads, std::nullopt));
    emit(out);

    if (!heuristic && !report.theorem_pass) return 2;
    return 0;
}

int cmd_concavity(const CommonFlags& cf, Int window, int parts, Int max_weight, Int max_scale) {
    const std::string bytes = read_file(cf.map_path);
    const IntegerMap map = parse_map_config(json::parse(bytes));

    ConcavityBudget budget;
    budget.window = window;
    budget.max_parts = parts;
    budget.max_weight = max_weight;
    const ConcavityResult result = verify_concavity(map, budget);

    json flags{{"map", cf.map_path},
               {"window", window},
               {"parts", parts},
               {"max_weight", max_weight}};
    json out = concavity_result_to_json(result);
    if (max_scale > 0) {
        flags["max_scale"] = max_scale;
        out["scalability"] = scalability_result_to_json(check_scalability(map, window, max_scale));
    }
    out["manifest"] =
        manifest_to_json(make_manifest("concavity", flags, bytes, cf.threads, std::nullopt));
    emit(out);
    return 0;
}

int cmd_simulate(const CommonFlags& cf, const std::string& x0_text, Int steps) {
    const std::string bytes = read_file(cf.map_path);
    const IntegerMap map = parse_map_config(json::parse(bytes));
    const LatticeVector x0 = parse_csv_vector(x0_text);
    const Trajectory traj = simulate(map, x0, steps);

    const bool aimd = map.as<AIMDConfig>() != nullptr;
    std::ostringstream os;
    os << "step";
    for (int i = 1; i <= map.dim(); ++i) os << ",x" << i;
    os << ",l1norm,event";
    if (aimd) os << ",T";
    os << "\n";
    for (std::size_t r = 0; r < traj.rows.size(); ++r) {
        const auto& row = traj.rows[r];
        os << row.step;
        for (Int v : row.x) os << ',' << v;
        os << ',' << row.l1;
        std::string event;
        if (r + 1 == traj.rows.size()) {
            switch (traj.reason) {
                case Trajectory::Termination::fixed_point: event = "fixed_point"; break;
                case Trajectory::Termination::cycle:
                    event = "cycle_to_" + std::to_string(traj.cycle_start);
                    break;
                case Trajectory::Termination::domain_exit: event = "domain_exit"; break;
                case Trajectory::Termination::max_steps: event = ""; break;
            }
        }
        os << ',' << event;
        if (aimd) os << ',' << (row.aimd_T ? rat_to_string(*row.aimd_T) : "");
        os << "\n";
    }
    std::cout << os.str();
    if (traj.reason == Trajectory::Termination::domain_exit)
        std::cerr << "domain exit: " << traj.exit_detail << "\n";
    return 0;
}

int cmd_enumerate(int d, Int k, const std::string& c_text, bool count_only, int threads) {
    const SphereSlice slice = make_slice(d, k, c_text);
    if (count_only) {
        std::cout << slice.count().get_str() << "\n";
        return 0;
    }
    const auto print = [](const LatticeVector& x) {
        std::string line;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) line += ',';
            line += std::to_string(x[i]);
        }
        line += '\n';
        std::cout << line;
    };
    if (threads <= 1) {
        // streaming: constant memory per point
        SliceEnumerator it(slice);
        while (auto x = it.next()) print(*x);
    } else {
        for (const auto& x : enumerate_slice_parallel(slice, threads)) print(x);
    }
    return 0;
}

int cmd_paper_example() {
    // Three locations with equal populations; the rate extrema pin the
    // closed-form constants.
    SISConfig cfg;
    cfg.M = {1000, 1000, 1000};
    cfg.delta_prime = {make_rat(1, 2), make_rat(3, 4), make_rat(1, 2)};
    cfg.B = {{make_rat(1, 2), make_rat(3, 4), make_rat(1, 2)},
             {make_rat(3, 4), make_rat(1, 2), make_rat(1, 2)},
             {make_rat(1, 2), make_rat(1, 2), make_rat(3, 4)}};
    const SISConstants sc = sis_constants(cfg);

    const int d = cfg.dim();
    const double numerator = theorem_bound(rat_to_double(sc.L), sc.c, d, 1);
    const double sqrt_d_numerator = std::sqrt(static_cast<double>(d)) * numerator;
    const double corollary_error = numerator * rat_to_double(1 / sc.c);

    json out;
    out["d"] = d;
    out["L"] = rat_to_string(sc.L);
    out["a"] = rat_to_string(sc.a);
    out["b"] = rat_to_string(sc.b);
    out["c"] = rat_to_string(sc.c);
    out["numerator"] = real_to_string(numerator);
    out["sqrt_d_numerator"] = real_to_string(sqrt_d_numerator);
    out["corollary_error"] = real_to_string(corollary_error);
    out["manifest"] = manifest_to_json(
        make_manifest("paper-example", json::object(), std::nullopt, 1, std::nullopt));
    emit(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hilbert-metric certification and approximate eigenvectors on integer spheres"};
    app.require_subcommand(1);

    CommonFlags cf;
    bool sample = false;
    std::uint64_t sample_pairs = 100000, pair_cap = 10000000;
    bool corollary = false, heuristic = false, count_only = false;
    std::string start_text, x0_text;
    int max_steps = 100, enum_d = 2, parts = 3;
    Int window = 4, max_weight = 4, max_scale = 0, steps = 10;

    auto* analyze = app.add_subcommand("analyze", "certify L, c, a, b on a slice");
    analyze->add_option("--map", cf.map_path)->required();
    analyze->add_option("--k", cf.k)->required();
    analyze->add_option("--c", cf.c_text);
    analyze->add_flag("--sample", sample, "sample pairs instead of exhaustive scan");
    analyze->add_option("--sample-pairs", sample_pairs);
    analyze->add_option("--pair-cap", pair_cap);
    analyze->add_option("--seed", cf.seed);
    analyze->add_option("--threads", cf.threads);

    auto* find = app.add_subcommand("find", "search for the best approximate eigenvector");
    find->add_option("--map", cf.map_path)->required();
    find->add_option("--k", cf.k)->required();
    find->add_option("--c", cf.c_text);
    find->add_flag("--verify-corollary", corollary);
    find->add_flag("--heuristic", heuristic);
    find->add_option("--start", start_text, "start point, comma-separated");
    find->add_option("--max-steps", max_steps);
    find->add_option("--threads", cf.threads);

    auto* concavity = app.add_subcommand("concavity", "bounded concavity refutation");
    concavity->add_option("--map", cf.map_path)->required();
    concavity->add_option("--window", window);
    concavity->add_option("--parts", parts);
    concavity->add_option("--max-weight", max_weight);
    concavity->add_option("--max-scale", max_scale, "also check scalability up to this factor");

    auto* simulate_cmd = app.add_subcommand("simulate", "iterate the map, emit CSV");
    simulate_cmd->add_option("--map", cf.map_path)->required();
    simulate_cmd->add_option("--x0", x0_text)->required();
    simulate_cmd->add_option("--steps", steps);

    auto* enumerate = app.add_subcommand("enumerate", "emit slice points as CSV");
    enumerate->add_option("--d", enum_d)->required();
    enumerate->add_option("--k", cf.k)->required();
    enumerate->add_option("--c", cf.c_text);
    enumerate->add_flag("--count-only", count_only);
    enumerate->add_option("--threads", cf.threads);

    auto* paper = app.add_subcommand("paper-example", "reproduce the worked SIS constants");
    (void)paper;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(cf, sample, sample_pairs, pair_cap);
        if (find->parsed()) return cmd_find(cf, corollary, heuristic, start_text, max_steps);
        if (concavity->parsed()) return cmd_concavity(cf, window, parts, max_weight, max_scale);
        if (simulate_cmd->parsed()) return cmd_simulate(cf, x0_text, steps);
        if (enumerate->parsed()) return cmd_enumerate(enum_d, cf.k, cf.c_text, count_only,
                                                      cf.threads);
        if (paper->parsed()) return cmd_paper_example();
    } catch (const certification_error& e) {
        emit(certification_error_json(e));
        return 2;
    } catch (const too_large_error& e) {
        emit(error_json("too_large", e.what()));
        return 2;
    } catch (const invalid_input& e) {
        std::cerr << error_json("invalid_input", e.what()).dump(2) << "\n";
        return 1;
    } catch (const map_domain_error& e) {
        std::cerr << error_json("domain_error", e.what()).dump(2) << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << error_json("config_error", e.what()).dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << error_json("internal_error", e.what()).dump(2) << "\n";
        return 2;
    }
    return 1;
}
