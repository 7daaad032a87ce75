// gridweave: draw graphs on [m]^3 grids, verify drawings, run lattice
// censuses and benchmarks.
//
// Exit codes: 0 success, 1 parse/usage/malformed input, 2 infeasible
// parameters, 3 budget exhausted, 4 drawing invalid (verify), 5 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gridweave/error.hpp"
#include "gridweave/harness.hpp"
#include "gridweave/io.hpp"
#include "gridweave/simd/kernels.hpp"
#include "gridweave/verifier.hpp"

namespace {

using namespace gridweave;

enum ExitCode : int { kOk = 0, kParse = 1, kInfeasible = 2, kBudget = 3, kInvalid = 4, kIo = 5 };

void emit(const std::string& path, const std::string& contents) {
    if (path.empty() || path == "-") {
        std::fwrite(contents.data(), 1, contents.size(), stdout);
    } else {
        write_file(path, contents);
    }
}

// "4,6,8" or "4:12:2" (inclusive, optional step).
std::vector<std::int32_t> parse_sizes(const std::string& spec) {
    std::vector<std::int32_t> out;
    try {
        if (const auto colon = spec.find(':'); colon != std::string::npos) {
            const auto second = spec.find(':', colon + 1);
            const int lo = std::stoi(spec.substr(0, colon));
            const int hi = std::stoi(spec.substr(colon + 1, second == std::string::npos ? std::string::npos : second - colon - 1));
            const int step = second == std::string::npos ? 1 : std::stoi(spec.substr(second + 1));
            if (step < 1) throw ParseError("size range step must be positive");
            for (int m = lo; m <= hi; m += step) out.push_back(m);
        } else {
            std::size_t start = 0;
            while (start <= spec.size()) {
                const auto comma = spec.find(',', start);
                out.push_back(std::stoi(spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        }
    } catch (const std::logic_error&) {
        throw ParseError("cannot parse size list \"" + spec + "\"");
    }
    if (out.empty()) throw ParseError("empty size list \"" + spec + "\"");
    return out;
}

std::vector<std::int64_t> parse_normal(const std::string& spec) {
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    try {
        while (start <= spec.size()) {
            const auto comma = spec.find(',', start);
            out.push_back(std::stoll(spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    } catch (const std::logic_error&) {
        throw ParseError("cannot parse normal \"" + spec + "\"");
    }
    return out;
}

CensusStrategy parse_strategy(const std::string& name) {
    if (name == "auto") return CensusStrategy::Auto;
    if (name == "direct" || name == "brute") return CensusStrategy::Direct;
    if (name == "lines" || name == "planes" || name == "enumeration") return CensusStrategy::Enumeration;
    throw ParseError("unknown strategy \"" + name + "\"");
}

struct DrawOptions {
    std::string graph_path;
    std::string alg = "blowup-greedy";
    std::int64_t m = 0;
    std::int32_t t = 0;
    std::uint64_t seed = 1;
    double c = DrawingParams{}.volume_constant;
    std::int32_t budget = DrawingParams{}.attempt_budget;
    double growth = DrawingParams{}.growth_factor;
    std::int32_t max_escalations = DrawingParams{}.max_escalations;
    std::string out;
    bool stats = false;
};

int cmd_draw(const DrawOptions& o) {
    const auto g = parse_graph(read_file(o.graph_path));
    DrawingParams params;
    params.m = o.m;
    params.t = o.t;
    params.seed = o.seed;
    params.volume_constant = o.c;
    params.attempt_budget = o.budget;
    params.growth_factor = o.growth;
    params.max_escalations = o.max_escalations;
    const auto result = run_draw(g, parse_algorithm(o.alg), params);
    emit(o.out, result.json);
    if (o.stats) {
        const auto& st = result.outcome.stats;
        std::fprintf(stderr, "{\"m\": %lld, \"t\": %d, \"attempts\": %lld, \"conflicts_seen\": %lld, \"elapsed_ms\": %.3f}\n",
                     static_cast<long long>(st.final_m()), st.t, static_cast<long long>(st.attempts),
                     static_cast<long long>(st.conflicts_seen), st.elapsed_ms);
    }
    return kOk;
}

int cmd_verify(const std::string& graph_path, const std::string& embedding_path, const std::string& out) {
    const auto g = parse_graph(read_file(graph_path));
    const auto file = parse_embedding_json(read_file(embedding_path));
    check_graph_hash(file, g);
    const auto verdict = verify_drawing(g, file.embedding);
    emit(out, verdict_to_json(verdict));
    return verdict.valid ? kOk : kInvalid;
}

int cmd_render(const std::string& embedding_path, const std::string& graph_path, const std::string& out) {
    const auto file = parse_embedding_json(read_file(embedding_path));
    std::optional<Graph> g;
    if (!graph_path.empty()) {
        g = parse_graph(read_file(graph_path));
        check_graph_hash(file, *g);
        check_embedding(*g, file.embedding);
    }
    emit(out, render_svg(file.embedding, g ? &*g : nullptr));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gridweave: crossing-free drawings of graphs on integer grids"};
    app.require_subcommand(1);

    DrawOptions draw;
    auto* draw_cmd = app.add_subcommand("draw", "Draw a graph and write the embedding JSON");
    draw_cmd->add_option("graph", draw.graph_path, "Edge-list file")->required();
    draw_cmd->add_option("--alg", draw.alg, "first-moment | blowup-greedy (aliases: fm, greedy)");
    draw_cmd->add_option("--m", draw.m, "Grid side (0 = from the volume formula)");
    draw_cmd->add_option("--t", draw.t, "Blowup part size (0 = derived)");
    draw_cmd->add_option("--seed", draw.seed, "RNG seed");
    draw_cmd->add_option("--c", draw.c, "Volume constant");
    draw_cmd->add_option("--budget", draw.budget, "Attempts per grid side before escalating");
    draw_cmd->add_option("--growth", draw.growth, "Grid side growth factor per escalation");
    draw_cmd->add_option("--max-escalations", draw.max_escalations, "Hard cap on grid escalations");
    draw_cmd->add_option("--out,-o", draw.out, "Output file (default stdout)");
    draw_cmd->add_flag("--stats", draw.stats, "Print trial statistics to stderr");

    std::string verify_graph, verify_embedding, verify_out;
    auto* verify_cmd = app.add_subcommand("verify", "Check a drawing; exit 0 iff it is a valid grid-drawing");
    verify_cmd->add_option("graph", verify_graph, "Edge-list file")->required();
    verify_cmd->add_option("embedding", verify_embedding, "Embedding JSON")->required();
    verify_cmd->add_option("--out,-o", verify_out, "Verdict output (default stdout)");

    std::string count_kind = "collinear", count_sizes, count_strategy = "auto", count_normal, count_out;
    std::int32_t count_d = 3, count_k = 3;
    bool count_fit = false;
    auto* count_cmd = app.add_subcommand("count", "Lattice censuses as CSV");
    count_cmd->add_option("kind", count_kind, "collinear | coplanar-origin | coplanar4 | hyperplane")->required();
    count_cmd->add_option("-d", count_d, "Dimension (collinear)");
    count_cmd->add_option("-k", count_k, "Tuple size (collinear)");
    count_cmd->add_option("-m", count_sizes, "Grid sides: list 4,6,8 or range 4:12:2")->required();
    count_cmd->add_option("--strategy", count_strategy, "auto | direct | lines | planes");
    count_cmd->add_option("--normal", count_normal, "Primitive normal a1,a2,... (hyperplane)");
    count_cmd->add_flag("--fit", count_fit, "Append the fitted growth exponent");
    count_cmd->add_option("--out,-o", count_out, "Output file (default stdout)");

    std::string bench_config, bench_out, bench_summary;
    std::int32_t bench_trials = 0;
    auto* bench_cmd = app.add_subcommand("bench", "Run an experiment config; write records CSV and summary JSON");
    bench_cmd->add_option("config", bench_config, "Experiment config JSON")->required();
    bench_cmd->add_option("--trials", bench_trials, "Override trials per size");
    bench_cmd->add_option("--out,-o", bench_out, "Records CSV path (overrides config)");
    bench_cmd->add_option("--summary", bench_summary, "Summary JSON path (overrides config)");

    std::string render_embedding, render_graph, render_out;
    auto* render_cmd = app.add_subcommand("render", "Project a drawing to SVG");
    render_cmd->add_option("embedding", render_embedding, "Embedding JSON")->required();
    render_cmd->add_option("--graph", render_graph, "Edge-list file (draws edges)");
    render_cmd->add_option("--out,-o", render_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*draw_cmd) return cmd_draw(draw);
        if (*verify_cmd) return cmd_verify(verify_graph, verify_embedding, verify_out);
        if (*render_cmd) return cmd_render(render_embedding, render_graph, render_out);
        if (*count_cmd) {
            CountRequest req;
            req.kind = parse_census_kind(count_kind);
            req.d = count_d;
            req.k = count_k;
            req.sizes = parse_sizes(count_sizes);
            req.strategy = parse_strategy(count_strategy);
            req.fit = count_fit;
            if (req.kind == CensusKind::HyperplaneCount) {
                if (count_normal.empty()) throw ParseError("hyperplane census needs --normal");
                req.normal = parse_normal(count_normal);
            }
            emit(count_out, run_count(req));
            return kOk;
        }
        if (*bench_cmd) {
            auto cfg = parse_experiment_config(read_file(bench_config));
            if (bench_trials > 0) cfg.trials = bench_trials;
            if (!bench_out.empty()) cfg.out_records = bench_out;
            if (!bench_summary.empty()) cfg.out_summary = bench_summary;
            const bool records_to_stdout = cfg.out_records.empty();
            const auto report = run_bench(cfg);
            if (records_to_stdout) {
                std::fwrite(report.records_csv.data(), 1, report.records_csv.size(), stdout);
            }
            if (cfg.out_summary.empty()) {
                std::fwrite(report.summary_json.data(), 1, report.summary_json.size(),
                            records_to_stdout ? stderr : stdout);
            }
            return report.verification_failures == 0 ? kOk : kInvalid;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const MalformedEmbedding& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const BudgetExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
    return kOk;
}
