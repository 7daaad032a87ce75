#include "gridweave/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "gridweave/error.hpp"
#include "gridweave/io.hpp"
#include "gridweave/parallel.hpp"
#include "gridweave/rng.hpp"
#include "gridweave/verifier.hpp"

namespace gridweave {

namespace {

using Clock = std::chrono::steady_clock;

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

DrawResult run_draw(const Graph& g, Algorithm alg, const DrawingParams& params) {
    DrawResult result;
    result.outcome = alg == Algorithm::FirstMoment ? draw_first_moment(g, params) : draw_blowup_greedy(g, params);
    result.json = embedding_to_json(*result.outcome.embedding, graph_hash(g));

    const auto reread = parse_embedding_json(result.json);
    check_graph_hash(reread, g);
    const auto verdict = verify_drawing(g, reread.embedding);
    if (!verdict.valid) {
        throw Error("internal error: drawer returned an embedding the verifier rejects");
    }
    return result;
}

CensusKind parse_census_kind(std::string_view name) {
    if (name == "collinear" || name == "collinear-ksets") return CensusKind::CollinearKSets;
    if (name == "coplanar-origin" || name == "origin3" || name == "coplanar-origin-triples")
        return CensusKind::CoplanarOriginTriples;
    if (name == "coplanar4" || name == "coplanar-4sets") return CensusKind::Coplanar4Sets;
    if (name == "hyperplane" || name == "hyperplane-count") return CensusKind::HyperplaneCount;
    throw ParseError("unknown census kind \"" + std::string(name) + "\"");
}

std::string run_count(const CountRequest& request) {
    if (request.sizes.empty()) {
        throw ParseError("count needs at least one grid side m");
    }
    std::string csv = "kind,d,k,m,count,elapsed_ms\n";
    std::vector<std::pair<double, double>> series;
    std::int32_t d = request.d;
    std::int32_t k = request.k;
    for (auto m : request.sizes) {
        const auto start = Clock::now();
        CensusResult r;
        switch (request.kind) {
            case CensusKind::CollinearKSets: r = count_collinear_ksets(request.d, request.k, m, request.strategy); break;
            case CensusKind::CoplanarOriginTriples: r = count_coplanar_origin_triples(m); break;
            case CensusKind::Coplanar4Sets: r = count_coplanar_4sets(m, request.strategy); break;
            case CensusKind::HyperplaneCount: r = hyperplane_count(PrimitiveNormal(request.normal), m).census; break;
        }
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        d = r.d;
        k = r.k;
        std::string kind(census_kind_name(r.kind));
        if (r.kind == CensusKind::HyperplaneCount) {
            kind += PrimitiveNormal(request.normal).to_string();
        }
        csv += csv_field(kind) + "," + std::to_string(r.d) + "," + (r.k ? std::to_string(r.k) : "") + "," +
               std::to_string(r.m) + "," + std::to_string(r.count) + "," + fixed(ms, 3) + "\n";
        series.emplace_back(m, static_cast<double>(r.count));
    }
    if (request.fit) {
        const auto slope = fit_growth_exponent(series);
        std::string range = std::to_string(request.sizes.front()) + "-" + std::to_string(request.sizes.back());
        csv += "growth-exponent," + std::to_string(d) + "," + (k ? std::to_string(k) : "") + "," + range + "," +
               fixed(slope) + ",\n";
    }
    return csv;
}

namespace {

using Json = nlohmann::json;

void require_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) {
            throw ParseError("config: unknown key \"" + key + "\" in " + where);
        }
    }
}

template <typename T>
T get_number(const Json& obj, const char* key, T fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj[key];
    if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw ParseError(std::string("config: ") + where + "." + key + " must be an integer");
    } else {
        if (!v.is_number()) throw ParseError(std::string("config: ") + where + "." + key + " must be a number");
    }
    return v.get<T>();
}

std::string get_string(const Json& obj, const char* key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) throw ParseError(std::string("config: ") + key + " must be a string");
    return obj[key].get<std::string>();
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config must be a JSON object");
    require_keys(doc,
                 {"family", "sizes", "algorithm", "params", "trials", "master_seed", "reverify_fraction",
                  "record_timing", "out_records", "out_summary", "drawings_dir"},
                 "config");

    ExperimentConfig cfg;
    if (!doc.contains("family") || !doc["family"].is_object()) throw ParseError("config: \"family\" object is required");
    const auto& fam = doc["family"];
    require_keys(fam, {"kind", "degree", "degeneracy", "width", "a", "b"}, "family");
    if (!fam.contains("kind") || !fam["kind"].is_string()) throw ParseError("config: family.kind is required");
    cfg.family.kind = parse_family_kind(fam["kind"].get<std::string>());
    cfg.family.degree = get_number<std::int32_t>(fam, "degree", cfg.family.degree, "family");
    cfg.family.degeneracy = get_number<std::int32_t>(fam, "degeneracy", cfg.family.degeneracy, "family");
    cfg.family.width = get_number<std::int32_t>(fam, "width", cfg.family.width, "family");
    cfg.family.part_a = get_number<std::int32_t>(fam, "a", cfg.family.part_a, "family");
    cfg.family.part_b = get_number<std::int32_t>(fam, "b", cfg.family.part_b, "family");

    if (!doc.contains("sizes") || !doc["sizes"].is_array() || doc["sizes"].empty()) {
        throw ParseError("config: \"sizes\" must be a non-empty array");
    }
    for (const auto& s : doc["sizes"]) {
        if (!s.is_number_integer()) throw ParseError("config: sizes must be integers");
        const auto v = s.get<std::int32_t>();
        if (!cfg.sizes.empty() && v <= cfg.sizes.back()) throw ParseError("config: sizes must be increasing");
        cfg.sizes.push_back(v);
    }
    cfg.algorithm = parse_algorithm(get_string(doc, "algorithm", "blowup-greedy"));
    if (doc.contains("params")) {
        const auto& p = doc["params"];
        if (!p.is_object()) throw ParseError("config: \"params\" must be an object");
        require_keys(p, {"m", "t", "c", "budget", "growth", "max_escalations"}, "params");
        cfg.params.m = get_number<std::int64_t>(p, "m", cfg.params.m, "params");
        cfg.params.t = get_number<std::int32_t>(p, "t", cfg.params.t, "params");
        cfg.params.volume_constant = get_number<double>(p, "c", cfg.params.volume_constant, "params");
        cfg.params.attempt_budget = get_number<std::int32_t>(p, "budget", cfg.params.attempt_budget, "params");
        cfg.params.growth_factor = get_number<double>(p, "growth", cfg.params.growth_factor, "params");
        cfg.params.max_escalations = get_number<std::int32_t>(p, "max_escalations", cfg.params.max_escalations, "params");
    }
    cfg.trials = get_number<std::int32_t>(doc, "trials", cfg.trials, "config");
    if (cfg.trials < 1) throw ParseError("config: trials must be at least 1");
    cfg.master_seed = get_number<std::uint64_t>(doc, "master_seed", cfg.master_seed, "config");
    cfg.reverify_fraction = get_number<double>(doc, "reverify_fraction", cfg.reverify_fraction, "config");
    if (!(cfg.reverify_fraction >= 0.0 && cfg.reverify_fraction <= 1.0)) {
        throw ParseError("config: reverify_fraction must lie in [0, 1]");
    }
    if (doc.contains("record_timing")) {
        if (!doc["record_timing"].is_boolean()) throw ParseError("config: record_timing must be a boolean");
        cfg.record_timing = doc["record_timing"].get<bool>();
    }
    cfg.out_records = get_string(doc, "out_records", "");
    cfg.out_summary = get_string(doc, "out_summary", "");
    cfg.drawings_dir = get_string(doc, "drawings_dir", "");
    validate_experiment(cfg);
    return cfg;
}

void validate_experiment(const ExperimentConfig& config) {
    if (config.trials < 1) throw InfeasibleError("trials must be at least 1");
    if (config.sizes.empty()) throw InfeasibleError("sizes must be non-empty");
    validate_params(config.params);
    for (auto n : config.sizes) {
        check_family_feasible(config.family, n);
    }
}

namespace {

bool selected_for_reverify(std::uint64_t seed, double fraction) {
    if (fraction >= 1.0) return true;
    const double u = static_cast<double>(mix64(seed ^ 0x7665726966790000ULL) >> 11) * 0x1.0p-53;
    return u < fraction;
}

std::string records_csv(const std::vector<ExperimentRecord>& records, bool timing) {
    std::string csv =
        "size,trial,seed,n,k,degeneracy,success,m,t,attempts,escalations,volume,ratio,aspect_ratio,verified,edge_bound_ok,"
        "elapsed_ms\n";
    for (const auto& r : records) {
        csv += std::to_string(r.size) + "," + std::to_string(r.trial) + "," + std::to_string(r.seed) + "," +
               std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.degeneracy) + "," +
               (r.success ? "1" : "0") + "," + std::to_string(r.m) + "," + std::to_string(r.t) + "," +
               std::to_string(r.attempts) + "," + std::to_string(r.escalations) + "," + std::to_string(r.volume) + "," +
               (r.ratio ? fixed(*r.ratio) : "") + "," +
               (r.success && std::isfinite(r.aspect_ratio) ? fixed(r.aspect_ratio) : "") + "," +
               (r.verified ? (*r.verified ? "1" : "0") : "") + "," + (r.edge_bound_ok ? "1" : "0") + "," +
               (timing ? fixed(r.elapsed_ms, 3) : "") + "\n";
    }
    return csv;
}

std::string summary_json(const ExperimentConfig& cfg, const std::vector<ExperimentRecord>& records,
                         std::int64_t verification_failures) {
    nlohmann::ordered_json doc;
    doc["algorithm"] = std::string(algorithm_name(cfg.algorithm));
    doc["family"] = std::string(family_name(cfg.family.kind));
    doc["master_seed"] = cfg.master_seed;
    doc["trials_per_size"] = cfg.trials;
    doc["volume_constant"] = cfg.params.volume_constant;
    auto sizes = nlohmann::ordered_json::array();
    double overall_max_ratio = 0.0;
    for (auto n : cfg.sizes) {
        std::int64_t trials = 0, successes = 0, first_level = 0, attempts = 0;
        double max_ratio = 0.0, max_aspect = 0.0;
        for (const auto& r : records) {
            if (r.size != n) continue;
            ++trials;
            attempts += r.attempts;
            if (!r.success) continue;
            ++successes;
            if (r.escalations == 0) ++first_level;
            if (r.ratio) max_ratio = std::max(max_ratio, *r.ratio);
            max_aspect = std::max(max_aspect, r.aspect_ratio);
        }
        overall_max_ratio = std::max(overall_max_ratio, max_ratio);
        nlohmann::ordered_json s;
        s["n"] = n;
        s["trials"] = trials;
        s["successes"] = successes;
        s["success_rate"] = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
        s["success_without_escalation"] = first_level;
        s["mean_attempts"] = trials ? static_cast<double>(attempts) / static_cast<double>(trials) : 0.0;
        s["max_ratio"] = max_ratio;
        if (std::isfinite(max_aspect)) {
            s["max_aspect_ratio"] = max_aspect;
        } else {
            s["max_aspect_ratio"] = nullptr;
        }
        sizes.push_back(std::move(s));
    }
    doc["sizes"] = std::move(sizes);
    doc["max_ratio"] = overall_max_ratio;
    doc["verification_failures"] = verification_failures;
    return doc.dump(2) + "\n";
}

}  // namespace

BenchReport run_bench(const ExperimentConfig& config) {
    validate_experiment(config);
    const auto per_size = static_cast<std::size_t>(config.trials);
    const auto total = config.sizes.size() * per_size;
    std::vector<ExperimentRecord> records(total);
    std::vector<char> verify_failed(total, 0);
    if (!config.drawings_dir.empty()) {
        std::filesystem::create_directories(config.drawings_dir);
    }

    parallel_for(total, [&](std::size_t index) {
        const auto start = Clock::now();
        auto& rec = records[index];
        rec.size = config.sizes[index / per_size];
        rec.trial = static_cast<std::int32_t>(index % per_size);
        rec.seed = derive_seed(config.master_seed, index);

        const auto g = generate_family(config.family, rec.size, mix64(rec.seed));
        rec.n = g.vertex_count();
        rec.k = static_cast<std::int64_t>(g.edge_count());
        rec.degeneracy = degeneracy_ordering(g).degeneracy;

        auto params = config.params;
        params.seed = rec.seed;
        auto outcome = try_draw(g, params, config.algorithm);
        rec.success = outcome.embedding.has_value();
        rec.m = outcome.stats.final_m();
        rec.t = outcome.stats.t;
        rec.attempts = outcome.stats.attempts;
        rec.escalations = outcome.stats.escalations();
        rec.volume = rec.m * rec.m * rec.m;
        const double K = static_cast<double>(std::max<std::int64_t>(rec.k, rec.n));
        const double denom = rec.degeneracy * K * std::log(static_cast<double>(rec.n));
        if (denom > 0.0) {
            rec.ratio = static_cast<double>(rec.volume) / denom;
        }
        if (rec.success) {
            const auto& emb = *outcome.embedding;
            const auto stats = drawing_stats(emb, g);
            rec.aspect_ratio = stats.aspect_ratio;
            rec.edge_bound_ok = stats.edge_bound_ok;
            std::string json = embedding_to_json(emb, graph_hash(g));
            if (!config.drawings_dir.empty()) {
                const auto path = (std::filesystem::path(config.drawings_dir) /
                                   ("n" + std::to_string(rec.size) + "_t" + std::to_string(rec.trial) + ".json"))
                                      .string();
                write_file(path, json);
                json = read_file(path);
            }
            if (selected_for_reverify(rec.seed, config.reverify_fraction)) {
                const auto file = parse_embedding_json(json);
                check_graph_hash(file, g);
                rec.verified = verify_drawing(g, file.embedding).valid && file.embedding == emb;
                verify_failed[index] = !*rec.verified;
            }
            rec.embedding = emb;
        }
        rec.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    });

    BenchReport report;
    for (auto f : verify_failed) report.verification_failures += f;
    report.records_csv = records_csv(records, config.record_timing);
    report.summary_json = summary_json(config, records, report.verification_failures);
    report.records = std::move(records);
    if (!config.out_records.empty()) write_file(config.out_records, report.records_csv);
    if (!config.out_summary.empty()) write_file(config.out_summary, report.summary_json);
    return report;
}

}  // namespace gridweave
