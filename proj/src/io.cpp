#include "gridweave/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "gridweave/error.hpp"

namespace gridweave {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path + ": " + std::strerror(errno));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("error reading " + path);
    }
    return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path + " for writing: " + std::strerror(errno));
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw IoError("error writing " + path);
    }
}

std::string embedding_to_json(const Embedding& emb, std::string_view graph_hash) {
    std::string out = "{\n";
    out += "  \"m\": " + std::to_string(emb.m) + ",\n";
    out += "  \"n\": " + std::to_string(emb.points.size()) + ",\n";
    out += "  \"graph_hash\": \"" + std::string(graph_hash) + "\",\n";
    out += "  \"points\": [";
    for (std::size_t i = 0; i < emb.points.size(); ++i) {
        const auto& p = emb.points[i];
        out += i ? ",\n    [" : "\n    [";
        out += std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.z) + "]";
    }
    out += emb.points.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

EmbeddingFile parse_embedding_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("embedding JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("embedding JSON must be an object");
    }
    auto require_int = [&](const char* key) {
        if (!doc.contains(key) || !doc[key].is_number_integer()) {
            throw ParseError(std::string("embedding JSON: \"") + key + "\" must be an integer");
        }
        return doc[key].get<std::int64_t>();
    };
    EmbeddingFile file;
    file.embedding.m = require_int("m");
    const auto n = require_int("n");
    if (doc.contains("graph_hash")) {
        if (!doc["graph_hash"].is_string()) {
            throw ParseError("embedding JSON: \"graph_hash\" must be a string");
        }
        file.graph_hash = doc["graph_hash"].get<std::string>();
    }
    if (!doc.contains("points") || !doc["points"].is_array()) {
        throw ParseError("embedding JSON: \"points\" must be an array");
    }
    const auto& points = doc["points"];
    if (static_cast<std::int64_t>(points.size()) != n) {
        throw ParseError("embedding JSON: \"n\" is " + std::to_string(n) + " but " + std::to_string(points.size()) +
                         " points are listed");
    }
    file.embedding.points.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (!p.is_array() || p.size() != 3 || !p[0].is_number_integer() || !p[1].is_number_integer() ||
            !p[2].is_number_integer()) {
            throw ParseError("embedding JSON: point " + std::to_string(i) + " must be [x, y, z] integers");
        }
        file.embedding.points.push_back({p[0].get<std::int64_t>(), p[1].get<std::int64_t>(), p[2].get<std::int64_t>()});
    }
    return file;
}

void check_graph_hash(const EmbeddingFile& file, const Graph& g) {
    const auto expected = graph_hash(g);
    if (!file.graph_hash.empty() && file.graph_hash != expected) {
        throw MalformedEmbedding("embedding was written for graph " + file.graph_hash + ", this graph hashes to " +
                                 expected);
    }
}

namespace {

nlohmann::ordered_json edge_json(const Edge& e) { return nlohmann::ordered_json::array({e.u, e.v}); }

}  // namespace

std::string verdict_to_json(const VerificationVerdict& verdict) {
    nlohmann::ordered_json doc;
    doc["valid"] = verdict.valid;
    auto violations = nlohmann::ordered_json::array();
    for (const auto& r : verdict.violations) {
        nlohmann::ordered_json item;
        item["kind"] = conflict_kind_name(r.kind);
        if (r.kind == ConflictKind::VertexInEdgeInterior) {
            item["vertex"] = r.vertex;
            item["edge"] = edge_json(r.first);
        } else {
            item["edges"] = nlohmann::ordered_json::array({edge_json(r.first), edge_json(r.second)});
        }
        violations.push_back(std::move(item));
    }
    doc["violations"] = std::move(violations);
    nlohmann::ordered_json stats;
    stats["volume"] = verdict.stats.volume;
    if (std::isfinite(verdict.stats.aspect_ratio)) {
        stats["aspect_ratio"] = verdict.stats.aspect_ratio;
    } else {
        stats["aspect_ratio"] = nullptr;
    }
    stats["grid_aspect_ratio"] = verdict.stats.grid_aspect_ratio;
    stats["max_abs_coordinate"] = verdict.stats.max_abs_coordinate;
    stats["edge_count"] = verdict.stats.edge_count;
    stats["edge_bound_ok"] = verdict.stats.edge_bound_ok;
    doc["stats"] = std::move(stats);
    return doc.dump(2) + "\n";
}

namespace {

constexpr double kSkewX = 0.35;
constexpr double kSkewY = 0.20;
constexpr double kCanvas = 640.0;
constexpr double kMargin = 32.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_svg(const Embedding& emb, const Graph* g) {
    std::vector<std::pair<double, double>> projected;
    projected.reserve(emb.points.size());
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (std::size_t i = 0; i < emb.points.size(); ++i) {
        const auto& p = emb.points[i];
        const double px = static_cast<double>(p.x) + kSkewX * static_cast<double>(p.z);
        const double py = static_cast<double>(p.y) + kSkewY * static_cast<double>(p.z);
        projected.emplace_back(px, py);
        if (i == 0) {
            min_x = max_x = px;
            min_y = max_y = py;
        } else {
            min_x = std::min(min_x, px);
            max_x = std::max(max_x, px);
            min_y = std::min(min_y, py);
            max_y = std::max(max_y, py);
        }
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
    const double scale = (kCanvas - 2 * kMargin) / span;
    auto sx = [&](double x) { return kMargin + (x - min_x) * scale; };
    auto sy = [&](double y) { return kCanvas - kMargin - (y - min_y) * scale; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kCanvas) + "\" height=\"" + fmt(kCanvas) +
           "\" viewBox=\"0 0 " + fmt(kCanvas) + " " + fmt(kCanvas) + "\">\n";
    out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (g) {
        out += "  <g stroke=\"#335\" stroke-width=\"1\">\n";
        for (const auto& e : g->sorted_edges()) {
            const auto& a = projected[e.u];
            const auto& b = projected[e.v];
            out += "    <line x1=\"" + fmt(sx(a.first)) + "\" y1=\"" + fmt(sy(a.second)) + "\" x2=\"" + fmt(sx(b.first)) +
                   "\" y2=\"" + fmt(sy(b.second)) + "\"/>\n";
        }
        out += "  </g>\n";
    }
    out += "  <g font-family=\"monospace\" font-size=\"10\">\n";
    for (std::size_t v = 0; v < projected.size(); ++v) {
        const auto x = sx(projected[v].first);
        const auto y = sy(projected[v].second);
        out += "    <circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"4\" fill=\"#c33\"/>\n";
        out += "    <text x=\"" + fmt(x + 5) + "\" y=\"" + fmt(y - 5) + "\">" + std::to_string(v) + "</text>\n";
    }
    out += "  </g>\n</svg>\n";
    return out;
}

std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(value);
    }
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace gridweave
