#pragma once

#include <string>
#include <string_view>

#include "gridweave/drawing.hpp"
#include "gridweave/graph.hpp"
#include "gridweave/verifier.hpp"

namespace gridweave {

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// Embedding file: {"m": int, "n": int, "graph_hash": hex, "points": [[x,y,z], ...]}
/// with points indexed by vertex id. Output is byte-stable for equal input.
std::string embedding_to_json(const Embedding& emb, std::string_view graph_hash);

struct EmbeddingFile {
    Embedding embedding;
    std::string graph_hash;
};

/// Throws ParseError on malformed JSON or schema violations.
EmbeddingFile parse_embedding_json(std::string_view text);

/// Throws MalformedEmbedding when the file was written for a different graph.
void check_graph_hash(const EmbeddingFile& file, const Graph& g);

std::string verdict_to_json(const VerificationVerdict& verdict);

/// Oblique projection (x + 0.35 z, y + 0.20 z) of the drawing. Edges are
/// drawn when `g` is given; vertices are labeled with their ids.
std::string render_svg(const Embedding& emb, const Graph* g);

/// RFC-4180 field quoting.
std::string csv_field(std::string_view value);

}  // namespace gridweave
