#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relsim/corpus.hpp"
#include "relsim/engine.hpp"
#include "relsim/family.hpp"
#include "relsim/pair_matrix.hpp"
#include "relsim/svd.hpp"

namespace relsim {

// All cache formats are line-oriented UTF-8 text. Doubles are written with
// 17 significant digits, which round-trips IEEE doubles bit-exactly.

// Pair-list file: one "wordA:wordB" per line, '#' comments.
std::vector<WordPair> load_pair_list(const std::string& path);
std::vector<WordPair> parse_pair_list(std::string_view text,
                                      const std::string& source_name = "<text>");

// Corpus index artifact: a header (version, content hash, token count) and
// one document of space-joined tokens per line.
void save_corpus(const Corpus& corpus, const std::string& path);
Corpus load_corpus(const std::string& path);
// Reads only the stored hash (cheap idempotence check); empty if unreadable
// or not a corpus artifact.
std::optional<std::uint64_t> peek_corpus_hash(const std::string& path);

// Matrix cache: a coordinate-format file (header line "m n nnz", then one
// "row col value" triple per line) plus sidecar row/column maps. The
// triples are written in row-major order; round-trips are bit-exact.
//   <base>.coo   coordinate data
//   <base>.rows  row index: one "wordA:wordB" per line
//   <base>.cols  column index: one "fwd\tpattern" or "rev\tpattern" per line
void save_pair_matrix(const PairPatternMatrix& matrix, const std::string& base_path);
PairPatternMatrix load_pair_matrix(const std::string& base_path);

// SVD factors (sigma, U, V) with the same bit-exactness guarantee.
void save_svd(const SvdResult& svd, const std::string& path);
SvdResult load_svd(const std::string& path);

// Pair families with provenance.
void save_families(const std::vector<PairFamily>& families, const std::string& path);
std::vector<PairFamily> load_families(const std::string& path);

std::string format_double(double v);

}  // namespace relsim
