#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "bnsl/bayesnet.hpp"
#include "bnsl/dataset.hpp"

namespace bnsl {

/**
 * Line-oriented network text format (UTF-8). '#' starts a comment.
 *
 *   network <name>
 *   var <name> <cardinality>              one per variable, index order
 *   parents <child> <parent>...           one per variable with parents
 *   cpt <child> | <parent>=<value>,... : p0 p1 ...
 *                                         one per parent configuration,
 *                                         probabilities in value order
 *
 * Parentless variables use an empty assignment list: "cpt X | : p0 p1"
 * (the bar may be omitted). Rows must sum to 1 within 1e-6 and are
 * normalized to exact sum 1. Errors carry the offending line number.
 */
BayesNet parse_network(const std::string& text);

std::string write_network(const BayesNet& net, const std::string& name = "net");

/**
 * Dataset CSV: header row of variable names, one integer value index per
 * cell. Without a schema, cardinalities are inferred as max(2, 1 + max
 * observed value).
 */
Dataset read_dataset_csv(const std::string& text);
Dataset read_dataset_csv(const std::string& text, const Schema& schema);

std::string write_dataset_csv(const Dataset& data);

// Whole-file helpers. Reads throw InputError naming a missing file;
// writes go through a temp file and a rename so outputs are never
// partially written.
std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace bnsl
