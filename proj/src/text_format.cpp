#include "bnsl/text_format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "bnsl/errors.hpp"

namespace bnsl {

namespace {

constexpr double kRowSumInputTolerance = 1e-6;

struct Line {
    int number;  // 1-based
    std::vector<std::string> tokens;
};

[[noreturn]] void fail(int line, const std::string& message) {
    throw InputError("line " + std::to_string(line) + ": " + message);
}

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string token;
        while (ls >> token) line.tokens.push_back(token);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

int parse_int(const std::string& token, int line, const std::string& what) {
    std::size_t consumed = 0;
    int value = 0;
    try {
        value = std::stoi(token, &consumed);
    } catch (const std::exception&) {
        fail(line, "malformed " + what + " '" + token + "'");
    }
    if (consumed != token.size()) fail(line, "malformed " + what + " '" + token + "'");
    return value;
}

double parse_prob(const std::string& token, int line) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &consumed);
    } catch (const std::exception&) {
        fail(line, "malformed probability '" + token + "'");
    }
    if (consumed != token.size()) fail(line, "malformed probability '" + token + "'");
    if (value < 0.0 || !std::isfinite(value)) fail(line, "negative probability '" + token + "'");
    return value;
}

std::string format_prob(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

BayesNet parse_network(const std::string& text) {
    const std::vector<Line> lines = tokenize(text);
    if (lines.empty()) throw InputError("network text is empty");
    if (lines[0].tokens[0] != "network" || lines[0].tokens.size() != 2) {
        fail(lines[0].number, "expected 'network <name>' header");
    }

    // Pass 1: variables.
    std::vector<Variable> vars;
    for (const Line& line : lines) {
        if (line.tokens[0] != "var") continue;
        if (line.tokens.size() != 3) fail(line.number, "expected 'var <name> <cardinality>'");
        const int card = parse_int(line.tokens[2], line.number, "cardinality");
        if (card < 2) fail(line.number, "cardinality must be >= 2");
        vars.push_back({line.tokens[1], card});
    }
    Schema schema;
    try {
        schema = Schema(std::move(vars));
    } catch (const InputError& e) {
        throw InputError(std::string("var lines: ") + e.what());
    }
    if (schema.size() == 0) throw InputError("network declares no variables");

    const auto var_index = [&](const std::string& name, int line) {
        const int idx = schema.index_of_name(name);
        if (idx < 0) fail(line, "unknown variable '" + name + "'");
        return idx;
    };

    // Pass 2: parent sets.
    std::vector<std::vector<int>> parents(static_cast<std::size_t>(schema.size()));
    std::vector<bool> parents_declared(static_cast<std::size_t>(schema.size()), false);
    for (const Line& line : lines) {
        if (line.tokens[0] != "parents") continue;
        if (line.tokens.size() < 2) fail(line.number, "expected 'parents <child> <parent>...'");
        const int child = var_index(line.tokens[1], line.number);
        if (parents_declared[child]) {
            fail(line.number, "duplicate parents line for '" + line.tokens[1] + "'");
        }
        parents_declared[child] = true;
        for (std::size_t k = 2; k < line.tokens.size(); ++k) {
            parents[child].push_back(var_index(line.tokens[k], line.number));
        }
    }
    Structure structure = [&] {
        try {
            return Structure(schema, std::move(parents));
        } catch (const InputError& e) {
            throw InputError(std::string("parents lines: ") + e.what());
        }
    }();

    // Pass 3: CPT rows.
    std::vector<std::vector<double>> cpts(static_cast<std::size_t>(schema.size()));
    std::vector<std::vector<bool>> seen(static_cast<std::size_t>(schema.size()));
    for (int i = 0; i < schema.size(); ++i) {
        const std::uint64_t q = structure.parent_config_count(i);
        cpts[i].assign(q * static_cast<std::uint64_t>(schema.cardinality(i)), 0.0);
        seen[i].assign(q, false);
    }
    for (const Line& line : lines) {
        if (line.tokens[0] != "cpt") continue;
        if (line.tokens.size() < 2) fail(line.number, "expected 'cpt <child> | ... : p...'");
        const int child = var_index(line.tokens[1], line.number);
        const std::vector<int>& child_parents = structure.parents(child);

        std::size_t pos = 2;
        if (pos < line.tokens.size() && line.tokens[pos] == "|") ++pos;
        // Parent assignments up to ':' (comma-separated, with or without
        // surrounding whitespace).
        std::vector<int> assigned(child_parents.size(), -1);
        while (pos < line.tokens.size() && line.tokens[pos] != ":") {
            std::istringstream specs(line.tokens[pos]);
            std::string spec;
            while (std::getline(specs, spec, ',')) {
                if (spec.empty()) continue;
                const std::size_t eq = spec.find('=');
                if (eq == std::string::npos) {
                    fail(line.number, "expected <parent>=<value>, got '" + spec + "'");
                }
                const int parent = var_index(spec.substr(0, eq), line.number);
                const int value = parse_int(spec.substr(eq + 1), line.number, "parent value");
                std::size_t slot = child_parents.size();
                for (std::size_t k = 0; k < child_parents.size(); ++k) {
                    if (child_parents[k] == parent) slot = k;
                }
                if (slot == child_parents.size()) {
                    fail(line.number, "'" + spec.substr(0, eq) + "' is not a parent of '" +
                                          line.tokens[1] + "'");
                }
                if (assigned[slot] >= 0) fail(line.number, "parent assigned twice");
                if (value < 0 || value >= schema.cardinality(child_parents[slot])) {
                    fail(line.number, "parent value out of range");
                }
                assigned[slot] = value;
            }
            ++pos;
        }
        if (pos >= line.tokens.size()) fail(line.number, "missing ':' before probabilities");
        ++pos;  // skip ':'
        for (std::size_t k = 0; k < assigned.size(); ++k) {
            if (assigned[k] < 0) {
                fail(line.number, "missing assignment for parent '" +
                                      schema.name(child_parents[k]) + "'");
            }
        }
        std::uint64_t config = 0;
        for (std::size_t k = 0; k < child_parents.size(); ++k) {
            config = config * static_cast<std::uint64_t>(schema.cardinality(child_parents[k])) +
                     static_cast<std::uint64_t>(assigned[k]);
        }
        if (seen[child][config]) {
            fail(line.number, "duplicate cpt row for '" + line.tokens[1] + "'");
        }
        seen[child][config] = true;

        const int r = schema.cardinality(child);
        if (line.tokens.size() - pos != static_cast<std::size_t>(r)) {
            fail(line.number, "expected " + std::to_string(r) + " probabilities, got " +
                                  std::to_string(line.tokens.size() - pos));
        }
        double sum = 0.0;
        std::vector<double> row(static_cast<std::size_t>(r));
        for (int v = 0; v < r; ++v) {
            row[v] = parse_prob(line.tokens[pos + static_cast<std::size_t>(v)], line.number);
            sum += row[v];
        }
        if (std::abs(sum - 1.0) > kRowSumInputTolerance) {
            fail(line.number, "cpt row for '" + line.tokens[1] + "' sums to " +
                                  std::to_string(sum) + ", expected 1");
        }
        for (int v = 0; v < r; ++v) {
            cpts[child][config * static_cast<std::uint64_t>(r) + static_cast<std::uint64_t>(v)] =
                row[v] / sum;
        }
    }
    for (int i = 0; i < schema.size(); ++i) {
        for (std::uint64_t config = 0; config < structure.parent_config_count(i); ++config) {
            if (!seen[i][config]) {
                throw InputError("missing cpt row for '" + schema.name(i) +
                                 "' (parent configuration " + std::to_string(config) + ")");
            }
        }
    }
    return BayesNet(std::move(structure), std::move(cpts));
}

std::string write_network(const BayesNet& net, const std::string& name) {
    const Schema& schema = net.schema();
    const Structure& g = net.structure();
    std::string out = "network " + name + "\n";
    for (int i = 0; i < schema.size(); ++i) {
        out += "var " + schema.name(i) + " " + std::to_string(schema.cardinality(i)) + "\n";
    }
    for (int i = 0; i < schema.size(); ++i) {
        if (g.parents(i).empty()) continue;
        out += "parents " + schema.name(i);
        for (int p : g.parents(i)) out += " " + schema.name(p);
        out += "\n";
    }
    for (int i = 0; i < schema.size(); ++i) {
        const std::vector<int>& parents = g.parents(i);
        const std::uint64_t q = g.parent_config_count(i);
        const int r = schema.cardinality(i);
        for (std::uint64_t config = 0; config < q; ++config) {
            out += "cpt " + schema.name(i) + " |";
            // Decode the configuration back into per-parent values.
            std::uint64_t rest = config;
            std::vector<int> values(parents.size(), 0);
            for (std::size_t k = parents.size(); k-- > 0;) {
                const std::uint64_t card = static_cast<std::uint64_t>(schema.cardinality(parents[k]));
                values[k] = static_cast<int>(rest % card);
                rest /= card;
            }
            for (std::size_t k = 0; k < parents.size(); ++k) {
                out += (k == 0 ? " " : ",");
                out += schema.name(parents[k]) + "=" + std::to_string(values[k]);
            }
            out += " :";
            const std::span<const double> row = net.cpt_row(i, config);
            for (int v = 0; v < r; ++v) out += " " + format_prob(row[v]);
            out += "\n";
        }
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

Dataset read_dataset_csv_impl(const std::string& text, const Schema* expected) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw InputError("dataset csv: empty input");
    const std::vector<std::string> names = split_csv_line(line);
    if (names.empty() || names[0].empty()) throw InputError("dataset csv: missing header row");

    if (expected != nullptr) {
        if (static_cast<int>(names.size()) != expected->size()) {
            throw InputError("dataset csv: header has " + std::to_string(names.size()) +
                             " columns, schema has " + std::to_string(expected->size()));
        }
        for (int i = 0; i < expected->size(); ++i) {
            if (names[i] != expected->name(i)) {
                throw InputError("dataset csv: column '" + names[i] + "' does not match schema '" +
                                 expected->name(i) + "'");
            }
        }
    }

    std::vector<int> values;
    std::vector<int> max_value(names.size(), 0);
    int number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != names.size()) {
            fail(number, "expected " + std::to_string(names.size()) + " cells, got " +
                             std::to_string(fields.size()));
        }
        for (std::size_t k = 0; k < fields.size(); ++k) {
            const int v = parse_int(fields[k], number, "value");
            if (v < 0) fail(number, "negative value index");
            max_value[k] = std::max(max_value[k], v);
            values.push_back(v);
        }
    }

    if (expected != nullptr) return Dataset(*expected, std::move(values));
    std::vector<Variable> vars;
    vars.reserve(names.size());
    for (std::size_t k = 0; k < names.size(); ++k) {
        vars.push_back({names[k], std::max(2, max_value[k] + 1)});
    }
    return Dataset(Schema(std::move(vars)), std::move(values));
}

}  // namespace

Dataset read_dataset_csv(const std::string& text) { return read_dataset_csv_impl(text, nullptr); }

Dataset read_dataset_csv(const std::string& text, const Schema& schema) {
    return read_dataset_csv_impl(text, &schema);
}

std::string write_dataset_csv(const Dataset& data) {
    const Schema& schema = data.schema();
    std::string out;
    for (int i = 0; i < schema.size(); ++i) {
        if (i > 0) out += ',';
        out += schema.name(i);
    }
    out += '\n';
    for (std::int64_t r = 0; r < data.n_rows(); ++r) {
        for (int i = 0; i < schema.size(); ++i) {
            if (i > 0) out += ',';
            out += std::to_string(data.value(r, i));
        }
        out += '\n';
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw InputError("cannot write file '" + tmp.string() + "'");
        }
        out << content;
        out.flush();
        if (!out) {
            throw InputError("write failed for '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace bnsl
