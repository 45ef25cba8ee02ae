#pragma once

#include <elastic/series.hpp>

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace elastic {

/// Malformed UCR file. `line` is 1-based, 0 when not tied to a line.
struct ParseError : DataError {
    ParseError(std::string what, std::size_t line);
    std::size_t line;
};

/** Parse a UCR split: one series per line, the class label first, then the values.
 *  A line containing a tab is tab separated, otherwise comma or whitespace separated.
 *  Missing values ("NaN", "?", empty field) are dropped from their series and set `has_missing`.
 *  Blank lines are skipped. Throws ParseError on a bad token or an empty input.
 */
[[nodiscard]] LabeledDataset parse_split(std::istream& is, std::string name, Split split);

/// parse_split on a file. Throws ParseError if the file can not be opened.
[[nodiscard]] LabeledDataset load_split(const std::filesystem::path& path, std::string name, Split split);

/// Tab separated UCR format, values at round-trip precision.
void write_split(std::ostream& os, const LabeledDataset& ds);

struct DatasetPair {
    std::string name;
    LabeledDataset train;
    LabeledDataset test;
};

/// <root>/<name>/<name>_TRAIN.tsv
[[nodiscard]] std::filesystem::path train_path(const std::filesystem::path& root, const std::string& name);
/// <root>/<name>/<name>_TEST.tsv
[[nodiscard]] std::filesystem::path test_path(const std::filesystem::path& root, const std::string& name);

[[nodiscard]] DatasetPair load_pair(const std::filesystem::path& root, const std::string& name);

/// Writes both splits under <root>/<name>/, creating the directory.
void save_pair(const std::filesystem::path& root, const DatasetPair& pair);

/// Names of the subdirectories of `root` holding a <name>_TRAIN.tsv file, sorted.
[[nodiscard]] std::vector<std::string> list_datasets(const std::filesystem::path& root);

struct Admission {
    bool admitted;
    std::string reason;   // empty when admitted
};

inline constexpr const char* REASON_VARIABLE_LENGTH = "variable length";
inline constexpr const char* REASON_MISSING_DATA = "missing data";
inline constexpr const char* REASON_SINGLE_EXEMPLAR = "single exemplar class";

/** Dataset filtering, in this order:
 *  - series of different lengths, within or across splits
 *  - missing values
 *  - a class with a single training exemplar
 */
[[nodiscard]] Admission admit(const DatasetPair& pair);

/// Same rules for a lone training split (used when tuning from a single file).
[[nodiscard]] Admission admit(const LabeledDataset& train);

/// {"name", "length", "train_size", "test_size", "classes": {label: {"train": n, "test": n}}}
[[nodiscard]] nlohmann::ordered_json metadata(const DatasetPair& pair);

} // namespace elastic
