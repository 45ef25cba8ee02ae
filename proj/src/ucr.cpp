#include <elastic/format.hpp>
#include <elastic/ucr.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

namespace elastic {

namespace fs = std::filesystem;

ParseError::ParseError(std::string what, std::size_t line_)
    : DataError(line_ == 0 ? what : "line " + std::to_string(line_) + ": " + what), line(line_) {}

namespace {

bool is_missing(std::string_view token) {
    return token.empty() || token == "NaN" || token == "nan" || token == "NAN" || token == "?";
}

} // namespace

LabeledDataset parse_split(std::istream& is, std::string name, Split split) {
    LabeledDataset ds{std::move(name), split, {}, false};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto content = trim(line);
        if (content.empty()) { continue; }

        std::vector<std::string_view> fields;
        if (content.find('\t') != std::string_view::npos) {
            fields = elastic::split(content, "\t");
        } else if (content.find(',') != std::string_view::npos) {
            fields = elastic::split(content, ",");
        } else {
            for (auto f : elastic::split(content, " ")) {
                if (!f.empty()) { fields.push_back(f); }
            }
        }

        const auto label = trim(fields.front());
        if (label.empty()) { throw ParseError("missing class label", lineno); }
        std::vector<double> values;
        values.reserve(fields.size() - 1);
        for (std::size_t k = 1; k < fields.size(); ++k) {
            const auto token = trim(fields[k]);
            double v = 0;
            if (is_missing(token)) {
                ds.has_missing = true;
            } else if (!parse_double(token, v) || !std::isfinite(v)) {
                throw ParseError("field " + std::to_string(k + 1) + ": not a number: '" + std::string(token) + "'",
                                 lineno);
            } else {
                values.push_back(v);
            }
        }
        if (values.empty()) { throw ParseError("series has no value", lineno); }
        ds.items.push_back({TimeSeries(std::move(values)), std::string(label)});
    }
    if (ds.items.empty()) { throw ParseError("empty dataset file", 0); }
    return ds;
}

LabeledDataset load_split(const fs::path& path, std::string name, Split split) {
    std::ifstream in(path);
    if (!in) { throw ParseError("can not open " + path.string(), 0); }
    try {
        return parse_split(in, std::move(name), split);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), 0);
    }
}

void write_split(std::ostream& os, const LabeledDataset& ds) {
    for (const auto& item : ds.items) {
        os << item.label;
        for (double v : item.series) { os << '\t' << format_double(v); }
        os << '\n';
    }
}

fs::path train_path(const fs::path& root, const std::string& name) { return root / name / (name + "_TRAIN.tsv"); }

fs::path test_path(const fs::path& root, const std::string& name) { return root / name / (name + "_TEST.tsv"); }

DatasetPair load_pair(const fs::path& root, const std::string& name) {
    return {name, load_split(train_path(root, name), name, Split::train),
            load_split(test_path(root, name), name, Split::test)};
}

void save_pair(const fs::path& root, const DatasetPair& pair) {
    fs::create_directories(root / pair.name);
    {
        std::ofstream out(train_path(root, pair.name));
        write_split(out, pair.train);
    }
    std::ofstream out(test_path(root, pair.name));
    write_split(out, pair.test);
}

std::vector<std::string> list_datasets(const fs::path& root) {
    std::vector<std::string> names;
    if (!fs::is_directory(root)) { return names; }
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) { continue; }
        const auto name = entry.path().filename().string();
        if (fs::is_regular_file(train_path(root, name))) { names.push_back(name); }
    }
    std::sort(names.begin(), names.end());
    return names;
}

Admission admit(const LabeledDataset& train) {
    if (train.variable_length()) { return {false, REASON_VARIABLE_LENGTH}; }
    if (train.has_missing) { return {false, REASON_MISSING_DATA}; }
    for (const auto& [label, count] : train.class_counts()) {
        if (count < 2) { return {false, REASON_SINGLE_EXEMPLAR}; }
    }
    return {true, ""};
}

Admission admit(const DatasetPair& pair) {
    if (pair.train.variable_length() || pair.test.variable_length() || pair.train.length() != pair.test.length()) {
        return {false, REASON_VARIABLE_LENGTH};
    }
    if (pair.train.has_missing || pair.test.has_missing) { return {false, REASON_MISSING_DATA}; }
    return admit(pair.train);
}

nlohmann::ordered_json metadata(const DatasetPair& pair) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> classes;
    for (const auto& [label, n] : pair.train.class_counts()) { classes[label].first = n; }
    for (const auto& [label, n] : pair.test.class_counts()) { classes[label].second = n; }
    nlohmann::ordered_json j;
    j["name"] = pair.name;
    j["length"] = pair.train.length();
    j["train_size"] = pair.train.size();
    j["test_size"] = pair.test.size();
    auto& c = j["classes"] = nlohmann::ordered_json::object();
    for (const auto& [label, counts] : classes) { c[label] = {{"train", counts.first}, {"test", counts.second}}; }
    return j;
}

} // namespace elastic
