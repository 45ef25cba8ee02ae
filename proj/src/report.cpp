#include <elastic/format.hpp>
#include <elastic/report.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace elastic {

namespace fs = std::filesystem;

namespace {

std::string cell(double v) { return std::isnan(v) ? "NA" : format_double(v); }

/// Fixed precision coordinate for SVG output.
std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape_xml(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

/// CSV fields with a comma, quote or newline are quoted.
std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) { return std::string(s); }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') { out += '"'; }
        out += c;
    }
    return out + "\"";
}

void write_file(const fs::path& path, const auto& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) { throw std::runtime_error("can not write " + path.string()); }
    writer(out);
}

void write_test_row(std::ostream& os, const PairwiseTest& t, double alpha) {
    os << csv_field(t.a) << ',' << csv_field(t.b) << ',' << t.test.n << ',' << format_double(t.test.statistic) << ','
       << format_double(t.test.w_plus) << ',' << format_double(t.test.p_value) << ',' << format_double(t.p_holm)
       << ',' << (t.p_holm < alpha ? "yes" : "no") << ',' << t.wtl.wins << ',' << t.wtl.ties << ','
       << t.wtl.losses << ',' << (t.test.exact ? "exact" : "normal") << '\n';
}

constexpr const char* TEST_HEADER = "a,b,n,statistic,w_plus,p_raw,p_holm,significant,wins,ties,losses,method\n";

} // namespace

void write_accuracy_csv(std::ostream& os, const AccuracyMatrix& m) {
    os << "dataset";
    for (const auto& c : m.classifiers) { os << ',' << csv_field(c); }
    os << '\n';
    for (std::size_t r = 0; r < m.datasets.size(); ++r) {
        os << csv_field(m.datasets[r]);
        for (double v : m.cells[r]) { os << ',' << cell(v); }
        os << '\n';
    }
}

void write_pairwise_csv(std::ostream& os, const ComparisonReport& report) {
    os << TEST_HEADER;
    for (const auto& t : report.pairwise) { write_test_row(os, t, report.alpha); }
}

void write_mean_ranks_csv(std::ostream& os, const ComparisonReport& report) {
    os << "classifier,mean_rank\n";
    for (const auto& r : report.ranks) { os << csv_field(r.classifier) << ',' << format_double(r.rank) << '\n'; }
}

void write_scatter_csv(std::ostream& os, const ScatterData& s) {
    os << "# y=" << s.y << ",x=" << s.x << ",wins=" << s.wtl.wins << ",ties=" << s.wtl.ties
       << ",losses=" << s.wtl.losses << '\n';
    os << "dataset," << csv_field(s.x) << ',' << csv_field(s.y) << '\n';
    for (std::size_t k = 0; k < s.datasets.size(); ++k) {
        os << csv_field(s.datasets[k]) << ',' << format_double(s.x_accuracy[k]) << ','
           << format_double(s.y_accuracy[k]) << '\n';
    }
}

void write_mean_ranks_svg(std::ostream& os, const ComparisonReport& report) {
    auto ranks = report.ranks;
    std::stable_sort(ranks.begin(), ranks.end(), [](const auto& a, const auto& b) { return a.rank < b.rank; });
    const auto c = ranks.size();
    const double width = 640;
    const double left = 60;
    const double right = width - 60;
    const double axis_y = 60;
    const double height = 140 + 22.0 * static_cast<double>(c);
    const double max_rank = std::max<double>(2, static_cast<double>(c));
    const auto x_of = [&](double rank) { return left + (rank - 1) / (max_rank - 1) * (right - left); };

    const auto significant = [&](const std::string& a, const std::string& b) {
        for (const auto& t : report.pairwise) {
            if ((t.a == a && t.b == b) || (t.a == b && t.b == a)) { return t.p_holm < report.alpha; }
        }
        return false;
    };

    os << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << coord(width) << R"(" height=")" << coord(height)
       << R"(" font-family="sans-serif" font-size="12">)" << '\n';
    os << R"(<line x1=")" << coord(left) << R"(" y1=")" << coord(axis_y) << R"(" x2=")" << coord(right)
       << R"(" y2=")" << coord(axis_y) << R"(" stroke="black"/>)" << '\n';
    for (std::size_t r = 1; r <= static_cast<std::size_t>(max_rank); ++r) {
        const double x = x_of(static_cast<double>(r));
        os << R"(<line x1=")" << coord(x) << R"(" y1=")" << coord(axis_y - 5) << R"(" x2=")" << coord(x)
           << R"(" y2=")" << coord(axis_y) << R"(" stroke="black"/>)" << '\n';
        os << R"(<text x=")" << coord(x) << R"(" y=")" << coord(axis_y - 10) << R"(" text-anchor="middle">)" << r
           << "</text>\n";
    }
    // Classifier labels hang below the axis
    for (std::size_t k = 0; k < c; ++k) {
        const double x = x_of(ranks[k].rank);
        const double y = axis_y + 50 + 22.0 * static_cast<double>(k);
        const bool on_left = k < (c + 1) / 2;
        const double label_x = on_left ? left - 10 : right + 10;
        os << R"(<polyline fill="none" stroke="black" points=")" << coord(x) << ',' << coord(axis_y) << ' '
           << coord(x) << ',' << coord(y) << ' ' << coord(label_x) << ',' << coord(y) << R"("/>)" << '\n';
        os << R"(<text x=")" << coord(label_x + (on_left ? -4 : 4)) << R"(" y=")" << coord(y + 4)
           << R"(" text-anchor=")" << (on_left ? "end" : "start") << R"(">)" << escape_xml(ranks[k].classifier)
           << " (" << coord(ranks[k].rank) << ")</text>\n";
    }
    // Maximal runs of classifiers with no significant difference between any two of them
    std::size_t bar = 0;
    std::size_t covered_until = 0;
    for (std::size_t start = 0; start < c; ++start) {
        std::size_t end = start;
        while (end + 1 < c) {
            bool ok = true;
            for (std::size_t k = start; k <= end && ok; ++k) { ok = !significant(ranks[k].classifier, ranks[end + 1].classifier); }
            if (!ok) { break; }
            ++end;
        }
        if (end > start && end + 1 > covered_until) {
            const double y = axis_y + 15 + 7.0 * static_cast<double>(bar++);
            os << R"(<line x1=")" << coord(x_of(ranks[start].rank) - 3) << R"(" y1=")" << coord(y) << R"(" x2=")"
               << coord(x_of(ranks[end].rank) + 3) << R"(" y2=")" << coord(y)
               << R"(" stroke="black" stroke-width="3"/>)" << '\n';
            covered_until = end + 1;
        }
    }
    os << "</svg>\n";
}

void write_scatter_svg(std::ostream& os, const ScatterData& s) {
    const double size = 400;
    const double margin = 50;
    const double span = size - 2 * margin;
    const auto px = [&](double v) { return margin + v * span; };
    const auto py = [&](double v) { return size - margin - v * span; };

    os << R"(<svg xmlns="http://www.w3.org/2000/svg" width="400" height="400" font-family="sans-serif" font-size="12">)"
       << '\n';
    os << R"(<rect x=")" << coord(margin) << R"(" y=")" << coord(margin) << R"(" width=")" << coord(span)
       << R"(" height=")" << coord(span) << R"(" fill="none" stroke="black"/>)" << '\n';
    os << R"(<line x1=")" << coord(px(0)) << R"(" y1=")" << coord(py(0)) << R"(" x2=")" << coord(px(1))
       << R"(" y2=")" << coord(py(1)) << R"(" stroke="gray" stroke-dasharray="4 3"/>)" << '\n';
    for (std::size_t k = 0; k < s.datasets.size(); ++k) {
        os << R"(<circle cx=")" << coord(px(s.x_accuracy[k])) << R"(" cy=")" << coord(py(s.y_accuracy[k]))
           << R"(" r="3" fill="steelblue"><title>)" << escape_xml(s.datasets[k]) << "</title></circle>\n";
    }
    os << R"(<text x="200" y=")" << coord(size - 15) << R"(" text-anchor="middle">)" << escape_xml(s.x)
       << " accuracy</text>\n";
    os << R"svg(<text x="15" y="200" text-anchor="middle" transform="rotate(-90 15 200)">)svg" << escape_xml(s.y)
       << " accuracy</text>\n";
    os << R"(<text x=")" << coord(margin + 8) << R"(" y=")" << coord(margin + 18) << R"(">)" << escape_xml(s.y)
       << " wins: " << s.wtl.wins << "</text>\n";
    os << R"(<text x=")" << coord(size - margin - 8) << R"(" y=")" << coord(size - margin - 10)
       << R"(" text-anchor="end">)" << escape_xml(s.x) << " wins: " << s.wtl.losses << "</text>\n";
    os << R"(<text x=")" << coord(size - margin - 8) << R"(" y=")" << coord(margin + 18)
       << R"(" text-anchor="end">ties: )" << s.wtl.ties << "</text>\n";
    os << "</svg>\n";
}

void write_report(const fs::path& out_dir, const BenchmarkResult& result) {
    fs::create_directories(out_dir / "tuning");

    write_file(out_dir / "accuracy.csv", [&](std::ostream& os) { write_accuracy_csv(os, result.matrix); });

    write_file(out_dir / "datasets.csv", [&](std::ostream& os) {
        os << "dataset,status,errors\n";
        for (const auto& ds : result.datasets) {
            std::string errors;
            for (const auto& c : ds.cells) {
                if (c.error.empty()) { continue; }
                if (!errors.empty()) { errors += "; "; }
                errors += std::string(to_string(c.family)) + ": " + c.error;
            }
            const std::string status = ds.admission.admitted ? "admitted" : "excluded: " + ds.admission.reason;
            os << csv_field(ds.name) << ',' << csv_field(status) << ',' << csv_field(errors) << '\n';
        }
    });

    write_file(out_dir / "datasets.json", [&](std::ostream& os) {
        auto all = nlohmann::ordered_json::array();
        for (const auto& ds : result.datasets) {
            auto j = ds.metadata;
            j["admitted"] = ds.admission.admitted;
            j["reason"] = ds.admission.reason;
            all.push_back(std::move(j));
        }
        os << all.dump(2) << '\n';
    });

    write_file(out_dir / "parameters.csv", [&](std::ostream& os) {
        os << "dataset,family,chosen,param,omega_prime,accuracy\n";
        for (const auto& ds : result.datasets) {
            for (const auto& c : ds.cells) {
                os << csv_field(ds.name) << ',' << to_string(c.family) << ','
                   << csv_field(c.chosen ? c.chosen->to_string() : "NA") << ','
                   << (c.chosen && is_parameterized(c.family) ? format_double(c.chosen->param()) : "NA") << ','
                   << (c.tuning && c.tuning->omega_prime ? format_double(*c.tuning->omega_prime) : "NA") << ','
                   << cell(c.accuracy) << '\n';
            }
        }
    });

    for (const auto& ds : result.datasets) {
        for (const auto& c : ds.cells) {
            if (!c.tuning) { continue; }
            const auto file = out_dir / "tuning" / (ds.name + "_" + to_string(c.family) + ".csv");
            write_file(file, [&](std::ostream& os) { write_csv(os, *c.tuning); });
        }
    }

    const auto& report = result.report;
    write_file(out_dir / "pairwise_tests.csv", [&](std::ostream& os) { write_pairwise_csv(os, report); });
    write_file(out_dir / "mean_ranks.csv", [&](std::ostream& os) { write_mean_ranks_csv(os, report); });
    write_file(out_dir / "mean_ranks.svg", [&](std::ostream& os) { write_mean_ranks_svg(os, report); });
    if (report.versus_best) {
        write_file(out_dir / "versus_best.csv", [&](std::ostream& os) {
            os << TEST_HEADER;
            write_test_row(os, *report.versus_best, report.alpha);
        });
    }
    for (const auto& s : report.scatters) {
        const auto stem = "scatter_" + s.y + "_vs_" + s.x;
        write_file(out_dir / (stem + ".csv"), [&](std::ostream& os) { write_scatter_csv(os, s); });
        write_file(out_dir / (stem + ".svg"), [&](std::ostream& os) { write_scatter_svg(os, s); });
    }
}

} // namespace elastic
