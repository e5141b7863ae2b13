#include "graphsamp/io.hpp"

#include "graphsamp/error.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace graphsamp::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& reason) {
    std::ostringstream os;
    os << source << ":" << line << ": " << reason;
    throw IoError(os.str());
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

bool try_parse_double(std::string_view text, double& out) {
    text = trim(text);
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

double number_at(std::string_view text, std::string_view source, std::size_t line) {
    double v = 0.0;
    if (!try_parse_double(text, v)) fail(source, line, "unparseable number '" + std::string(text) + "'");
    return v;
}

Index index_at(std::string_view text, std::string_view source, std::size_t line) {
    long long v = 0;
    if (!parse_int(trim(text), v)) fail(source, line, "unparseable node index '" + std::string(text) + "'");
    return static_cast<Index>(v);
}

int class_at(std::string_view text, std::string_view source, std::size_t line) {
    int v = 0;
    if (!parse_int(trim(text), v)) fail(source, line, "unparseable class id '" + std::string(text) + "'");
    return v;
}

// Calls fn(line_text, line_number) for every non-blank line.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string_view t = trim(line);
        if (!t.empty()) fn(t, number);
    }
    if (in.bad()) throw IoError("read failure");
}

}  // namespace

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading: " + std::strerror(errno));
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
    return out;
}

Graph read_edge_list(std::istream& in, std::string_view source) {
    Index n = -1;
    std::vector<Edge> edges;
    for_each_line(in, [&](std::string_view line, std::size_t no) {
        const auto fields = split_ws(line);
        if (n < 0) {
            if (fields.size() != 1) fail(source, no, "expected node count on the first line");
            n = index_at(fields[0], source, no);
            if (n < 0) fail(source, no, "negative node count");
            return;
        }
        if (fields.size() != 3) fail(source, no, "expected 'i j w'");
        edges.push_back({index_at(fields[0], source, no), index_at(fields[1], source, no),
                         number_at(fields[2], source, no)});
    });
    if (n < 0) fail(source, 0, "empty edge list");
    return Graph::from_edges(n, edges);
}

Graph read_edge_list(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.size() << '\n';
    for (const Edge& e : g.edges()) out << e.i << ' ' << e.j << ' ' << format_double(e.weight) << '\n';
}

FeatureMatrix read_features(std::istream& in, std::string_view source) {
    std::vector<std::vector<double>> rows;
    for_each_line(in, [&](std::string_view line, std::size_t no) {
        std::vector<double> row;
        for (std::string_view field : split(line, ',')) row.push_back(number_at(field, source, no));
        if (!rows.empty() && row.size() != rows.front().size())
            fail(source, no, "expected " + std::to_string(rows.front().size()) + " columns, got " +
                                 std::to_string(row.size()));
        rows.push_back(std::move(row));
    });
    FeatureMatrix X(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows[0].size()));
    for (Index i = 0; i < X.rows(); ++i)
        for (Index j = 0; j < X.cols(); ++j) X(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return X;
}

FeatureMatrix read_features(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_features(in, path.string());
}

std::vector<int> read_labels(std::istream& in, std::string_view source) {
    std::vector<int> labels;
    for_each_line(in, [&](std::string_view line, std::size_t no) { labels.push_back(class_at(line, source, no)); });
    return labels;
}

std::vector<int> read_labels(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_labels(in, path.string());
}

Observations read_observations(std::istream& in, Index n, std::string_view source) {
    std::vector<std::pair<Index, double>> pairs;
    for_each_line(in, [&](std::string_view line, std::size_t no) {
        const auto fields = split(line, ',');
        if (fields.size() != 2) fail(source, no, "expected 'node,value'");
        pairs.emplace_back(index_at(fields[0], source, no), number_at(fields[1], source, no));
    });
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    IndexList nodes;
    Vector values(static_cast<Index>(pairs.size()));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        nodes.push_back(pairs[i].first);
        values(static_cast<Index>(i)) = pairs[i].second;
    }
    return {SampleSet(n, std::move(nodes)), std::move(values)};
}

Observations read_observations(const std::filesystem::path& path, Index n) {
    auto in = open_input(path);
    return read_observations(in, n, path.string());
}

std::vector<std::pair<Index, int>> read_node_labels(std::istream& in, std::string_view source) {
    std::vector<std::pair<Index, int>> out;
    for_each_line(in, [&](std::string_view line, std::size_t no) {
        const auto fields = split(line, ',');
        if (fields.size() != 2) fail(source, no, "expected 'node,class'");
        out.emplace_back(index_at(fields[0], source, no), class_at(fields[1], source, no));
    });
    return out;
}

std::vector<std::pair<Index, int>> read_node_labels(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_node_labels(in, path.string());
}

Vector read_vector(std::istream& in, std::string_view source) {
    std::vector<double> values;
    for_each_line(in, [&](std::string_view line, std::size_t no) { values.push_back(number_at(line, source, no)); });
    return Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
}

void write_vector(std::ostream& out, const Vector& v) {
    for (Index i = 0; i < v.size(); ++i) out << format_double(v(i)) << '\n';
}

void write_matrix(std::ostream& out, const Matrix& m) {
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
        out << '\n';
    }
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    double v = 0.0;
    if (!try_parse_double(text, v)) throw IoError("unparseable number '" + std::string(text) + "'");
    return v;
}

}  // namespace graphsamp::io
