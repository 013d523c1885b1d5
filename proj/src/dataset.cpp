#include "alignlso/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "alignlso/errors.hpp"

namespace alignlso {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_field(const std::string& raw, const std::string& path, std::size_t line_no) {
    const std::string s = trim(raw);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw FormatError(path + ":" + std::to_string(line_no) + ": bad numeric field '" + s + "'");
    return v;
}

}  // namespace

std::pair<Expr, DatasetXY> load_benchmark_case(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path + ": empty file");
    const std::string sidecar_prefix = "# expr:";
    if (line.rfind(sidecar_prefix, 0) != 0)
        throw FormatError(path + ": first line must start with '# expr:'");
    const std::string expr_text = trim(line.substr(sidecar_prefix.size()));
    if (expr_text.empty()) throw FormatError(path + ": sidecar expression is empty");

    if (!std::getline(in, line)) throw FormatError(path + ": missing header line");
    const auto header = split_csv(trim(line));
    if (header.size() < 2 || trim(header.back()) != "y")
        throw FormatError(path + ": header must be x0,..,x{d-1},y");
    const int d = static_cast<int>(header.size()) - 1;
    if (d < 1 || d > 10) throw DimensionError(path + ": d=" + std::to_string(d) + " outside [1,10]");
    for (int j = 0; j < d; ++j)
        if (trim(header[static_cast<std::size_t>(j)]) != "x" + std::to_string(j))
            throw FormatError(path + ": header column " + std::to_string(j) + " must be x" +
                              std::to_string(j));

    Expr e;
    try {
        e = parse_infix(expr_text);
    } catch (const Error& err) {
        throw ParseError(path + ": bad sidecar expression: " + err.what());
    }
    if (max_var_index(e) >= d)
        throw FormatError(path + ": expression references x" + std::to_string(max_var_index(e)) +
                          " but file has " + std::to_string(d) + " input columns");

    std::vector<std::array<double, 11>> rows;
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto fields = split_csv(t);
        if (static_cast<int>(fields.size()) != d + 1)
            throw FormatError(path + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(d + 1) + " fields, got " +
                              std::to_string(fields.size()));
        std::array<double, 11> row{};
        for (int j = 0; j <= d; ++j)
            row[static_cast<std::size_t>(j)] =
                parse_field(fields[static_cast<std::size_t>(j)], path, line_no);
        rows.push_back(row);
    }
    if (rows.empty()) throw FormatError(path + ": no data rows");

    DatasetXY ds;
    ds.X.resize(static_cast<Eigen::Index>(rows.size()), d);
    ds.y.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int j = 0; j < d; ++j)
            ds.X(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
        ds.y(static_cast<Eigen::Index>(i)) = rows[i][static_cast<std::size_t>(d)];
    }
    ds.standardized = false;
    ds.source = DataSource::File;
    return {std::move(e), std::move(ds)};
}

void save_case_file(const std::string& path, const Expr& e, const DatasetXY& ds) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << "# expr: " << to_infix(e) << "\n";
    const int d = static_cast<int>(ds.dim());
    for (int j = 0; j < d; ++j) out << "x" << j << ",";
    out << "y\n";
    for (Eigen::Index i = 0; i < ds.rows(); ++i) {
        for (int j = 0; j < d; ++j) out << format_double(ds.X(i, j)) << ",";
        out << format_double(ds.y(i)) << "\n";
    }
    if (!out) throw FormatError("write failed for " + path);
}

Eigen::MatrixXd sample_inputs(int d, int n, double lo, double hi, std::uint64_t seed) {
    Eigen::MatrixXd X(n, d);
    Rng rng(seed);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) X(i, j) = rng.uniform(lo, hi);
    return X;
}

DatasetXY standardize(const DatasetXY& ds) {
    DatasetXY out = ds;
    for (Eigen::Index j = 0; j < ds.dim(); ++j) {
        const double mean = ds.X.col(j).mean();
        const double var = (ds.X.col(j).array() - mean).square().mean();
        const double sd = std::sqrt(var);
        if (sd < 1e-12) throw DegenerateColumn(static_cast<int>(j));
        out.X.col(j) = (ds.X.col(j).array() - mean) / sd;
    }
    out.standardized = true;
    return out;
}

Eigen::VectorXd eval_rows(const Expr& e, const Eigen::MatrixXd& X) {
    Eigen::VectorXd y(X.rows());
    std::vector<double> row(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        for (Eigen::Index j = 0; j < X.cols(); ++j) row[static_cast<std::size_t>(j)] = X(i, j);
        y(i) = eval(e, row);
    }
    return y;
}

bool validity_filter(const Expr& e, const Eigen::MatrixXd& X) {
    const Eigen::VectorXd y = eval_rows(e, X);
    if (!y.allFinite()) return false;
    const double mean = y.mean();
    const double sd = std::sqrt((y.array() - mean).square().mean());
    return sd >= 1e-9;
}

DatasetXY subsample_rows(const DatasetXY& ds, double fraction, Rng& rng) {
    const Eigen::Index n = ds.rows();
    Eigen::Index k = static_cast<Eigen::Index>(std::llround(fraction * static_cast<double>(n)));
    k = std::clamp<Eigen::Index>(k, 1, n);
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto pick = static_cast<Eigen::Index>(
            rng.index(static_cast<std::size_t>(n - i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(i + pick)]);
    }
    std::sort(idx.begin(), idx.begin() + k);
    DatasetXY out;
    out.X.resize(k, ds.dim());
    out.y.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        out.X.row(i) = ds.X.row(idx[static_cast<std::size_t>(i)]);
        out.y(i) = ds.y(idx[static_cast<std::size_t>(i)]);
    }
    out.standardized = ds.standardized;
    out.source = ds.source;
    return out;
}

}  // namespace alignlso
