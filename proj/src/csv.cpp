#include "sparsecert/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sparsecert {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_matrix_csv(const Matrix& m) {
    std::ostringstream out;
    out << "# " << m.rows() << " " << m.cols() << "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << ",";
            out << format_double(m(i, j));
        }
        out << "\n";
    }
    return out.str();
}

Matrix parse_matrix_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        std::vector<double> row;
        const char* p = line.c_str() + start;
        while (*p) {
            char* end = nullptr;
            double v = std::strtod(p, &end);
            if (end == p) throw IoError("malformed CSV entry: " + line);
            row.push_back(v);
            p = end;
            while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
            if (*p == ',') ++p;
            while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("empty CSV matrix");
    const size_t cols = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols) throw IoError("ragged CSV matrix");
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    if (!m.all_finite()) throw IoError("CSV matrix has non-finite entries");
    return m;
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_csv(buf.str());
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << format_matrix_csv(m);
}

Vector read_vector_csv(const std::string& path) {
    Matrix m = read_matrix_csv(path);
    if (m.cols() == 1) return m.column(0);
    if (m.rows() == 1) return m.row(0);
    throw IoError("expected a vector (one row or one column) in " + path);
}

void write_vector_csv(const std::string& path, const Vector& v) {
    Matrix m(static_cast<int>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
    write_matrix_csv(path, m);
}

}  // namespace sparsecert
