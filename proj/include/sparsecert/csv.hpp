#ifndef SPARSECERT_CSV_HPP
#define SPARSECERT_CSV_HPP

#include <string>

#include "sparsecert/types.hpp"

namespace sparsecert {

// Plain-text CSV, one row per line. An optional leading `# rows cols`
// comment is written on output and ignored on input. Values survive a
// round trip to 15 significant digits (17 are written).

Matrix read_matrix_csv(const std::string& path);
Matrix parse_matrix_csv(const std::string& text);
void write_matrix_csv(const std::string& path, const Matrix& m);
std::string format_matrix_csv(const Matrix& m);

// A vector is stored as an n×1 or 1×n matrix; both shapes are accepted.
Vector read_vector_csv(const std::string& path);
void write_vector_csv(const std::string& path, const Vector& v);

std::string format_double(double v);

}  // namespace sparsecert

#endif
