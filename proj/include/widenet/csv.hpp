#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace widenet {

// %.17g: shortest text that round-trips a double
std::string format_real(double v);

// Writes to <path>.tmp then renames, so readers never see partial files.
void write_text_atomic(const std::string& path, const std::string& contents);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// M x M matrix with header a_1,...,a_M.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

}  // namespace widenet
