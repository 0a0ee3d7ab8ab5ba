#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace netmon {

// 15 significant digits, shortest form ("0.7", not "0.700000000000000").
std::string format_number(double v);

// v rounded to 15 significant digits, for JSON serialisation.
double round15(double v);

std::string matrix_csv(const std::vector<std::string>& labels, const Eigen::MatrixXd& m);

// Creates parent directories as needed.
void write_text_file(const std::filesystem::path& path, const std::string& content);

std::string sha256_file(const std::filesystem::path& path);

}  // namespace netmon
