#include "netmon/output.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>

#include <fmt/core.h>
#include <openssl/evp.h>

#include "netmon/error.hpp"

namespace netmon {

std::string format_number(double v) {
    if (v == 0.0) return "0";  // drops the sign of -0
    return fmt::format("{:.15g}", v);
}

double round15(double v) { return std::strtod(fmt::format("{:.15g}", v).c_str(), nullptr); }

std::string matrix_csv(const std::vector<std::string>& labels, const Eigen::MatrixXd& m) {
    std::string out;
    for (const auto& l : labels) out += "," + l;
    out += '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += labels[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < m.cols(); ++j) out += "," + format_number(m(i, j));
        out += '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("output", "cannot write " + path.string());
    out << content;
    if (!out) throw DataError("output", "failed writing " + path.string());
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("output", "cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    std::string hex;
    for (unsigned i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

}  // namespace netmon
