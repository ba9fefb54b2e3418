#include "vqasc/dataset_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "vqasc/rng.hpp"

namespace vqasc {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void atomic_write_text(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("rename failed for " + path + ": " + ec.message());
    }
}

Dataset load_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty dataset file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_csv_line(line);
    bool has_label = !header.empty() && header.back() == "label";
    const std::size_t n_features = header.size() - (has_label ? 1 : 0);
    if (n_features == 0) throw std::runtime_error("dataset has no feature columns: " + path);
    for (std::size_t c = 0; c < n_features; ++c) {
        if (header[c] != "f" + std::to_string(c))
            throw std::runtime_error("dataset header must be f0..f{d-1}[,label], got '" +
                                     header[c] + "' in " + path);
    }

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error("dataset row " + std::to_string(line_no) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(header.size()));
        std::vector<double> row(n_features);
        try {
            for (std::size_t c = 0; c < n_features; ++c) row[c] = std::stod(fields[c]);
            if (has_label) labels.push_back(std::stoi(fields[n_features]));
        } catch (const std::exception&) {
            throw std::runtime_error("dataset row " + std::to_string(line_no) +
                                     ": cannot parse number");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("dataset has no data rows: " + path);

    Dataset out;
    out.points.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(n_features));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < n_features; ++c)
            out.points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    if (has_label) out.labels = std::move(labels);
    out.name = std::filesystem::path(path).stem().string();
    return out;
}

void save_dataset_csv(const std::string& path, const Dataset& dataset) {
    std::string content;
    for (Eigen::Index c = 0; c < dataset.dims(); ++c) {
        if (c) content += ',';
        content += "f" + std::to_string(c);
    }
    if (dataset.labels) content += ",label";
    content += '\n';

    for (Eigen::Index r = 0; r < dataset.size(); ++r) {
        for (Eigen::Index c = 0; c < dataset.dims(); ++c) {
            if (c) content += ',';
            content += format_double(dataset.points(r, c));
        }
        if (dataset.labels)
            content += "," + std::to_string((*dataset.labels)[static_cast<std::size_t>(r)]);
        content += '\n';
    }
    atomic_write_text(path, content);
}

Dataset subsample(const Dataset& dataset, int n, std::uint64_t seed) {
    if (n < 1 || n > dataset.size())
        throw std::invalid_argument("subsample: n out of range [1, N]");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(dataset.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::mt19937_64 eng = seeded_engine(seed, 0);
    // Fisher-Yates over explicit uniform01 draws, toolchain-independent.
    for (std::size_t i = order.size() - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(uniform01(eng) * static_cast<double>(i + 1));
        std::swap(order[i], order[std::min(j, i)]);
    }

    Dataset out;
    out.name = dataset.name;
    out.points.resize(n, dataset.dims());
    if (dataset.labels) out.labels = std::vector<int>(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        out.points.row(r) = dataset.points.row(order[static_cast<std::size_t>(r)]);
        if (dataset.labels)
            (*out.labels)[static_cast<std::size_t>(r)] =
                (*dataset.labels)[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])];
    }
    return out;
}

}  // namespace vqasc
