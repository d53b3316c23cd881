#include "cdg/matrix_market.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cdg {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

void expect_header(std::istream& in, const std::string& storage, std::string& first_data_line) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty matrix market file");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" || format != storage ||
      field != "real" || symmetry != "general") {
    throw std::runtime_error("unsupported matrix market header: " + line);
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') {
      first_data_line = line;
      return;
    }
  }
  throw std::runtime_error("matrix market file has no size line");
}

}  // namespace

void write_matrix_market(const std::string& path, const SpMat& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
  for (int row = 0; row < m.outerSize(); ++row) {
    for (SpMat::InnerIterator it(m, row); it; ++it) {
      out << it.row() + 1 << " " << it.col() + 1 << " " << format_value(it.value()) << "\n";
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

SpMat read_matrix_market(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string size_line;
  expect_header(in, "coordinate", size_line);

  std::istringstream sizes(size_line);
  long rows = 0, cols = 0, nnz = 0;
  if (!(sizes >> rows >> cols >> nnz)) throw std::runtime_error("bad size line in " + path);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(nnz);
  for (long k = 0; k < nnz; ++k) {
    long i = 0, j = 0;
    double value = 0.0;
    if (!(in >> i >> j >> value)) throw std::runtime_error("truncated entries in " + path);
    triplets.emplace_back(i - 1, j - 1, value);
  }
  SpMat m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

void write_matrix_market_vector(const std::string& path, const Eigen::VectorXd& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "%%MatrixMarket matrix array real general\n";
  out << v.size() << " 1\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << format_value(v[i]) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

Eigen::VectorXd read_matrix_market_vector(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string size_line;
  expect_header(in, "array", size_line);

  std::istringstream sizes(size_line);
  long rows = 0, cols = 0;
  if (!(sizes >> rows >> cols) || cols != 1) {
    throw std::runtime_error("expected a one-column array in " + path);
  }
  Eigen::VectorXd v(rows);
  for (long i = 0; i < rows; ++i) {
    if (!(in >> v[i])) throw std::runtime_error("truncated entries in " + path);
  }
  return v;
}

}  // namespace cdg
