#include "smoothspec/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace smoothspec {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const Matrix& m) {
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_csv(std::ostream& out, const IntMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

void write_labels(std::ostream& out, const LabelVector& labels) {
  for (int l : labels) out << l << '\n';
}

void write_csv(const std::filesystem::path& path, const Matrix& m) {
  auto out = open_out(path);
  write_csv(out, m);
}

void write_csv(const std::filesystem::path& path, const IntMatrix& m) {
  auto out = open_out(path);
  write_csv(out, m);
}

void write_labels(const std::filesystem::path& path, const LabelVector& labels) {
  auto out = open_out(path);
  write_labels(out, labels);
}

}  // namespace smoothspec
