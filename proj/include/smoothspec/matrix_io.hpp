#pragma once

#include "smoothspec/types.hpp"

#include <filesystem>
#include <ostream>

namespace smoothspec {

// CSV writers. Reals use 17 significant digits so values round-trip.
void write_csv(std::ostream& out, const Matrix& m);
void write_csv(std::ostream& out, const IntMatrix& m);
void write_labels(std::ostream& out, const LabelVector& labels);

void write_csv(const std::filesystem::path& path, const Matrix& m);
void write_csv(const std::filesystem::path& path, const IntMatrix& m);
void write_labels(const std::filesystem::path& path, const LabelVector& labels);

}  // namespace smoothspec
