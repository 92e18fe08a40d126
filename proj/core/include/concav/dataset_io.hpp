#pragma once

#include <filesystem>
#include <iosfwd>

#include "concav/relu_model.hpp"

namespace concav {

// Dataset file: header "x0,...,x{d-1},y", then one row per point with the d
// input coordinates followed by the target.
//
// Teacher file: header "w", then k*d rows holding the flattened weights in
// block order (all of w^1, then w^2, ...). A leading "# k=<k> d=<d>
// seed=<seed>" comment records the shape and generation seed.

void write_dataset(std::ostream& os, const ReluDataset& data);
void write_teacher(std::ostream& os, const ReluDataset& data);

/// Rebuilds a dataset from the two streams. Targets are taken from the file,
/// not recomputed.
ReluDataset read_dataset(std::istream& data_is, std::istream& teacher_is);

void save_dataset(const std::filesystem::path& data_path,
                  const std::filesystem::path& teacher_path,
                  const ReluDataset& data);
ReluDataset load_dataset(const std::filesystem::path& data_path,
                         const std::filesystem::path& teacher_path);

}  // namespace concav
