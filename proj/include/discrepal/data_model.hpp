#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "discrepal/types.hpp"

namespace discrepal {

// agnostic: labels must be exactly +1/-1. realizable: any finite real.
enum class LabelMode { agnostic, realizable };

struct Dataset {
  Eigen::MatrixXd features;  // n x d
  Eigen::VectorXd labels;    // n
  std::string name;

  std::size_t size() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(features.cols()); }

  // Rows in the given order; labels follow.
  Dataset rows(const IndexList& indices) const;
};

// Throws UsageError when the invariants for `mode` do not hold
// (n >= 2, d >= 1, finite entries, binary labels in agnostic mode).
void validate(const Dataset& data, LabelMode mode);

struct SplitIndices {
  IndexList train;  // ascending
  IndexList test;   // ascending
  std::uint64_t seed = 0;
};

/// Reads a comma-separated file with one header row. Every column except
/// `label_column` becomes a feature, in header order.
///
/// Throws ParseError naming the offending line/column for a missing file,
/// missing label column, non-numeric cell, ragged row or fewer than two rows,
/// and for a non-binary label when `mode` is agnostic.
Dataset load_csv(const std::filesystem::path& path, std::string_view label_column,
                 LabelMode mode = LabelMode::agnostic);

// Zero mean, unit population standard deviation per column. Constant columns
// become all zeros.
Dataset standardize(const Dataset& data);

// Uniform sample of max_n rows without replacement (original order kept);
// returns the input unchanged when it already has <= max_n rows.
Dataset subsample(const Dataset& data, std::size_t max_n, std::uint64_t seed);

// Random train/test partition with |train| = round(train_frac * n).
SplitIndices split(const Dataset& data, double train_frac, std::uint64_t seed);

}  // namespace discrepal
