#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "discrepal/harness.hpp"

namespace discrepal {

// Numbers are written in shortest round-trip form with '.' as the decimal point.
std::string format_number(double value);

// criterion,run,query,mse  (query is 1-based)
void write_curves_csv(const std::filesystem::path& path, const LearningCurveSet& curves);

// criterion,query,mean,stderr,mean_minus_random  (last column empty without a random baseline)
void write_summary_csv(const std::filesystem::path& path, const LearningCurveSet& curves);

// pair,query,p_value,verdict for every unordered criterion pair a_vs_b in set order.
void write_wtl_csv(const std::filesystem::path& path, const LearningCurveSet& curves, std::size_t stride,
                   double p_threshold, TTestKind kind);

// query,<bins...>,LQ,LP
void write_decomp_csv(const std::filesystem::path& path, const DecompositionCurve& curve);
void write_decomp_csv(std::ostream& out, const DecompositionCurve& curve);

// sigma,log10_lambda,mean_mse
void write_tune_csv(const std::filesystem::path& path, const TuneResult& result);

/// Reads a curves.csv back. Throws ParseError on malformed rows and when a
/// criterion does not cover every (run, query) cell exactly once.
LearningCurveSet read_curves_csv(const std::filesystem::path& path);

}  // namespace discrepal
