#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pid/distribution.hpp"

namespace pid::ingest {

/// Bin layout for a numeric column: k cuts define k+1 right-open intervals
///   (-inf, c0), [c0, c1), ..., [c_{k-1}, +inf)
/// labeled by `labels` (size k+1). Every finite value lands in exactly one.
struct BinSpec {
    std::vector<double> cuts;          // strictly increasing
    std::vector<std::string> labels;   // cuts.size() + 1 distinct labels

    std::size_t bin_of(double value) const;
    void validate() const;

    /// Labels "<c0", "c0-c1", ..., ">=c_{k-1}" if none are supplied.
    static BinSpec with_default_labels(std::vector<double> cuts);
};

struct ColumnSpec {
    std::string name;
    std::optional<BinSpec> bins;  // unset = categorical

    static ColumnSpec categorical(std::string name) { return {std::move(name), std::nullopt}; }
    static ColumnSpec binned(std::string name, BinSpec bins) {
        return {std::move(name), std::move(bins)};
    }
};

enum class MissingPolicy { DropRow };

struct DatasetConfig {
    ColumnSpec s_column, y_column, z_column;
    char delimiter = ',';
    bool header = true;  // when false, column names are 0-based indices
    MissingPolicy missing_policy = MissingPolicy::DropRow;
    double alpha = 0.0;  // additive smoothing per cell; 0 = raw frequencies
};

struct IngestReport {
    JointDistribution joint;
    std::size_t rows_total = 0;
    std::size_t rows_kept = 0;
    std::size_t rows_dropped = 0;
};

/// Empirical joint from a delimited text file. Alphabets are the observed
/// categories (or bin labels) in first-appearance order; the pmf is row
/// counts over retained rows. Rows with missing cells ("" or "?") are
/// dropped; a present but unparseable value in a binned column raises
/// UnparseableNumeric.
IngestReport load_joint_from_table(const std::string& path, const DatasetConfig& config);

/// pid-joint v1 text format: a header line, one `alphabet` line per
/// variable, then `p <s> <y> <z> <prob>` lines for nonzero cells with 17
/// significant digits. Lossless round trip.
void save_joint(const JointDistribution& joint, const std::string& path);
JointDistribution load_joint(const std::string& path);

/// Stream variants of the above (used by the CLI for stdout emission).
void write_joint(const JointDistribution& joint, std::ostream& out);
JointDistribution read_joint(std::istream& in, const std::string& origin = "<stream>");

}  // namespace pid::ingest
