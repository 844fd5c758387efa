#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lopart/cv.hpp"
#include "lopart/labels.hpp"
#include "lopart/metrics.hpp"
#include "lopart/penalty.hpp"
#include "lopart/sequence.hpp"
#include "lopart/simbench.hpp"
#include "lopart/solver.hpp"

// File formats. Positions are 1-based in every file. Parse failures raise
// InvalidInput with a "<source>:<line>: " prefix.
namespace lopart::io {

inline constexpr int kDefaultPrecision = 6;

// `precision` significant digits in %g style; infinity prints as "inf".
std::string format_number(double value, int precision = kDefaultPrecision);

// A non-negative number or the literal "inf".
double parse_penalty(std::string_view text);

// Data: one value per line, optional header line "value". Blank lines are
// skipped.
DataSequence parse_data(std::istream& in, const std::string& source);
DataSequence read_data(const std::filesystem::path& path);
void write_data(std::ostream& out, const DataSequence& seq);

// Labels: header "start,end,changes", one label per line. A file with no
// lines at all is an empty label set.
LabelSet parse_labels(std::istream& in, const std::string& source, Position n);
LabelSet read_labels(const std::filesystem::path& path, Position n);
void write_labels(std::ostream& out, const LabelSet& labels);

// Segments: header "start,end,mean".
void write_segments(std::ostream& out, const Segmentation& fit,
                    int precision = kDefaultPrecision);
// Returns the changepoints (every segment end but the last); segments must
// tile 1..n.
std::vector<Position> parse_segments(std::istream& in, const std::string& source,
                                     Position n);
std::vector<Position> read_segments(const std::filesystem::path& path,
                                    Position n);

// Per-label evaluation: header
// "label_index,start,end,changes,predicted_changes,status,true_positive".
void write_evaluation(std::ostream& out, const LabelSet& labels,
                      std::span<const LabelOutcome> outcomes);

// Penalty model as key=value lines: method, w, b.
void write_model(std::ostream& out, const PenaltyModel& model);
PenaltyModel parse_model(std::istream& in, const std::string& source);
PenaltyModel read_model(const std::filesystem::path& path);

// Experiment report, one row per (sequence, split, algorithm, method).
void write_report(std::ostream& out, const ExperimentReport& report,
                  int precision = kDefaultPrecision);
void write_roc(std::ostream& out, std::span<const RocSummary> roc,
               int precision = kDefaultPrecision);

// Timing CSV: algorithm,n,m,median_seconds,q25,q75.
void write_timings(std::ostream& out, std::span<const TimingRow> rows,
                   int precision = kDefaultPrecision);

// A corpus directory holds NAME.data.csv and NAME.labels.csv pairs; entries
// come back sorted by NAME.
std::vector<CorpusEntry> read_corpus(const std::filesystem::path& dir);
void write_corpus(const std::filesystem::path& dir,
                  std::span<const CorpusEntry> corpus);

}  // namespace lopart::io
