#include "lopart/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <utility>

#include "lopart/errors.hpp"

namespace lopart::io {

namespace {

std::string_view trim(std::string_view text) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(trim(line.substr(begin, i - begin)));
      begin = i + 1;
    }
  }
  return fields;
}

[[noreturn]] void fail(const std::string& source, std::size_t line,
                       const std::string& message) {
  throw InvalidInput(source + ":" + std::to_string(line) + ": " + message);
}

template <typename T>
bool parse_value(std::string_view text, T& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && !text.empty();
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return in;
}

// Yields (line number, trimmed content) for non-blank lines.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view content = trim(line);
    if (content.empty()) continue;
    fn(number, content);
  }
}

std::string optional_number(const std::optional<double>& value, int precision) {
  return value ? format_number(*value, precision) : "NA";
}

void write_counts(std::ostream& out, const ErrorCounts& counts) {
  out << counts.fp << ',' << counts.fn << ',' << counts.tp << ','
      << counts.labels << ',' << counts.positive_labels;
}

}  // namespace

std::string format_number(double value, int precision) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "NA";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
  std::string text(buffer);
  return text == "-0" ? "0" : text;
}

double parse_penalty(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "Inf" || text == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  double value = 0.0;
  if (!parse_value(text, value) || !std::isfinite(value) || value < 0.0) {
    throw InvalidInput("penalty must be a non-negative number or \"inf\", got '" +
                       std::string(text) + "'");
  }
  return value;
}

DataSequence parse_data(std::istream& in, const std::string& source) {
  std::vector<double> values;
  bool first = true;
  for_each_line(in, [&](std::size_t line, std::string_view content) {
    if (std::exchange(first, false) && content == "value") return;
    double value = 0.0;
    if (!parse_value(content, value)) {
      fail(source, line, "expected a number, got '" + std::string(content) + "'");
    }
    if (!std::isfinite(value)) fail(source, line, "value is not finite");
    values.push_back(value);
  });
  if (values.empty()) throw InvalidInput(source + ": no data values");
  return DataSequence(std::move(values));
}

DataSequence read_data(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return parse_data(in, path.string());
}

void write_data(std::ostream& out, const DataSequence& seq) {
  out << "value\n";
  for (const double x : seq.values()) out << format_number(x, 17) << '\n';
}

LabelSet parse_labels(std::istream& in, const std::string& source, Position n) {
  std::vector<Label> raw;
  std::vector<std::size_t> lines;
  bool header = false;
  for_each_line(in, [&](std::size_t line, std::string_view content) {
    if (!header) {
      if (content != "start,end,changes") {
        fail(source, line, "expected header \"start,end,changes\"");
      }
      header = true;
      return;
    }
    const auto fields = split_fields(content);
    Label label;
    if (fields.size() != 3 || !parse_value(fields[0], label.start) ||
        !parse_value(fields[1], label.end) ||
        !parse_value(fields[2], label.changes)) {
      fail(source, line, "expected three integers start,end,changes");
    }
    raw.push_back(label);
    lines.push_back(line);
  });
  if (!header) return validate_labels({}, n);
  try {
    return validate_labels(std::move(raw), n);
  } catch (const InvalidInput& e) {
    if (!e.index()) throw;
    throw InvalidInput(source + ":" + std::to_string(lines[*e.index()]) + ": " +
                           e.what(),
                       *e.index());
  }
}

LabelSet read_labels(const std::filesystem::path& path, Position n) {
  std::ifstream in = open_input(path);
  return parse_labels(in, path.string(), n);
}

void write_labels(std::ostream& out, const LabelSet& labels) {
  out << "start,end,changes\n";
  for (const Label& label : labels.labels()) {
    out << label.start << ',' << label.end << ',' << label.changes << '\n';
  }
}

void write_segments(std::ostream& out, const Segmentation& fit, int precision) {
  out << "start,end,mean\n";
  for (const Segment& segment : fit.segments()) {
    out << segment.start << ',' << segment.end << ','
        << format_number(segment.mean, precision) << '\n';
  }
}

std::vector<Position> parse_segments(std::istream& in, const std::string& source,
                                     Position n) {
  std::vector<Position> changepoints;
  bool header = false;
  Position next_start = 1;
  std::size_t last_line = 0;
  for_each_line(in, [&](std::size_t line, std::string_view content) {
    last_line = line;
    if (!header) {
      if (content != "start,end,mean") {
        fail(source, line, "expected header \"start,end,mean\"");
      }
      header = true;
      return;
    }
    const auto fields = split_fields(content);
    Position start = 0;
    Position end = 0;
    double mean = 0.0;
    if (fields.size() != 3 || !parse_value(fields[0], start) ||
        !parse_value(fields[1], end) || !parse_value(fields[2], mean)) {
      fail(source, line, "expected start,end,mean");
    }
    if (start != next_start || end < start || end > n) {
      fail(source, line, "segments must tile 1.." + std::to_string(n) +
                             " in order");
    }
    if (start > 1) changepoints.push_back(start - 1);
    next_start = end + 1;
  });
  if (!header) throw InvalidInput(source + ": missing header \"start,end,mean\"");
  if (next_start != n + 1) {
    fail(source, last_line, "segments end at " + std::to_string(next_start - 1) +
                                " but the data has " + std::to_string(n) +
                                " points");
  }
  return changepoints;
}

std::vector<Position> read_segments(const std::filesystem::path& path,
                                    Position n) {
  std::ifstream in = open_input(path);
  return parse_segments(in, path.string(), n);
}

void write_evaluation(std::ostream& out, const LabelSet& labels,
                      std::span<const LabelOutcome> outcomes) {
  out << "label_index,start,end,changes,predicted_changes,status,true_positive\n";
  for (const LabelOutcome& outcome : outcomes) {
    const Label& label = labels[outcome.label_index];
    out << outcome.label_index + 1 << ',' << label.start << ',' << label.end
        << ',' << label.changes << ',' << outcome.predicted_changes << ','
        << to_string(outcome.status) << ',' << (outcome.true_positive ? 1 : 0)
        << '\n';
  }
}

void write_model(std::ostream& out, const PenaltyModel& model) {
  out << "method=" << to_string(model.method) << '\n'
      << "w=" << format_number(model.w, 17) << '\n'
      << "b=" << format_number(model.b, 17) << '\n';
}

PenaltyModel parse_model(std::istream& in, const std::string& source) {
  std::map<std::string, std::string, std::less<>> entries;
  for_each_line(in, [&](std::size_t line, std::string_view content) {
    if (content.front() == '#') return;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) fail(source, line, "expected key=value");
    entries[std::string(trim(content.substr(0, eq)))] =
        std::string(trim(content.substr(eq + 1)));
  });
  const auto method = entries.find("method");
  if (method == entries.end()) throw InvalidInput(source + ": missing method=");
  PenaltyModel model;
  model.method = parse_penalty_method(method->second);
  for (auto [key, target] : {std::pair{"w", &model.w}, std::pair{"b", &model.b}}) {
    const auto it = entries.find(key);
    if (it == entries.end()) continue;
    if (!parse_value(std::string_view(it->second), *target)) {
      throw InvalidInput(source + ": " + key + " is not a number");
    }
  }
  return model;
}

PenaltyModel read_model(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return parse_model(in, path.string());
}

void write_report(std::ostream& out, const ExperimentReport& report,
                  int precision) {
  out << "sequence_id,split,algorithm,method,penalty,"
         "train_fp,train_fn,train_tp,train_labels,train_positive,"
         "test_fp,test_fn,test_tp,test_labels,test_positive\n";
  for (const ReportRow& row : report.rows) {
    out << row.sequence_id << ',' << row.split << ',' << to_string(row.algorithm)
        << ',' << row.method << ',' << format_number(row.penalty, precision)
        << ',';
    write_counts(out, row.train);
    out << ',';
    write_counts(out, row.test);
    out << '\n';
  }
}

void write_roc(std::ostream& out, std::span<const RocSummary> roc,
               int precision) {
  out << "split,algorithm,method,factor,fpr,tpr,auc\n";
  for (const RocSummary& summary : roc) {
    for (const RocPoint& point : summary.curve.points) {
      out << summary.split << ',' << to_string(summary.algorithm) << ','
          << to_string(summary.method) << ','
          << format_number(point.penalty, precision) << ','
          << optional_number(point.fpr, precision) << ','
          << optional_number(point.tpr, precision) << ','
          << optional_number(summary.curve.auc, precision) << '\n';
    }
  }
}

void write_timings(std::ostream& out, std::span<const TimingRow> rows,
                   int precision) {
  out << "algorithm,n,m,median_seconds,q25,q75\n";
  for (const TimingRow& row : rows) {
    out << to_string(row.algorithm) << ',' << row.n << ',' << row.m << ','
        << format_number(row.median_seconds, precision) << ','
        << format_number(row.q25, precision) << ','
        << format_number(row.q75, precision) << '\n';
  }
}

std::vector<CorpusEntry> read_corpus(const std::filesystem::path& dir) {
  constexpr std::string_view kDataSuffix = ".data.csv";
  if (!std::filesystem::is_directory(dir)) {
    throw InvalidInput("corpus directory " + dir.string() + " does not exist");
  }
  std::vector<std::string> names;
  for (const auto& file : std::filesystem::directory_iterator(dir)) {
    const std::string name = file.path().filename().string();
    if (name.size() > kDataSuffix.size() && name.ends_with(kDataSuffix)) {
      names.push_back(name.substr(0, name.size() - kDataSuffix.size()));
    }
  }
  std::sort(names.begin(), names.end());
  std::vector<CorpusEntry> corpus;
  for (const std::string& name : names) {
    DataSequence data = read_data(dir / (name + ".data.csv"));
    const auto labels_path = dir / (name + ".labels.csv");
    LabelSet labels = std::filesystem::exists(labels_path)
                          ? read_labels(labels_path, data.size())
                          : validate_labels({}, data.size());
    corpus.push_back({name, std::move(data), std::move(labels)});
  }
  if (corpus.empty()) {
    throw InvalidInput("corpus directory " + dir.string() +
                       " holds no *.data.csv files");
  }
  return corpus;
}

void write_corpus(const std::filesystem::path& dir,
                  std::span<const CorpusEntry> corpus) {
  std::filesystem::create_directories(dir);
  for (const CorpusEntry& entry : corpus) {
    std::ofstream data(dir / (entry.id + ".data.csv"));
    write_data(data, entry.data);
    std::ofstream labels(dir / (entry.id + ".labels.csv"));
    write_labels(labels, entry.labels);
  }
}

}  // namespace lopart::io
