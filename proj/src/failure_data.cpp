#include "srgm/failure_data.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "srgm/csv.hpp"

namespace srgm {

FailureDataset::FailureDataset(std::string name, Eigen::ArrayXd times, Eigen::ArrayXd counts)
    : name_(std::move(name)), times_(std::move(times)), counts_(std::move(counts)) {
  if (times_.size() != counts_.size())
    throw ValidationError("times and counts differ in length");
  const Eigen::Index k = times_.size();
  if (k < 2) throw ValidationError("dataset needs at least 2 points, got " + std::to_string(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(times_(i) > 0.0))
      throw ValidationError("non-positive time at row " + std::to_string(i + 1));
    if (!(counts_(i) >= 0.0))
      throw ValidationError("negative cumulative count at row " + std::to_string(i + 1));
    if (i > 0 && !(times_(i) > times_(i - 1)))
      throw ValidationError("times do not increase at row " + std::to_string(i + 1));
    if (i > 0 && counts_(i) < counts_(i - 1))
      throw ValidationError("cumulative counts decrease at row " + std::to_string(i + 1));
  }
}

FailureDataset parse_dataset(std::istream& in, std::string name) {
  std::vector<int> line_numbers;
  auto rows = read_csv_rows(in, &line_numbers);
  if (rows.empty()) throw ParseError("missing header row", 1);
  if (rows.front().size() != 2 || rows.front()[0] != "t" ||
      rows.front()[1] != "cumulative_faults")
    throw ParseError("expected header 't,cumulative_faults'", line_numbers.front());

  const auto n = static_cast<Eigen::Index>(rows.size()) - 1;
  Eigen::ArrayXd times(n), counts(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i) + 1];
    const int lineno = line_numbers[static_cast<std::size_t>(i) + 1];
    if (row.size() != 2) throw ParseError("expected 2 fields", lineno);
    try {
      times(i) = parse_double(row[0]);
      counts(i) = parse_double(row[1]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return FailureDataset(std::move(name), std::move(times), std::move(counts));
}

FailureDataset load_dataset(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open dataset file: " + file.string());
  return parse_dataset(in, file.stem().string());
}

void serialize_dataset(std::ostream& out, const FailureDataset& dataset) {
  out << "t,cumulative_faults\n";
  for (Eigen::Index i = 0; i < dataset.size(); ++i)
    out << format_double(dataset.times()(i)) << ',' << format_double(dataset.counts()(i))
        << '\n';
}

}  // namespace srgm
