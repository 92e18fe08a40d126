#include "concav/dataset_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "concav/delimited.hpp"
#include "concav/error.hpp"

namespace concav {

void write_dataset(std::ostream& os, const ReluDataset& data) {
  CsvWriter csv(os);
  for (std::size_t c = 0; c < data.dim(); ++c)
    csv.field("x" + std::to_string(c));
  csv.field("y");
  csv.end_row();
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.input(i)) csv.field(v);
    csv.field(data.target(i));
    csv.end_row();
  }
}

void write_teacher(std::ostream& os, const ReluDataset& data) {
  const Weights& w = data.teacher();
  os << "# k=" << w.k() << " d=" << w.d() << " seed=" << data.seed() << '\n';
  os << "w\n";
  for (double v : w.flat()) os << format_double(v) << '\n';
}

namespace {

struct TeacherHeader {
  std::size_t k = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
};

TeacherHeader parse_teacher_comment(const std::string& line) {
  TeacherHeader h;
  std::istringstream ss(line.substr(1));
  std::string tok;
  bool have_k = false, have_d = false;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    try {
      if (key == "k") { h.k = std::stoull(val); have_k = true; }
      else if (key == "d") { h.d = std::stoull(val); have_d = true; }
      else if (key == "seed") { h.seed = std::stoull(val); }
    } catch (const std::exception&) {
      throw InvalidInput("teacher file: bad header value '" + tok + "'");
    }
  }
  if (!have_k || !have_d)
    throw InvalidInput("teacher file: missing '# k=<k> d=<d>' header");
  return h;
}

}  // namespace

ReluDataset read_dataset(std::istream& data_is, std::istream& teacher_is) {
  std::string line;

  // Teacher: the shape comment precedes the "w" header.
  TeacherHeader th;
  bool have_header = false;
  while (std::getline(teacher_is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      th = parse_teacher_comment(line);
      have_header = true;
      continue;
    }
    break;
  }
  if (!have_header) throw InvalidInput("teacher file: missing shape comment");
  if (line != "w") throw InvalidInput("teacher file: expected 'w' header");
  Vector flat;
  while (next_data_line(teacher_is, line)) flat.push_back(parse_double(line));
  Weights teacher(th.k, th.d, std::move(flat));

  if (!next_data_line(data_is, line))
    throw InvalidInput("dataset file: missing header");
  const auto header = split_fields(line);
  if (header.size() != th.d + 1 || header.back() != "y")
    throw InvalidInput("dataset file: header does not match d = " +
                       std::to_string(th.d));

  Vector inputs, targets;
  std::size_t row = 0;
  while (next_data_line(data_is, line)) {
    ++row;
    const auto fields = split_fields(line);
    if (fields.size() != th.d + 1)
      throw InvalidInput("dataset file: row " + std::to_string(row) +
                         " has " + std::to_string(fields.size()) + " fields");
    for (std::size_t c = 0; c < th.d; ++c)
      inputs.push_back(parse_double(fields[c]));
    targets.push_back(parse_double(fields.back()));
  }
  return ReluDataset(th.d, std::move(inputs), std::move(targets),
                     std::move(teacher), th.seed);
}

void save_dataset(const std::filesystem::path& data_path,
                  const std::filesystem::path& teacher_path,
                  const ReluDataset& data) {
  std::ofstream d(data_path);
  if (!d) throw IoError("cannot open '" + data_path.string() + "' for writing");
  write_dataset(d, data);
  std::ofstream t(teacher_path);
  if (!t)
    throw IoError("cannot open '" + teacher_path.string() + "' for writing");
  write_teacher(t, data);
  if (!d || !t) throw IoError("write failed for '" + data_path.string() + "'");
}

ReluDataset load_dataset(const std::filesystem::path& data_path,
                         const std::filesystem::path& teacher_path) {
  std::ifstream d(data_path);
  if (!d) throw IoError("cannot open '" + data_path.string() + "'");
  std::ifstream t(teacher_path);
  if (!t) throw IoError("cannot open '" + teacher_path.string() + "'");
  return read_dataset(d, t);
}

}  // namespace concav
