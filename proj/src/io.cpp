#include "tempinf/io.hpp"

#include <zlib.h>

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

namespace tempinf {

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string read_text_file(const std::string& path) {
  gzFile file = gzopen(path.c_str(), "rb");
  if (file == nullptr) {
    throw Error(ErrorKind::Io, "cannot open " + path);
  }
  std::string content;
  char buffer[1 << 16];
  int n = 0;
  while ((n = gzread(file, buffer, sizeof(buffer))) > 0) {
    content.append(buffer, static_cast<std::size_t>(n));
  }
  const bool failed = n < 0;
  gzclose(file);
  if (failed) {
    throw Error(ErrorKind::Io, "read failure on " + path);
  }
  return content;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::Io, "cannot write " + path);
  }
  out << content;
  if (!out) {
    throw Error(ErrorKind::Io, "write failure on " + path);
  }
}

MatrixBundle bundle_of(const InfluenceMatrix& m) {
  return {m.values, m.node_ids, m.t0, m.n_i};
}

MatrixBundle bundle_of(const AlignedInfluenceMatrix& m) {
  return {m.values, m.node_ids, m.t0, m.n_i};
}

void write_matrix_csv(const std::string& path, const MatrixBundle& bundle,
                      const std::string& fingerprint) {
  const Eigen::Index n = bundle.values.rows();
  const Eigen::Index t = bundle.values.cols();

  std::string out = "# config_fingerprint=" + fingerprint + "\n";
  out += "node,t0,n_i";
  for (Eigen::Index j = 0; j < t; ++j) out += ",v" + std::to_string(j + 1);
  out += "\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    out += std::to_string(bundle.node_ids[ii]);
    out += ",";
    out += std::to_string(bundle.t0[ii]);
    out += ",";
    out += std::to_string(bundle.n_i[ii]);
    for (Eigen::Index j = 0; j < t; ++j) {
      out += ",";
      out += format_double(bundle.values(i, j));
    }
    out += "\n";
  }
  write_text_file(path, out);
}

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double_field(std::string_view field, const std::string& path) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorKind::Io, "bad numeric field in " + path);
  }
  return value;
}

std::int64_t parse_int_field(std::string_view field, const std::string& path) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorKind::Io, "bad integer field in " + path);
  }
  return value;
}

// Non-comment, non-empty lines of a CSV payload.
std::vector<std::string_view> data_lines(const std::string& content) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    std::string_view line(content.data() + start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

}  // namespace

MatrixBundle read_matrix_csv(const std::string& path) {
  const std::string content = read_text_file(path);
  std::vector<std::string_view> lines = data_lines(content);
  if (lines.size() < 2) {
    throw Error(ErrorKind::Io, "matrix CSV " + path + " has no data rows");
  }
  const std::size_t columns = split_csv(lines.front()).size();
  if (columns < 4) {
    throw Error(ErrorKind::Io, "matrix CSV " + path + " needs node,t0,n_i,v... columns");
  }
  const auto t = static_cast<Eigen::Index>(columns - 3);
  const auto n = static_cast<Eigen::Index>(lines.size() - 1);

  MatrixBundle bundle;
  bundle.values.resize(n, t);
  bundle.node_ids.resize(static_cast<std::size_t>(n));
  bundle.t0.resize(static_cast<std::size_t>(n));
  bundle.n_i.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto fields = split_csv(lines[static_cast<std::size_t>(i) + 1]);
    if (fields.size() != columns) {
      throw Error(ErrorKind::Io, "ragged row in " + path);
    }
    const auto ii = static_cast<std::size_t>(i);
    bundle.node_ids[ii] = parse_int_field(fields[0], path);
    bundle.t0[ii] = static_cast<int>(parse_int_field(fields[1], path));
    bundle.n_i[ii] = parse_int_field(fields[2], path);
    for (Eigen::Index j = 0; j < t; ++j) {
      bundle.values(i, j) = parse_double_field(fields[static_cast<std::size_t>(j) + 3], path);
    }
  }
  return bundle;
}

namespace {

constexpr char kBinaryMagic[8] = {'T', 'I', 'N', 'F', 'M', 'A', 'T', '1'};

void put_u64_le(std::string& out, std::uint64_t value) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((value >> (8 * b)) & 0xff));
}

std::uint64_t get_u64_le(const char* data) {
  std::uint64_t value = 0;
  for (int b = 0; b < 8; ++b) {
    value |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[b])) << (8 * b);
  }
  return value;
}

}  // namespace

void write_matrix_binary(const std::string& path, const Eigen::MatrixXd& values) {
  std::string out;
  out.reserve(24 + static_cast<std::size_t>(values.size()) * 8);
  out.append(kBinaryMagic, sizeof(kBinaryMagic));
  put_u64_le(out, static_cast<std::uint64_t>(values.rows()));
  put_u64_le(out, static_cast<std::uint64_t>(values.cols()));
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      std::uint64_t bits = 0;
      const double v = values(i, j);
      std::memcpy(&bits, &v, sizeof(bits));
      put_u64_le(out, bits);
    }
  }
  write_text_file(path, out);
}

MatrixBundle read_matrix_binary(const std::string& path) {
  const std::string content = read_text_file(path);
  if (content.size() < 24 || std::memcmp(content.data(), kBinaryMagic, 8) != 0) {
    throw Error(ErrorKind::Io, path + " is not a matrix dump");
  }
  const std::uint64_t rows = get_u64_le(content.data() + 8);
  const std::uint64_t cols = get_u64_le(content.data() + 16);
  if (content.size() != 24 + rows * cols * 8) {
    throw Error(ErrorKind::Io, path + " has a truncated matrix payload");
  }

  MatrixBundle bundle;
  bundle.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  const char* cursor = content.data() + 24;
  for (std::uint64_t i = 0; i < rows; ++i) {
    for (std::uint64_t j = 0; j < cols; ++j) {
      const std::uint64_t bits = get_u64_le(cursor);
      cursor += 8;
      double v = 0.0;
      std::memcpy(&v, &bits, sizeof(v));
      bundle.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  bundle.node_ids.resize(rows);
  for (std::uint64_t i = 0; i < rows; ++i) bundle.node_ids[i] = static_cast<NodeId>(i);
  bundle.t0.assign(rows, 1);
  bundle.n_i.assign(rows, static_cast<std::int64_t>(rows));
  return bundle;
}

MatrixBundle read_matrix_auto(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0) {
    return read_matrix_binary(path);
  }
  return read_matrix_csv(path);
}

void write_h_csv(const std::string& path, const FactorPair& pair,
                 const std::string& fingerprint) {
  std::string out = "# config_fingerprint=" + fingerprint + "\n";
  out += "t";
  for (int r = 0; r < pair.k; ++r) out += ",role_" + std::to_string(r + 1);
  out += "\n";
  for (Eigen::Index j = 0; j < pair.h.cols(); ++j) {
    out += std::to_string(j + 1);
    for (Eigen::Index r = 0; r < pair.h.rows(); ++r) {
      out += ",";
      out += format_double(pair.h(r, j));
    }
    out += "\n";
  }
  write_text_file(path, out);
}

Eigen::MatrixXd read_h_csv(const std::string& path) {
  const std::string content = read_text_file(path);
  std::vector<std::string_view> lines = data_lines(content);
  if (lines.size() < 2) {
    throw Error(ErrorKind::Io, "pattern CSV " + path + " has no data rows");
  }
  const std::size_t columns = split_csv(lines.front()).size();
  if (columns < 2) {
    throw Error(ErrorKind::Io, "pattern CSV " + path + " needs t,role columns");
  }
  const auto k = static_cast<Eigen::Index>(columns - 1);
  const auto t = static_cast<Eigen::Index>(lines.size() - 1);

  Eigen::MatrixXd h(k, t);
  for (Eigen::Index j = 0; j < t; ++j) {
    const auto fields = split_csv(lines[static_cast<std::size_t>(j) + 1]);
    if (fields.size() != columns) {
      throw Error(ErrorKind::Io, "ragged row in " + path);
    }
    for (Eigen::Index r = 0; r < k; ++r) {
      h(r, j) = parse_double_field(fields[static_cast<std::size_t>(r) + 1], path);
    }
  }
  return h;
}

nlohmann::json factor_to_json(const FactorPair& pair) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < pair.h.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < pair.h.cols(); ++j) row.push_back(pair.h(r, j));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"k", pair.k},
                        {"T", pair.h.cols()},
                        {"rows", std::move(rows)},
                        {"residual", pair.relative_residual},
                        {"iterations", pair.iterations},
                        {"converged", pair.converged}};
}

nlohmann::json uniqueness_to_json(const UniquenessReport& report) {
  nlohmann::json summary = nlohmann::json::array();
  for (const RhoSummary& s : report.summary) {
    summary.push_back({{"rho", s.rho},
                       {"l1_mean", s.l1_mean},
                       {"l2_mean", s.l2_mean},
                       {"cosine_mean", s.cosine_mean},
                       {"pass_l1", s.pass_l1},
                       {"pass_l2", s.pass_l2},
                       {"pass_cosine", s.pass_cosine}});
  }
  nlohmann::json trials = nlohmann::json::array();
  for (const SubsetTrial& trial : report.trials) {
    trials.push_back({{"rho", trial.rho},
                      {"trial", trial.trial_index},
                      {"seed", trial.seed},
                      {"rows", trial.row_ids},
                      {"l1", trial.distance.l1_normalized},
                      {"l2", trial.distance.l2_normalized},
                      {"cosine", trial.distance.cosine}});
  }
  return nlohmann::json{
      {"rhos", report.rhos},
      {"summary", std::move(summary)},
      {"trials", std::move(trials)},
      {"thresholds",
       {{"cosine_min", report.thresholds.cosine_min},
        {"l1_max", report.thresholds.l1_max},
        {"l2_max", report.thresholds.l2_max}}}};
}

void write_uniqueness_csv(const std::string& path, const std::string& network,
                          const UniquenessReport& report, const std::string& fingerprint) {
  std::string out = "# config_fingerprint=" + fingerprint + "\n";
  out += "network";
  for (const char* measure : {"l1", "l2", "cosine"}) {
    for (const RhoSummary& s : report.summary) {
      out += std::string(",") + measure + "_rho" + std::to_string(s.rho);
    }
  }
  out += "\n" + network;
  for (const RhoSummary& s : report.summary) out += "," + format_double(s.l1_mean);
  for (const RhoSummary& s : report.summary) out += "," + format_double(s.l2_mean);
  for (const RhoSummary& s : report.summary) out += "," + format_double(s.cosine_mean);
  out += "\n";
  write_text_file(path, out);
}

void write_similarity_csv(const std::string& path, const SimilarityMatrix& matrix,
                          const std::string& fingerprint) {
  std::string out = "# config_fingerprint=" + fingerprint + "\n";
  out += "label";
  for (const std::string& label : matrix.labels) out += "," + label;
  out += "\n";
  for (Eigen::Index i = 0; i < matrix.values.rows(); ++i) {
    out += matrix.labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < matrix.values.cols(); ++j) {
      out += "," + format_double(matrix.values(i, j));
    }
    out += "\n";
  }
  write_text_file(path, out);
}

}  // namespace tempinf
