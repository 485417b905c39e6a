#include "sparseuot/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace sparseuot {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool parse_double(const std::string& token, double& value) {
  try {
    std::size_t pos = 0;
    value = std::stod(token, &pos);
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    return pos == token.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

Eigen::MatrixXd read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    std::vector<double> row;
    row.reserve(fields.size());
    bool ok = true;
    for (const auto& f : fields) {
      double v = 0.0;
      if (!parse_double(f, v)) {
        ok = false;
        break;
      }
      row.push_back(v);
    }
    if (!ok) {
      if (header_allowed) {
        header_allowed = false;
        continue;  // single header line tolerated
      }
      throw InputError(path + ": parse error at line " + std::to_string(line_no));
    }
    header_allowed = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError(path + ": inconsistent column count at line " +
                       std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(path + ": no numeric rows");

  Eigen::MatrixXd mat(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return mat;
}

PointCloud read_point_cloud(const std::string& path) {
  return PointCloud(read_csv_matrix(path));
}

Eigen::VectorXd read_weights(const std::string& path, int expected) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    double v = 0.0;
    if (!parse_double(line, v)) {
      throw InputError(path + ": parse error at line " + std::to_string(line_no));
    }
    values.push_back(v);
  }
  if (static_cast<int>(values.size()) != expected) {
    throw InputError(path + ": expected " + std::to_string(expected) +
                     " weights, found " + std::to_string(values.size()));
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), expected);
}

Eigen::VectorXd uniform_weights(int n) {
  if (n < 1) throw InputError("uniform_weights: n must be positive");
  return Eigen::VectorXd::Constant(n, 1.0 / n);
}

void write_plan_coo(const std::string& path, const SparsePlan& plan, double tol) {
  std::string out = "i,j,value\n";
  const auto& el = plan.support.elements();
  char buf[64];
  for (int k = 0; k < plan.support.size(); ++k) {
    if (plan.values(k) <= tol) continue;
    std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", el[k].first, el[k].second,
                  plan.values(k));
    out += buf;
  }
  write_text_file(path, out);
}

SparsePlan read_plan_coo(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::vector<std::pair<int, int>> elements;
  std::vector<double> raw_values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    if (line_no == 1 && line == "i,j,value") continue;
    const auto fields = split_commas(line);
    double i = 0.0, j = 0.0, v = 0.0;
    if (fields.size() != 3 || !parse_double(fields[0], i) ||
        !parse_double(fields[1], j) || !parse_double(fields[2], v)) {
      throw InputError(path + ": parse error at line " + std::to_string(line_no));
    }
    elements.emplace_back(static_cast<int>(i), static_cast<int>(j));
    raw_values.push_back(v);
  }
  SupportSet support(elements);  // throws on duplicates
  Eigen::VectorXd values = Eigen::VectorXd::Zero(support.size());
  for (std::size_t r = 0; r < raw_values.size(); ++r) {
    values(support.index_of(elements[r].first, elements[r].second)) = raw_values[r];
  }
  return SparsePlan(std::move(support), std::move(values));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
  if (!out) throw InputError("write failed: " + path);
}

}  // namespace sparseuot
