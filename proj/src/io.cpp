#include "hpt/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace hpt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<double> parse_number(const std::string& s) {
  if (s == "inf" || s == "+inf" || s == "Infinity") return kInf;
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (pos != s.size() || std::isnan(v)) return std::nullopt;
  return v;
}

std::string format_number(double v) {
  if (v == kInf) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// The point whose off-diagonal entries are all infinite, if exactly one.
std::optional<std::size_t> detect_omega(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  if (n < 2) return std::nullopt;
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < n; ++i) {
    bool all = true;
    for (std::size_t j = 0; j < n && all; ++j) {
      if (j != i && (rows[i][j] != kInf || rows[j][i] != kInf)) all = false;
    }
    if (all) {
      if (found) return std::nullopt;
      found = i;
    }
  }
  return found;
}

double matrix_entry(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    if (auto x = parse_number(v.get<std::string>())) return *x;
  }
  throw Error("matrix entry is not a number: " + v.dump());
}

}  // namespace

ExtendedMetricSpace read_csv(std::istream& in) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> first;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);
    std::vector<double> row;
    bool numeric = true;
    for (const auto& c : cells) {
      auto v = parse_number(c);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (rows.empty() && labels.empty()) {
        labels = cells;
        continue;
      }
      throw Error("csv line " + std::to_string(line_no) + ": not a number");
    }
    if (rows.empty() && labels.empty()) first = cells;
    rows.push_back(std::move(row));
  }
  // Numeric labels: n + 1 lines of which the last n form a square.
  if (labels.empty() && rows.size() > 1 && rows[0].size() + 1 == rows.size() && rows[1].size() == rows[0].size()) {
    labels = first;
    rows.erase(rows.begin());
  }
  if (rows.empty()) throw Error("csv: empty matrix");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error("csv: row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                  " entries, expected " + std::to_string(rows.size()));
    }
  }
  return ExtendedMetricSpace::from_rows(rows, labels, detect_omega(rows));
}

ExtendedMetricSpace parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_csv(in);
}

std::string write_csv(const ExtendedMetricSpace& space) {
  std::string out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (i) out += ',';
    out += space.label(i);
  }
  out += '\n';
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = 0; j < space.size(); ++j) {
      if (j) out += ',';
      const Distance d = space.at(i, j);
      out += d.is_infinite() ? "inf" : format_number(d.value());
    }
    out += '\n';
  }
  return out;
}

nlohmann::json to_descriptor(const ExtendedMetricSpace& space) {
  nlohmann::json matrix = nlohmann::json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < space.size(); ++j) {
      const Distance d = space.at(i, j);
      if (d.is_infinite()) {
        row.push_back("inf");
      } else {
        row.push_back(d.value());
      }
    }
    matrix.push_back(std::move(row));
  }
  return {{"labels", space.labels()},
          {"matrix", std::move(matrix)},
          {"omega", space.omega() ? nlohmann::json(*space.omega()) : nlohmann::json(nullptr)}};
}

ExtendedMetricSpace from_descriptor(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("space descriptor must be a JSON object");
  if (j.contains("generator")) {
    const auto& g = j.at("generator");
    GeneratorSpec spec;
    spec.kind = g.at("kind").get<std::string>();
    spec.seed = g.value("seed", std::uint64_t{0});
    if (g.contains("params")) {
      for (const auto& [key, value] : g.at("params").items()) {
        spec.params[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
    return generate(spec);
  }
  if (!j.contains("matrix")) throw Error("space descriptor needs 'matrix' or 'generator'");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j.at("matrix")) {
    std::vector<double> row;
    for (const auto& v : r) row.push_back(matrix_entry(v));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  std::optional<std::size_t> omega;
  if (j.contains("omega") && !j.at("omega").is_null()) omega = j.at("omega").get<std::size_t>();
  return ExtendedMetricSpace::from_rows(rows, labels, omega);
}

nlohmann::json to_json(const GeneratorSpec& spec) {
  return {{"kind", spec.kind}, {"params", spec.params}, {"seed", spec.seed}};
}

nlohmann::json cone_to_json(const ConeSpace& cone) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : cone.points()) points.push_back({p.base, p.height});
  return {{"base_space", to_descriptor(cone.base())},
          {"points", std::move(points)},
          {"o", {cone.z0(), 1.0}}};
}

ConeSpace cone_from_json(const nlohmann::json& j) {
  ExtendedMetricSpace base = from_descriptor(j.at("base_space"));
  std::vector<ConePoint> points;
  for (const auto& p : j.at("points")) {
    points.push_back({p.at(0).get<std::size_t>(), p.at(1).get<double>()});
  }
  const auto& o = j.at("o");
  if (o.at(1).get<double>() != 1.0) throw Error("cone base point must have height 1");
  return ConeSpace(std::move(base), std::move(points), o.at(0).get<std::size_t>());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error("write to '" + path + "' failed");
}

ExtendedMetricSpace load_space_file(const std::string& path) {
  const std::string text = read_file(path);
  const std::string head = trim(text);
  if (!head.empty() && head.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(path + ": " + e.what());
    }
    try {
      return from_descriptor(j);
    } catch (const nlohmann::json::exception& e) {
      throw Error(path + ": " + e.what());
    }
  }
  return parse_csv(text);
}

std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hpt
