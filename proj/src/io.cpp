#include "dphist/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace dphist {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool looks_numeric(const std::string& token) {
  if (token.empty()) return false;
  size_t i = (token[0] == '-' || token[0] == '+') ? 1 : 0;
  bool digit = false;
  for (; i < token.size(); ++i) {
    char c = token[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != '.' && c != 'e' && c != 'E' && c != '-' && c != '+') {
      return false;
    }
  }
  return digit;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  return out;
}

long parse_long(const std::string& token, long line_no) {
  try {
    size_t pos = 0;
    long v = std::stol(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected integer, got '" + token + "'", line_no);
  }
}

double parse_double(const std::string& token, long line_no) {
  try {
    size_t pos = 0;
    double v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected number, got '" + token + "'", line_no);
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

Histogram read_histogram_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<Count> counts;
  std::string line;
  long line_no = 0;
  bool first_record = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) continue;
    std::vector<std::string> fields = split_csv(t);
    if (first_record && !looks_numeric(fields[0])) {
      first_record = false;  // header
      continue;
    }
    first_record = false;
    if (fields.size() == 1) {
      counts.push_back(parse_long(fields[0], line_no));
    } else if (fields.size() == 2) {
      long index = parse_long(fields[0], line_no);
      if (index < 1) throw ParseError("bucket index must be >= 1", line_no);
      if (static_cast<size_t>(index) > counts.size()) counts.resize(index, 0);
      counts[index - 1] = parse_long(fields[1], line_no);
    } else {
      throw ParseError("expected 1 or 2 fields", line_no);
    }
  }
  if (counts.empty()) throw ParseError("no records found", line_no);
  return Histogram(std::move(counts));
}

void write_histogram_csv(const std::string& path, const Histogram& h) {
  std::ofstream out = open_out(path);
  out << "index,count\n";
  for (long i = 0; i < h.size(); ++i) out << (i + 1) << ',' << h.counts()[i] << '\n';
}

void write_release(const std::string& path, const ReleaseFile& release) {
  const NoisyVector& nv = release.data;
  {
    std::ofstream out = open_out(path);
    out.precision(17);
    if (nv.layout.has_value()) {
      out << "node_id,level,offset,value\n";
      const TreeLayout& layout = *nv.layout;
      for (long v = 0; v < layout.total_nodes(); ++v) {
        out << v << ',' << layout.depth(v) << ',' << layout.level_offset(v) << ','
            << nv.values[v] << '\n';
      }
    } else {
      out << "index,value\n";
      for (size_t i = 0; i < nv.values.size(); ++i) {
        out << (i + 1) << ',' << nv.values[i] << '\n';
      }
    }
  }
  nlohmann::json meta;
  meta["strategy"] = nv.strategy.name();
  meta["epsilon"] = nv.epsilon;
  meta["sensitivity"] = nv.sensitivity;
  meta["inferred"] = release.inferred;
  meta["n"] = nv.values.size();
  if (nv.layout.has_value()) {
    meta["k"] = nv.layout->branching();
    meta["height"] = nv.layout->height();
    meta["n_leaves"] = nv.layout->n_leaves();
  }
  open_out(path + ".meta.json") << meta.dump(2) << '\n';
}

ReleaseFile read_release(const std::string& path) {
  nlohmann::json meta;
  try {
    open_in(path + ".meta.json") >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("bad sidecar for " + path + ": " + e.what());
  }

  ReleaseFile release;
  NoisyVector& nv = release.data;
  std::string strategy = meta.at("strategy").get<std::string>();
  int k = meta.value("k", 0);
  nv.strategy = Strategy::from_name(strategy, k);
  nv.epsilon = meta.at("epsilon").get<double>();
  nv.sensitivity = meta.at("sensitivity").get<double>();
  release.inferred = meta.value("inferred", false);
  if (nv.strategy.kind == StrategyKind::Hierarchical) {
    nv.layout = TreeLayout(k, meta.at("height").get<int>());
  }

  std::ifstream in = open_in(path);
  std::string line;
  long line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) continue;
    std::vector<std::string> fields = split_csv(t);
    if (line_no == 1 && !looks_numeric(fields[0])) continue;
    values.push_back(parse_double(fields.back(), line_no));
  }
  size_t expected = meta.at("n").get<size_t>();
  if (values.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " values, found " +
                         std::to_string(values.size()),
                     line_no);
  }
  nv.values = std::move(values);
  return release;
}

void write_ledger(const std::string& path, const BudgetLedger& ledger) {
  nlohmann::json j;
  j["entries"] = nlohmann::json::array();
  for (const BudgetLedger::Entry& e : ledger.entries) {
    j["entries"].push_back({{"label", e.label}, {"epsilon", e.epsilon}});
  }
  j["total"] = ledger.total();
  open_out(path) << j.dump(2) << '\n';
}

BudgetLedger read_ledger(const std::string& path) {
  std::ifstream in(path);
  BudgetLedger ledger;
  if (!in) return ledger;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("bad ledger " + path + ": " + e.what());
  }
  for (const auto& e : j.at("entries")) {
    ledger.add(e.at("label").get<std::string>(), e.at("epsilon").get<double>());
  }
  return ledger;
}

}  // namespace dphist
