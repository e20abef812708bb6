#include "latinpat/io.hpp"

#include <limits>
#include <sstream>

namespace latinpat {

namespace {

json pattern_list(const std::vector<Permutation>& v) {
  json out = json::array();
  for (const auto& p : v) out.push_back(to_json(p));
  return out;
}

std::vector<std::vector<int>> grid_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("'grid' must be an array of arrays");
  std::vector<std::vector<int>> grid;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument("'grid' rows must be arrays");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw std::invalid_argument("grid entries must be integers");
      r.push_back(v.get<int>());
    }
    grid.push_back(std::move(r));
  }
  return grid;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

bool looks_like_json(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string_view::npos && text[pos] == '{';
}

std::string joined(const std::vector<Permutation>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += v[i].compact();
  }
  return out;
}

}  // namespace

json bigint_to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return json(v.convert_to<std::uint64_t>());
  return json(v.str());
}

json to_json(const Permutation& p) { return p.compact(); }

json to_json(const LatinSquare& s) { return {{"order", s.order()}, {"grid", s.rows()}}; }

json to_json(const LatinRectangle& r) {
  return {{"rows", r.rows()}, {"cols", r.cols()}, {"alphabet_bound", r.alphabet_bound()}, {"grid", r.grid()}};
}

json to_json(const AvoidanceSpec& spec) {
  const auto c = spec.canonical();
  return {{"rows", pattern_list(c.rows)}, {"cols", pattern_list(c.cols)}, {"symbols", pattern_list(c.symbols)}};
}

json to_json(const CountResult& r, bool include_elapsed) {
  json j = {{"order", r.order},
            {"spec", to_json(r.spec)},
            {"count", bigint_to_json(r.count)},
            {"nodes_explored", r.nodes_explored}};
  if (include_elapsed) j["elapsed_ms"] = std::chrono::duration<double, std::milli>(r.elapsed).count();
  return j;
}

json to_json(const LambdaReport& r) {
  json j = {{"order", r.order}, {"lower_bound", r.lower_bound}, {"method", to_string(r.method)}};
  j["upper_bound"] = r.upper_bound ? json(*r.upper_bound) : json(nullptr);
  j["exact_value"] = r.exact_value ? json(*r.exact_value) : json(nullptr);
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return j;
}

json to_json(const WilfReport& r) {
  json patterns = json::array();
  for (std::size_t i = 0; i < r.patterns.size(); ++i) {
    patterns.push_back(
        {{"pattern", to_json(r.patterns[i])}, {"count", bigint_to_json(r.counts[i])}, {"class_id", r.class_id[i]}});
  }
  json classes = json::array();
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    const auto first = std::find(r.patterns.begin(), r.patterns.end(), r.classes[c].front()) - r.patterns.begin();
    classes.push_back({{"class_id", static_cast<int>(c)},
                       {"count", bigint_to_json(r.counts[static_cast<std::size_t>(first)])},
                       {"patterns", pattern_list(r.classes[c])}});
  }
  return {{"pattern_length", r.pattern_length},
          {"order", r.order},
          {"class_count", r.classes.size()},
          {"classes", classes},
          {"patterns", patterns}};
}

json to_json(const FullLengthReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"pattern", to_json(c.pattern)},
                      {"column_avoiders", bigint_to_json(c.column_avoiders)},
                      {"predicted_column_avoiders", bigint_to_json(c.predicted_column_avoiders)},
                      {"line_avoiders", bigint_to_json(c.line_avoiders)},
                      {"predicted_line_avoiders", bigint_to_json(c.predicted_line_avoiders)},
                      {"ok", c.ok}});
  }
  json j = {{"order", r.order}, {"total", bigint_to_json(r.total)}, {"checks", checks}, {"ok", r.ok}};
  j["relabel_bijection_ok"] = r.relabel_bijection_ok ? json(*r.relabel_bijection_ok) : json(nullptr);
  return j;
}

json to_json(const ExhaustiveCheck& c) {
  return {{"check", c.name}, {"order", c.order}, {"cases", c.cases}, {"violations", c.violations}, {"ok", c.ok()}};
}

json to_json(const RectWitness& w) { return {{"rows", w.rows}, {"cols", w.cols}}; }

LatinSquare square_from_json(const json& j) {
  if (!j.is_object() || !j.contains("grid")) throw std::invalid_argument("square JSON needs a 'grid' field");
  LatinSquare s(grid_from_json(j.at("grid")));
  if (j.contains("order") && j.at("order") != s.order()) {
    throw std::invalid_argument("'order' does not match the grid size");
  }
  return s;
}

LatinRectangle rectangle_from_json(const json& j) {
  if (!j.is_object() || !j.contains("grid")) throw std::invalid_argument("rectangle JSON needs a 'grid' field");
  const int bound = j.value("alphabet_bound", 0);
  LatinRectangle r(grid_from_json(j.at("grid")), bound);
  if ((j.contains("rows") && j.at("rows") != r.rows()) || (j.contains("cols") && j.at("cols") != r.cols())) {
    throw std::invalid_argument("'rows'/'cols' do not match the grid");
  }
  return r;
}

BigInt bigint_from_json(const json& j) {
  if (j.is_number_unsigned() || j.is_number_integer()) return BigInt(j.get<std::uint64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a decimal string");
}

AvoidanceSpec spec_from_json(const json& j) {
  auto list = [&](const char* field) {
    std::vector<Permutation> out;
    for (const auto& p : j.value(field, json::array())) out.push_back(Permutation::parse(p.get<std::string>()));
    return out;
  };
  return {list("rows"), list("cols"), list("symbols")};
}

CountResult count_result_from_json(const json& j) {
  CountResult r;
  r.order = j.at("order").get<int>();
  r.spec = spec_from_json(j.at("spec"));
  r.count = bigint_from_json(j.at("count"));
  r.nodes_explored = j.at("nodes_explored").get<std::uint64_t>();
  return r;
}

LambdaReport lambda_report_from_json(const json& j) {
  LambdaReport r;
  r.order = j.at("order").get<int>();
  r.lower_bound = j.at("lower_bound").get<int>();
  if (!j.at("upper_bound").is_null()) r.upper_bound = j.at("upper_bound").get<int>();
  if (!j.at("exact_value").is_null()) r.exact_value = j.at("exact_value").get<int>();
  if (!j.at("witness").is_null()) r.witness = square_from_json(j.at("witness"));
  const auto method = j.at("method").get<std::string>();
  if (method == "exhaustive") {
    r.method = LambdaMethod::exhaustive;
  } else if (method == "witness-capped") {
    r.method = LambdaMethod::witness_capped;
  } else {
    r.method = LambdaMethod::bound_only;
  }
  return r;
}

WilfReport wilf_report_from_json(const json& j) {
  WilfReport r;
  r.pattern_length = j.at("pattern_length").get<int>();
  r.order = j.at("order").get<int>();
  for (const auto& row : j.at("patterns")) {
    r.patterns.push_back(Permutation::parse(row.at("pattern").get<std::string>()));
    r.counts.push_back(bigint_from_json(row.at("count")));
    r.class_id.push_back(row.at("class_id").get<int>());
  }
  for (const auto& c : j.at("classes")) {
    std::vector<Permutation> members;
    for (const auto& p : c.at("patterns")) members.push_back(Permutation::parse(p.get<std::string>()));
    r.classes.push_back(std::move(members));
  }
  return r;
}

LatinSquare read_square(std::string_view text) {
  if (looks_like_json(text)) return square_from_json(parse_json(text));
  return parse_square(text);
}

LatinRectangle read_rectangle(std::string_view text) {
  if (looks_like_json(text)) return rectangle_from_json(parse_json(text));
  return parse_rectangle(text);
}

std::string wilf_csv(const WilfReport& r) {
  std::ostringstream out;
  out << "pattern,count,class_id\n";
  for (std::size_t i = 0; i < r.patterns.size(); ++i) {
    out << r.patterns[i].compact() << ',' << r.counts[i] << ',' << r.class_id[i] << '\n';
  }
  return out.str();
}

std::string count_csv(const CountResult& r) {
  const auto c = r.spec.canonical();
  std::ostringstream out;
  out << "order,rows,cols,symbols,count,nodes_explored\n";
  out << r.order << ',' << joined(c.rows) << ',' << joined(c.cols) << ',' << joined(c.symbols) << ',' << r.count
      << ',' << r.nodes_explored << '\n';
  return out.str();
}

std::string lambda_csv(const LambdaReport& r) {
  std::ostringstream out;
  out << "order,lower_bound,upper_bound,exact_value,method\n";
  out << r.order << ',' << r.lower_bound << ',' << (r.upper_bound ? std::to_string(*r.upper_bound) : "") << ','
      << (r.exact_value ? std::to_string(*r.exact_value) : "") << ',' << to_string(r.method) << '\n';
  return out.str();
}

}  // namespace latinpat
