#include "fiberlab/ringspec.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "fiberlab/errors.hpp"

namespace fiberlab {

namespace {

struct Item {
  std::string text;
  int col;  // 1-based column of the first character
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

Item trim(const std::string& s, int first_col) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return {s.substr(b, e - b), first_col + static_cast<int>(b)};
}

/// Comma-separated items at parenthesis depth 0.
std::vector<Item> split_list(const Item& value, int line) {
  std::vector<Item> out;
  int depth = 0;
  std::size_t start = 0;
  const std::string& s = value.text;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '(') ++depth;
    if (i < s.size() && s[i] == ')') --depth;
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      Item it = trim(s.substr(start, i - start), value.col + static_cast<int>(start));
      if (it.text.empty()) throw ParseError("empty list entry", line, it.col);
      out.push_back(it);
      start = i + 1;
    }
  }
  return out;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

FieldSpec parse_field(const Item& v, int line) {
  if (v.text == "Q") return FieldSpec::rationals();
  if (v.text.size() > 5 && v.text.compare(0, 3, "Q((") == 0 && v.text.compare(v.text.size() - 2, 2, "))") == 0) {
    std::string tag = v.text.substr(3, v.text.size() - 5);
    if (!valid_identifier(tag)) throw ParseError("invalid fraction-field variable '" + tag + "'", line, v.col + 3);
    return FieldSpec::fraction_field(tag);
  }
  if (v.text.size() > 4 && v.text.compare(0, 3, "Fp(") == 0 && v.text.back() == ')') {
    std::string digits = v.text.substr(3, v.text.size() - 4);
    if (!digits.empty() && digits.size() < 18 &&
        std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      std::int64_t p = std::stoll(digits);
      if (!is_prime(p)) throw ParseError("Fp(" + digits + "): not a prime", line, v.col + 3);
      return FieldSpec::prime(p);
    }
  }
  throw ParseError("field must be Q, Fp(p) or Q((T)), got '" + v.text + "'", line, v.col);
}

}  // namespace

RingPresentation parse_ringspec(const std::string& text, const std::map<std::string, Scalar>& params) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::set<std::string> seen;
  std::string name;
  std::optional<FieldSpec> field;
  std::vector<std::string> vars, cone;
  std::vector<std::pair<Item, int>> polys;
  std::map<std::string, bool> declared;
  int vars_line = 0;

  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string body = raw.substr(0, raw.find('#'));
    Item whole = trim(body, 1);
    if (whole.text.empty()) continue;
    auto colon = body.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", line, whole.col);
    Item key = trim(body.substr(0, colon), 1);
    Item value = trim(body.substr(colon + 1), static_cast<int>(colon) + 2);
    static const std::set<std::string> keys = {"name", "field", "vars", "ideal", "cone_vars", "flags"};
    if (!keys.count(key.text)) throw ParseError("unknown key '" + key.text + "'", line, key.col);
    if (key.text != "ideal" && !seen.insert(key.text).second)
      throw ParseError("duplicate key '" + key.text + "'", line, key.col);

    if (key.text == "name") {
      if (value.text.empty()) throw ParseError("empty name", line, value.col);
      name = value.text;
    } else if (key.text == "field") {
      field = parse_field(value, line);
    } else if (key.text == "vars" || key.text == "cone_vars") {
      auto& out = key.text == "vars" ? vars : cone;
      if (key.text == "vars") vars_line = line;
      if (value.text.empty()) continue;
      for (const auto& it : split_list(value, line)) {
        if (!valid_identifier(it.text)) throw ParseError("invalid variable name '" + it.text + "'", line, it.col);
        if (std::find(vars.begin(), vars.end(), it.text) != vars.end() ||
            std::find(cone.begin(), cone.end(), it.text) != cone.end())
          throw ParseError("variable '" + it.text + "' declared twice", line, it.col);
        if (params.count(it.text)) throw ParseError("variable '" + it.text + "' shadows a parameter", line, it.col);
        out.push_back(it.text);
      }
    } else if (key.text == "ideal") {
      if (value.text.empty()) continue;
      for (const auto& it : split_list(value, line)) polys.emplace_back(it, line);
    } else if (key.text == "flags") {
      if (value.text.empty()) continue;
      for (const auto& it : split_list(value, line)) {
        auto eq = it.text.find('=');
        if (eq == std::string::npos) throw ParseError("expected flag=true|false", line, it.col);
        Item f = trim(it.text.substr(0, eq), it.col);
        Item v = trim(it.text.substr(eq + 1), it.col + static_cast<int>(eq) + 1);
        const auto& allowed = declarable_flags();
        if (std::find(allowed.begin(), allowed.end(), f.text) == allowed.end())
          throw ParseError("unknown flag '" + f.text + "'", line, f.col);
        if (v.text != "true" && v.text != "false") throw ParseError("flag value must be true or false", line, v.col);
        if (declared.count(f.text)) throw ParseError("flag '" + f.text + "' given twice", line, f.col);
        declared[f.text] = v.text == "true";
      }
    }
  }
  if (name.empty()) throw ParseError("missing 'name'", line + 1, 1);
  if (!seen.count("vars")) throw ParseError("missing 'vars'", line + 1, 1);
  if (vars.empty() && !polys.empty()) throw ParseError("ideal given over no variables", vars_line, 1);
  auto ring = make_ring(field.value_or(FieldSpec::rationals()), vars);
  std::vector<Poly> gens;
  for (const auto& [it, ln] : polys) gens.push_back(parse_poly(it.text, ring, params, ln, it.col - 1));
  return RingPresentation{name, IdealSpec(ring, std::move(gens)), cone, declared};
}

RingPresentation load_ringspec(const std::string& path, const std::map<std::string, Scalar>& params) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path, 0, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ringspec(ss.str(), params);
}

}  // namespace fiberlab
