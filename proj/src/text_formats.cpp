#include "hhlab/text_formats.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "hhlab/errors.hpp"

namespace hhlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

// Splits "key: value"; returns false when there is no colon.
bool split_key(const std::string& line, std::string& key, std::string& value) {
  auto pos = line.find(':');
  if (pos == std::string::npos) return false;
  key = trim(line.substr(0, pos));
  value = trim(line.substr(pos + 1));
  return true;
}

bool is_arrow_line(const std::string& value) { return value.find("->") != std::string::npos; }

}  // namespace

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

Path parse_path(const Quiver& q, const std::string& text) {
  std::string s = trim(text);
  if (s.size() > 3 && s.rfind("e[", 0) == 0 && s.back() == ']') {
    auto v = q.find_vertex(s.substr(2, s.size() - 3));
    if (!v) throw ParseError("unknown vertex in '" + s + "'");
    return Path::trivial(*v);
  }
  std::vector<ArrowId> ids;
  for (const auto& label : split_list(s, '.')) {
    auto a = q.find_arrow(label);
    if (!a) throw ParseError("unknown arrow '" + label + "' in '" + s + "'");
    ids.push_back(*a);
  }
  if (ids.empty()) throw ParseError("empty path");
  return Path::of_arrows(q, ids);
}

LinCombo parse_lincombo(const Quiver& q, const FieldSpec& f, const std::string& text) {
  std::vector<std::pair<bool, std::string>> terms;  // (negated, body)
  std::string cur;
  bool neg = false;
  int depth = 0;
  auto flush = [&]() {
    std::string t = trim(cur);
    if (!t.empty()) terms.emplace_back(neg, t);
    cur.clear();
  };
  for (std::size_t k = 0; k < text.size(); ++k) {
    char c = text[k];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if ((c == '+' || c == '-') && depth == 0) {
      bool leading = trim(cur).empty();
      bool after_op = !leading && (trim(cur).back() == '*' || trim(cur).back() == '/' || trim(cur).back() == '^');
      if (after_op) {
        cur += c;
        continue;
      }
      if (leading) {
        if (c == '-') neg = !neg;
        continue;
      }
      flush();
      neg = c == '-';
      continue;
    }
    cur += c;
  }
  flush();
  if (terms.empty()) throw ParseError("empty linear combination");
  LinCombo out;
  for (const auto& [negated, body] : terms) {
    std::size_t star = std::string::npos;
    depth = 0;
    for (std::size_t k = 0; k < body.size(); ++k) {
      if (body[k] == '(' || body[k] == '[') ++depth;
      if (body[k] == ')' || body[k] == ']') --depth;
      if (body[k] == '*' && depth == 0) star = k;
    }
    Scalar c = Scalar::one(f);
    std::string path_text = body;
    if (star != std::string::npos) {
      c = Scalar::parse(f, body.substr(0, star));
      path_text = body.substr(star + 1);
    }
    if (negated) c = -c;
    out.add(parse_path(q, path_text), c);
  }
  return out;
}

std::string write_quiver(const Quiver& q) {
  std::ostringstream out;
  for (const auto& v : q.vertices()) out << "vertex: " << v << "\n";
  for (const auto& a : q.arrows())
    out << a.label << ": " << q.vertex_label(a.src) << " -> " << q.vertex_label(a.tgt) << "\n";
  return out.str();
}

Quiver parse_quiver(const std::string& text) {
  Quiver q;
  std::vector<std::pair<std::string, std::string>> arrows;
  for (const auto& line : lines_of(text)) {
    std::string key, value;
    if (!split_key(line, key, value)) throw ParseError("malformed quiver line '" + line + "'");
    if (key == "vertex") {
      q.add_vertex(value);
    } else if (is_arrow_line(value)) {
      arrows.emplace_back(key, value);
    }
  }
  for (const auto& [label, value] : arrows) {
    auto arrow_pos = value.find("->");
    auto s = q.find_vertex(trim(value.substr(0, arrow_pos)));
    auto t = q.find_vertex(trim(value.substr(arrow_pos + 2)));
    if (!s || !t) throw ParseError("arrow '" + label + "' uses an undeclared vertex");
    q.add_arrow(label, *s, *t);
  }
  return q;
}

std::string write_presentation(const QuadraticPresentation& p) {
  std::ostringstream out;
  out << "field: " << p.field.to_string() << "\n";
  out << write_quiver(p.quiver);
  for (const auto& r : p.relations) out << "rel: " << r.to_string(p.quiver) << "\n";
  out << "order: ";
  for (ArrowId a = 0; a < p.quiver.num_arrows(); ++a) out << (a ? " < " : "") << p.quiver.arrow(a).label;
  out << "\n";
  if (p.degree_weights)
    for (ArrowId a = 0; a < p.quiver.num_arrows(); ++a)
      out << "degree: " << p.quiver.arrow(a).label << "=" << (*p.degree_weights)[a] << "\n";
  return out.str();
}

QuadraticPresentation parse_presentation(const std::string& text) {
  std::optional<FieldSpec> field;
  std::string quiver_text;
  std::vector<std::string> rel_lines, order_items;
  std::vector<std::pair<std::string, int>> degrees;
  for (const auto& line : lines_of(text)) {
    std::string key, value;
    if (!split_key(line, key, value)) throw ParseError("malformed presentation line '" + line + "'");
    if (key == "field") {
      field = FieldSpec::parse(value);
    } else if (key == "vertex" || is_arrow_line(value)) {
      quiver_text += line + "\n";
    } else if (key == "rel") {
      rel_lines.push_back(value);
    } else if (key == "order") {
      order_items = split_list(value, '<');
    } else if (key == "degree") {
      auto eq = value.find('=');
      if (eq == std::string::npos) throw ParseError("degree line needs arrow=weight");
      degrees.emplace_back(trim(value.substr(0, eq)), std::stoi(value.substr(eq + 1)));
    } else {
      throw ParseError("unknown presentation key '" + key + "'");
    }
  }
  if (!field) throw ParseError("presentation has no field line");
  Quiver q = parse_quiver(quiver_text);
  std::vector<LinCombo> rels;
  for (const auto& r : rel_lines) rels.push_back(parse_lincombo(q, *field, r));
  std::vector<ArrowId> order;
  if (order_items.empty()) {
    for (ArrowId a = 0; a < q.num_arrows(); ++a) order.push_back(a);
  } else {
    for (const auto& label : order_items) {
      auto a = q.find_arrow(label);
      if (!a) throw ParseError("order mentions unknown arrow '" + label + "'");
      order.push_back(*a);
    }
  }
  std::optional<std::vector<int>> weights;
  if (!degrees.empty()) {
    std::vector<int> w(q.num_arrows(), 0);
    std::vector<bool> seen(q.num_arrows(), false);
    for (const auto& [label, d] : degrees) {
      auto a = q.find_arrow(label);
      if (!a) throw ParseError("degree for unknown arrow '" + label + "'");
      w[*a] = d;
      seen[*a] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw ParseError("degree lines must cover every arrow");
    weights = std::move(w);
  }
  return QuadraticPresentation::make(*field, q, std::move(rels), order, std::move(weights));
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  for (const auto& line : lines_of(text)) {
    std::string key, value;
    if (!split_key(line, key, value)) throw ParseError("malformed config line '" + line + "'");
    kv[key] = value;
  }
  return kv;
}

FamilyParams parse_family_config(const std::string& text) {
  auto kv = parse_key_values(text);
  auto need = [&](const std::string& k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw ParseError("family config is missing '" + k + "'");
    return it->second;
  };
  FamilyKind kind = parse_family_kind(need("family"));
  int m = std::stoi(need("m"));
  int n = kv.count("n") ? std::stoi(kv["n"]) : 1;
  FieldSpec f = kv.count("field") ? FieldSpec::parse(kv["field"]) : FieldSpec::rationals();
  std::vector<std::string> q = kv.count("q") ? split_list(kv["q"]) : std::vector<std::string>{"1"};
  return FamilyParams::make(kind, m, n, f, q);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hhlab
