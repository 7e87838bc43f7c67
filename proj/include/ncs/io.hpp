#ifndef NCS_IO_HPP
#define NCS_IO_HPP

// Text formats: JSON vector and matrix literals, dense CSV matrices, the
// envelope literal language, and a deterministic JSON emitter.
//
//   vector   {"entries": {"1": [re, im], "4": 0.5}}
//   matrix   {"dim": T, "entries": [[re, im], ...]}   (row-major, T*T cells)
//   envelope term(c=1, min^0, max^-3, rho=1/2, band=0) + patch(1,2,0.5)
//            diag:j^5      identity
//            {"terms": [{"c": "1", "gamma": "0", "delta": "0", "rho": "1",
//                        "region": "band", "width": 0}],
//             "patch": [[i, j, v]]}

#include "ncs/matrices.hpp"
#include "ncs/membership.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>

namespace ncs {

using json = nlohmann::ordered_json;

/// Malformed input text; `where` locates the problem.
class parse_error : public invalid_argument {
public:
  parse_error(const std::string& where, const std::string& what)
      : invalid_argument(where + ": " + what), where_(where)
  {
  }
  const std::string& where() const { return where_; }

private:
  std::string where_;
};

inline json parse_json_text(const std::string& text, const std::string& source = "input")
{
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(source + " byte " + std::to_string(e.byte), e.what());
  }
}

// ---------------------------------------------------------------------------
// Scalars, vectors, matrices
// ---------------------------------------------------------------------------

namespace detail {

inline complex complex_from_json(const json& v, const std::string& where)
{
  if (v.is_number())
    return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw parse_error(where, "expected a number or [re, im]");
}

inline rational rational_from_json(const json& v, const std::string& where)
{
  try {
    if (v.is_number_integer())
      return rational(v.get<std::int64_t>());
    if (v.is_string())
      return parse_rational(v.get<std::string>());
    if (v.is_number_float())
      return parse_rational(json(v).dump());
  } catch (const invalid_argument& e) {
    throw parse_error(where, e.what());
  }
  throw parse_error(where, "expected an integer or a rational string like \"3/4\"");
}

inline index_t index_from_key(const std::string& key, const std::string& where)
{
  index_t k = 0;
  auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
  if (ec != std::errc{} || p != key.data() + key.size() || k < 1)
    throw parse_error(where, "index '" + key + "' is not a positive integer");
  return k;
}

}  // namespace detail

inline sequence sequence_from_json(const json& j, const std::string& source = "vector")
{
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_object())
    throw parse_error(source, "expected {\"entries\": {...}}");
  sequence out;
  if (j.contains("ambient"))
    out.set_ambient(j["ambient"] == "s_prime" ? ambient_space::s_prime : ambient_space::s);
  for (const auto& [key, v] : j["entries"].items()) {
    const std::string where = source + ".entries." + key;
    out.set(detail::index_from_key(key, where), detail::complex_from_json(v, where));
  }
  return out;
}

/// Exact variant: values are integers or rational strings.
inline basic_sequence<rational> rational_sequence_from_json(const json& j, const std::string& source = "vector")
{
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_object())
    throw parse_error(source, "expected {\"entries\": {...}}");
  basic_sequence<rational> out;
  for (const auto& [key, v] : j["entries"].items()) {
    const std::string where = source + ".entries." + key;
    out.set(detail::index_from_key(key, where), detail::rational_from_json(v, where));
  }
  return out;
}

inline json to_json(const complex& z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const sequence& xi)
{
  json entries = json::object();
  for (const auto& [k, v] : xi.entries())
    entries[std::to_string(k)] = to_json(v);
  return json{{"entries", entries}};
}

inline json to_json(const basic_sequence<rational>& xi)
{
  json entries = json::object();
  for (const auto& [k, v] : xi.entries())
    entries[std::to_string(k)] = to_string(v);
  return json{{"entries", entries}};
}

inline matrix matrix_from_json(const json& j, const std::string& source = "matrix")
{
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
    throw parse_error(source, "expected {\"dim\": T, \"entries\": [...]}");
  const auto T = j["dim"].get<index_t>();
  if (T < 0)
    throw parse_error(source + ".dim", "dimension must be nonnegative");
  const auto& e = j.contains("entries") ? j["entries"] : json();
  if (!e.is_array() || static_cast<index_t>(e.size()) != T * T)
    throw parse_error(source + ".entries", "expected " + std::to_string(T * T) + " row-major cells");
  matrix x(T);
  for (index_t i = 1; i <= T; ++i)
    for (index_t k = 1; k <= T; ++k) {
      const auto cell = static_cast<std::size_t>((i - 1) * T + (k - 1));
      x(i, k) = detail::complex_from_json(e[cell], source + ".entries[" + std::to_string(cell) + "]");
    }
  return x;
}

inline json to_json(const matrix& x)
{
  json cells = json::array();
  for (const auto& v : x.data())
    cells.push_back(to_json(v));
  return json{{"dim", x.dim()}, {"entries", cells}};
}

/// Dense real CSV matrix: T lines of T comma-separated numbers.
inline matrix matrix_from_csv(const std::string& text, const std::string& source = "csv")
{
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos)
      continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(cells, cell, ',')) {
      ++col;
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      const std::string s = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
      double v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || ec != std::errc{} || p != s.data() + s.size())
        throw parse_error(source + " line " + std::to_string(lineno) + " column " + std::to_string(col),
                          "'" + s + "' is not a number");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  const auto T = static_cast<index_t>(rows.size());
  matrix x(T);
  for (index_t i = 1; i <= T; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i - 1)];
    if (static_cast<index_t>(row.size()) != T)
      throw parse_error(source + " row " + std::to_string(i), "expected " + std::to_string(T) + " columns");
    for (index_t k = 1; k <= T; ++k)
      x(i, k) = row[static_cast<std::size_t>(k - 1)];
  }
  return x;
}

inline std::string matrix_to_csv(const matrix& x)
{
  std::string out;
  char buf[32];
  for (index_t i = 1; i <= x.dim(); ++i) {
    for (index_t k = 1; k <= x.dim(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", x(i, k).real());
      out += (k > 1 ? "," : "") + std::string(buf);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Envelope literals
// ---------------------------------------------------------------------------

namespace detail {

class envelope_lexer {
public:
  explicit envelope_lexer(std::string_view s) : s_(s) {}

  void skip()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool done()
  {
    skip();
    return pos_ >= s_.size();
  }
  bool accept(std::string_view tok)
  {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok)
  {
    if (!accept(tok))
      fail("expected '" + std::string(tok) + "'");
  }
  /// A rational literal: optional sign, digits, optional '/digits' or '.digits'.
  rational number()
  {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
      ++pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/' ||
                                s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
      ++pos_;
    const std::string text(s_.substr(start, pos_ - start));
    try {
      return parse_rational(text);
    } catch (const invalid_argument&) {
      pos_ = start;
      fail("expected a number");
    }
  }
  index_t integer()
  {
    const rational r = number();
    if (!is_integer(r))
      fail("expected an integer");
    return to_int64(numerator(r));
  }
  std::string word()
  {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const
  {
    throw parse_error("envelope column " + std::to_string(pos_ + 1), what);
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

inline envelope_term parse_term_body(envelope_lexer& lx)
{
  envelope_term t;
  lx.expect("(");
  bool first = true;
  while (!lx.accept(")")) {
    if (!first)
      lx.expect(",");
    first = false;
    const std::string key = lx.word();
    if (key == "c") {
      lx.expect("=");
      t.c = lx.number();
    } else if (key == "rho") {
      lx.expect("=");
      t.rho = lx.number();
    } else if (key == "min") {
      lx.expect("^");
      t.gamma = lx.number();
    } else if (key == "max") {
      lx.expect("^");
      t.delta = lx.number();
    } else if (key == "band") {
      lx.expect("=");
      t.reg = region::band(lx.integer());
    } else if (key == "full") {
      t.reg = region::full();
    } else if (key == "upper") {
      t.reg = region::upper();
    } else if (key == "lower") {
      t.reg = region::lower();
    } else if (key == "region") {
      lx.expect("=");
      const std::string r = lx.word();
      if (r == "full")
        t.reg = region::full();
      else if (r == "upper")
        t.reg = region::upper();
      else if (r == "lower")
        t.reg = region::lower();
      else
        lx.fail("unknown region '" + r + "'");
    } else {
      lx.fail("unknown term field '" + key + "'");
    }
  }
  return t;
}

}  // namespace detail

/// Parses the envelope literal language described at the top of this file.
inline envelope_matrix parse_envelope(std::string_view text)
{
  detail::envelope_lexer lx(text);
  envelope_matrix x;
  do {
    const std::string head = lx.word();
    if (head == "term") {
      x.terms.push_back(detail::parse_term_body(lx));
    } else if (head == "patch") {
      lx.expect("(");
      const index_t i = lx.integer();
      lx.expect(",");
      const index_t j = lx.integer();
      lx.expect(",");
      const double v = to_double(lx.number());
      lx.expect(")");
      x.patch[{i, j}] = v;
    } else if (head == "identity") {
      x.terms.push_back({1, 0, 0, 1, region::band(0)});
    } else if (head == "diag") {
      lx.expect(":");
      lx.expect("j");
      rational p = 1;
      if (lx.accept("^"))
        p = lx.number();
      x.terms.push_back({1, p, 0, 1, region::band(0)});
    } else {
      lx.fail(head.empty() ? "expected term, patch, diag or identity" : "unknown item '" + head + "'");
    }
  } while (lx.accept("+"));
  if (!lx.done())
    lx.fail("unexpected trailing input");
  try {
    x.validate();
  } catch (const parse_error&) {
    throw;
  } catch (const invalid_argument& e) {
    throw parse_error("envelope", e.what());
  }
  return x;
}

inline std::string to_literal(const envelope_matrix& x)
{
  std::string out;
  for (const auto& t : x.terms) {
    if (!out.empty())
      out += " + ";
    out += "term(c=" + to_string(t.c) + ", min^" + to_string(t.gamma) + ", max^" + to_string(t.delta) +
           ", rho=" + to_string(t.rho) + ", " + to_string(t.reg) + ")";
  }
  char buf[32];
  for (const auto& [ij, v] : x.patch) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += (out.empty() ? "" : " + ") + ("patch(" + std::to_string(ij.first) + "," + std::to_string(ij.second) +
                                         "," + buf + ")");
  }
  return out;
}

inline json to_json(const envelope_matrix& x)
{
  json terms = json::array();
  for (const auto& t : x.terms) {
    json o = {{"c", to_string(t.c)},
              {"gamma", to_string(t.gamma)},
              {"delta", to_string(t.delta)},
              {"rho", to_string(t.rho)}};
    switch (t.reg.kind) {
      case region_kind::full: o["region"] = "full"; break;
      case region_kind::upper: o["region"] = "upper"; break;
      case region_kind::lower: o["region"] = "lower"; break;
      case region_kind::band:
        o["region"] = "band";
        o["width"]  = t.reg.width;
        break;
    }
    terms.push_back(o);
  }
  json patch = json::array();
  for (const auto& [ij, v] : x.patch)
    patch.push_back(json::array({ij.first, ij.second, v}));
  return json{{"terms", terms}, {"patch", patch}};
}

inline envelope_matrix envelope_from_json(const json& j, const std::string& source = "envelope")
{
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw parse_error(source, "expected {\"terms\": [...]}");
  envelope_matrix x;
  for (std::size_t k = 0; k < j["terms"].size(); ++k) {
    const auto& o           = j["terms"][k];
    const std::string where = source + ".terms[" + std::to_string(k) + "]";
    if (!o.is_object())
      throw parse_error(where, "expected an object");
    envelope_term t;
    auto field = [&](const char* name, rational& dst) {
      if (o.contains(name))
        dst = detail::rational_from_json(o[name], where + "." + name);
    };
    field("c", t.c);
    field("gamma", t.gamma);
    field("delta", t.delta);
    field("rho", t.rho);
    const std::string reg = o.value("region", std::string("full"));
    if (reg == "full")
      t.reg = region::full();
    else if (reg == "upper")
      t.reg = region::upper();
    else if (reg == "lower")
      t.reg = region::lower();
    else if (reg == "band")
      t.reg = region::band(o.value("width", index_t{0}));
    else
      throw parse_error(where + ".region", "unknown region '" + reg + "'");
    x.terms.push_back(t);
  }
  if (j.contains("patch")) {
    for (const auto& p : j["patch"]) {
      if (!p.is_array() || p.size() != 3 || !p[0].is_number_integer() || !p[1].is_number_integer() ||
          !p[2].is_number())
        throw parse_error(source + ".patch", "expected [i, j, value] triples");
      x.patch[{p[0].get<index_t>(), p[1].get<index_t>()}] = p[2].get<double>();
    }
  }
  try {
    x.validate();
  } catch (const invalid_argument& e) {
    throw parse_error(source, e.what());
  }
  return x;
}

/// A literal, or a JSON document when the text starts with '{'.
inline envelope_matrix read_envelope(const std::string& text)
{
  const auto b = text.find_first_not_of(" \t\r\n");
  if (b != std::string::npos && text[b] == '{')
    return envelope_from_json(parse_json_text(text, "envelope"));
  return parse_envelope(text);
}

// ---------------------------------------------------------------------------
// Membership results
// ---------------------------------------------------------------------------

inline json to_json(const ray& r) { return to_string(r); }

inline json to_json(const membership_result& res)
{
  if (const auto* c = std::get_if<certificate>(&res)) {
    json bound = json::array();
    for (double b : c->bound)
      bound.push_back(b);
    return json{{"kind", "certificate"},
                {"space", to_string(c->space)},
                {"witness", to_string(c->witness)},
                {"slope", c->witness.slope},
                {"intercept", c->witness.intercept},
                {"bound", bound}};
  }
  const auto& r = std::get<refutation>(res);
  return json{{"kind", "refutation"},
              {"space", to_string(r.space)},
              {"level", r.level},
              {"ray", to_string(r.path)},
              {"exponent", to_string(r.exponent)},
              {"exponential", r.exponential}};
}

inline json to_json(const growth_report& g)
{
  json sizes = json::array(), logs = json::array();
  for (auto s : g.sizes)
    sizes.push_back(s);
  for (auto v : g.log_sup)
    logs.push_back(std::isfinite(v) ? json(v) : json(nullptr));
  return json{{"sizes", sizes},
              {"logSup", logs},
              {"slope", g.slope},
              {"verdict", to_string(g.verdict)},
              {"argmax", json::array({g.argmax.first, g.argmax.second})}};
}

// ---------------------------------------------------------------------------
// Deterministic emitter
// ---------------------------------------------------------------------------

namespace detail {

inline void emit_string(std::string& out, const std::string& s) { out += json(s).dump(); }

inline void emit(std::string& out, const json& j, int indent, int depth)
{
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        emit_string(out, k);
        out += indent > 0 ? ": " : ":";
        emit(out, v, indent, depth + 1);
      }
      out += nl;
      out += close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k > 0) {
          out += ",";
          out += nl;
        }
        out += pad;
        emit(out, j[k], indent, depth + 1);
      }
      out += nl;
      out += close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      // Keep floats recognisable as floats.
      if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos)
        out += ".0";
      return;
    }
    default: out += j.dump(); return;
  }
}

}  // namespace detail

/// Stable serialization: insertion-ordered keys, floats with 17 significant
/// digits, non-finite floats as null.
inline std::string emit_report(const json& j, int indent = 2)
{
  std::string out;
  detail::emit(out, j, indent, 0);
  out += '\n';
  return out;
}

}  // namespace ncs

#endif
