#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace dfkg {

namespace {

std::string describe(ConfigValue::Kind k) {
  switch (k) {
    case ConfigValue::Kind::Empty: return "empty";
    case ConfigValue::Kind::Bool: return "bool";
    case ConfigValue::Kind::Int: return "integer";
    case ConfigValue::Kind::Float: return "float";
    case ConfigValue::Kind::String: return "string";
    case ConfigValue::Kind::Array: return "array";
    case ConfigValue::Kind::Table: return "table";
  }
  return "?";
}

}  // namespace

ConfigError::ConfigError(const std::string& msg, int line_, int col_,
                         std::string key_path_)
    : std::runtime_error(
          (key_path_.empty() ? "" : "at '" + key_path_ + "': ") + msg +
          (line_ > 0 ? " (line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ")"
                     : "")),
      line(line_),
      col(col_),
      key_path(std::move(key_path_)) {}

ConfigValue::Kind ConfigValue::kind() const {
  return static_cast<Kind>(value.index());
}

bool ConfigValue::as_bool(const std::string& path) const {
  if (const bool* b = std::get_if<bool>(&value)) return *b;
  throw ConfigError("expected bool, found " + describe(kind()), line, col,
                    path);
}

long long ConfigValue::as_int(const std::string& path) const {
  if (const long long* i = std::get_if<long long>(&value)) return *i;
  throw ConfigError("expected integer, found " + describe(kind()), line, col,
                    path);
}

double ConfigValue::as_double(const std::string& path) const {
  if (const double* d = std::get_if<double>(&value)) return *d;
  if (const long long* i = std::get_if<long long>(&value))
    return static_cast<double>(*i);
  throw ConfigError("expected number, found " + describe(kind()), line, col,
                    path);
}

const std::string& ConfigValue::as_string(const std::string& path) const {
  if (const std::string* s = std::get_if<std::string>(&value)) return *s;
  throw ConfigError("expected string, found " + describe(kind()), line, col,
                    path);
}

const ConfigValue::Array& ConfigValue::as_array(const std::string& path) const {
  if (const Array* a = std::get_if<Array>(&value)) return *a;
  throw ConfigError("expected array, found " + describe(kind()), line, col,
                    path);
}

const ConfigValue::Table& ConfigValue::as_table(const std::string& path) const {
  if (const Table* t = std::get_if<Table>(&value)) return *t;
  throw ConfigError("expected table, found " + describe(kind()), line, col,
                    path);
}

ConfigValue::Table& ConfigValue::table() {
  if (Table* t = std::get_if<Table>(&value)) return *t;
  value = Table{};
  return std::get<Table>(value);
}

const ConfigValue* ConfigValue::find(const std::string& key) const {
  const Table* t = std::get_if<Table>(&value);
  if (!t) return nullptr;
  auto it = t->find(key);
  return it == t->end() ? nullptr : &it->second;
}

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return eof() ? '\0' : text[pos]; }
  char get() {
    const char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_inline_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) get();
  }
};

[[noreturn]] void fail(const Cursor& c, const std::string& msg) {
  throw ConfigError(msg, c.line, c.col);
}

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string parse_bare_key(Cursor& c) {
  std::string key;
  while (!c.eof() && is_bare_key_char(c.peek())) key += c.get();
  if (key.empty()) fail(c, "expected a key");
  return key;
}

ConfigValue parse_value(Cursor& c);

std::string parse_string_value(Cursor& c) {
  c.get();  // opening quote
  std::string out;
  for (;;) {
    if (c.eof()) fail(c, "unterminated string");
    char ch = c.get();
    if (ch == '"') break;
    if (ch == '\n') fail(c, "newline inside string");
    if (ch == '\\') {
      if (c.eof()) fail(c, "dangling escape");
      const char esc = c.get();
      switch (esc) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: fail(c, std::string("unknown escape '\\") + esc + "'");
      }
    } else {
      out += ch;
    }
  }
  return out;
}

ConfigValue parse_number_or_bool(Cursor& c) {
  ConfigValue v;
  v.line = c.line;
  v.col = c.col;
  std::string tok;
  while (!c.eof() && (is_bare_key_char(c.peek()) || c.peek() == '+' ||
                      c.peek() == '.'))
    tok += c.get();
  if (tok.empty()) fail(c, "expected a value");
  if (tok == "true") {
    v.value = true;
    return v;
  }
  if (tok == "false") {
    v.value = false;
    return v;
  }
  const bool looks_float = tok.find_first_of(".eE") != std::string::npos &&
                           tok.find_first_of("0123456789") != std::string::npos;
  try {
    size_t used = 0;
    if (looks_float) {
      v.value = std::stod(tok, &used);
    } else {
      v.value = static_cast<long long>(std::stoll(tok, &used));
    }
    if (used != tok.size()) throw std::invalid_argument(tok);
  } catch (const std::exception&) {
    fail(c, "malformed value '" + tok + "'");
  }
  return v;
}

ConfigValue parse_inline_table(Cursor& c) {
  ConfigValue v;
  v.line = c.line;
  v.col = c.col;
  v.value = ConfigValue::Table{};
  c.get();  // {
  c.skip_inline_ws();
  if (c.peek() == '}') {
    c.get();
    return v;
  }
  for (;;) {
    c.skip_inline_ws();
    const std::string key = parse_bare_key(c);
    c.skip_inline_ws();
    if (c.peek() != '=') fail(c, "expected '=' in inline table");
    c.get();
    c.skip_inline_ws();
    ConfigValue item = parse_value(c);
    auto& table = std::get<ConfigValue::Table>(v.value);
    if (table.count(key)) fail(c, "duplicate key '" + key + "'");
    table.emplace(key, std::move(item));
    c.skip_inline_ws();
    if (c.peek() == ',') {
      c.get();
      continue;
    }
    if (c.peek() == '}') {
      c.get();
      return v;
    }
    fail(c, "expected ',' or '}' in inline table");
  }
}

ConfigValue parse_array(Cursor& c) {
  ConfigValue v;
  v.line = c.line;
  v.col = c.col;
  v.value = ConfigValue::Array{};
  c.get();  // [
  c.skip_inline_ws();
  if (c.peek() == ']') {
    c.get();
    return v;
  }
  for (;;) {
    c.skip_inline_ws();
    std::get<ConfigValue::Array>(v.value).push_back(parse_value(c));
    c.skip_inline_ws();
    if (c.peek() == ',') {
      c.get();
      continue;
    }
    if (c.peek() == ']') {
      c.get();
      return v;
    }
    fail(c, "expected ',' or ']' in array");
  }
}

ConfigValue parse_value(Cursor& c) {
  c.skip_inline_ws();
  ConfigValue v;
  v.line = c.line;
  v.col = c.col;
  switch (c.peek()) {
    case '"':
      v.value = parse_string_value(c);
      return v;
    case '[':
      return parse_array(c);
    case '{':
      return parse_inline_table(c);
    default:
      return parse_number_or_bool(c);
  }
}

void skip_to_eol(Cursor& c, bool allow_comment) {
  c.skip_inline_ws();
  if (c.peek() == '#') {
    if (!allow_comment) fail(c, "unexpected '#'");
    while (!c.eof() && c.peek() != '\n') c.get();
  }
  if (!c.eof() && c.peek() != '\n')
    fail(c, "unexpected trailing characters");
  if (!c.eof()) c.get();
}

std::vector<std::string> parse_table_path(Cursor& c) {
  std::vector<std::string> path;
  for (;;) {
    c.skip_inline_ws();
    path.push_back(parse_bare_key(c));
    c.skip_inline_ws();
    if (c.peek() == '.') {
      c.get();
      continue;
    }
    return path;
  }
}

ConfigValue* descend(ConfigValue& root, const std::vector<std::string>& path,
                     const Cursor& c) {
  ConfigValue* node = &root;
  for (const std::string& part : path) {
    ConfigValue::Table& t = node->table();
    auto [it, inserted] = t.try_emplace(part);
    node = &it->second;
    if (node->kind() == ConfigValue::Kind::Array) {
      // array of tables: descend into the latest element
      auto& arr = std::get<ConfigValue::Array>(node->value);
      if (arr.empty()) fail(c, "internal: empty table array");
      node = &arr.back();
    } else if (!inserted && node->kind() != ConfigValue::Kind::Table &&
               node->kind() != ConfigValue::Kind::Empty) {
      fail(c, "'" + part + "' is already a value, not a table");
    }
  }
  return node;
}

}  // namespace

ConfigValue parse_config_text(const std::string& text) {
  ConfigValue root;
  root.value = ConfigValue::Table{};
  Cursor c{text};
  ConfigValue* current = &root;

  while (!c.eof()) {
    c.skip_inline_ws();
    if (c.eof()) break;
    const char ch = c.peek();
    if (ch == '\n') {
      c.get();
      continue;
    }
    if (ch == '#') {
      skip_to_eol(c, true);
      continue;
    }
    if (ch == '[') {
      c.get();
      const bool array_of_tables = c.peek() == '[';
      if (array_of_tables) c.get();
      const std::vector<std::string> path = parse_table_path(c);
      if (c.peek() != ']') fail(c, "expected ']'");
      c.get();
      if (array_of_tables) {
        if (c.peek() != ']') fail(c, "expected ']]'");
        c.get();
      }
      // attach: all but the last component are plain tables
      std::vector<std::string> parents(path.begin(), path.end() - 1);
      ConfigValue* parent = descend(root, parents, c);
      ConfigValue::Table& t = parent->table();
      auto [it, inserted] = t.try_emplace(path.back());
      ConfigValue* node = &it->second;
      if (array_of_tables) {
        if (inserted) {
          node->value = ConfigValue::Array{};
        } else if (node->kind() != ConfigValue::Kind::Array) {
          fail(c, "'" + path.back() + "' is not a table array");
        }
        auto& arr = std::get<ConfigValue::Array>(node->value);
        ConfigValue fresh;
        fresh.value = ConfigValue::Table{};
        fresh.line = c.line;
        arr.push_back(std::move(fresh));
        current = &arr.back();
      } else {
        if (!inserted && node->kind() != ConfigValue::Kind::Table)
          fail(c, "table '" + path.back() + "' conflicts with a value");
        if (inserted) node->value = ConfigValue::Table{};
        current = node;
      }
      skip_to_eol(c, true);
      continue;
    }
    // key = value
    const int kline = c.line, kcol = c.col;
    const std::string key = parse_bare_key(c);
    c.skip_inline_ws();
    if (c.peek() != '=') fail(c, "expected '=' after key '" + key + "'");
    c.get();
    ConfigValue v = parse_value(c);
    v.line = kline;
    v.col = kcol;
    ConfigValue::Table& t = current->table();
    if (t.count(key))
      throw ConfigError("duplicate key '" + key + "'", kline, kcol);
    t.emplace(key, std::move(v));
    skip_to_eol(c, true);
  }
  return root;
}

ConfigValue parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string suggest_key(const std::string& unknown,
                        const std::vector<std::string>& known) {
  auto distance = [](const std::string& a, const std::string& b) {
    std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
      cur[0] = i;
      for (size_t j = 1; j <= b.size(); ++j) {
        const size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
        cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
      }
      std::swap(prev, cur);
    }
    return prev[b.size()];
  };
  std::string best;
  size_t best_d = std::string::npos;
  for (const std::string& k : known) {
    const size_t d = distance(unknown, k);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  // only suggest when plausibly a typo
  if (best_d != std::string::npos &&
      best_d <= std::max<size_t>(2, unknown.size() / 3))
    return best;
  return "";
}

}  // namespace dfkg
