#include "semiq/kvtree.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace semiq::kv {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorKind::Config, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_bare_key(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  return true;
}

/// Drops a trailing comment, respecting string literals.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string && c == '\\') {
      ++i;
    } else if (c == '"') {
      in_string = !in_string;
    } else if (c == '#' && !in_string) {
      return line.substr(0, i);
    }
  }
  return line;
}

int bracket_balance(std::string_view s) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string && c == '\\') {
      ++i;
    } else if (c == '"') {
      in_string = !in_string;
    } else if (!in_string) {
      if (c == '[') ++depth;
      if (c == ']') --depth;
    }
  }
  return depth;
}

class ValueReader {
 public:
  ValueReader(std::string_view text, int line) : text_(text), line_(line) {}

  Value read_all() {
    Value v = read();
    skip_space();
    if (pos_ != text_.size()) fail(line_, "unexpected trailing text '" + std::string(text_.substr(pos_)) + "'");
    return v;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Value read() {
    skip_space();
    if (pos_ >= text_.size()) fail(line_, "missing value");
    const char c = text_[pos_];
    if (c == '"') return Value{read_string()};
    if (c == '[') return Value{read_array()};
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return Value{true};
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return Value{false};
    }
    return Value{read_int()};
  }

  std::string read_string() {
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_++];
      if (c == '\\') {
        if (pos_ >= text_.size()) break;
        const char e = text_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(line_, std::string("unsupported escape \\") + e);
        }
      }
      out.push_back(c);
    }
    if (pos_ >= text_.size()) fail(line_, "unterminated string");
    ++pos_;
    return out;
  }

  Value::Array read_array() {
    ++pos_;
    Value::Array out;
    for (;;) {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
        return out;
      }
      out.push_back(read());
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
      } else if (pos_ >= text_.size() || text_[pos_] != ']') {
        fail(line_, "expected ',' or ']' in array");
      }
    }
  }

  Int read_int() {
    std::string digits;
    const std::size_t start = pos_;
    if (text_[pos_] == '+' || text_[pos_] == '-') digits.push_back(text_[pos_++]);
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      if (text_[pos_] != '_') digits.push_back(text_[pos_]);
      ++pos_;
    }
    if (digits.empty() || digits == "+" || digits == "-") {
      fail(line_, "cannot parse value '" + std::string(text_.substr(start)) + "'");
    }
    try {
      return std::stoll(digits);
    } catch (const std::out_of_range&) {
      fail(line_, "integer out of range: " + digits);
    }
  }

  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace

class Parser {
 public:
  Document run(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    Table* current = &doc_.root;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string line = strip_comment(raw);
      std::string_view body = trim(line);
      if (body.empty()) continue;

      if (body.substr(0, 2) == "[[") {
        if (body.size() < 4 || body.substr(body.size() - 2) != "]]") fail(line_no, "malformed [[array]] header");
        const std::string name(trim(body.substr(2, body.size() - 4)));
        if (!is_bare_key(name)) fail(line_no, "bad array name '" + name + "'");
        if (doc_.tables.count(name)) fail(line_no, "'" + name + "' already defined as a table");
        auto& list = doc_.arrays[name];
        list.emplace_back();
        current = &list.back();
        current->line_ = line_no;
        continue;
      }
      if (body.front() == '[') {
        if (body.back() != ']') fail(line_no, "malformed [table] header");
        const std::string name(trim(body.substr(1, body.size() - 2)));
        if (!is_bare_key(name)) fail(line_no, "bad table name '" + name + "'");
        if (doc_.tables.count(name) || doc_.arrays.count(name)) fail(line_no, "duplicate table '" + name + "'");
        current = &doc_.tables[name];
        current->line_ = line_no;
        continue;
      }

      const auto eq = body.find('=');
      if (eq == std::string_view::npos) fail(line_no, "expected key = value");
      const std::string key(trim(body.substr(0, eq)));
      if (!is_bare_key(key)) fail(line_no, "bad key '" + key + "'");
      std::string value_text(trim(body.substr(eq + 1)));
      const int start_line = line_no;
      while (bracket_balance(value_text) > 0) {
        if (!std::getline(in, raw)) fail(start_line, "unterminated array");
        ++line_no;
        value_text += ' ';
        value_text += trim(strip_comment(raw));
      }
      if (current->entries_.count(key)) fail(start_line, "duplicate key '" + key + "'");
      current->entries_.emplace(key, ValueReader(value_text, start_line).read_all());
    }
    return std::move(doc_);
  }

 private:
  Document doc_;
};

const Value* Table::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

[[noreturn]] void wrong_type(const Table& t, const std::string& key, const char* expected) {
  fail(t.line(), "key '" + key + "' must be " + expected);
}

}  // namespace

std::optional<Int> Table::get_int(const std::string& key) const {
  const Value* v = find(key);
  if (!v) return std::nullopt;
  if (const auto* i = std::get_if<Int>(&v->data)) return *i;
  wrong_type(*this, key, "an integer");
}

std::optional<std::string> Table::get_string(const std::string& key) const {
  const Value* v = find(key);
  if (!v) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(&v->data)) return *s;
  wrong_type(*this, key, "a string");
}

std::optional<bool> Table::get_bool(const std::string& key) const {
  const Value* v = find(key);
  if (!v) return std::nullopt;
  if (const auto* b = std::get_if<bool>(&v->data)) return *b;
  wrong_type(*this, key, "a boolean");
}

std::optional<std::vector<Int>> Table::get_int_array(const std::string& key) const {
  const Value* v = find(key);
  if (!v) return std::nullopt;
  const auto* arr = std::get_if<Value::Array>(&v->data);
  if (!arr) wrong_type(*this, key, "an array of integers");
  std::vector<Int> out;
  for (const auto& item : *arr) {
    const auto* i = std::get_if<Int>(&item.data);
    if (!i) wrong_type(*this, key, "an array of integers");
    out.push_back(*i);
  }
  return out;
}

Document parse(std::string_view text) { return Parser().run(text); }

Document parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace semiq::kv
