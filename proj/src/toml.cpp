#include "leosim/toml.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace leosim::toml {

Value Value::integer(long long v) {
    Value out;
    out.type_ = Type::Integer;
    out.int_ = v;
    return out;
}
Value Value::floating(double v) {
    Value out;
    out.type_ = Type::Float;
    out.float_ = v;
    return out;
}
Value Value::boolean(bool v) {
    Value out;
    out.type_ = Type::Boolean;
    out.bool_ = v;
    return out;
}
Value Value::string(std::string v) {
    Value out;
    out.type_ = Type::String;
    out.string_ = std::move(v);
    return out;
}
Value Value::array(Array v) {
    Value out;
    out.type_ = Type::ArrayV;
    out.array_ = std::make_shared<Array>(std::move(v));
    return out;
}
Value Value::table(Table v) {
    Value out;
    out.type_ = Type::TableV;
    out.table_ = std::make_shared<Table>(std::move(v));
    return out;
}
Value Value::table_array(std::vector<Table> v) {
    Value out;
    out.type_ = Type::TableArray;
    out.table_array_ = std::make_shared<std::vector<Table>>(std::move(v));
    return out;
}

long long Value::as_integer() const {
    if (type_ != Type::Integer) throw ParseError("value is not an integer");
    return int_;
}
double Value::as_float() const {
    if (type_ == Type::Integer) return static_cast<double>(int_);
    if (type_ != Type::Float) throw ParseError("value is not a number");
    return float_;
}
bool Value::as_boolean() const {
    if (type_ != Type::Boolean) throw ParseError("value is not a boolean");
    return bool_;
}
const std::string& Value::as_string() const {
    if (type_ != Type::String) throw ParseError("value is not a string");
    return string_;
}
const Array& Value::as_array() const {
    if (type_ != Type::ArrayV) throw ParseError("value is not an array");
    return *array_;
}
const Table& Value::as_table() const {
    if (type_ != Type::TableV) throw ParseError("value is not a table");
    return *table_;
}
Table& Value::as_table() {
    if (type_ != Type::TableV) throw ParseError("value is not a table");
    return *table_;
}
const std::vector<Table>& Value::as_table_array() const {
    if (type_ != Type::TableArray) throw ParseError("value is not an array of tables");
    return *table_array_;
}
std::vector<Table>& Value::as_table_array() {
    if (type_ != Type::TableArray) throw ParseError("value is not an array of tables");
    return *table_array_;
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char take() {
        char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("toml:" + std::to_string(line) + ": " + message);
    }
};

void skip_ws(Cursor& c, bool cross_lines) {
    while (!c.eof()) {
        char ch = c.peek();
        if (ch == ' ' || ch == '\t' || (cross_lines && (ch == '\n' || ch == '\r'))) {
            c.take();
        } else if (ch == '#') {
            while (!c.eof() && c.peek() != '\n') c.take();
        } else {
            break;
        }
    }
}

std::string parse_bare_key(Cursor& c) {
    std::string key;
    while (!c.eof()) {
        char ch = c.peek();
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-')
            key.push_back(c.take());
        else
            break;
    }
    if (key.empty()) c.fail("expected a key");
    return key;
}

std::string parse_basic_string(Cursor& c) {
    c.take();  // opening quote
    std::string out;
    while (true) {
        if (c.eof()) c.fail("unterminated string");
        char ch = c.take();
        if (ch == '"') break;
        if (ch == '\n') c.fail("newline in string");
        if (ch == '\\') {
            if (c.eof()) c.fail("unterminated escape");
            char esc = c.take();
            switch (esc) {
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                default: c.fail("unsupported escape sequence");
            }
        } else {
            out.push_back(ch);
        }
    }
    return out;
}

Value parse_value(Cursor& c);

Value parse_array(Cursor& c) {
    c.take();  // '['
    Array items;
    while (true) {
        skip_ws(c, true);
        if (c.eof()) c.fail("unterminated array");
        if (c.peek() == ']') {
            c.take();
            break;
        }
        items.push_back(parse_value(c));
        skip_ws(c, true);
        if (c.eof()) c.fail("unterminated array");
        if (c.peek() == ',') {
            c.take();
        } else if (c.peek() == ']') {
            c.take();
            break;
        } else {
            c.fail("expected ',' or ']' in array");
        }
    }
    return Value::array(std::move(items));
}

Value parse_inline_table(Cursor& c) {
    c.take();  // '{'
    Table table;
    skip_ws(c, false);
    if (!c.eof() && c.peek() == '}') {
        c.take();
        return Value::table(std::move(table));
    }
    while (true) {
        skip_ws(c, false);
        std::string key = c.peek() == '"' ? parse_basic_string(c) : parse_bare_key(c);
        skip_ws(c, false);
        if (c.eof() || c.take() != '=') c.fail("expected '=' in inline table");
        skip_ws(c, false);
        table[key] = parse_value(c);
        skip_ws(c, false);
        if (c.eof()) c.fail("unterminated inline table");
        char ch = c.take();
        if (ch == '}') break;
        if (ch != ',') c.fail("expected ',' or '}' in inline table");
    }
    return Value::table(std::move(table));
}

Value parse_scalar(Cursor& c) {
    std::string token;
    while (!c.eof()) {
        char ch = c.peek();
        if (ch == ',' || ch == ']' || ch == '}' || ch == '\n' || ch == '\r' || ch == '#' ||
            ch == ' ' || ch == '\t')
            break;
        token.push_back(c.take());
    }
    if (token == "true") return Value::boolean(true);
    if (token == "false") return Value::boolean(false);
    if (token.empty()) c.fail("expected a value");
    bool looks_float = token.find_first_of(".eE") != std::string::npos ||
                       token == "inf" || token == "-inf" || token == "nan";
    if (!looks_float) {
        char* end = nullptr;
        long long v = std::strtoll(token.c_str(), &end, 10);
        if (end != nullptr && *end == '\0') return Value::integer(v);
    }
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end == nullptr || *end != '\0') c.fail("cannot parse value '" + token + "'");
    return Value::floating(v);
}

Value parse_value(Cursor& c) {
    skip_ws(c, false);
    if (c.eof()) c.fail("expected a value");
    char ch = c.peek();
    if (ch == '"') return Value::string(parse_basic_string(c));
    if (ch == '[') return parse_array(c);
    if (ch == '{') return parse_inline_table(c);
    return parse_scalar(c);
}

std::vector<std::string> parse_key_path(Cursor& c) {
    std::vector<std::string> path;
    while (true) {
        skip_ws(c, false);
        path.push_back(c.peek() == '"' ? parse_basic_string(c) : parse_bare_key(c));
        skip_ws(c, false);
        if (!c.eof() && c.peek() == '.') {
            c.take();
            continue;
        }
        break;
    }
    return path;
}

Table* descend(Table& root, const std::vector<std::string>& path, Cursor& c) {
    Table* table = &root;
    for (const auto& part : path) {
        Value& slot = (*table)[part];
        if (slot.type() == Value::Type::None) slot = Value::table({});
        if (slot.type() == Value::Type::TableArray) {
            if (slot.as_table_array().empty()) c.fail("empty table array '" + part + "'");
            table = &slot.as_table_array().back();
        } else if (slot.is_table()) {
            table = &slot.as_table();
        } else {
            c.fail("key '" + part + "' is not a table");
        }
    }
    return table;
}

}  // namespace

Table parse(const std::string& text) {
    Cursor c{text};
    Table root;
    Table* current = &root;
    while (true) {
        skip_ws(c, true);
        if (c.eof()) break;
        char ch = c.peek();
        if (ch == '[') {
            c.take();
            bool is_array = !c.eof() && c.peek() == '[';
            if (is_array) c.take();
            auto path = parse_key_path(c);
            skip_ws(c, false);
            if (c.eof() || c.take() != ']') c.fail("expected ']' in table header");
            if (is_array) {
                if (c.eof() || c.take() != ']') c.fail("expected ']]' in table-array header");
                std::vector<std::string> parent_path(path.begin(), path.end() - 1);
                Table* parent = descend(root, parent_path, c);
                Value& slot = (*parent)[path.back()];
                if (slot.type() == Value::Type::None) slot = Value::table_array({});
                if (slot.type() != Value::Type::TableArray)
                    c.fail("key '" + path.back() + "' is not an array of tables");
                slot.as_table_array().push_back({});
                current = &slot.as_table_array().back();
            } else {
                current = descend(root, path, c);
            }
        } else {
            std::string key = ch == '"' ? parse_basic_string(c) : parse_bare_key(c);
            skip_ws(c, false);
            if (c.eof() || c.take() != '=') c.fail("expected '=' after key '" + key + "'");
            (*current)[key] = parse_value(c);
        }
    }
    return root;
}

Table parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

const Value* find(const Table& root, const std::string& dotted_key) {
    const Table* table = &root;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = dotted_key.find('.', start);
        std::string part = dotted_key.substr(start, dot == std::string::npos ? dot : dot - start);
        auto it = table->find(part);
        if (it == table->end()) return nullptr;
        if (dot == std::string::npos) return &it->second;
        if (!it->second.is_table()) return nullptr;
        table = &it->second.as_table();
        start = dot + 1;
    }
}

double get_float(const Table& root, const std::string& key, double fallback) {
    const Value* v = find(root, key);
    return v == nullptr ? fallback : v->as_float();
}

double require_float(const Table& root, const std::string& key) {
    const Value* v = find(root, key);
    if (v == nullptr) throw ParseError("missing required config key '" + key + "'");
    return v->as_float();
}

long long get_int(const Table& root, const std::string& key, long long fallback) {
    const Value* v = find(root, key);
    return v == nullptr ? fallback : v->as_integer();
}

bool get_bool(const Table& root, const std::string& key, bool fallback) {
    const Value* v = find(root, key);
    return v == nullptr ? fallback : v->as_boolean();
}

std::string get_string(const Table& root, const std::string& key, const std::string& fallback) {
    const Value* v = find(root, key);
    return v == nullptr ? fallback : v->as_string();
}

}  // namespace leosim::toml
