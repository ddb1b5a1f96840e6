#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace leosim::toml {

/// Minimal TOML value tree: tables, array-of-tables, inline tables, arrays,
/// strings, integers, floats, booleans. Covers the scenario-file grammar;
/// valid TOML throughout.
class Value;
using Table = std::map<std::string, Value>;
using Array = std::vector<Value>;

class Value {
public:
    enum class Type { None, Integer, Float, Boolean, String, ArrayV, TableV, TableArray };

    Value() = default;
    static Value integer(long long v);
    static Value floating(double v);
    static Value boolean(bool v);
    static Value string(std::string v);
    static Value array(Array v);
    static Value table(Table v);
    static Value table_array(std::vector<Table> v);

    Type type() const { return type_; }
    bool is_table() const { return type_ == Type::TableV; }

    long long as_integer() const;
    double as_float() const;  // integers widen
    bool as_boolean() const;
    const std::string& as_string() const;
    const Array& as_array() const;
    const Table& as_table() const;
    Table& as_table();
    const std::vector<Table>& as_table_array() const;
    std::vector<Table>& as_table_array();

private:
    Type type_ = Type::None;
    long long int_ = 0;
    double float_ = 0.0;
    bool bool_ = false;
    std::string string_;
    std::shared_ptr<Array> array_;
    std::shared_ptr<Table> table_;
    std::shared_ptr<std::vector<Table>> table_array_;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Table parse(const std::string& text);
Table parse_file(const std::string& path);

/// Dotted-path lookups against a parsed table; `required` variants throw
/// ParseError naming the key.
const Value* find(const Table& root, const std::string& dotted_key);
double get_float(const Table& root, const std::string& key, double fallback);
double require_float(const Table& root, const std::string& key);
long long get_int(const Table& root, const std::string& key, long long fallback);
bool get_bool(const Table& root, const std::string& key, bool fallback);
std::string get_string(const Table& root, const std::string& key, const std::string& fallback);

}  // namespace leosim::toml
