#include "rollframe/cli/config.hpp"
#include "rollframe/zoo.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

namespace rollframe::cli {

namespace {

// Minimal TOML-style tree: [table] headers, [[list]] headers, key = value
// lines with string / number / bool / flat-array values, # comments.

struct Value {
    enum class Kind { Number, Bool, String, Array } kind = Kind::Number;
    double num = 0.0;
    bool boolean = false;
    std::string str;
    std::vector<double> arr;
    int line = 0;
};

struct Table {
    std::map<std::string, Value> kv;
    std::map<std::string, Table> children;
    std::map<std::string, std::vector<Table>> lists;
};

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Table parse() {
        Table root;
        Table* current = &root;
        std::istringstream in(text_);
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_;
            std::string line = strip_comment(raw);
            size_t i = skip_ws(line, 0);
            if (i >= line.size()) continue;
            if (line[i] == '[') {
                current = parse_header(root, line, i);
            } else {
                parse_kv(*current, line, i);
            }
        }
        return root;
    }

private:
    std::string strip_comment(const std::string& s) const {
        bool in_str = false;
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '"') in_str = !in_str;
            if (s[i] == '#' && !in_str) return s.substr(0, i);
        }
        return s;
    }

    static size_t skip_ws(const std::string& s, size_t i) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        return i;
    }

    [[noreturn]] void fail(const std::string& msg, size_t col) const {
        throw ParseError(msg, line_, static_cast<int>(col) + 1);
    }

    std::string parse_key(const std::string& s, size_t& i) const {
        size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '-'))
            ++i;
        if (i == start) fail("expected a key", i);
        return s.substr(start, i - start);
    }

    Table* parse_header(Table& root, const std::string& s, size_t i) {
        const bool is_list = s.compare(i, 2, "[[") == 0;
        i += is_list ? 2 : 1;
        std::vector<std::string> path;
        while (true) {
            i = skip_ws(s, i);
            path.push_back(parse_key(s, i));
            i = skip_ws(s, i);
            if (i < s.size() && s[i] == '.') {
                ++i;
                continue;
            }
            break;
        }
        const std::string closer = is_list ? "]]" : "]";
        if (s.compare(i, closer.size(), closer) != 0) fail("unterminated table header", i);
        i = skip_ws(s, i + closer.size());
        if (i < s.size()) fail("trailing characters after table header", i);

        Table* node = &root;
        for (size_t k = 0; k + 1 < path.size(); ++k) node = &node->children[path[k]];
        if (is_list) {
            node->lists[path.back()].emplace_back();
            return &node->lists[path.back()].back();
        }
        return &node->children[path.back()];
    }

    void parse_kv(Table& table, const std::string& s, size_t i) {
        const std::string key = parse_key(s, i);
        i = skip_ws(s, i);
        if (i >= s.size() || s[i] != '=') fail("expected '=' after key '" + key + "'", i);
        i = skip_ws(s, i + 1);
        Value v = parse_value(s, i);
        i = skip_ws(s, i);
        if (i < s.size()) fail("trailing characters after value", i);
        if (table.kv.count(key)) fail("duplicate key '" + key + "'", i);
        v.line = line_;
        table.kv[key] = std::move(v);
    }

    Value parse_value(const std::string& s, size_t& i) {
        Value v;
        if (i >= s.size()) fail("missing value", i);
        if (s[i] == '"') {
            size_t end = s.find('"', i + 1);
            if (end == std::string::npos) fail("unterminated string", i);
            v.kind = Value::Kind::String;
            v.str = s.substr(i + 1, end - i - 1);
            i = end + 1;
            return v;
        }
        if (s[i] == '[') {
            v.kind = Value::Kind::Array;
            ++i;
            while (true) {
                i = skip_ws(s, i);
                if (i < s.size() && s[i] == ']') {
                    ++i;
                    return v;
                }
                v.arr.push_back(parse_number(s, i));
                i = skip_ws(s, i);
                if (i < s.size() && s[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < s.size() && s[i] == ']') {
                    ++i;
                    return v;
                }
                fail("expected ',' or ']' in array", i);
            }
        }
        if (s.compare(i, 4, "true") == 0) {
            v.kind = Value::Kind::Bool;
            v.boolean = true;
            i += 4;
            return v;
        }
        if (s.compare(i, 5, "false") == 0) {
            v.kind = Value::Kind::Bool;
            v.boolean = false;
            i += 5;
            return v;
        }
        v.kind = Value::Kind::Number;
        v.num = parse_number(s, i);
        return v;
    }

    double parse_number(const std::string& s, size_t& i) {
        double out = 0.0;
        const char* begin = s.data() + i;
        const char* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(begin, end, out);
        if (ec != std::errc{}) fail("expected a number", i);
        i = static_cast<size_t>(ptr - s.data());
        return out;
    }

    const std::string& text_;
    int line_ = 0;
};

class Validator {
public:
    ExperimentConfig build(const Table& root) {
        cfg_.tasks.clear();

        const Table* manifold = require_table(root, "manifold");
        if (manifold) {
            cfg_.manifold_name = get_string(*manifold, "manifold", "name", "");
            if (cfg_.manifold_name.empty()) {
                violations_.push_back("manifold.name is required");
            } else {
                const auto& names = zoo_chart_names();
                if (std::find(names.begin(), names.end(), cfg_.manifold_name) == names.end()) {
                    std::string known;
                    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
                    violations_.push_back("unknown manifold '" + cfg_.manifold_name +
                                          "' (known: " + known + ")");
                }
            }
            cfg_.manifold_params = number_table(*manifold, "manifold.params", "params");
        }

        const Table* curve = require_table(root, "curve");
        if (curve) {
            cfg_.curve_kind = get_string(*curve, "curve", "kind", "");
            if (cfg_.curve_kind.empty()) violations_.push_back("curve.kind is required");
            cfg_.curve_params = number_table(*curve, "curve.params", "params");
            auto it = curve->kv.find("interval");
            if (it == curve->kv.end() || it->second.kind != Value::Kind::Array ||
                it->second.arr.size() != 2) {
                violations_.push_back("curve.interval must be an array [t_min, t_max]");
            } else {
                cfg_.t0 = it->second.arr[0];
                cfg_.t1 = it->second.arr[1];
                if (!(cfg_.t1 > cfg_.t0))
                    violations_.push_back("curve.interval must satisfy t_min < t_max");
            }
        }

        const Table* grid = require_table(root, "grid");
        if (grid) {
            cfg_.steps = static_cast<int>(get_number(*grid, "grid", "steps", 256));
            if (cfg_.steps < 16) violations_.push_back("grid.steps must be >= 16");
        }

        auto lists = root.lists.find("task");
        const std::vector<Table> empty;
        const auto& tasks = lists == root.lists.end() ? empty : lists->second;
        std::map<std::string, int> outputs;
        int index = 0;
        for (const auto& t : tasks) {
            ++index;
            TaskSpec spec;
            spec.id = get_string(t, "task", "id", "task" + std::to_string(index));
            spec.type = get_string(t, "task", "type", "");
            static const std::vector<std::string> kinds = {"trace", "transport", "geodesic_check",
                                                           "holonomy", "oracle_compare"};
            if (std::find(kinds.begin(), kinds.end(), spec.type) == kinds.end())
                violations_.push_back("task '" + spec.id + "': unknown type '" + spec.type + "'");
            spec.output = get_string(t, "task", "output", spec.id);
            if (++outputs[spec.output] > 1)
                violations_.push_back("task '" + spec.id + "': duplicate output path '" +
                                      spec.output + "'");
            if (auto it = t.kv.find("t"); it != t.kv.end()) {
                spec.t = it->second.num;
                spec.has_t = true;
            }
            if (auto it = t.kv.find("v"); it != t.kv.end()) {
                if (it->second.kind != Value::Kind::Array)
                    violations_.push_back("task '" + spec.id + "': v must be an array");
                else
                    spec.v = it->second.arr;
            }
            spec.h_oracle = get_number(t, "task", "h_oracle", spec.h_oracle);
            cfg_.tasks.push_back(std::move(spec));
        }

        if (!violations_.empty()) throw ValidationError(std::move(violations_));
        return cfg_;
    }

private:
    const Table* require_table(const Table& root, const std::string& name) {
        auto it = root.children.find(name);
        if (it == root.children.end()) {
            violations_.push_back("missing [" + name + "] section");
            return nullptr;
        }
        return &it->second;
    }

    std::string get_string(const Table& t, const std::string& where, const std::string& key,
                           const std::string& fallback) {
        auto it = t.kv.find(key);
        if (it == t.kv.end()) return fallback;
        if (it->second.kind != Value::Kind::String) {
            violations_.push_back(where + "." + key + " must be a string");
            return fallback;
        }
        return it->second.str;
    }

    double get_number(const Table& t, const std::string& where, const std::string& key,
                      double fallback) {
        auto it = t.kv.find(key);
        if (it == t.kv.end()) return fallback;
        if (it->second.kind != Value::Kind::Number) {
            violations_.push_back(where + "." + key + " must be a number");
            return fallback;
        }
        return it->second.num;
    }

    std::map<std::string, double> number_table(const Table& t, const std::string& where,
                                               const std::string& name) {
        std::map<std::string, double> out;
        auto it = t.children.find(name);
        if (it == t.children.end()) return out;
        for (const auto& [k, v] : it->second.kv) {
            if (v.kind != Value::Kind::Number) {
                violations_.push_back(where + "." + k + " must be a number");
                continue;
            }
            out[k] = v.num;
        }
        return out;
    }

    ExperimentConfig cfg_;
    std::vector<std::string> violations_;
};

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    Parser parser(text);
    const Table root = parser.parse();
    return Validator{}.build(root);
}

} // namespace rollframe::cli
