#include "toml_lite.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace toml_lite {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// strips a trailing comment that is not inside a quoted string
std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    return true;
}

}  // namespace

bool parse_text(const std::string& text, std::vector<Entry>& out, ParseError& error) {
    std::istringstream in(text);
    std::string line;
    std::string table;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') {
                error = {lineno, "unterminated table header"};
                return false;
            }
            table = trim(body.substr(1, body.size() - 2));
            if (!valid_key(table)) {
                error = {lineno, "invalid table name '" + table + "'"};
                return false;
            }
            continue;
        }
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            error = {lineno, "expected key = value"};
            return false;
        }
        Entry e;
        e.table = table;
        e.key = trim(body.substr(0, eq));
        e.line = lineno;
        std::string value = trim(body.substr(eq + 1));
        if (!valid_key(e.key)) {
            error = {lineno, "invalid key '" + e.key + "'"};
            return false;
        }
        if (value.empty()) {
            error = {lineno, "missing value for key '" + e.key + "'"};
            return false;
        }
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') {
                error = {lineno, "unterminated string for key '" + e.key + "'"};
                return false;
            }
            e.raw = value.substr(1, value.size() - 2);
            e.is_string = true;
        } else {
            e.raw = value;
        }
        out.push_back(std::move(e));
    }
    return true;
}

bool parse_file(const std::string& path, std::vector<Entry>& out, ParseError& error) {
    std::ifstream in(path);
    if (!in) {
        error = {0, "cannot open '" + path + "'"};
        return false;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), out, error);
}

bool to_double(const Entry& e, double& out) {
    if (e.is_string) return false;
    const char* begin = e.raw.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + e.raw.size() && !e.raw.empty();
}

}  // namespace toml_lite
