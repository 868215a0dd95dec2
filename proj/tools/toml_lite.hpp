#pragma once

// Minimal TOML-style reader for flat key-value configs with [table] headers,
// '#' comments, quoted strings and plain numbers. Enough for lab-notebook run
// configs; not a general TOML implementation.

#include <string>
#include <vector>

namespace toml_lite {

struct Entry {
    std::string table;  // "" for root
    std::string key;
    std::string raw;    // trimmed value text
    bool is_string = false;
    int line = 0;
};

struct ParseError {
    int line = 0;
    std::string message;
};

// Returns entries in file order; on failure fills `error` and returns false.
bool parse_file(const std::string& path, std::vector<Entry>& out, ParseError& error);
bool parse_text(const std::string& text, std::vector<Entry>& out, ParseError& error);

// Numeric conversion; returns false when the raw text is not a number.
bool to_double(const Entry& e, double& out);

}  // namespace toml_lite
