#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace lalita {

std::vector<std::string> split_tabs(const std::string& line);

std::string read_text_file(const std::string& path);

// Lines without terminators; a trailing '\r' (CRLF input) is stripped.
std::vector<std::string> read_lines(const std::string& path);
std::vector<std::string> split_lines(const std::string& text);

// Shortest decimal form that round-trips the exact double value.
std::string format_double(double v);

// Strict full-consumption parse; `where` names the offending location.
double parse_double(const std::string& text, const std::string& where);

// Writes via a temp file in the same directory, then renames into place.
void write_file_atomic(const std::string& path,
                       const std::function<void(std::ostream&)>& emit);

void write_text_file_atomic(const std::string& path, const std::string& content);

} // namespace lalita
