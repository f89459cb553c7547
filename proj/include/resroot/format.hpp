#ifndef RESROOT_FORMAT_HPP
#define RESROOT_FORMAT_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace resroot {

enum class OutputFormat { Table, JsonLines, Csv };

OutputFormat parse_format(const std::string& s);
std::string format_name(OutputFormat f);

// Row-oriented payload every command renders from. All cells are strings
// (rationals already in "p/q" form), so the three renderers cannot
// disagree about values, only about syntax.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string render(const Table& t, OutputFormat f);

} // namespace resroot

#endif
