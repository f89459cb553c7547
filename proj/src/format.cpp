#include "resroot/format.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace resroot {

OutputFormat parse_format(const std::string& s) {
    if (s == "table") return OutputFormat::Table;
    if (s == "json-lines") return OutputFormat::JsonLines;
    if (s == "csv") return OutputFormat::Csv;
    throw std::invalid_argument("unknown output format: " + s);
}

std::string format_name(OutputFormat f) {
    switch (f) {
    case OutputFormat::Table: return "table";
    case OutputFormat::JsonLines: return "json-lines";
    case OutputFormat::Csv: return "csv";
    }
    throw std::logic_error("format_name: bad enum value");
}

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string render(const Table& t, OutputFormat f) {
    std::ostringstream os;
    switch (f) {
    case OutputFormat::Table: {
        std::vector<std::size_t> width(t.columns.size(), 0);
        for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
                width[c] = std::max(width[c], row[c].size());
        }
        auto line = [&](const std::vector<std::string>& cells) {
            std::string out;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c) out += "  ";
                out += cells[c];
                if (c + 1 < cells.size())
                    out.append(width[c] - std::min(width[c], cells[c].size()), ' ');
            }
            // an empty trailing cell would otherwise leave padding behind
            while (!out.empty() && out.back() == ' ') out.pop_back();
            os << out << '\n';
        };
        line(t.columns);
        for (const auto& row : t.rows) line(row);
        break;
    }
    case OutputFormat::JsonLines: {
        for (const auto& row : t.rows) {
            nlohmann::json rec;
            for (std::size_t c = 0; c < t.columns.size(); ++c)
                rec[t.columns[c]] = c < row.size() ? row[c] : "";
            os << rec.dump() << '\n';
        }
        break;
    }
    case OutputFormat::Csv: {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) os << ',';
            os << csv_cell(t.columns[c]);
        }
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) os << ',';
                os << csv_cell(row[c]);
            }
            os << '\n';
        }
        break;
    }
    }
    return os.str();
}

} // namespace resroot
