#ifndef RESROOT_TRACE_IO_HPP
#define RESROOT_TRACE_IO_HPP

#include "resroot/averaging.hpp"

#include <stdexcept>
#include <string>

namespace resroot {

class TraceParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Three equivalent encodings. Roots travel as their integer coefficients
// over the base, rationals as exact "p/q" strings; nothing in a trace is
// ever a float. The text form is the line format replay tooling reads
// back; json-lines and csv carry the same fields for other consumers.
std::string trace_to_text(const RootSystem& rs, const AveragingTrace& tr);
std::string trace_to_jsonl(const RootSystem& rs, const AveragingTrace& tr);
std::string trace_to_csv(const RootSystem& rs, const AveragingTrace& tr);

// Sniffs which of the three encodings `content` uses and parses it.
// Malformed input throws TraceParseError; semantic validity is replay's
// job, not the parser's.
AveragingTrace parse_trace(const std::string& content);

} // namespace resroot

#endif
