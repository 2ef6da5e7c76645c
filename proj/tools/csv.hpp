#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "siri/dataset.hpp"

namespace siri::cli {

// Reads a rectangular CSV with one header row. Every column except
// `response` becomes a predictor, in file order. Throws DataError naming
// the offending data row (1-based) and column.
Dataset load_csv(const std::string& path, const std::string& response);
Dataset parse_csv(std::istream& in, const std::string& response);

// Header x-names then the response; shortest round-trip number formatting.
void write_csv(std::ostream& out, const Dataset& data);

// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> split_record(const std::string& line);

}  // namespace siri::cli
