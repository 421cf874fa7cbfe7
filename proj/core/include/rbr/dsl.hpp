#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "rbr/protocol.hpp"

namespace rbr {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Protocol parse_protocol(std::string_view text);
Protocol load_protocol(const std::string& path);
std::string print_protocol(const Protocol& p);

}  // namespace rbr
