#pragma once

// Hand-editable text formats for channels and randomness sources.
//
// Channel file ('#' starts a comment):
//   name <label>            optional
//   nx <int>
//   ny <int>
//   nz <int>
//   kernel
//   <ny*nz reals>           one row per input symbol, y-major z-minor
//
// Source file, either explicit
//   alphabet <int>
//   probs <reals>
// or the biased benchmark shorthand
//   biased_example
//   n <int>                 optional, defaults to the CLI block length
//   alpha <real>
//   R <real>

#include <stdexcept>
#include <string>

#include "wrl/channel.hpp"
#include "wrl/distribution.hpp"

namespace wrl {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, int line, const std::string& message)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

WiretapChannel parse_channel_file(const std::string& path);
WiretapChannel parse_channel_text(std::istream& is, const std::string& filename);

struct SourceSpec {
    enum class Kind { explicit_probs, biased_example } kind;
    // explicit_probs
    std::vector<double> probs;
    // biased_example; n == 0 means "use the CLI block length"
    unsigned n = 0;
    double alpha = 0.0;
    double R = 0.0;
};

SourceSpec parse_source_file(const std::string& path);
SourceSpec parse_source_text(std::istream& is, const std::string& filename);

}  // namespace wrl
