#include "wrl/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace wrl {

namespace {

// Line reader that strips comments and skips blanks, tracking line numbers.
class Lines {
public:
    Lines(std::istream& is, std::string file) : is_(is), file_(std::move(file)) {}

    bool next(std::string& out) {
        std::string raw;
        while (std::getline(is_, raw)) {
            ++line_;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            const auto begin = raw.find_first_not_of(" \t\r");
            if (begin == std::string::npos) continue;
            const auto end = raw.find_last_not_of(" \t\r");
            out = raw.substr(begin, end - begin + 1);
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(file_, line_, msg);
    }

    int line() const { return line_; }
    const std::string& file() const { return file_; }

private:
    std::istream& is_;
    std::string file_;
    int line_ = 0;
};

bool parse_key_value(const std::string& line, const std::string& key, std::string& value) {
    if (line.rfind(key, 0) != 0) return false;
    if (line.size() == key.size()) {
        value.clear();
        return true;
    }
    const char sep = line[key.size()];
    if (sep != ' ' && sep != '\t') return false;
    const auto begin = line.find_first_not_of(" \t", key.size());
    value = begin == std::string::npos ? std::string() : line.substr(begin);
    return true;
}

std::size_t parse_size(Lines& lines, const std::string& value, const std::string& what) {
    std::istringstream ss(value);
    long long v = 0;
    if (!(ss >> v) || v < 1) lines.fail(what + " must be a positive integer");
    std::string extra;
    if (ss >> extra) lines.fail("unexpected token after " + what);
    return static_cast<std::size_t>(v);
}

double parse_real(Lines& lines, const std::string& value, const std::string& what) {
    std::istringstream ss(value);
    double v = 0.0;
    if (!(ss >> v) || !std::isfinite(v)) lines.fail(what + " must be a real number");
    std::string extra;
    if (ss >> extra) lines.fail("unexpected token after " + what);
    return v;
}

}  // namespace

WiretapChannel parse_channel_text(std::istream& is, const std::string& filename) {
    Lines lines(is, filename);
    std::string name;
    std::size_t nx = 0, ny = 0, nz = 0;
    std::string line, value;
    bool saw_kernel = false;
    while (lines.next(line)) {
        if (parse_key_value(line, "name", value)) {
            name = value;
        } else if (parse_key_value(line, "nx", value)) {
            nx = parse_size(lines, value, "nx");
        } else if (parse_key_value(line, "ny", value)) {
            ny = parse_size(lines, value, "ny");
        } else if (parse_key_value(line, "nz", value)) {
            nz = parse_size(lines, value, "nz");
        } else if (line == "kernel") {
            saw_kernel = true;
            break;
        } else {
            lines.fail("unexpected line: " + line);
        }
    }
    if (nx == 0 || ny == 0 || nz == 0) lines.fail("nx, ny, nz must precede the kernel");
    if (!saw_kernel) lines.fail("missing kernel section");

    std::vector<double> kernel;
    kernel.reserve(nx * ny * nz);
    for (std::size_t x = 0; x < nx; ++x) {
        if (!lines.next(line)) lines.fail("kernel row " + std::to_string(x) + " missing");
        std::istringstream ss(line);
        double v = 0.0;
        std::size_t got = 0;
        double row_sum = 0.0;
        while (ss >> v) {
            if (v < 0.0 || !std::isfinite(v)) {
                lines.fail("kernel row " + std::to_string(x) + " (x=" + std::to_string(x) +
                           ") has a negative or non-finite entry");
            }
            kernel.push_back(v);
            row_sum += v;
            ++got;
        }
        if (!ss.eof()) {
            lines.fail("kernel row " + std::to_string(x) + " has a malformed entry");
        }
        if (got != ny * nz) {
            lines.fail("kernel row " + std::to_string(x) + " has " + std::to_string(got) +
                       " entries, expected " + std::to_string(ny * nz));
        }
        if (std::fabs(row_sum - 1.0) > 1e-9) {
            lines.fail("kernel row " + std::to_string(x) + " sums to " +
                       std::to_string(row_sum) + ", expected 1 within 1e-9");
        }
    }
    if (lines.next(line)) lines.fail("unexpected trailing line: " + line);
    return WiretapChannel(nx, ny, nz, std::move(kernel), std::move(name));
}

WiretapChannel parse_channel_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError(path, 0, "cannot open file");
    return parse_channel_text(f, path);
}

SourceSpec parse_source_text(std::istream& is, const std::string& filename) {
    Lines lines(is, filename);
    std::string line, value;
    if (!lines.next(line)) lines.fail("empty source file");

    SourceSpec spec;
    if (line == "biased_example") {
        spec.kind = SourceSpec::Kind::biased_example;
        bool saw_alpha = false, saw_r = false;
        while (lines.next(line)) {
            if (parse_key_value(line, "n", value)) {
                spec.n = static_cast<unsigned>(parse_size(lines, value, "n"));
            } else if (parse_key_value(line, "alpha", value)) {
                spec.alpha = parse_real(lines, value, "alpha");
                saw_alpha = true;
            } else if (parse_key_value(line, "R", value)) {
                spec.R = parse_real(lines, value, "R");
                saw_r = true;
            } else {
                lines.fail("unexpected line: " + line);
            }
        }
        if (!saw_alpha || !saw_r) lines.fail("biased_example needs alpha and R");
        if (spec.alpha <= 0.0 || spec.alpha >= 0.5) {
            lines.fail("alpha must lie strictly between 0 and 1/2");
        }
        if (spec.R <= 0.0) lines.fail("R must be positive");
        return spec;
    }

    spec.kind = SourceSpec::Kind::explicit_probs;
    std::size_t alphabet = 0;
    if (parse_key_value(line, "alphabet", value)) {
        alphabet = parse_size(lines, value, "alphabet");
    } else {
        lines.fail("expected 'alphabet <int>' or 'biased_example'");
    }
    if (!lines.next(line) || !parse_key_value(line, "probs", value)) {
        lines.fail("expected 'probs <reals>'");
    }
    std::istringstream ss(value);
    double v = 0.0;
    double sum = 0.0;
    while (ss >> v) {
        if (v < 0.0 || !std::isfinite(v)) lines.fail("probs entries must be nonnegative");
        spec.probs.push_back(v);
        sum += v;
    }
    if (!ss.eof()) lines.fail("probs has a malformed entry");
    if (spec.probs.size() != alphabet) {
        lines.fail("probs has " + std::to_string(spec.probs.size()) +
                   " entries, expected " + std::to_string(alphabet));
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
        lines.fail("probs sums to " + std::to_string(sum) + ", expected 1 within 1e-9");
    }
    if (lines.next(line)) lines.fail("unexpected trailing line: " + line);
    return spec;
}

SourceSpec parse_source_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError(path, 0, "cannot open file");
    return parse_source_text(f, path);
}

}  // namespace wrl
