#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace onlz::cli {

enum exit_code : int { ok = 0, io_error = 1, usage_error = 2, length_mismatch = 3, verify_failed = 4 };

enum class OutputFormat { text, json };

struct RunConfig {
    std::optional<std::string> input;            ///< file path; unset with use_stdin
    bool use_stdin = false;
    std::optional<std::uint64_t> sigma;          ///< exclusive with infer
    bool infer = false;
    std::optional<std::uint64_t> length;         ///< declared n, required for streamed stdin
    std::optional<unsigned> block_size;          ///< r override, at least 1
    OutputFormat format = OutputFormat::text;
    bool verify = false;
    bool spot_check = false;
    std::uint64_t oracle_cap = 100000;
    bool stats = false;
    bool bench = false;
    std::vector<std::uint64_t> bench_sizes;
    bool dna = false;
    std::uint64_t seed = 1;
    bool inject_fault = false;
};

/// \brief Parses the command line and runs the requested command.
///
/// Factors and reports go to \p out, diagnostics to \p err. Standard input is
/// read from \p in. Returns the process exit code.
int main(int argc, char const* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace onlz::cli
