#pragma once

// Run configuration shared by the command-line tool: defaults, then
// TROPBASIS_SEED / TROPBASIS_THREADS from the environment, then explicit flags.

#include "tropbasis/errors.hpp"
#include "tropbasis/lp.hpp"

#include <cstdint>
#include <cstdlib>
#include <string>

namespace tropbasis {

enum class OutputFormat { text, json };

struct Config {
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    int retry_limit = 8;
    LpBackend lp_backend = LpBackend::fourier_motzkin;
    OutputFormat output_format = OutputFormat::text;

    void apply_environment() {
        if (const char* s = std::getenv("TROPBASIS_SEED")) seed = parse_seed(s, "TROPBASIS_SEED");
        if (const char* t = std::getenv("TROPBASIS_THREADS")) threads = parse_threads(t, "TROPBASIS_THREADS");
    }

    static std::uint64_t parse_seed(const std::string& text, const std::string& source) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size() || text.front() == '-')
            throw ArgumentError(source + " must be a nonnegative integer, got '" + text + "'");
        return v;
    }

    static std::size_t parse_threads(const std::string& text, const std::string& source) {
        auto v = parse_seed(text, source);
        if (v < 1 || v > 1024) throw ArgumentError(source + " must lie in 1..1024, got '" + text + "'");
        return static_cast<std::size_t>(v);
    }
};

inline LpBackend parse_lp_backend(const std::string& s) {
    if (s == "fourier_motzkin" || s == "fm") return LpBackend::fourier_motzkin;
    if (s == "simplex") return LpBackend::simplex;
    throw ArgumentError("unknown LP backend '" + s + "'");
}

}  // namespace tropbasis
