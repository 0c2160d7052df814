#pragma once

#include <stdexcept>
#include <string>

namespace perphedge {

// Every failure mode the library reports. The CLI maps these onto stable
// exit codes (see cli.hpp), so names are part of the tool's contract.
enum class Errc {
    io_error,
    malformed_row,
    gap_too_large,
    non_positive_price,
    no_overlap,
    step_mismatch,
    horizon_too_long,
    series_too_short,
    too_few_samples,
    degenerate_sample,
    clock_after_funding,
    non_positive_b,
    no_root,
    window_too_short,
    degenerate_baseline,
    bad_ordering,
    degenerate_denominator,
    bad_config,
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::io_error: return "IoError";
    case Errc::malformed_row: return "MalformedRow";
    case Errc::gap_too_large: return "GapTooLarge";
    case Errc::non_positive_price: return "NonPositivePrice";
    case Errc::no_overlap: return "NoOverlap";
    case Errc::step_mismatch: return "StepMismatch";
    case Errc::horizon_too_long: return "HorizonTooLong";
    case Errc::series_too_short: return "SeriesTooShort";
    case Errc::too_few_samples: return "TooFewSamples";
    case Errc::degenerate_sample: return "DegenerateSample";
    case Errc::clock_after_funding: return "ClockAfterFunding";
    case Errc::non_positive_b: return "NonPositiveB";
    case Errc::no_root: return "NoRoot";
    case Errc::window_too_short: return "WindowTooShort";
    case Errc::degenerate_baseline: return "DegenerateBaseline";
    case Errc::bad_ordering: return "BadOrdering";
    case Errc::degenerate_denominator: return "DegenerateDenominator";
    case Errc::bad_config: return "BadConfig";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

namespace detail {
[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) fail(code, what);
}
} // namespace detail

} // namespace perphedge
