#pragma once

#include <stdexcept>
#include <string>

namespace qexpand {

// Exact division produced a nonzero remainder, a half-integer exponent came
// out odd, or some other "cannot happen if the formulas are right" condition
// fired. Distinct from falsification: this indicates a transcription or
// arithmetic bug in the toolkit itself.
struct arithmetic_bug : std::logic_error {
    explicit arithmetic_bug(const std::string& what) : std::logic_error(what) {}
};

// An operation was asked of a family that cannot provide it, e.g. a closed
// form S for D(d) with d >= 2. The message points at the supported path.
struct capability_error : std::runtime_error {
    explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

// A claim the toolkit set out to verify failed on concrete data. Carries a
// human-readable description of the offending instance.
struct falsification_error : std::runtime_error {
    explicit falsification_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qexpand
