#pragma once

#include <stdexcept>
#include <string>

namespace honeykit {

enum class GenError {
    insufficient_support,    // rejection budget exhausted against a small model
    insufficient_diversity,  // tweak-based generator cannot reach n distinct
    dead_end,                // Markov sampling hit an unseen context with delta=0
};

inline const char* to_string(GenError e) {
    switch (e) {
        case GenError::insufficient_support: return "insufficient_support";
        case GenError::insufficient_diversity: return "insufficient_diversity";
        case GenError::dead_end: return "dead_end";
    }
    return "unknown";
}

class GenerationError : public std::runtime_error {
public:
    GenerationError(GenError code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    GenError code() const { return code_; }

private:
    GenError code_;
};

}  // namespace honeykit
