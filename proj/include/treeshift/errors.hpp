#pragma once

#include <stdexcept>
#include <string>

namespace treeshift {

// Machine-readable failure classes. Every throwing path in the library uses
// one of these so the CLI can map failures onto stable exit codes.
enum class errc {
    input,        // malformed file, bad argument, inconsistent objects
    budget,       // an enumeration guard tripped
    depth,        // a metric comparison could not be resolved at the given depth
    precondition, // caller violated a documented precondition
    witness,      // a bounded witness search came up empty
    internal,     // invariant breakage inside the library
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& msg)
        : std::runtime_error(std::string(code_name_of(code)) + ": " + msg), code_(code) {}

    errc code() const noexcept { return code_; }
    const char* code_name() const noexcept { return code_name_of(code_); }

    static const char* code_name_of(errc c) noexcept {
        switch (c) {
            case errc::input: return "E_INPUT";
            case errc::budget: return "E_BUDGET";
            case errc::depth: return "E_DEPTH";
            case errc::precondition: return "E_PRECONDITION";
            case errc::witness: return "E_WITNESS";
            case errc::internal: return "E_INTERNAL";
        }
        return "E_UNKNOWN";
    }

    // CLI contract: 0 = pass, 1 = verdict failure, 2 = input error, 3 = budget.
    static int exit_code_of(errc c) noexcept {
        switch (c) {
            case errc::budget: return 3;
            case errc::internal: return 4;
            default: return 2;
        }
    }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace treeshift
