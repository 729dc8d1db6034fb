#pragma once

namespace disco {

enum class Status { True, False, Unknown };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::True: return "TRUE";
    case Status::False: return "FALSE";
    case Status::Unknown: return "UNKNOWN";
    }
    return "?";
}

inline Status kleene_not(Status s) {
    if (s == Status::True) return Status::False;
    if (s == Status::False) return Status::True;
    return Status::Unknown;
}

inline Status kleene_implies(Status a, Status b) {
    if (a == Status::False || b == Status::True) return Status::True;
    if (a == Status::True && b == Status::False) return Status::False;
    return Status::Unknown;
}

} // namespace disco
