#pragma once
// Alphabet definitions shared across the toolkit. The working alphabet is
// printable ASCII 0x21..0x7e (94 symbols, space excluded by corpus cleaning),
// partitioned into letters / digits / symbols. Byte 0x01 is reserved as the
// template placeholder and forms its own class.

#include <array>
#include <stdexcept>
#include <string>

namespace honeykit {

inline constexpr char kTemplateTag = '\x01';

enum class CharClass : unsigned char { Letter, Digit, Symbol, Tag };

inline const std::string kLower = "abcdefghijklmnopqrstuvwxyz";
inline const std::string kUpper = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
inline const std::string kLetters = kLower + kUpper;
inline const std::string kDigits = "0123456789";

inline const std::string kSymbols = [] {
    std::string s;
    for (int c = 0x21; c < 0x7f; ++c) {
        char ch = char(c);
        if (!(ch >= 'a' && ch <= 'z') && !(ch >= 'A' && ch <= 'Z') &&
            !(ch >= '0' && ch <= '9'))
            s.push_back(ch);
    }
    return s;
}();  // 32 symbols

// Full 94-char alphabet in ascending byte order.
inline const std::string kSigma = [] {
    std::string s;
    for (int c = 0x21; c < 0x7f; ++c) s.push_back(char(c));
    return s;
}();

// Characters easily confused in some fonts; excluded by easy-to-read
// generators (l, 1, I, O, 0, o).
inline const std::string kAmbiguous = "l1IO0o";

// Restricted symbol set used by the simulated 1Password generators.
inline const std::string kCoreSymbols = "!@#$%^&*()-_+=";

inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_letter(char c) { return is_upper(c) || is_lower(c); }
inline bool is_digit_c(char c) { return c >= '0' && c <= '9'; }
inline bool in_sigma(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u >= 0x21 && u <= 0x7e;
}
inline bool is_symbol(char c) {
    return in_sigma(c) && !is_letter(c) && !is_digit_c(c);
}
inline bool is_ambiguous(char c) {
    return kAmbiguous.find(c) != std::string::npos;
}

inline CharClass class_of(char c) {
    if (is_letter(c)) return CharClass::Letter;
    if (is_digit_c(c)) return CharClass::Digit;
    if (is_symbol(c)) return CharClass::Symbol;
    if (c == kTemplateTag) return CharClass::Tag;
    throw std::invalid_argument("character outside alphabet: byte " +
                                std::to_string(int(static_cast<unsigned char>(c))));
}

inline char class_letter(CharClass c) {
    switch (c) {
        case CharClass::Letter: return 'L';
        case CharClass::Digit: return 'D';
        case CharClass::Symbol: return 'S';
        case CharClass::Tag: return 'T';
    }
    return '?';
}

inline const std::string& class_alphabet(CharClass c) {
    static const std::string tag(1, kTemplateTag);
    switch (c) {
        case CharClass::Letter: return kLetters;
        case CharClass::Digit: return kDigits;
        case CharClass::Symbol: return kSymbols;
        case CharClass::Tag: return tag;
    }
    return kLetters;
}

}  // namespace honeykit
