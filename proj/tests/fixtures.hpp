#pragma once

#include <array>
#include <string_view>

#include "upcycle/pword.hpp"

namespace upcycle::fixtures {

inline constexpr std::string_view kU4 = "(001*110*)";

// The seven binary (2,8,1) upcycles.
inline constexpr std::array<std::string_view, 7> kBinary8 = {
    "(0000010*1111101*0010010*1101101*1110000*0001111*1110011*0101100*"
    "1110010*0101001*1000110*0100001*1011110*0101101*0000110*1101001*)",
    "(0000001*1111110*0111001*1110110*0100001*1011110*0010001*1101110*"
    "0101001*1100100*0011011*1100110*0110100*1001010*0110000*1001110*)",
    "(0000001*1101110*1111001*0101110*0010101*1101010*0010001*0001110*"
    "1011001*0000110*1110001*0100111*1011000*0100110*1010001*1111110*)",
    "(0000001*0111110*1010001*0100110*1011001*0101110*0010101*1101010*"
    "0010001*1001110*0110001*1101110*1000011*0111100*1000001*1111110*)",
    "(0100001*1011110*0101101*1110011*0101100*1110010*0101001*1000110*"
    "0100000*1011101*0010010*1111101*0110000*0001111*1110000*1001101*)",
    "(0000001*0111101*1010010*1101101*0010110*1100001*1010110*0100001*"
    "0010010*0111001*1000110*0111100*1010011*0111110*1000001*1111110*)",
    "(1011010*1110011*0100000*0011111*0100100*1011011*0101100*1110111*"
    "0101000*1110001*0001010*1100000*1011111*1100001*0011010*0100101*)",
};

// (4,4,1) upcycle from the alphabet multiplier on (001*110*), k = 2.
inline constexpr std::string_view kAlphMult =
    "(001*110*003*112*021*130*023*132*201*310*203*312*221*330*223*332*)";

// Cross-join of kAlphMult with x = 3*1, y = 21*.
inline constexpr std::string_view kCrossJoined =
    "(001*110*003*132*201*310*203*312*221*130*023*112*021*330*223*332*)";

// The two De Bruijn lifts of (001*110*).
inline constexpr std::string_view kLift1 = "(0010110000111101)";
inline constexpr std::string_view kLift2 = "(0010110100111100)";

// De Bruijn cycle that is not a lift of (001*110*).
inline constexpr std::string_view kNotLift = "(0010111101001100)";

inline CycPWord cyc(std::string_view s, AlphabetSize a = 2) { return parse_cyclic(s, a); }
inline PWord lin(std::string_view s, AlphabetSize a = 2) { return parse_linear(s, a); }

inline CycPWord binary8(std::size_t i) { return cyc(kBinary8.at(i)); }

}  // namespace upcycle::fixtures
