#pragma once

// Text formats shared by the CLI, fixtures and tests.
//
//   alphabet:     letter a order 3 | pair a a' [order k]
//   factors:      factor 1 cyclic 6 | factor 2 cyclic 0 | factor 1 perm 4 2,1,3,4 2,3,4,1
//   letters:      f1:c^2, f2:g1*g2
//   description:  factor lines, a = ..., b = ..., U = ..., exps = (1,1) (1,2), n = 2
//
// '#' starts a comment. Parse failures throw Error(Parse) tagged with the line number.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "orp/gtg.hpp"
#include "orp/word.hpp"

namespace orp {

std::vector<std::string> splitWords(std::string_view line);
/// Line without its comment, trimmed.
std::string stripLine(std::string_view line);

/// Reads `letter` / `pair` declarations; other lines are ignored.
Alphabet parseAlphabet(const std::string& text);
/// Tokens `name` or `name'`. With `autoDeclare`, unknown names become fresh infinite-order pairs.
Word parseWord(Alphabet& alphabet, const std::string& text, bool autoDeclare = false);

/// Body after "factor i", e.g. "cyclic 6".
std::shared_ptr<const FactorGroup> parseFactor(std::string_view body);
FpLetter parseFpLetter(const FreeProduct& fp, std::string_view token);
/// Whitespace-separated letters; "" or "1" is the empty word. Not normalized.
FpWord parseFpWord(const FreeProduct& fp, std::string_view text);

/// Reads the two factor lines of a file; other lines are ignored.
FreeProduct parseFreeProduct(const std::string& text);
/// Reads a description; picture lines in the same file are skipped. Validates the result.
GtgDescription parseDescription(const std::string& text);

std::string readFile(const std::string& path);

}  // namespace orp
