#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "semdirb/wordlist.hpp"

namespace semdirb {

/// The 31 ASCII punctuation characters that split path names:
///   ! " $ # % & ' ( ) * + , - . / : ; < = > ? @ [ ] ^ _ ` { | } ~
/// Backslash is not in the set and stays inside its token.
bool is_split_punctuation(char c);

/// True for a token made of exactly one split-punctuation character.
bool is_punctuation_token(std::string_view token);

struct TokenizedEntry {
    EntryId entry_id = 0;
    std::vector<std::string> tokens;
    std::string sentence;  // tokens joined by single spaces

    friend bool operator==(const TokenizedEntry&, const TokenizedEntry&) = default;
};

/// Splits a path name into words. Every punctuation character becomes its
/// own token. Words are further split at lower-to-upper camel boundaries, at
/// letter/digit boundaries, and before the last capital of an upper-case run
/// that is followed by a lower-case letter ("XMLParser" -> "XML" "Parser").
/// ASCII-only rules; other bytes stay in the current token.
std::vector<std::string> split_words(std::string_view text);

TokenizedEntry tokenize(const PathEntry& entry);
std::vector<TokenizedEntry> tokenize_all(const Wordlist& wordlist);

std::string join_tokens(const std::vector<std::string>& tokens);

/// `entry_id<TAB>raw<TAB>sentence` per entry, LF endings.
std::string format_sentences_tsv(const Wordlist& wordlist, const std::vector<TokenizedEntry>& tokenized);

}  // namespace semdirb
