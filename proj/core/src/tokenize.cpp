#include "semdirb/tokenize.hpp"

#include <string_view>

namespace semdirb {
namespace {

constexpr std::string_view kPunctuation = "!\"$#%&'()*+,-./:;<=>?@[]^_`{|}~";

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_alpha(char c) { return is_lower(c) || is_upper(c); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool boundary_before(std::string_view text, std::size_t i) {
    const char prev = text[i - 1];
    const char c = text[i];
    if (is_lower(prev) && is_upper(c)) return true;
    if (is_alpha(prev) && is_digit(c)) return true;
    if (is_digit(prev) && is_alpha(c)) return true;
    if (is_upper(prev) && is_upper(c) && i + 1 < text.size() && is_lower(text[i + 1])) return true;
    return false;
}

}  // namespace

bool is_split_punctuation(char c) { return kPunctuation.find(c) != std::string_view::npos; }

bool is_punctuation_token(std::string_view token) {
    return token.size() == 1 && is_split_punctuation(token.front());
}

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (is_split_punctuation(c)) {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
            tokens.emplace_back(1, c);
            continue;
        }
        if (!cur.empty() && boundary_before(text, i)) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
        cur += c;
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

TokenizedEntry tokenize(const PathEntry& entry) {
    TokenizedEntry te;
    te.entry_id = entry.id;
    te.tokens = split_words(entry.raw);
    te.sentence = join_tokens(te.tokens);
    return te;
}

std::vector<TokenizedEntry> tokenize_all(const Wordlist& wordlist) {
    std::vector<TokenizedEntry> out;
    out.reserve(wordlist.size());
    for (const auto& e : wordlist.entries()) out.push_back(tokenize(e));
    return out;
}

std::string format_sentences_tsv(const Wordlist& wordlist, const std::vector<TokenizedEntry>& tokenized) {
    std::string out;
    for (const auto& te : tokenized) {
        out += std::to_string(te.entry_id);
        out += '\t';
        out += wordlist[te.entry_id].raw;
        out += '\t';
        out += te.sentence;
        out += '\n';
    }
    return out;
}

}  // namespace semdirb
