#include "termweave/uri.hpp"

#include <cctype>

namespace termweave::uri {

namespace {

bool is_unreserved(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
           c == '.' || c == '_' || c == '~';
}

bool is_subdelim(char c) {
    switch (c) {
        case '!': case '$': case '&': case '\'': case '(': case ')':
        case '*': case '+': case ',': case ';': case '=':
            return true;
        default:
            return false;
    }
}

bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

// pchar plus the extra characters legal in query/fragment ("/?").
// `allowColonAt` permits ':' and '@' (pchar proper).
bool check_chars(std::string_view s, bool allowSlashQuestion) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '%') {
            if (i + 2 >= s.size() || !is_hex(s[i + 1]) || !is_hex(s[i + 2]))
                return false;
            i += 2;
            continue;
        }
        if (is_unreserved(c) || is_subdelim(c) || c == ':' || c == '@')
            continue;
        if (allowSlashQuestion && (c == '/' || c == '?')) continue;
        if (c == '/') continue;  // path separators are fine outside fragments
        return false;
    }
    return true;
}

}  // namespace

bool has_scheme(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        char c = s[i];
        if (c == ':') return true;
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' &&
            c != '-' && c != '.')
            return false;
    }
    return false;
}

bool is_valid_reference(std::string_view s) {
    if (s.empty()) return false;
    // Split off the fragment first; it may appear on any reference.
    std::string_view frag;
    if (auto pos = s.find('#'); pos != std::string_view::npos) {
        frag = s.substr(pos + 1);
        s = s.substr(0, pos);
        if (frag.find('#') != std::string_view::npos) return false;
        if (!check_chars(frag, true)) return false;
    }
    std::string_view query;
    if (auto pos = s.find('?'); pos != std::string_view::npos) {
        query = s.substr(pos + 1);
        s = s.substr(0, pos);
        if (!check_chars(query, true)) return false;
    }
    if (has_scheme(s)) {
        auto pos = s.find(':');
        s = s.substr(pos + 1);
    }
    // Remainder is hier-part / relative-part: authority + path characters.
    // '[' and ']' occur only in IPv6 authorities; accept them there.
    if (s.rfind("//", 0) == 0) {
        std::string_view rest = s.substr(2);
        auto slash = rest.find('/');
        std::string_view authority =
            slash == std::string_view::npos ? rest : rest.substr(0, slash);
        std::string_view path =
            slash == std::string_view::npos ? std::string_view{} : rest.substr(slash);
        for (char c : authority) {
            if (is_unreserved(c) || is_subdelim(c) || c == ':' || c == '@' ||
                c == '[' || c == ']' || c == '%')
                continue;
            return false;
        }
        return check_chars(path, false);
    }
    return check_chars(s, false);
}

bool is_bare_fragment(std::string_view s) {
    if (s.empty() || s[0] != '#') return false;
    std::string_view frag = s.substr(1);
    return frag.find('#') == std::string_view::npos && check_chars(frag, true);
}

bool looks_like_idref(std::string_view s) {
    if (s.empty() || s[0] == '#') return false;
    if (has_scheme(s)) return false;
    if (s.find('/') != std::string_view::npos) return false;
    // NCName shape: not digit/dash/dot initial, no colon, name characters only.
    unsigned char first = static_cast<unsigned char>(s[0]);
    if (std::isdigit(first) || s[0] == '-' || s[0] == '.') return false;
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || c == '_' || c == '-' || c == '.' || u >= 0x80)
            continue;
        return false;
    }
    return true;
}

bool is_ambiguous_idref(std::string_view s) {
    return looks_like_idref(s) && s.find('.') != std::string_view::npos;
}

}  // namespace termweave::uri
