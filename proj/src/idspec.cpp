#include "ibex/idspec.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ibex {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool set_reason(std::string* reason, const char* msg) {
    if (reason)
        *reason = msg;
    return false;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

const std::vector<IdType>& id_registry() {
    static const std::vector<IdType> registry = {
        {IdKind::Gtin, "gtin", {false, Normalization::LettersOnly, false}},
        {IdKind::Cas, "cas", {false, Normalization::Alphanumeric, false}},
        {IdKind::Doi, "doi", {false, Normalization::LettersOnly, false}},
        {IdKind::Email, "email", {true, Normalization::LettersOnly, true}},
    };
    return registry;
}

const IdType& id_type(IdKind kind) {
    for (const IdType& t : id_registry())
        if (t.kind == kind)
            return t;
    throw std::logic_error("unregistered id kind");
}

std::optional<IdKind> id_kind_from_name(std::string_view name) {
    std::string lower = to_lower(name);
    for (const IdType& t : id_registry())
        if (t.canonical_name == lower)
            return t.kind;
    return std::nullopt;
}

char gtin_check_digit(std::string_view data13) {
    if (data13.size() != 13 || !all_digits(data13))
        throw std::invalid_argument("gtin_check_digit wants exactly 13 digits");
    int sum = 0;
    for (size_t i = 0; i < 13; ++i) {
        int digit = data13[i] - '0';
        sum += digit * (i % 2 == 0 ? 3 : 1);
    }
    return static_cast<char>('0' + (10 - sum % 10) % 10);
}

std::optional<ValidatedId> validate_gtin(std::string_view s, std::string* reason) {
    if (s.empty()) {
        set_reason(reason, "empty input");
        return std::nullopt;
    }
    if (!all_digits(s)) {
        set_reason(reason, "invalid character");
        return std::nullopt;
    }
    size_t n = s.size();
    if (n != 8 && n != 12 && n != 13 && n != 14) {
        set_reason(reason, "invalid length");
        return std::nullopt;
    }
    std::string canonical(14 - n, '0');
    canonical.append(s);
    if (gtin_check_digit(std::string_view(canonical).substr(0, 13)) != canonical[13]) {
        set_reason(reason, "invalid check digit");
        return std::nullopt;
    }
    return ValidatedId{IdKind::Gtin, std::move(canonical)};
}

int cas_check_digit(std::string_view data_digits) {
    int sum = 0;
    int weight = 1;
    for (auto it = data_digits.rbegin(); it != data_digits.rend(); ++it)
        sum += (*it - '0') * weight++;
    return sum % 10;
}

std::optional<ValidatedId> validate_cas(std::string_view s, std::string* reason) {
    if (s.empty()) {
        set_reason(reason, "empty input");
        return std::nullopt;
    }
    size_t h1 = s.find('-');
    if (h1 == std::string_view::npos) {
        set_reason(reason, "invalid syntax");
        return std::nullopt;
    }
    size_t h2 = s.find('-', h1 + 1);
    if (h2 == std::string_view::npos || s.find('-', h2 + 1) != std::string_view::npos) {
        set_reason(reason, "invalid syntax");
        return std::nullopt;
    }
    std::string_view g1 = s.substr(0, h1);
    std::string_view g2 = s.substr(h1 + 1, h2 - h1 - 1);
    std::string_view g3 = s.substr(h2 + 1);
    if (g1.size() < 2 || g1.size() > 7 || g2.size() != 2 || g3.size() != 1 ||
        !all_digits(g1) || !all_digits(g2) || !all_digits(g3)) {
        set_reason(reason, "invalid syntax");
        return std::nullopt;
    }
    std::string data;
    data.append(g1).append(g2);
    if (cas_check_digit(data) != g3[0] - '0') {
        set_reason(reason, "invalid check digit");
        return std::nullopt;
    }
    return ValidatedId{IdKind::Cas, std::string(s)};
}

std::optional<ValidatedId> validate_doi(std::string_view s, std::string* reason) {
    if (s.empty()) {
        set_reason(reason, "empty input");
        return std::nullopt;
    }
    // A leading "doi:" scheme marker is common on the Web; strip it.
    if (s.size() >= 4) {
        std::string head = to_lower(s.substr(0, 4));
        if (head == "doi:")
            s = s.substr(4);
    }
    size_t slash = s.find('/');
    if (slash == std::string_view::npos) {
        set_reason(reason, "invalid syntax");
        return std::nullopt;
    }
    std::string_view prefix = s.substr(0, slash);
    std::string_view suffix = s.substr(slash + 1);
    if (prefix.size() < 4 || prefix.substr(0, 3) != "10.") {
        set_reason(reason, "invalid prefix");
        return std::nullopt;
    }
    // Prefix: "10." followed by dot-separated digit groups.
    size_t pos = 3;
    while (pos < prefix.size()) {
        size_t start = pos;
        while (pos < prefix.size() && std::isdigit(static_cast<unsigned char>(prefix[pos])))
            ++pos;
        if (pos == start) {
            set_reason(reason, "invalid prefix");
            return std::nullopt;
        }
        if (pos < prefix.size()) {
            if (prefix[pos] != '.') {
                set_reason(reason, "invalid prefix");
                return std::nullopt;
            }
            ++pos;
            if (pos == prefix.size()) {
                set_reason(reason, "invalid prefix");
                return std::nullopt;
            }
        }
    }
    if (suffix.empty()) {
        set_reason(reason, "invalid suffix");
        return std::nullopt;
    }
    for (unsigned char c : suffix) {
        if (c <= 0x20 || c == 0x7F) {
            set_reason(reason, "invalid suffix");
            return std::nullopt;
        }
    }
    return ValidatedId{IdKind::Doi, std::string(s)};
}

std::optional<ValidatedId> validate_email(std::string_view s, std::string* reason) {
    if (s.empty()) {
        set_reason(reason, "empty input");
        return std::nullopt;
    }
    size_t at = s.find('@');
    if (at == std::string_view::npos || s.find('@', at + 1) != std::string_view::npos) {
        set_reason(reason, "invalid syntax");
        return std::nullopt;
    }
    std::string_view local = s.substr(0, at);
    std::string_view domain = s.substr(at + 1);
    if (local.empty()) {
        set_reason(reason, "empty local part");
        return std::nullopt;
    }
    auto local_char = [](unsigned char c) {
        return std::isalnum(c) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
    };
    for (unsigned char c : local) {
        if (!local_char(c)) {
            set_reason(reason, "invalid local part");
            return std::nullopt;
        }
    }
    // Domain: two or more dot-separated labels; final label alphabetic, >= 2.
    std::vector<std::string_view> labels;
    size_t start = 0;
    while (true) {
        size_t dot = domain.find('.', start);
        std::string_view label =
            dot == std::string_view::npos ? domain.substr(start) : domain.substr(start, dot - start);
        labels.push_back(label);
        if (dot == std::string_view::npos)
            break;
        start = dot + 1;
    }
    if (labels.size() < 2) {
        set_reason(reason, "invalid domain");
        return std::nullopt;
    }
    for (std::string_view label : labels) {
        if (label.empty()) {
            set_reason(reason, "invalid domain");
            return std::nullopt;
        }
        for (unsigned char c : label) {
            if (!std::isalnum(c) && c != '-') {
                set_reason(reason, "invalid domain");
                return std::nullopt;
            }
        }
    }
    std::string_view tld = labels.back();
    if (tld.size() < 2 ||
        !std::all_of(tld.begin(), tld.end(), [](unsigned char c) { return std::isalpha(c); })) {
        set_reason(reason, "invalid domain");
        return std::nullopt;
    }
    return ValidatedId{IdKind::Email, to_lower(s)};
}

std::optional<ValidatedId> validate_id(IdKind kind, std::string_view s, std::string* reason) {
    switch (kind) {
    case IdKind::Gtin:
        return validate_gtin(s, reason);
    case IdKind::Cas:
        return validate_cas(s, reason);
    case IdKind::Doi:
        return validate_doi(s, reason);
    case IdKind::Email:
        return validate_email(s, reason);
    }
    return std::nullopt;
}

std::string normalize_name(std::string_view name, const IdTypeConfig& cfg) {
    std::string out;
    out.reserve(name.size());
    for (unsigned char c : name) {
        if (std::isalpha(c))
            out.push_back(static_cast<char>(std::toupper(c)));
        else if (cfg.normalization == Normalization::Alphanumeric && std::isdigit(c))
            out.push_back(static_cast<char>(c));
    }
    return out;
}

namespace {

// A GTIN-8 pads to six leading zeros; no EAN-13 country/company prefix is
// embedded in that form.
bool has_ean13(const ValidatedId& id) {
    return id.kind == IdKind::Gtin && id.canonical.size() == 14 &&
           id.canonical.compare(0, 6, "000000") != 0;
}

} // namespace

std::optional<std::string> gtin_country_prefix(const ValidatedId& id) {
    if (!has_ean13(id))
        return std::nullopt;
    return id.canonical.substr(1, 3);
}

std::optional<std::string> gtin_company_prefix(const ValidatedId& id, int len) {
    if (len < 4 || len > 7)
        throw std::invalid_argument("company prefix length must be 4..7");
    if (!has_ean13(id))
        return std::nullopt;
    return id.canonical.substr(1, static_cast<size_t>(len));
}

bool is_isbn(const ValidatedId& id) {
    auto prefix = gtin_country_prefix(id);
    return prefix && *prefix == "978";
}

} // namespace ibex
