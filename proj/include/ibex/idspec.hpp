#ifndef IBEX_IDSPEC_HPP
#define IBEX_IDSPEC_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ibex {

enum class IdKind { Gtin, Cas, Doi, Email };

enum class Normalization { LettersOnly, Alphanumeric };

struct IdTypeConfig {
    bool skip_phase2 = false;
    Normalization normalization = Normalization::LettersOnly;
    bool is_pseudo_id = false;
};

struct IdType {
    IdKind kind;
    std::string canonical_name;
    IdTypeConfig config;
};

/// All id types known to the system, each kind exactly once.
const std::vector<IdType>& id_registry();
const IdType& id_type(IdKind kind);
std::optional<IdKind> id_kind_from_name(std::string_view name);

struct ValidatedId {
    IdKind kind = IdKind::Gtin;
    // GTIN: 14 digits, zero-padded. CAS: d{2,7}-d{2}-d. DOI: prefix/suffix.
    // EMAIL: lowercased local@domain.
    std::string canonical;

    friend bool operator==(const ValidatedId& a, const ValidatedId& b) {
        return a.kind == b.kind && a.canonical == b.canonical;
    }
};

// Validators accept any string and yield empty on anything malformed.
// `reason`, when given, receives a short rejection message.
std::optional<ValidatedId> validate_gtin(std::string_view s, std::string* reason = nullptr);
std::optional<ValidatedId> validate_cas(std::string_view s, std::string* reason = nullptr);
std::optional<ValidatedId> validate_doi(std::string_view s, std::string* reason = nullptr);
std::optional<ValidatedId> validate_email(std::string_view s, std::string* reason = nullptr);
std::optional<ValidatedId> validate_id(IdKind kind, std::string_view s, std::string* reason = nullptr);

/// Mod-10 check digit for a 13-digit GTIN data prefix (weights 3,1,3,1,...
/// left to right). Throws std::invalid_argument on bad input.
char gtin_check_digit(std::string_view data13);

/// CAS check digit for the concatenated data digits (both groups, no
/// hyphens): rightmost digit weighs 1, the next 2, and so on, mod 10.
int cas_check_digit(std::string_view data_digits);

/// Upper-cases and strips everything outside the retained character class
/// (letters, or letters and digits for Alphanumeric). May return "".
std::string normalize_name(std::string_view name, const IdTypeConfig& cfg);

// GS1 prefix decoding. An id harvested as GTIN-8 has no embedded EAN-13,
// so the prefix operations report empty for it (recognizable by the
// six-zero pad in the canonical form).
std::optional<std::string> gtin_country_prefix(const ValidatedId& id);
std::optional<std::string> gtin_company_prefix(const ValidatedId& id, int len);
bool is_isbn(const ValidatedId& id);

} // namespace ibex

#endif
