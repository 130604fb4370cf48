#include <doctest.h>

#include <stdexcept>

#include "ibex/config.hpp"
#include "ibex/stats.hpp"

using namespace ibex;

namespace {

EntityRow entity(IdKind kind, const char* id, const char* name,
                 std::vector<std::string> urls = {"http://host/p"}) {
    EntityRow row;
    row.id = ValidatedId{kind, id};
    row.name_raw = name;
    row.urls = std::move(urls);
    return row;
}

EntityRow gtin_entity(const std::string& id13, const char* name) {
    auto id = validate_gtin(id13);
    REQUIRE(id);
    EntityRow row;
    row.id = *id;
    row.name_raw = name;
    row.urls = {"http://shop.example/p"};
    return row;
}

const Gs1PrefixTable& prefix_table() {
    static Gs1PrefixTable t = Gs1PrefixTable::load(std::string(IBEX_DATA_DIR) + "/gs1_prefixes.tsv");
    return t;
}

// data digits -> full EAN-13 with its check digit
std::string ean13(const std::string& data12) {
    for (char d = '0'; d <= '9'; ++d)
        if (validate_gtin(data12 + d))
            return data12 + d;
    FAIL("no valid check digit");
    return "";
}

} // namespace

TEST_CASE("url_host extraction") {
    CHECK(url_host("http://www.example.com/page?a=1") == "www.example.com");
    CHECK(url_host("https://User@Host.Example.com:8080/x") == "host.example.com");
    CHECK(url_host("ftp://files.example.com") == "files.example.com");
    CHECK(url_host("/var/data/page.html") == "");
    CHECK(url_host("www.example.com/page") == "www.example.com");
}

TEST_CASE("top_sources counts distinct ids per domain") {
    std::vector<EntityRow> rows = {
        entity(IdKind::Cas, "50-00-0", "formaldehyde", {"http://a/1"}),
        entity(IdKind::Cas, "64-17-5", "ethanol", {"http://a/2"}),
        entity(IdKind::Cas, "67-56-1", "methanol", {"http://b/3"}),
    };
    auto top = top_sources(rows, 10);
    REQUIRE(top.size() == 2);
    CHECK(top[0].domain == "a");
    CHECK(top[0].entity_count == 2);
    CHECK(top[1].domain == "b");
    CHECK(top[1].entity_count == 1);

    // one entity on two domains counts once for each
    rows = {entity(IdKind::Cas, "50-00-0", "x", {"http://a/1", "http://a/2", "http://b/1"})};
    top = top_sources(rows, 10);
    REQUIRE(top.size() == 2);
    CHECK(top[0].entity_count == 1);
    CHECK(top[1].entity_count == 1);

    CHECK(top_sources({}, 5).empty());
}

TEST_CASE("top_email_domains groups by address domain") {
    std::vector<EntityRow> rows = {
        entity(IdKind::Email, "a@gmail.com", "A Person"),
        entity(IdKind::Email, "b@gmail.com", "B Person"),
        entity(IdKind::Email, "c@aol.com", "C Person"),
    };
    auto top = top_email_domains(rows, 10);
    REQUIRE(top.size() == 2);
    CHECK(top[0].domain == "gmail.com");
    CHECK(top[0].entity_count == 2);
    CHECK(top[1].domain == "aol.com");
    CHECK(top[1].entity_count == 1);
}

TEST_CASE("common_person_names tallies given, family and full names") {
    std::vector<EntityRow> rows = {
        entity(IdKind::Email, "js@x.com", "John Smith"),
        entity(IdKind::Email, "jd@x.com", "John Doe"),
        entity(IdKind::Email, "sj@x.com", "Smith, John"), // reordered before tallying
        entity(IdKind::Email, "solo@x.com", "Madonna"),
    };
    PersonNameStats stats = common_person_names(rows);
    REQUIRE_FALSE(stats.given.empty());
    CHECK(stats.given[0].first == "John");
    CHECK(stats.given[0].second == 3);

    uint64_t smith = 0;
    for (const auto& [name, count] : stats.family)
        if (name == "Smith")
            smith = count;
    CHECK(smith == 2);

    CHECK(stats.full[0].first == "John Smith");
    CHECK(stats.full[0].second == 2);

    // single-token names count toward given only
    bool madonna_family = false;
    for (const auto& [name, count] : stats.family)
        madonna_family |= name == "Madonna";
    CHECK_FALSE(madonna_family);
}

TEST_CASE("products_by_country groups by GS1 prefix") {
    std::vector<EntityRow> rows = {
        gtin_entity(ean13("880608572507"), "Phone"),
        gtin_entity(ean13("400123456789"), "Tool A"),
        gtin_entity(ean13("400999888777"), "Tool B"),
        gtin_entity(ean13("978354044282"), "Book"),
    };
    auto list = products_by_country(rows, prefix_table());
    REQUIRE(list.size() == 3);
    CHECK(list[0].prefix == "400");
    CHECK(list[0].count == 2);
    CHECK(list[0].label == "Germany");
    bool saw_bookland = false, saw_korea = false;
    for (const auto& c : list) {
        saw_bookland |= c.prefix == "978" && c.label == "Bookland";
        saw_korea |= c.prefix == "880" && c.label == "South Korea";
    }
    CHECK(saw_bookland);
    CHECK(saw_korea);

    CHECK(prefix_table().label_for("000") == "USA/Canada (GS1 US)");
    CHECK(prefix_table().label_for("139") == "USA/Canada (GS1 US)");
    CHECK(prefix_table().label_for("979") == "Bookland");
    CHECK(prefix_table().label_for("150") == "unassigned");

    // counts cover exactly the ids with a decodable prefix
    uint64_t total = 0;
    for (const auto& c : list)
        total += c.count;
    CHECK(total == rows.size());
}

TEST_CASE("company_labels finds the distinctive term per prefix group") {
    std::vector<EntityRow> rows;
    // group 4012: every title carries NIKON
    rows.push_back(gtin_entity(ean13("401255500001"), "NIKON Camera Body"));
    rows.push_back(gtin_entity(ean13("401255500002"), "NIKON Zoom Lens"));
    rows.push_back(gtin_entity(ean13("401255500003"), "The NIKON Flash"));
    // group 5001: PENTAX-branded
    rows.push_back(gtin_entity(ean13("500177700001"), "The PENTAX Compact"));
    rows.push_back(gtin_entity(ean13("500177700002"), "PENTAX The Tripod"));
    // group 8801: a single product, gets no label
    rows.push_back(gtin_entity(ean13("880199900001"), "Lone Gadget"));

    auto labels = company_labels(rows, 4);
    REQUIRE(labels.size() == 2);
    CHECK(labels[0].prefix == "4012");
    CHECK(labels[0].term == "NIKON");
    CHECK(labels[0].products == 3);
    CHECK(labels[1].prefix == "5001");
    CHECK(labels[1].term == "PENTAX");

    // "THE" appears in more than half the groups and is never selected
    for (const auto& l : labels)
        CHECK(l.term != "THE");
}

TEST_CASE("company_labels input guards") {
    CHECK_THROWS_AS(company_labels({}, 3), std::invalid_argument);
    CHECK_THROWS_AS(company_labels({}, 8), std::invalid_argument);
    CHECK(company_labels({}, 4).empty());
}
