#include <doctest.h>

#include <algorithm>
#include <random>

#include "ibex/config.hpp"
#include "ibex/records.hpp"

using namespace ibex;

namespace {

const char* kExampleDoc =
    "<body>\n"
    "    <h1>Samsung Galaxy S4</h1>\n"
    "        <p>Id: <b>8806085725072\n"
    "    <h1>Accessories\n"
    "        <h2>Galaxy S4 Charging Cable</h2>\n"
    "        4047443213525\n"
    "</body>";

const FirstNameDictionary& dict() {
    static FirstNameDictionary d =
        FirstNameDictionary::load(std::string(IBEX_DATA_DIR) + "/first_names.txt");
    return d;
}

Tag mk(const char* name) {
    Tag t;
    t.name = name;
    t.is_separator = separator_weight(name) > 0;
    return t;
}

} // namespace

TEST_CASE("mark_ids finds whole-frame ids only") {
    FrameNode tree = parse_page(kExampleDoc);
    auto marked = mark_ids(tree, IdKind::Gtin);
    REQUIRE(marked.size() == 2);
    CHECK(marked[0].frame_index == 2);
    CHECK(marked[0].id.canonical == "08806085725072");
    CHECK(marked[1].frame_index == 5);
    CHECK(marked[1].id.canonical == "04047443213525");

    // surrounding text disqualifies a frame
    FrameNode embedded = parse_page("<p>Id: 8806085725072</p>");
    CHECK(mark_ids(embedded, IdKind::Gtin).empty());

    FrameNode empty = parse_page("");
    CHECK(mark_ids(empty, IdKind::Gtin).empty());
}

TEST_CASE("extract_records on the example page yields two free records") {
    FrameNode tree = parse_page(kExampleDoc);
    auto records = extract_records(tree, IdKind::Gtin);
    REQUIRE(records.size() == 2);

    // both records sit at the h1* blocks under body
    const FrameNode& body = tree.children.at(0);
    REQUIRE(body.tag.name == "body");
    REQUIRE(body.children.size() == 2);
    CHECK(records[0].kind == RecordKind::Free);
    CHECK(records[0].root == &body.children[0]);
    CHECK(records[0].root->tag.is_synthetic);
    CHECK(records[0].root->tag.name == "h1");
    CHECK(records[0].id.canonical == "08806085725072");
    CHECK(records[0].id_frame_index == 2); // S4, Id:, id

    CHECK(records[1].root == &body.children[1]);
    CHECK(records[1].id.canonical == "04047443213525");
    CHECK(records[1].id_frame_index == 2); // Accessories, Cable, id
}

TEST_CASE("one id makes the whole page a detail record") {
    FrameNode tree = parse_page("<h1>Name</h1><p>stuff</p><b>8806085725072</b><p>after</p>");
    auto records = extract_records(tree, IdKind::Gtin);
    REQUIRE(records.size() == 1);
    CHECK(records[0].kind == RecordKind::Detail);
    CHECK(records[0].root == &tree);
    CHECK(records[0].id_frame_index == 2); // Name, stuff, id, after
}

TEST_CASE("one record per table row") {
    FrameNode tree = parse_page("<table>"
                                "<tr><td>Alpha Widget</td><td>8806085725072</td></tr>"
                                "<tr><td>Beta Widget</td><td>4047443213525</td></tr>"
                                "<tr><td>Gamma Widget</td><td>00068888883955</td></tr>"
                                "</table>");
    auto records = extract_records(tree, IdKind::Gtin);
    REQUIRE(records.size() == 3);
    for (const Record& r : records) {
        CHECK(r.kind == RecordKind::Free);
        CHECK(r.root->tag.name == "tr");
        CHECK(r.id_frame_index == 1);
    }
    CHECK(records[0].id.canonical == "08806085725072");
    CHECK(records[2].id.canonical == "00068888883955");
}

TEST_CASE("records partition the marked ids and stay disjoint") {
    FrameNode tree = parse_page(kExampleDoc);
    auto marked = mark_ids(tree, IdKind::Gtin);
    auto records = extract_records(tree, IdKind::Gtin);
    REQUIRE(marked.size() == records.size());
    for (size_t i = 0; i < records.size(); ++i)
        CHECK(records[i].id.canonical == marked[i].id.canonical);
    CHECK(records[0].root != records[1].root);
}

TEST_CASE("style_of") {
    std::vector<Tag> tags = {mk("doc"), mk("body"), mk("h2")};
    std::vector<const Tag*> path = {&tags[0], &tags[1], &tags[2]};
    CHECK(style_of(path) == 4);

    tags = {mk("doc"), mk("body"), mk("b")};
    path = {&tags[0], &tags[1], &tags[2]};
    CHECK(style_of(path) == 3);

    tags = {mk("doc"), mk("body")};
    path = {&tags[0], &tags[1]};
    CHECK(style_of(path) == 2);

    tags = {mk("doc"), mk("small")};
    path = {&tags[0], &tags[1]};
    CHECK(style_of(path) == 1);

    // hiding beats highlighting; headers beat everything
    tags = {mk("b"), mk("small")};
    path = {&tags[0], &tags[1]};
    CHECK(style_of(path) == 1);
    tags = {mk("small"), mk("h3")};
    path = {&tags[0], &tags[1]};
    CHECK(style_of(path) == 4);

    // synthetic h2* is not a header
    Tag synth = mk("h2");
    synth.is_synthetic = true;
    path = {&synth};
    CHECK(style_of(path) == 2);
}

TEST_CASE("score_detail applies order, style4 and title filters") {
    Record record;
    record.kind = RecordKind::Detail;
    record.id_frame_index = 3;
    IdTypeConfig cfg = id_type(IdKind::Gtin).config;

    std::vector<RecordCandidate> candidates = {
        {{"Alpha Widget", 0}, 4},  // in title, style 4, before id
        {{"Beta Widget", 1}, 4},   // style 4 but not in title
        {{"Gamma Widget", 2}, 2},  // style 2
        {{"Delta Widget", 4}, 4},  // after the id
    };
    auto kept = score_detail(record, candidates, std::string("Shop - Alpha Widget"), cfg);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].name.raw == "Alpha Widget");
    CHECK(kept[0].score == 0.0);

    // without a title everything else applies; distance counts survivors
    auto no_title = score_detail(record, candidates, std::nullopt, cfg);
    REQUIRE(no_title.size() == 2);
    CHECK(no_title[0].name.raw == "Alpha Widget");
    CHECK(no_title[0].score == -1.0);
    CHECK(no_title[1].name.raw == "Beta Widget");
    CHECK(no_title[1].score == 0.0); // adjacent to the id

    // empty title behaves like a missing one
    auto empty_title = score_detail(record, candidates, std::string("  "), cfg);
    CHECK(empty_title.size() == 2);
}

TEST_CASE("score_free keeps the first three text frames and scores by style") {
    Record record;
    record.kind = RecordKind::Free;
    record.id_frame_index = 3;

    std::vector<RecordCandidate> candidates = {
        {{"One Thing", 0}, 4},
        {{"Two Thing", 2}, 2},
        {{"Far Thing", 4}, 4}, // beyond the first-3 window
    };
    auto kept = score_free(record, candidates);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].score == 4.0);
    CHECK(kept[1].score == 2.0);
}

TEST_CASE("extract_r1 on the example page") {
    auto rows = extract_r1(kExampleDoc, "http://x/p", IdKind::Gtin, dict());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].id.canonical == "08806085725072");
    CHECK(rows[0].name_raw == "Samsung Galaxy S4");
    CHECK(rows[0].name_norm == "SAMSUNGGALAXYS");
    CHECK(rows[0].score == 4.0);
    CHECK(rows[0].record_kind == RecordKind::Free);
    CHECK(rows[0].url == "http://x/p");

    CHECK(rows[1].id.canonical == "04047443213525");
    CHECK(rows[1].name_raw == "Accessories");
    CHECK(rows[2].id.canonical == "04047443213525");
    CHECK(rows[2].name_raw == "Galaxy S4 Charging Cable");
    CHECK(rows[2].score == 4.0);
}

TEST_CASE("extract_r1 detail page keeps the header name") {
    std::string page = "<html><head><title>MegaShop: Alpha Widget</title></head><body>"
                       "<h1>Alpha Widget</h1>"
                       "<p>Great value, ships today</p>"
                       "<h3>Unrelated Heading</h3>"
                       "<p>Code:</p><b>8806085725072</b>"
                       "</body></html>";
    auto rows = extract_r1(page, "u", IdKind::Gtin, dict());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].name_raw == "Alpha Widget");
    CHECK(rows[0].record_kind == RecordKind::Detail);
    CHECK(rows[0].score == 0.0);
}

TEST_CASE("extract_r1 with no ids yields nothing") {
    CHECK(extract_r1("<p>no ids here</p>", "u", IdKind::Gtin, dict()).empty());
    CHECK(extract_r1("", "u", IdKind::Gtin, dict()).empty());
}

TEST_CASE("repetitive lists pair each name with its own id, no leakage") {
    // brute-force oracle for the pairing: item k holds id k and name k
    std::vector<std::string> ids = {"8806085725072", "4047443213525", "00068888883955",
                                    "09783540442820"};
    std::vector<std::string> names = {"Product Item Alpha", "Product Item Beta",
                                      "Product Item Gamma", "Product Item Delta"};
    std::string page = "<ul>";
    for (size_t k = 0; k < ids.size(); ++k) {
        page += "<li><h3>" + names[k] + "</h3><p>some description text</p><span>" + ids[k] +
                "</span></li>";
    }
    page += "</ul>";

    auto rows = extract_r1(page, "u", IdKind::Gtin, dict());
    // every row's name must belong to the row's own item
    size_t pairings = 0;
    for (const CandidateRow& row : rows) {
        auto pos = std::find(names.begin(), names.end(), row.name_raw);
        if (pos != names.end()) {
            size_t k = static_cast<size_t>(pos - names.begin());
            auto valid = validate_gtin(ids[k]);
            REQUIRE(valid);
            CHECK(row.id.canonical == valid->canonical);
            ++pairings;
        }
    }
    CHECK(pairings == ids.size());
}

TEST_CASE("email pages flow through records") {
    std::string page = "<body>"
                       "<div><h3>Dr. Jennifer Widom</h3><span>widom@cs.stanford.edu</span></div>"
                       "<div><h3>John Smith</h3><span>jsmith@example.org</span></div>"
                       "</body>";
    auto rows = extract_r1(page, "u", IdKind::Email, dict());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].id.canonical == "widom@cs.stanford.edu");
    CHECK(rows[0].name_raw == "Jennifer Widom");
    CHECK(rows[0].score == 4.0);
    CHECK(rows[1].id.canonical == "jsmith@example.org");
    CHECK(rows[1].name_raw == "John Smith");
}

TEST_CASE("doi pages flow through records") {
    std::string page = "<body><div>"
                       "<p>Cognitive niches: An ecological model of strategy selection</p>"
                       "<span>10.1037/a0024143</span>"
                       "</div><div>"
                       "<p>See also</p><span>10.2136/sssaj1984.03615995004800060020x</span>"
                       "</div></body>";
    auto rows = extract_r1(page, "u", IdKind::Doi, dict());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].id.canonical == "10.1037/a0024143");
    CHECK(rows[0].name_raw == "Cognitive niches: An ecological model of strategy selection");
}

TEST_CASE("records partition ids on randomized pages") {
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<int> num_items(2, 8), digit(0, 9), extra(0, 2);
    for (int trial = 0; trial < 60; ++trial) {
        // random listing with one id per block plus assorted clutter
        int items = num_items(rng);
        std::string page = "<body><h1>Listing</h1>";
        std::vector<std::string> ids;
        for (int k = 0; k < items; ++k) {
            std::string data = "4";
            for (int i = 0; i < 11; ++i)
                data.push_back(static_cast<char>('0' + digit(rng)));
            std::string id;
            for (char d = '0'; d <= '9' && id.empty(); ++d)
                if (validate_gtin(data + d))
                    id = data + d;
            ids.push_back(id);
            page += "<div><h2>Block Item " + std::to_string(k) + "</h2>";
            for (int e = extra(rng); e > 0; --e)
                page += "<p>clutter text piece</p>";
            page += "<span>" + id + "</span></div>";
        }
        page += "</body>";

        FrameNode tree = parse_page(page);
        auto marked = mark_ids(tree, IdKind::Gtin);
        auto records = extract_records(tree, IdKind::Gtin);
        REQUIRE(marked.size() == ids.size());
        REQUIRE(records.size() == marked.size());
        // each record holds exactly its own id, in document order
        for (size_t i = 0; i < records.size(); ++i) {
            CHECK(records[i].id.canonical == marked[i].id.canonical);
            auto inner = mark_ids(*records[i].root, IdKind::Gtin);
            REQUIRE(inner.size() == 1);
            CHECK(inner[0].id.canonical == records[i].id.canonical);
            CHECK(inner[0].frame_index == records[i].id_frame_index);
        }
    }
}
