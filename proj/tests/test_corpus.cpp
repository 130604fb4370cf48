#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include <zlib.h>

#include "ibex/corpus.hpp"

using namespace ibex;
namespace fs = std::filesystem;

namespace {

std::string warc_record(const std::string& type, const std::string& uri,
                        const std::string& payload) {
    std::string rec;
    rec += "WARC/1.0\r\n";
    rec += "WARC-Type: " + type + "\r\n";
    if (!uri.empty())
        rec += "WARC-Target-URI: " + uri + "\r\n";
    rec += "WARC-Record-ID: <urn:uuid:0000>\r\n";
    rec += "Content-Length: " + std::to_string(payload.size()) + "\r\n";
    rec += "\r\n";
    rec += payload;
    rec += "\r\n\r\n";
    return rec;
}

std::string http_200(const std::string& body, const std::string& content_type = "text/html") {
    return "HTTP/1.1 200 OK\r\nContent-Type: " + content_type +
           "\r\nContent-Length: " + std::to_string(body.size()) + "\r\n\r\n" + body;
}

fs::path temp_dir() {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / ("ibex_test_" + std::to_string(::getpid()) + "_" +
                                                std::to_string(counter++));
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

std::string gzip_compress(const std::string& data) {
    z_stream zs{};
    REQUIRE(deflateInit2(&zs, Z_BEST_SPEED, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) == Z_OK);
    std::string out;
    out.resize(data.size() + data.size() / 2 + 128);
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    REQUIRE(deflate(&zs, Z_FINISH) == Z_STREAM_END);
    out.resize(out.size() - zs.avail_out);
    deflateEnd(&zs);
    return out;
}

} // namespace

TEST_CASE("warc reader filters to http-200 responses") {
    fs::path dir = temp_dir();
    std::string warc = warc_record("warcinfo", "", "software: test") +
                       warc_record("response", "http://example.com/a", http_200("<html>A</html>")) +
                       warc_record("request", "http://example.com/a", "GET /a HTTP/1.1\r\n") +
                       warc_record("response", "http://example.com/b",
                                   "HTTP/1.1 404 Not Found\r\n\r\nmissing") +
                       warc_record("response", "http://example.com/c", http_200("<html>C</html>"));
    fs::path path = dir / "two.warc";
    write_file(path, warc);

    WarcReader reader(path.string());
    PageItem item;
    REQUIRE(reader.next(item));
    CHECK(item.url == "http://example.com/a");
    CHECK(item.body == "<html>A</html>");
    CHECK(item.source == PageItem::Source::Warc);
    REQUIRE(reader.next(item));
    CHECK(item.url == "http://example.com/c");
    CHECK_FALSE(reader.next(item));
    CHECK(reader.skipped() == 0);
    fs::remove_all(dir);
}

TEST_CASE("gzip warc yields the same items") {
    fs::path dir = temp_dir();
    std::string warc = warc_record("response", "http://x/1", http_200("<b>one</b>")) +
                       warc_record("response", "http://x/2", http_200("<b>two</b>"));
    write_file(dir / "plain.warc", warc);
    write_file(dir / "packed.warc.gz", gzip_compress(warc));

    auto read_all = [](const std::string& path) {
        WarcReader reader(path);
        std::vector<PageItem> items;
        PageItem item;
        while (reader.next(item))
            items.push_back(item);
        return items;
    };
    auto plain = read_all((dir / "plain.warc").string());
    auto packed = read_all((dir / "packed.warc.gz").string());
    REQUIRE(plain.size() == 2);
    REQUIRE(packed.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(plain[i].url == packed[i].url);
        CHECK(plain[i].body == packed[i].body);
    }
    fs::remove_all(dir);
}

TEST_CASE("truncated final record is skipped, earlier items survive") {
    fs::path dir = temp_dir();
    std::string warc = warc_record("response", "http://x/ok", http_200("fine"));
    std::string broken = warc_record("response", "http://x/broken", http_200("cut off here"));
    warc += broken.substr(0, broken.size() - 20);
    fs::path path = dir / "trunc.warc";
    write_file(path, warc);

    WarcReader reader(path.string());
    PageItem item;
    REQUIRE(reader.next(item));
    CHECK(item.url == "http://x/ok");
    CHECK_FALSE(reader.next(item));
    CHECK(reader.skipped() == 1);
    fs::remove_all(dir);
}

TEST_CASE("oversized bodies are truncated with a counter") {
    fs::path dir = temp_dir();
    std::string big(10000, 'x');
    write_file(dir / "big.warc", warc_record("response", "http://x/big", http_200(big)));
    WarcReader reader((dir / "big.warc").string(), 1024);
    PageItem item;
    REQUIRE(reader.next(item));
    CHECK(item.body.size() == 1024);
    CHECK(reader.truncated() == 1);
    fs::remove_all(dir);
}

TEST_CASE("latin-1 pages are transcoded") {
    fs::path dir = temp_dir();
    std::string body = "caf\xE9"; // latin-1 e-acute
    write_file(dir / "l1.warc",
               warc_record("response", "http://x/l1",
                           http_200(body, "text/html; charset=ISO-8859-1")));
    WarcReader reader((dir / "l1.warc").string());
    PageItem item;
    REQUIRE(reader.next(item));
    CHECK(item.body == "caf\xC3\xA9");
    fs::remove_all(dir);
}

TEST_CASE("dir reader yields html files in sorted order") {
    fs::path dir = temp_dir();
    fs::create_directories(dir / "sub");
    write_file(dir / "b.html", "<p>b</p>");
    write_file(dir / "a.html", "<p>a</p>");
    write_file(dir / "sub" / "c.htm", "<p>c</p>");
    write_file(dir / "notes.txt", "not html");

    DirReader reader(dir.string());
    std::vector<PageItem> items;
    PageItem item;
    while (reader.next(item))
        items.push_back(item);
    REQUIRE(items.size() == 3);
    CHECK(items[0].body == "<p>a</p>");
    CHECK(items[1].body == "<p>b</p>");
    CHECK(items[2].body == "<p>c</p>");
    CHECK(items[0].source == PageItem::Source::File);

    // manifest remaps urls; unlisted files keep their path
    write_file(dir / "manifest.tsv", "a.html\thttp://mapped/a\nsub/c.htm\thttp://mapped/c\n");
    DirReader mapped(dir.string(), (dir / "manifest.tsv").string());
    std::vector<std::string> urls;
    while (mapped.next(item))
        urls.push_back(item.url);
    REQUIRE(urls.size() == 3);
    CHECK(urls[0] == "http://mapped/a");
    CHECK(urls[1] == (dir / "b.html").string());
    CHECK(urls[2] == "http://mapped/c");
    fs::remove_all(dir);
}

TEST_CASE("empty directory yields nothing") {
    fs::path dir = temp_dir();
    DirReader reader(dir.string());
    PageItem item;
    CHECK_FALSE(reader.next(item));
    fs::remove_all(dir);
}

TEST_CASE("open_corpus_input dispatches by content") {
    fs::path dir = temp_dir();
    write_file(dir / "x.warc", warc_record("response", "http://x/a", http_200("hi")));
    write_file(dir / "page.html", "<p>hi</p>");

    CHECK(open_corpus_input((dir / "x.warc").string()));
    CHECK(open_corpus_input((dir / "page.html").string()));
    CHECK(open_corpus_input(dir.string()));
    CHECK_THROWS(open_corpus_input((dir / "missing.warc").string()));

    write_file(dir / "data.bin", "garbage");
    CHECK_THROWS(open_corpus_input((dir / "data.bin").string()));
    fs::remove_all(dir);
}
