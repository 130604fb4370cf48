#ifndef IBEX_CORPUS_HPP
#define IBEX_CORPUS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ibex {

struct PageItem {
    enum class Source { Warc, File };
    std::string url;
    std::string body;
    Source source = Source::File;
};

constexpr size_t kDefaultPageCap = 4 * 1024 * 1024;

class PageReader {
public:
    virtual ~PageReader() = default;
    virtual bool next(PageItem& out) = 0;
    virtual uint64_t skipped() const { return 0; }
    virtual uint64_t truncated() const { return 0; }
};

/// Streams the HTTP-200 response records of a WARC file (plain or gzip,
/// whole-file or per-record members). Corrupt records are skipped and
/// counted, never fatal. Throws std::runtime_error if the file cannot be
/// opened.
class WarcReader : public PageReader {
public:
    explicit WarcReader(const std::string& path, size_t page_cap = kDefaultPageCap);
    ~WarcReader() override;
    WarcReader(const WarcReader&) = delete;
    WarcReader& operator=(const WarcReader&) = delete;

    bool next(PageItem& out) override;
    uint64_t skipped() const override { return skipped_; }
    uint64_t truncated() const override { return truncated_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    uint64_t skipped_ = 0;
    uint64_t truncated_ = 0;
    size_t page_cap_;
};

/// Walks a directory tree for *.html / *.htm files in lexicographic path
/// order. A manifest (TSV: relative-path TAB url) can supply real urls;
/// unlisted files fall back to their file path.
class DirReader : public PageReader {
public:
    explicit DirReader(const std::string& path, const std::optional<std::string>& manifest_path =
                                                    std::nullopt,
                       size_t page_cap = kDefaultPageCap);

    bool next(PageItem& out) override;
    uint64_t skipped() const override { return skipped_; }
    uint64_t truncated() const override { return truncated_; }

private:
    std::string root_;
    std::vector<std::string> files_; // absolute paths, sorted
    std::map<std::string, std::string> manifest_;
    size_t index_ = 0;
    uint64_t skipped_ = 0;
    uint64_t truncated_ = 0;
    size_t page_cap_;
};

/// Reader for a single *.html file.
class SingleFileReader : public PageReader {
public:
    explicit SingleFileReader(const std::string& path, size_t page_cap = kDefaultPageCap);
    bool next(PageItem& out) override;
    uint64_t skipped() const override { return skipped_; }

private:
    std::string path_;
    bool done_ = false;
    uint64_t skipped_ = 0;
    size_t page_cap_;
};

/// Picks a reader by sniffing the input: directories walk their HTML
/// files, WARC files (by magic or extension) stream records, bare *.html
/// files yield one page. Throws std::runtime_error on anything else.
std::unique_ptr<PageReader> open_corpus_input(const std::string& path,
                                              size_t page_cap = kDefaultPageCap,
                                              const std::optional<std::string>& manifest =
                                                  std::nullopt);

} // namespace ibex

#endif
