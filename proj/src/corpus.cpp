#include "ibex/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <zlib.h>

namespace fs = std::filesystem;

namespace ibex {

namespace {

std::string lower_copy(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

// Bytes declared as latin-1 / windows-1252 transcode 1:1 to codepoints.
std::string latin1_to_utf8(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back(static_cast<char>(0xC0 | (c >> 6)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        }
    }
    return out;
}

bool is_latin1_charset(std::string_view cs) {
    std::string lc = lower_copy(trim(cs));
    return lc == "iso-8859-1" || lc == "latin-1" || lc == "latin1" || lc == "windows-1252" ||
           lc == "cp1252";
}

// Pulls charset=... out of a Content-Type value or a chunk of HTML.
std::optional<std::string> find_charset(std::string_view text) {
    std::string lc = lower_copy(text);
    size_t pos = lc.find("charset=");
    if (pos == std::string::npos)
        return std::nullopt;
    pos += 8;
    while (pos < lc.size() && (lc[pos] == '"' || lc[pos] == '\'' || lc[pos] == ' '))
        ++pos;
    size_t end = pos;
    while (end < lc.size() &&
           (std::isalnum(static_cast<unsigned char>(lc[end])) || lc[end] == '-' || lc[end] == '_'))
        ++end;
    if (end == pos)
        return std::nullopt;
    return lc.substr(pos, end - pos);
}

void apply_charset(std::string& body, const std::optional<std::string>& http_charset) {
    std::optional<std::string> charset = http_charset;
    if (!charset) {
        // sniff a meta declaration near the top of the page
        charset = find_charset(std::string_view(body).substr(0, std::min<size_t>(body.size(), 2048)));
    }
    if (charset && is_latin1_charset(*charset))
        body = latin1_to_utf8(body);
    // anything else passes through; the tokenizer replaces invalid UTF-8
}

} // namespace

// ---------------------------------------------------------------------
// WARC

struct WarcReader::Impl {
    gzFile file = nullptr;
    std::string buffer;
    size_t buf_pos = 0;
    bool eof = false;

    bool fill() {
        if (eof)
            return buf_pos < buffer.size();
        if (buf_pos > 0) {
            buffer.erase(0, buf_pos);
            buf_pos = 0;
        }
        char chunk[64 * 1024];
        int n = gzread(file, chunk, sizeof(chunk));
        if (n <= 0) {
            eof = true;
            return buf_pos < buffer.size();
        }
        buffer.append(chunk, static_cast<size_t>(n));
        return true;
    }

    // Reads one line (without the terminator). Returns false at EOF.
    bool read_line(std::string& line) {
        while (true) {
            size_t nl = buffer.find('\n', buf_pos);
            if (nl != std::string::npos) {
                line.assign(buffer, buf_pos, nl - buf_pos);
                if (!line.empty() && line.back() == '\r')
                    line.pop_back();
                buf_pos = nl + 1;
                return true;
            }
            if (eof) {
                if (buf_pos < buffer.size()) {
                    line.assign(buffer, buf_pos, buffer.size() - buf_pos);
                    buf_pos = buffer.size();
                    return true;
                }
                return false;
            }
            fill();
        }
    }

    // Reads exactly n bytes; false if the stream ends first.
    bool read_exact(size_t n, std::string& out) {
        out.clear();
        while (out.size() < n) {
            size_t avail = buffer.size() - buf_pos;
            if (avail == 0) {
                if (eof)
                    return false;
                fill();
                continue;
            }
            size_t take = std::min(avail, n - out.size());
            out.append(buffer, buf_pos, take);
            buf_pos += take;
        }
        return true;
    }
};

WarcReader::WarcReader(const std::string& path, size_t page_cap)
    : impl_(std::make_unique<Impl>()), page_cap_(page_cap) {
    impl_->file = gzopen(path.c_str(), "rb");
    if (!impl_->file)
        throw std::runtime_error("cannot open WARC file: " + path);
}

WarcReader::~WarcReader() {
    if (impl_ && impl_->file)
        gzclose(impl_->file);
}

bool WarcReader::next(PageItem& out) {
    std::string line;
    while (true) {
        // find the next record header
        bool found = false;
        while (impl_->read_line(line)) {
            if (line.rfind("WARC/", 0) == 0) {
                found = true;
                break;
            }
            if (!trim(line).empty())
                ++skipped_; // stray bytes between records
        }
        if (!found)
            return false;

        std::string warc_type, target_uri;
        long long content_length = -1;
        bool header_ok = true;
        while (impl_->read_line(line)) {
            if (line.empty())
                break;
            size_t colon = line.find(':');
            if (colon == std::string::npos) {
                header_ok = false;
                continue;
            }
            std::string key = lower_copy(trim(std::string_view(line).substr(0, colon)));
            std::string_view value = trim(std::string_view(line).substr(colon + 1));
            if (key == "warc-type")
                warc_type = lower_copy(value);
            else if (key == "warc-target-uri")
                target_uri = std::string(value);
            else if (key == "content-length") {
                try {
                    content_length = std::stoll(std::string(value));
                } catch (...) {
                    content_length = -1;
                }
            }
        }
        if (!header_ok || content_length < 0) {
            ++skipped_;
            continue; // resync on the next WARC/ line
        }
        std::string payload;
        if (!impl_->read_exact(static_cast<size_t>(content_length), payload)) {
            ++skipped_; // truncated final record
            return false;
        }
        if (warc_type != "response")
            continue;

        // require an HTTP 200 payload and strip its headers
        if (payload.rfind("HTTP/", 0) != 0)
            continue;
        size_t line_end = payload.find('\n');
        if (line_end == std::string::npos)
            continue;
        std::string status_line = payload.substr(0, line_end);
        if (status_line.find(" 200") == std::string::npos)
            continue;
        size_t header_end = payload.find("\r\n\r\n");
        size_t body_start;
        if (header_end != std::string::npos) {
            body_start = header_end + 4;
        } else {
            header_end = payload.find("\n\n");
            if (header_end == std::string::npos)
                continue;
            body_start = header_end + 2;
        }
        std::optional<std::string> http_charset;
        {
            std::string headers = lower_copy(std::string_view(payload).substr(0, header_end));
            size_t ct = headers.find("content-type:");
            if (ct != std::string::npos) {
                size_t eol = headers.find('\n', ct);
                http_charset = find_charset(
                    std::string_view(headers).substr(ct, eol == std::string::npos ? headers.size() - ct
                                                                                  : eol - ct));
            }
        }
        out.url = target_uri;
        out.body = payload.substr(body_start);
        if (out.body.size() > page_cap_) {
            out.body.resize(page_cap_);
            ++truncated_;
        }
        apply_charset(out.body, http_charset);
        out.source = PageItem::Source::Warc;
        return true;
    }
}

// ---------------------------------------------------------------------
// Directory trees

namespace {

bool has_html_extension(const fs::path& p) {
    std::string ext = lower_copy(p.extension().string());
    return ext == ".html" || ext == ".htm";
}

std::string read_file(const std::string& path, size_t cap, bool& truncated) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);
    std::string data;
    char chunk[64 * 1024];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
        data.append(chunk, static_cast<size_t>(in.gcount()));
        if (data.size() > cap) {
            data.resize(cap);
            truncated = true;
            break;
        }
    }
    return data;
}

} // namespace

DirReader::DirReader(const std::string& path, const std::optional<std::string>& manifest_path,
                     size_t page_cap)
    : root_(path), page_cap_(page_cap) {
    if (!fs::is_directory(root_))
        throw std::runtime_error("not a directory: " + path);
    for (const auto& entry : fs::recursive_directory_iterator(root_)) {
        if (entry.is_regular_file() && has_html_extension(entry.path()))
            files_.push_back(entry.path().string());
    }
    std::sort(files_.begin(), files_.end());
    if (manifest_path) {
        std::ifstream in(*manifest_path);
        if (!in)
            throw std::runtime_error("cannot open manifest: " + *manifest_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#')
                continue;
            size_t tab = line.find('\t');
            if (tab == std::string::npos)
                continue;
            manifest_.emplace(line.substr(0, tab), line.substr(tab + 1));
        }
    }
}

bool DirReader::next(PageItem& out) {
    while (index_ < files_.size()) {
        const std::string& file = files_[index_++];
        bool truncated = false;
        try {
            out.body = read_file(file, page_cap_, truncated);
        } catch (const std::exception&) {
            ++skipped_;
            continue;
        }
        if (truncated)
            ++truncated_;
        std::string rel = fs::relative(file, root_).generic_string();
        auto it = manifest_.find(rel);
        out.url = it != manifest_.end() ? it->second : file;
        out.source = PageItem::Source::File;
        return true;
    }
    return false;
}

SingleFileReader::SingleFileReader(const std::string& path, size_t page_cap)
    : path_(path), page_cap_(page_cap) {
    if (!fs::is_regular_file(path_))
        throw std::runtime_error("not a file: " + path);
}

bool SingleFileReader::next(PageItem& out) {
    if (done_)
        return false;
    done_ = true;
    bool truncated = false;
    try {
        out.body = read_file(path_, page_cap_, truncated);
    } catch (const std::exception&) {
        ++skipped_;
        return false;
    }
    out.url = path_;
    out.source = PageItem::Source::File;
    return true;
}

std::unique_ptr<PageReader> open_corpus_input(const std::string& path, size_t page_cap,
                                              const std::optional<std::string>& manifest) {
    if (fs::is_directory(path))
        return std::make_unique<DirReader>(path, manifest, page_cap);
    if (!fs::is_regular_file(path))
        throw std::runtime_error("no such corpus input: " + path);

    std::ifstream probe(path, std::ios::binary);
    char magic[5] = {0};
    probe.read(magic, 5);
    size_t got = static_cast<size_t>(probe.gcount());
    bool gzip = got >= 2 && static_cast<unsigned char>(magic[0]) == 0x1F &&
                static_cast<unsigned char>(magic[1]) == 0x8B;
    bool warc_magic = got >= 5 && std::memcmp(magic, "WARC/", 5) == 0;
    std::string lower = lower_copy(path);
    bool warc_name = lower.ends_with(".warc") || lower.ends_with(".warc.gz");
    if (gzip || warc_magic || warc_name)
        return std::make_unique<WarcReader>(path, page_cap);
    if (has_html_extension(fs::path(path)))
        return std::make_unique<SingleFileReader>(path, page_cap);
    throw std::runtime_error("unrecognized corpus input: " + path);
}

} // namespace ibex
