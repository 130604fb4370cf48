#include "ibex/frametree.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace ibex {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size())
        return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::string lower_copy(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// ---------------------------------------------------------------------
// Character entities

struct EntityDef {
    const char* name;
    uint32_t codepoint;
};

// The HTML 4 set plus the common typographic entities. Whitespace-class
// entities (nbsp and friends) decode to a plain space so they cannot
// masquerade as frame content.
constexpr EntityDef kEntities[] = {
    {"amp", '&'},       {"lt", '<'},        {"gt", '>'},        {"quot", '"'},
    {"apos", '\''},     {"nbsp", ' '},      {"ensp", ' '},      {"emsp", ' '},
    {"thinsp", ' '},    {"zwnj", 0x200C},   {"zwj", 0x200D},    {"shy", 0x00AD},
    {"iexcl", 0xA1},    {"cent", 0xA2},     {"pound", 0xA3},    {"curren", 0xA4},
    {"yen", 0xA5},      {"brvbar", 0xA6},   {"sect", 0xA7},     {"uml", 0xA8},
    {"copy", 0xA9},     {"ordf", 0xAA},     {"laquo", 0xAB},    {"not", 0xAC},
    {"reg", 0xAE},      {"macr", 0xAF},     {"deg", 0xB0},      {"plusmn", 0xB1},
    {"sup2", 0xB2},     {"sup3", 0xB3},     {"acute", 0xB4},    {"micro", 0xB5},
    {"para", 0xB6},     {"middot", 0xB7},   {"cedil", 0xB8},    {"sup1", 0xB9},
    {"ordm", 0xBA},     {"raquo", 0xBB},    {"frac14", 0xBC},   {"frac12", 0xBD},
    {"frac34", 0xBE},   {"iquest", 0xBF},   {"Agrave", 0xC0},   {"Aacute", 0xC1},
    {"Acirc", 0xC2},    {"Atilde", 0xC3},   {"Auml", 0xC4},     {"Aring", 0xC5},
    {"AElig", 0xC6},    {"Ccedil", 0xC7},   {"Egrave", 0xC8},   {"Eacute", 0xC9},
    {"Ecirc", 0xCA},    {"Euml", 0xCB},     {"Igrave", 0xCC},   {"Iacute", 0xCD},
    {"Icirc", 0xCE},    {"Iuml", 0xCF},     {"ETH", 0xD0},      {"Ntilde", 0xD1},
    {"Ograve", 0xD2},   {"Oacute", 0xD3},   {"Ocirc", 0xD4},    {"Otilde", 0xD5},
    {"Ouml", 0xD6},     {"times", 0xD7},    {"Oslash", 0xD8},   {"Ugrave", 0xD9},
    {"Uacute", 0xDA},   {"Ucirc", 0xDB},    {"Uuml", 0xDC},     {"Yacute", 0xDD},
    {"THORN", 0xDE},    {"szlig", 0xDF},    {"agrave", 0xE0},   {"aacute", 0xE1},
    {"acirc", 0xE2},    {"atilde", 0xE3},   {"auml", 0xE4},     {"aring", 0xE5},
    {"aelig", 0xE6},    {"ccedil", 0xE7},   {"egrave", 0xE8},   {"eacute", 0xE9},
    {"ecirc", 0xEA},    {"euml", 0xEB},     {"igrave", 0xEC},   {"iacute", 0xED},
    {"icirc", 0xEE},    {"iuml", 0xEF},     {"eth", 0xF0},      {"ntilde", 0xF1},
    {"ograve", 0xF2},   {"oacute", 0xF3},   {"ocirc", 0xF4},    {"otilde", 0xF5},
    {"ouml", 0xF6},     {"divide", 0xF7},   {"oslash", 0xF8},   {"ugrave", 0xF9},
    {"uacute", 0xFA},   {"ucirc", 0xFB},    {"uuml", 0xFC},     {"yacute", 0xFD},
    {"thorn", 0xFE},    {"yuml", 0xFF},     {"OElig", 0x152},   {"oelig", 0x153},
    {"Scaron", 0x160},  {"scaron", 0x161},  {"Yuml", 0x178},    {"fnof", 0x192},
    {"ndash", 0x2013},  {"mdash", 0x2014},  {"lsquo", 0x2018},  {"rsquo", 0x2019},
    {"sbquo", 0x201A},  {"ldquo", 0x201C},  {"rdquo", 0x201D},  {"bdquo", 0x201E},
    {"dagger", 0x2020}, {"Dagger", 0x2021}, {"bull", 0x2022},   {"hellip", 0x2026},
    {"permil", 0x2030}, {"lsaquo", 0x2039}, {"rsaquo", 0x203A}, {"euro", 0x20AC},
    {"trade", 0x2122},  {"minus", 0x2212},
};

void append_utf8(std::string& out, uint32_t cp) {
    if (cp == 0 || cp > 0x10FFFF)
        cp = 0xFFFD;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

const std::unordered_map<std::string_view, uint32_t>& entity_map() {
    static const auto* map = [] {
        auto* m = new std::unordered_map<std::string_view, uint32_t>;
        for (const EntityDef& e : kEntities)
            m->emplace(e.name, e.codepoint);
        return m;
    }();
    return *map;
}

// Decodes &name; &#123; &#xAB; sequences. Unknown or unterminated runs
// stay literal.
std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view body = s.substr(i + 1, semi - i - 1);
        if (!body.empty() && body[0] == '#') {
            uint32_t cp = 0;
            bool ok = body.size() > 1;
            if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
                for (size_t k = 2; k < body.size() && ok; ++k) {
                    unsigned char c = body[k];
                    if (!std::isxdigit(c))
                        ok = false;
                    else
                        cp = cp * 16 + static_cast<uint32_t>(std::isdigit(c) ? c - '0'
                                                                             : std::tolower(c) - 'a' + 10);
                }
            } else {
                for (size_t k = 1; k < body.size() && ok; ++k) {
                    if (!std::isdigit(static_cast<unsigned char>(body[k])))
                        ok = false;
                    else
                        cp = cp * 10 + static_cast<uint32_t>(body[k] - '0');
                }
            }
            if (ok) {
                if (cp == 0xA0)
                    cp = ' ';
                append_utf8(out, cp);
                i = semi + 1;
                continue;
            }
        } else {
            auto it = entity_map().find(body);
            if (it != entity_map().end()) {
                append_utf8(out, it->second);
                i = semi + 1;
                continue;
            }
        }
        out.push_back(s[i++]);
    }
    return out;
}

// Replaces invalid UTF-8 sequences with U+FFFD.
std::string utf8_lossy(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        unsigned char c = s[i];
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
            ++i;
            continue;
        }
        size_t len = 0;
        if (c >= 0xC2 && c <= 0xDF)
            len = 2;
        else if (c >= 0xE0 && c <= 0xEF)
            len = 3;
        else if (c >= 0xF0 && c <= 0xF4)
            len = 4;
        bool valid = len > 0 && i + len <= s.size();
        for (size_t k = 1; valid && k < len; ++k) {
            unsigned char cc = s[i + k];
            if (cc < 0x80 || cc > 0xBF)
                valid = false;
        }
        if (valid && c == 0xE0 && static_cast<unsigned char>(s[i + 1]) < 0xA0)
            valid = false; // overlong
        if (valid && c == 0xED && static_cast<unsigned char>(s[i + 1]) > 0x9F)
            valid = false; // surrogates
        if (valid && c == 0xF0 && static_cast<unsigned char>(s[i + 1]) < 0x90)
            valid = false;
        if (valid && c == 0xF4 && static_cast<unsigned char>(s[i + 1]) > 0x8F)
            valid = false;
        if (valid) {
            out.append(s.substr(i, len));
            i += len;
        } else {
            out.append("\xEF\xBF\xBD");
            ++i;
        }
    }
    return out;
}

// ---------------------------------------------------------------------
// Tag classification

const std::unordered_set<std::string_view>& void_tags() {
    static const std::unordered_set<std::string_view> set = {
        "br",  "hr",    "img",   "input", "meta",  "link", "base",
        "area", "col",  "embed", "source", "track", "wbr",  "param"};
    return set;
}

enum class TagCat {
    Structural,
    Metadata,
    Separator,
    Table,
    TableSection,
    TableRow,
    TableCell,
    List,
    ListItem,
    DefList,
    DefItem,
    Select,
    OptGroup,
    Option,
    Phrasing,
    Block,
    Unknown,
};

TagCat tag_category(std::string_view name) {
    static const std::unordered_map<std::string_view, TagCat> map = [] {
        std::unordered_map<std::string_view, TagCat> m;
        auto add = [&m](std::initializer_list<std::string_view> names, TagCat cat) {
            for (auto n : names)
                m.emplace(n, cat);
        };
        add({"html", "head", "body"}, TagCat::Structural);
        add({"title", "meta", "link", "base", "style", "script", "noscript"}, TagCat::Metadata);
        add({"p", "h1", "h2", "h3", "h4", "h5", "h6", "hr", "br"}, TagCat::Separator);
        add({"table"}, TagCat::Table);
        add({"thead", "tbody", "tfoot", "colgroup"}, TagCat::TableSection);
        add({"tr"}, TagCat::TableRow);
        add({"td", "th"}, TagCat::TableCell);
        add({"ul", "ol", "menu", "dir"}, TagCat::List);
        add({"li"}, TagCat::ListItem);
        add({"dl"}, TagCat::DefList);
        add({"dt", "dd"}, TagCat::DefItem);
        add({"select"}, TagCat::Select);
        add({"optgroup"}, TagCat::OptGroup);
        add({"option"}, TagCat::Option);
        add({"a",      "abbr",   "acronym", "b",     "bdi",    "bdo",    "big",   "button",
             "cite",   "code",   "data",    "del",   "dfn",    "em",     "font",  "i",
             "img",    "input",  "ins",     "kbd",   "label",  "map",    "mark",  "meter",
             "nobr",   "object", "output",  "progress", "q",   "rp",     "rt",    "ruby",
             "s",      "samp",   "small",   "span",  "strike", "strong", "sub",   "sup",
             "time",   "tt",     "u",       "var",   "wbr",    "area",   "embed", "source",
             "track",  "param",  "picture", "audio", "video"},
            TagCat::Phrasing);
        add({"address", "article", "aside",  "blockquote", "canvas",  "caption", "center",
             "details", "dialog",  "div",    "fieldset",   "figcaption", "figure", "footer",
             "form",    "header",  "hgroup", "iframe",     "main",    "nav",     "pre",
             "section", "summary"},
            TagCat::Block);
        return m;
    }();
    auto it = map.find(name);
    return it == map.end() ? TagCat::Unknown : it->second;
}

} // namespace

int separator_weight(std::string_view name) {
    if (name.size() == 2 && name[0] == 'h' && name[1] >= '1' && name[1] <= '6')
        return name[1] - '0';
    if (name == "p" || name == "hr" || name == "br")
        return 7;
    return 0;
}

bool is_void_tag(std::string_view name) {
    return void_tags().count(name) > 0;
}

bool can_contain(const Tag& parent, const Tag& child) {
    if (parent.name == "doc")
        return child.name != "doc";
    if (child.name == "doc")
        return false;

    TagCat cc = tag_category(child.name);
    if (cc == TagCat::Structural)
        return !parent.is_synthetic && parent.name == "html";

    // A separator block absorbs anything except separators of equal or
    // higher weight.
    if (parent.is_synthetic) {
        if (child.is_separator || child.is_synthetic)
            return separator_weight(parent.name) < separator_weight(child.name);
        return true;
    }
    if (is_void_tag(parent.name))
        return false;

    switch (tag_category(parent.name)) {
    case TagCat::Structural:
        if (parent.name == "head")
            return cc == TagCat::Metadata;
        return true; // html, body
    case TagCat::Metadata:
        return false;
    case TagCat::Separator:
        // p and h1..h6 hold phrasing content only
        return cc == TagCat::Phrasing || cc == TagCat::Unknown;
    case TagCat::Table:
        return cc == TagCat::TableSection || cc == TagCat::TableRow || cc == TagCat::TableCell ||
               child.name == "caption" || child.name == "col" || child.name == "form";
    case TagCat::TableSection:
        if (parent.name == "colgroup")
            return child.name == "col";
        return cc == TagCat::TableRow || cc == TagCat::TableCell;
    case TagCat::TableRow:
        return cc == TagCat::TableCell;
    case TagCat::TableCell:
        // a new cell, row, or section ends the current cell
        return cc != TagCat::TableCell && cc != TagCat::TableRow && cc != TagCat::TableSection;
    case TagCat::List:
        return cc == TagCat::ListItem || cc == TagCat::List;
    case TagCat::ListItem:
        return cc != TagCat::ListItem;
    case TagCat::DefList:
        return cc == TagCat::DefItem || child.name == "div";
    case TagCat::DefItem:
        return cc != TagCat::DefItem;
    case TagCat::Select:
        return child.name == "option" || child.name == "optgroup";
    case TagCat::OptGroup:
        return child.name == "option";
    case TagCat::Option:
        return false;
    case TagCat::Phrasing:
        return cc == TagCat::Phrasing || cc == TagCat::Unknown;
    case TagCat::Block:
    case TagCat::Unknown:
        return true;
    }
    return true;
}

// ---------------------------------------------------------------------
// Tokenizer

namespace {

bool valid_name_char(unsigned char c) {
    return std::isalnum(c) || c == '-' || c == ':' || c == '_';
}

struct Tokenizer {
    std::string_view in;
    size_t pos = 0;
    std::vector<Token> out;
    std::string pending;

    void flush_text() {
        if (pending.empty())
            return;
        Token t;
        t.type = Token::Type::Text;
        t.text = decode_entities(utf8_lossy(pending));
        pending.clear();
        out.push_back(std::move(t));
    }

    void emit_open(std::string name, bool self_closing) {
        flush_text();
        Token t;
        t.type = Token::Type::Open;
        t.name = std::move(name);
        t.self_closing = self_closing || is_void_tag(t.name);
        out.push_back(std::move(t));
    }

    void emit_close(std::string name) {
        if (is_void_tag(name))
            return; // closers of void elements have nothing to close
        flush_text();
        Token t;
        t.type = Token::Type::Close;
        t.name = std::move(name);
        out.push_back(std::move(t));
    }

    // pos sits on the first name char; returns lowercased name.
    std::string read_name() {
        size_t start = pos;
        while (pos < in.size() && valid_name_char(static_cast<unsigned char>(in[pos])))
            ++pos;
        return lower_copy(in.substr(start, pos - start));
    }

    // Skips attributes up to and including '>'. Returns self-closing
    // flag; false result with eof=true means the tag was truncated.
    bool skip_attributes(bool& eof) {
        bool slash = false;
        while (pos < in.size()) {
            char c = in[pos];
            if (c == '>') {
                ++pos;
                eof = false;
                return slash;
            }
            if (c == '"' || c == '\'') {
                size_t end = in.find(c, pos + 1);
                if (end == std::string_view::npos) {
                    pos = in.size();
                    break;
                }
                pos = end + 1;
                slash = false;
                continue;
            }
            slash = c == '/';
            ++pos;
        }
        eof = true;
        return false;
    }

    // Finds "</name" (case-insensitive) starting at pos; returns npos if
    // absent.
    size_t find_close_of(std::string_view name) const {
        for (size_t i = pos; i + name.size() + 2 <= in.size(); ++i) {
            if (in[i] != '<' || in[i + 1] != '/')
                continue;
            if (iequals(in.substr(i + 2, name.size()), name)) {
                size_t after = i + 2 + name.size();
                if (after >= in.size() || !valid_name_char(static_cast<unsigned char>(in[after])))
                    return i;
            }
        }
        return std::string_view::npos;
    }

    void skip_past_gt(size_t from) {
        size_t gt = in.find('>', from);
        pos = gt == std::string_view::npos ? in.size() : gt + 1;
    }

    void run() {
        while (pos < in.size()) {
            if (in[pos] != '<') {
                size_t next = in.find('<', pos);
                if (next == std::string_view::npos)
                    next = in.size();
                pending.append(in.substr(pos, next - pos));
                pos = next;
                continue;
            }
            if (pos + 1 >= in.size()) {
                pending.push_back('<');
                ++pos;
                continue;
            }
            char c = in[pos + 1];
            if (c == '!') {
                if (in.substr(pos, 4) == "<!--") {
                    size_t end = in.find("-->", pos + 4);
                    pos = end == std::string_view::npos ? in.size() : end + 3;
                } else {
                    skip_past_gt(pos + 2);
                }
                continue;
            }
            if (c == '?') {
                skip_past_gt(pos + 2);
                continue;
            }
            if (c == '/') {
                if (pos + 2 < in.size() && std::isalpha(static_cast<unsigned char>(in[pos + 2]))) {
                    pos += 2;
                    std::string name = read_name();
                    skip_past_gt(pos);
                    emit_close(std::move(name));
                } else {
                    skip_past_gt(pos + 2);
                }
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                pos += 1;
                std::string name = read_name();
                bool eof = false;
                bool self_closing = skip_attributes(eof);
                if (eof)
                    break; // truncated tag at end of input
                if (name == "script" || name == "style" || name == "noscript") {
                    // drop the element and its body entirely
                    size_t close = find_close_of(name);
                    if (close == std::string_view::npos) {
                        pos = in.size();
                    } else {
                        pos = close;
                        skip_past_gt(pos);
                    }
                    continue;
                }
                if (name == "title" || name == "textarea") {
                    // RCDATA: raw text until the matching closer
                    size_t close = find_close_of(name);
                    size_t end = close == std::string_view::npos ? in.size() : close;
                    emit_open(name, false);
                    pending.append(in.substr(pos, end - pos));
                    flush_text();
                    if (close == std::string_view::npos) {
                        pos = in.size();
                    } else {
                        pos = close;
                        skip_past_gt(pos);
                        emit_close(name);
                    }
                    continue;
                }
                emit_open(std::move(name), self_closing);
                continue;
            }
            pending.push_back('<');
            ++pos;
        }
        flush_text();
    }
};

} // namespace

std::vector<Token> tokenize(std::string_view input) {
    Tokenizer tk;
    tk.in = input;
    tk.run();
    return tk.out;
}

// ---------------------------------------------------------------------
// Frame builder

namespace {

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_ws = true; // leading whitespace trimmed
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            in_ws = true;
            continue;
        }
        if (in_ws && !out.empty())
            out.push_back(' ');
        in_ws = false;
        out.push_back(static_cast<char>(c));
    }
    return out;
}

Tag make_tag(std::string name, bool self_closing = false) {
    Tag t;
    t.name = std::move(name);
    t.is_self_closing = self_closing || is_void_tag(t.name);
    t.is_separator = separator_weight(t.name) > 0;
    return t;
}

struct OpenFrame {
    FrameNode node;
    bool is_wrapper = false;   // synthetic separator block
    bool is_inner_sep = false; // the separator frame heading its wrapper
    bool inner_closed = false; // wrapper only: inner saw its own closer
    bool explicitly_closed = false;
};

struct FrameBuilder {
    // Trees deeper than this flatten: the tree walkers recurse, and real
    // markup never comes close.
    static constexpr size_t kMaxDepth = 256;

    std::vector<OpenFrame> stack;
    std::unordered_map<std::string, int> open_count_;

    FrameBuilder() {
        OpenFrame root;
        root.node = FrameNode::frame(make_tag("doc"));
        stack.push_back(std::move(root));
    }

    void push(OpenFrame&& frame) {
        ++open_count_[frame.node.tag.name];
        stack.push_back(std::move(frame));
    }

    // Completes the top frame and attaches it to its parent. A synthetic
    // wrapper whose separator was never explicitly closed and absorbed
    // nothing collapses to the bare separator frame.
    void pop_finalize() {
        OpenFrame done = std::move(stack.back());
        stack.pop_back();
        --open_count_[done.node.tag.name];
        OpenFrame& parent = stack.back();
        if (done.is_inner_sep) {
            parent.inner_closed = done.explicitly_closed;
            parent.node.children.push_back(std::move(done.node));
            return;
        }
        if (done.is_wrapper && done.node.children.size() == 1 && !done.inner_closed) {
            parent.node.children.push_back(std::move(done.node.children.front()));
            return;
        }
        if (done.is_wrapper)
            done.node.wrapper_closed = done.explicitly_closed;
        parent.node.children.push_back(std::move(done.node));
    }

    void add_text(std::string_view raw) {
        std::string s = collapse_whitespace(raw);
        if (s.empty())
            return;
        // runs separated only by dropped markup merge into one leaf
        std::vector<FrameNode>& siblings = stack.back().node.children;
        if (!siblings.empty() && siblings.back().is_text()) {
            siblings.back().text += ' ';
            siblings.back().text += s;
            return;
        }
        siblings.push_back(FrameNode::text_node(std::move(s)));
    }

    void open(const std::string& name, bool self_closing) {
        Tag tag = make_tag(name, self_closing);
        while (stack.size() > 1 && !can_contain(stack.back().node.tag, tag))
            pop_finalize();
        if (stack.size() >= kMaxDepth) {
            stack.back().node.children.push_back(FrameNode::frame(tag));
            return;
        }
        if (tag.is_separator) {
            Tag wrapper_tag = tag;
            wrapper_tag.is_synthetic = true;
            OpenFrame wrapper;
            wrapper.node = FrameNode::frame(wrapper_tag);
            wrapper.is_wrapper = true;
            push(std::move(wrapper));
            OpenFrame inner;
            inner.node = FrameNode::frame(tag);
            inner.is_inner_sep = true;
            push(std::move(inner));
            if (tag.is_self_closing)
                pop_finalize(); // void separators head their block instantly
            return;
        }
        if (tag.is_self_closing) {
            stack.back().node.children.push_back(FrameNode::frame(tag));
            return;
        }
        OpenFrame frame;
        frame.node = FrameNode::frame(tag);
        push(std::move(frame));
    }

    static bool closes(const std::string& name, const Tag& tag) {
        return tag.name == name; // a closer ends both s and s* frames
    }

    // A closer closes up to its matching ancestor; with no open frame of
    // that name anywhere, it is dropped without effect.
    void close(const std::string& name) {
        auto it = open_count_.find(name);
        if (it == open_count_.end() || it->second <= 0)
            return;
        while (stack.size() > 1) {
            OpenFrame& top = stack.back();
            if (closes(name, top.node.tag)) {
                top.explicitly_closed = true;
                pop_finalize();
                return;
            }
            pop_finalize();
        }
    }

    FrameNode finish() {
        while (stack.size() > 1)
            pop_finalize();
        return std::move(stack.front().node);
    }
};

bool is_ws_only(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

} // namespace

FrameNode parse_frames(const std::vector<Token>& tokens) {
    FrameBuilder builder;
    size_t i = 0;
    while (i < tokens.size()) {
        const Token& t = tokens[i];
        switch (t.type) {
        case Token::Type::Text:
            builder.add_text(t.text);
            ++i;
            break;
        case Token::Type::Open:
            builder.open(t.name, t.self_closing);
            ++i;
            // a run of br tags (ignoring whitespace) is one separator event
            if (t.name == "br") {
                while (i < tokens.size()) {
                    const Token& n = tokens[i];
                    if (n.type == Token::Type::Open && n.name == "br") {
                        ++i;
                    } else if (n.type == Token::Type::Text && is_ws_only(n.text)) {
                        ++i;
                    } else {
                        break;
                    }
                }
            }
            break;
        case Token::Type::Close:
            builder.close(t.name);
            ++i;
            break;
        }
    }
    return builder.finish();
}

FrameNode parse_page(std::string_view bytes) {
    return parse_frames(tokenize(bytes));
}

namespace {

void collect_text_frames(const FrameNode& node, std::vector<const Tag*>& path,
                         std::vector<TextFrame>& out) {
    if (node.is_text()) {
        TextFrame tf;
        tf.node = &node;
        tf.path = path;
        out.push_back(std::move(tf));
        return;
    }
    path.push_back(&node.tag);
    for (const FrameNode& child : node.children)
        collect_text_frames(child, path, out);
    path.pop_back();
}

} // namespace

std::vector<TextFrame> text_frames(const FrameNode& root) {
    std::vector<TextFrame> out;
    std::vector<const Tag*> path;
    if (root.is_text()) {
        collect_text_frames(root, path, out);
        return out;
    }
    collect_text_frames(root, path, out);
    return out;
}

namespace {

const FrameNode* find_title(const FrameNode& node) {
    if (node.is_text())
        return nullptr;
    if (node.tag.name == "title" && !node.tag.is_synthetic)
        return &node;
    for (const FrameNode& child : node.children)
        if (const FrameNode* hit = find_title(child))
            return hit;
    return nullptr;
}

void collect_text(const FrameNode& node, std::string& out) {
    if (node.is_text()) {
        if (!out.empty())
            out.push_back(' ');
        out += node.text;
        return;
    }
    for (const FrameNode& child : node.children)
        collect_text(child, out);
}

} // namespace

std::optional<std::string> page_title(const FrameNode& root) {
    const FrameNode* title = find_title(root);
    if (!title)
        return std::nullopt;
    std::string text;
    collect_text(*title, text);
    return text;
}

namespace {

void dump_node(const FrameNode& node, int depth, std::string& out) {
    out.append(static_cast<size_t>(depth) * 2, ' ');
    if (node.is_text()) {
        out.push_back('"');
        out += node.text;
        out += "\"\n";
        return;
    }
    out += node.tag.display_name();
    out.push_back('\n');
    for (const FrameNode& child : node.children)
        dump_node(child, depth + 1, out);
}

void escape_text(const std::string& s, std::string& out) {
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        default:
            out.push_back(c);
        }
    }
}

void serialize_node(const FrameNode& node, bool close_separator, std::string& out) {
    if (node.is_text()) {
        escape_text(node.text, out);
        out.push_back(' '); // keep adjacent text runs apart
        return;
    }
    const Tag& tag = node.tag;
    if (tag.name == "doc") {
        for (const FrameNode& child : node.children)
            serialize_node(child, false, out);
        return;
    }
    if (tag.is_synthetic) {
        // children[0] is the separator frame itself; emit it closed so the
        // wrapper re-forms on parse
        bool first = true;
        for (const FrameNode& child : node.children) {
            serialize_node(child, first, out);
            first = false;
        }
        if (node.wrapper_closed) {
            out += "</";
            out += tag.name;
            out.push_back('>');
        }
        return;
    }
    out.push_back('<');
    out += tag.name;
    out.push_back('>');
    if (tag.is_self_closing)
        return;
    for (const FrameNode& child : node.children)
        serialize_node(child, false, out);
    if (tag.is_separator && !close_separator)
        return; // bare separators were never closed in the source
    out += "</";
    out += tag.name;
    out.push_back('>');
}

} // namespace

std::string dump_tree(const FrameNode& root) {
    std::string out;
    dump_node(root, 0, out);
    return out;
}

std::string serialize_tree(const FrameNode& root) {
    std::string out;
    serialize_node(root, false, out);
    return out;
}

bool tree_equal(const FrameNode& a, const FrameNode& b) {
    if (a.kind != b.kind)
        return false;
    if (a.is_text())
        return a.text == b.text;
    if (a.tag.name != b.tag.name || a.tag.is_synthetic != b.tag.is_synthetic)
        return false;
    if (a.children.size() != b.children.size())
        return false;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (!tree_equal(a.children[i], b.children[i]))
            return false;
    return true;
}

} // namespace ibex
