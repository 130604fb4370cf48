#ifndef IBEX_FRAMETREE_HPP
#define IBEX_FRAMETREE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ibex {

// Separator tags (h1..h6, hr, br, p) open a new block that runs until the
// next separator of equal or higher weight. Each gets a synthetic frame
// (h1*, p*, ...) grouping the separator with the content it absorbs.
struct Tag {
    std::string name; // lowercased base name, never includes '*'
    bool is_closing = false;
    bool is_self_closing = false;
    bool is_separator = false;
    bool is_synthetic = false;

    std::string display_name() const { return is_synthetic ? name + "*" : name; }
};

/// Weight of a separator tag: h1..h6 are 1..6, p/hr/br share 7. Returns 0
/// for non-separators. Lower weight dominates.
int separator_weight(std::string_view name);

bool is_void_tag(std::string_view name);

/// Containment relation on tags: true when `parent` may contain `child`.
bool can_contain(const Tag& parent, const Tag& child);

struct Token {
    enum class Type { Open, Close, Text };
    Type type = Type::Text;
    std::string name;          // tags: lowercased
    bool self_closing = false; // tags
    std::string text;          // text runs, entities decoded
};

/// Lenient tokenizer: never fails, decodes as UTF-8 with lossy
/// replacement, lowercases tag names, drops comments, scripts, style
/// bodies and processing instructions, and decodes character entities.
std::vector<Token> tokenize(std::string_view input);

struct FrameNode {
    enum class Kind { Frame, Text };
    Kind kind = Kind::Frame;
    Tag tag;          // Frame nodes
    std::string text; // Text nodes
    std::vector<FrameNode> children;
    bool wrapper_closed = false; // synthetic block ended by its own closing tag

    static FrameNode frame(Tag t) {
        FrameNode n;
        n.kind = Kind::Frame;
        n.tag = std::move(t);
        return n;
    }
    static FrameNode text_node(std::string s) {
        FrameNode n;
        n.kind = Kind::Text;
        n.text = std::move(s);
        return n;
    }
    bool is_text() const { return kind == Kind::Text; }
};

/// Builds the frame tree (root tag "doc") from a token stream. Total on
/// any input: opening tags open frames, matching closers close them,
/// unmatched closers close up to a matching ancestor or are dropped, and
/// separators spawn synthetic absorbing frames.
FrameNode parse_frames(const std::vector<Token>& tokens);

/// tokenize + parse_frames over raw page bytes.
FrameNode parse_page(std::string_view bytes);

struct TextFrame {
    const FrameNode* node = nullptr;
    std::vector<const Tag*> path; // ancestor tags, root first
    const std::string& text() const { return node->text; }
};

/// All text leaves in document order, each with its ancestor path.
std::vector<TextFrame> text_frames(const FrameNode& root);

/// Concatenated text of the first title frame, if any.
std::optional<std::string> page_title(const FrameNode& root);

/// Indented one-node-per-line dump for golden-file tests.
std::string dump_tree(const FrameNode& root);

/// Inverse of parsing, close enough that re-parsing the output yields an
/// isomorphic tree. Used by round-trip tests.
std::string serialize_tree(const FrameNode& root);

bool tree_equal(const FrameNode& a, const FrameNode& b);

} // namespace ibex

#endif
