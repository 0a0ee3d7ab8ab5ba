#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

#include <fmt/core.h>

#include "netmon/error.hpp"
#include "netmon/hclust.hpp"

namespace netmon {

namespace {

constexpr const char* kModule = "newick";

bool needs_quotes(const std::string& label) {
    if (label.empty()) return true;
    return std::any_of(label.begin(), label.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' ||
               c == ':' || c == ';' || c == '[' || c == ']' || c == '\'';
    });
}

std::string quote_label(const std::string& label) {
    if (!needs_quotes(label)) return label;
    std::string out = "'";
    for (char c : label) {
        if (c == '\'') out += '\'';
        out += c;
    }
    return out + "'";
}

struct Writer {
    const Dendrogram& tree;
    std::vector<std::vector<std::size_t>> members;
    std::vector<double> heights;
    std::vector<std::pair<std::size_t, std::size_t>> children;
    std::vector<std::string> smallest_label;

    explicit Writer(const Dendrogram& t)
        : tree(t), members(cluster_members(t)), heights(cluster_heights(t)),
          children(members.size()), smallest_label(members.size()) {
        const auto n = t.leaf_count();
        for (std::size_t i = 0; i < n; ++i) smallest_label[i] = t.leaves[i];
        for (const auto& m : t.merges) {
            children[m.id] = {m.left, m.right};
            smallest_label[m.id] = std::min(smallest_label[m.left], smallest_label[m.right]);
        }
    }

    void write(std::size_t id, std::string& out) const {
        if (id < tree.leaf_count()) {
            out += quote_label(tree.leaves[id]);
            return;
        }
        auto [a, b] = children[id];
        if (smallest_label[b] < smallest_label[a]) std::swap(a, b);
        out += '(';
        for (auto child : {a, b}) {
            if (child == b) out += ',';
            write(child, out);
            out += fmt::format(":{:.15g}", heights[id] - heights[child]);
        }
        out += ')';
    }
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Dendrogram parse() {
        skip_ws();
        const int root = parse_node();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ':') {
            ++pos_;
            parse_length();
            skip_ws();
        }
        expect(';');
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters after ';'");
        if (nodes_[static_cast<std::size_t>(root)].leaf >= 0) fail("tree needs at least two leaves");
        return build();
    }

private:
    struct Node {
        int leaf = -1;  // leaf index, or -1 for internal
        int left = -1, right = -1;
        double length = 0.0;
        double height = 0.0;
        std::size_t order = 0;  // post-order position
    };

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<Node> nodes_;
    std::vector<std::string> leaves_;
    std::size_t post_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw DataError(kModule, fmt::format("{} at offset {}", what, pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) fail(fmt::format("expected '{}'", c));
        ++pos_;
    }

    std::string parse_label() {
        std::string label;
        if (pos_ < text_.size() && text_[pos_] == '\'') {
            ++pos_;
            while (true) {
                if (pos_ >= text_.size()) fail("unterminated quoted label");
                char c = text_[pos_++];
                if (c == '\'') {
                    if (pos_ < text_.size() && text_[pos_] == '\'') {
                        label += '\'';
                        ++pos_;
                        continue;
                    }
                    break;
                }
                label += c;
            }
            return label;
        }
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '(' || c == ')' || c == ',' || c == ':' || c == ';' ||
                std::isspace(static_cast<unsigned char>(c)))
                break;
            label += c;
            ++pos_;
        }
        return label;
    }

    double parse_length() {
        skip_ws();
        const char* begin = text_.data() + pos_;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), v);
        if (ec != std::errc{}) fail("malformed branch length");
        if (v < 0.0) fail("negative branch length");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return v;
    }

    int parse_node() {
        skip_ws();
        Node node;
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            std::vector<int> kids;
            while (true) {
                kids.push_back(parse_child());
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                expect(')');
                break;
            }
            if (kids.size() != 2) fail("only binary trees are supported");
            parse_label();  // internal labels are ignored
            node.left = kids[0];
            node.right = kids[1];
            const auto& l = nodes_[static_cast<std::size_t>(kids[0])];
            const auto& r = nodes_[static_cast<std::size_t>(kids[1])];
            node.height = std::max(l.height + l.length, r.height + r.length);
        } else {
            auto label = parse_label();
            if (label.empty()) fail("empty leaf label");
            node.leaf = static_cast<int>(leaves_.size());
            leaves_.push_back(std::move(label));
        }
        node.order = post_++;
        nodes_.push_back(node);
        return static_cast<int>(nodes_.size() - 1);
    }

    int parse_child() {
        const int id = parse_node();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ':') {
            ++pos_;
            nodes_[static_cast<std::size_t>(id)].length = parse_length();
        }
        return id;
    }

    Dendrogram build() {
        const std::size_t n = leaves_.size();
        {
            auto sorted = leaves_;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                fail("duplicate leaf label");
        }
        std::vector<std::size_t> internal;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].leaf < 0) internal.push_back(i);
        std::sort(internal.begin(), internal.end(), [&](std::size_t a, std::size_t b) {
            const auto& x = nodes_[a];
            const auto& y = nodes_[b];
            return std::tie(x.height, x.order) < std::tie(y.height, y.order);
        });
        std::vector<std::size_t> cluster(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].leaf >= 0) cluster[i] = static_cast<std::size_t>(nodes_[i].leaf);
        Dendrogram tree{leaves_, {}};
        for (std::size_t k = 0; k < internal.size(); ++k) {
            const auto& node = nodes_[internal[k]];
            const std::size_t id = n + k;
            cluster[internal[k]] = id;
            auto a = cluster[static_cast<std::size_t>(node.left)];
            auto b = cluster[static_cast<std::size_t>(node.right)];
            tree.merges.push_back(Merge{std::min(a, b), std::max(a, b), node.height, id});
        }
        validate(tree);
        return tree;
    }
};

}  // namespace

std::string to_newick(const Dendrogram& tree) {
    validate(tree);
    Writer w(tree);
    std::string out;
    w.write(tree.root(), out);
    out += ';';
    return out;
}

Dendrogram parse_newick(std::string_view text) { return Parser(text).parse(); }

}  // namespace netmon
