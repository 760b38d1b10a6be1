#ifndef TERMWEAVE_CONTENT_MODEL_HPP
#define TERMWEAVE_CONTENT_MODEL_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace termweave {

struct ContentExpr;
using ContentExprPtr = std::shared_ptr<const ContentExpr>;

/// Content-model expression over element names plus a text token.
/// Immutable; share freely.
struct ContentExpr {
    enum class Kind { Seq, Choice, Rep, ElemRef, ClassRef, Text, Empty };

    Kind kind = Kind::Empty;
    std::vector<ContentExprPtr> children;  // Seq, Choice
    ContentExprPtr child;                  // Rep
    std::size_t min = 0;                   // Rep
    std::optional<std::size_t> max;        // Rep; nullopt = unbounded
    std::string name;                      // ElemRef, ClassRef

    static ContentExprPtr seq(std::vector<ContentExprPtr> children);
    static ContentExprPtr choice(std::vector<ContentExprPtr> children);
    static ContentExprPtr rep(ContentExprPtr child, std::size_t min,
                              std::optional<std::size_t> max);
    static ContentExprPtr star(ContentExprPtr child) { return rep(std::move(child), 0, std::nullopt); }
    static ContentExprPtr plus(ContentExprPtr child) { return rep(std::move(child), 1, std::nullopt); }
    static ContentExprPtr opt(ContentExprPtr child) { return rep(std::move(child), 0, 1); }
    static ContentExprPtr elem(std::string name);
    static ContentExprPtr cls(std::string name);
    static ContentExprPtr text();
    static ContentExprPtr empty();
};

/// True if the expression still contains ClassRef nodes.
bool has_class_refs(const ContentExpr& expr);

/// Compact textual form of an expression: `,` sequence, `|` choice,
/// postfix `*` `+` `?`, `text`, parentheses. Counted repetitions render
/// as `{m,n}` and the empty model as `empty`.
std::string render(const ContentExpr& expr);

/// Position-automaton acceptor for a resolved content model. Built once,
/// matched many times; immutable and freely shareable.
class Matcher {
  public:
    /// Compiles via the Glushkov position construction; the match itself
    /// runs the position sets on the fly, which determinizes by subset.
    /// Throws std::invalid_argument when the expression still contains
    /// class references.
    static Matcher compile(const ContentExpr& expr);

    bool accepts(std::span<const std::string> tokens) const;
    bool accepts(std::initializer_list<std::string> tokens) const {
        return accepts(std::span<const std::string>(tokens.begin(), tokens.size()));
    }

  private:
    Matcher() = default;

    std::vector<std::string> symbols_;      // per position
    std::vector<std::vector<int>> follow_;  // per position
    std::vector<int> first_;
    std::vector<bool> last_;
    bool nullable_ = false;
};

}  // namespace termweave

#endif
