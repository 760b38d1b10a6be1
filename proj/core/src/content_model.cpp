#include "termweave/content_model.hpp"

#include <algorithm>
#include <stdexcept>

#include "termweave/model.hpp"

namespace termweave {

namespace {

ContentExprPtr make(ContentExpr e) {
    return std::make_shared<const ContentExpr>(std::move(e));
}

}  // namespace

ContentExprPtr ContentExpr::seq(std::vector<ContentExprPtr> children) {
    if (children.empty()) throw std::invalid_argument("empty sequence");
    ContentExpr e;
    e.kind = Kind::Seq;
    e.children = std::move(children);
    return make(std::move(e));
}

ContentExprPtr ContentExpr::choice(std::vector<ContentExprPtr> children) {
    if (children.empty()) throw std::invalid_argument("empty choice");
    ContentExpr e;
    e.kind = Kind::Choice;
    e.children = std::move(children);
    return make(std::move(e));
}

ContentExprPtr ContentExpr::rep(ContentExprPtr child, std::size_t min,
                                std::optional<std::size_t> max) {
    if (max && *max < min) throw std::invalid_argument("repetition max below min");
    ContentExpr e;
    e.kind = Kind::Rep;
    e.child = std::move(child);
    e.min = min;
    e.max = max;
    return make(std::move(e));
}

ContentExprPtr ContentExpr::elem(std::string name) {
    ContentExpr e;
    e.kind = Kind::ElemRef;
    e.name = std::move(name);
    return make(std::move(e));
}

ContentExprPtr ContentExpr::cls(std::string name) {
    ContentExpr e;
    e.kind = Kind::ClassRef;
    e.name = std::move(name);
    return make(std::move(e));
}

ContentExprPtr ContentExpr::text() {
    ContentExpr e;
    e.kind = Kind::Text;
    return make(std::move(e));
}

ContentExprPtr ContentExpr::empty() { return make(ContentExpr{}); }

bool has_class_refs(const ContentExpr& expr) {
    switch (expr.kind) {
        case ContentExpr::Kind::ClassRef:
            return true;
        case ContentExpr::Kind::Seq:
        case ContentExpr::Kind::Choice:
            return std::any_of(expr.children.begin(), expr.children.end(),
                               [](const auto& c) { return has_class_refs(*c); });
        case ContentExpr::Kind::Rep:
            return has_class_refs(*expr.child);
        default:
            return false;
    }
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Binding strength: choice < seq < postfix atom.
enum class Ctx { Top, Seq, Postfix };

void render_into(const ContentExpr& e, Ctx ctx, std::string& out) {
    switch (e.kind) {
        case ContentExpr::Kind::ElemRef:
        case ContentExpr::Kind::ClassRef:
            out += e.name;
            return;
        case ContentExpr::Kind::Text:
            out += "text";
            return;
        case ContentExpr::Kind::Empty:
            out += "empty";
            return;
        case ContentExpr::Kind::Seq: {
            bool paren = ctx == Ctx::Postfix;
            if (paren) out += '(';
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += ", ";
                render_into(*e.children[i], Ctx::Seq, out);
            }
            if (paren) out += ')';
            return;
        }
        case ContentExpr::Kind::Choice: {
            bool paren = ctx != Ctx::Top;
            if (e.children.size() == 1) {
                render_into(*e.children[0], ctx, out);
                return;
            }
            if (paren) out += '(';
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += '|';
                render_into(*e.children[i], Ctx::Top, out);
            }
            if (paren) out += ')';
            return;
        }
        case ContentExpr::Kind::Rep: {
            render_into(*e.child, Ctx::Postfix, out);
            if (e.min == 0 && !e.max) out += '*';
            else if (e.min == 1 && !e.max) out += '+';
            else if (e.min == 0 && e.max && *e.max == 1) out += '?';
            else {
                out += '{';
                out += std::to_string(e.min);
                out += ',';
                out += e.max ? std::to_string(*e.max) : std::string();
                out += '}';
            }
            return;
        }
    }
}

}  // namespace

std::string render(const ContentExpr& expr) {
    std::string out;
    render_into(expr, Ctx::Top, out);
    return out;
}

// ---------------------------------------------------------------------------
// Glushkov construction

namespace {

// Core expression: counted repetitions desugared away.
struct Core {
    enum class Kind { Seq, Choice, Star, Sym, Empty };
    Kind kind;
    std::vector<Core> children;
    int pos = -1;  // Sym
};

Core desugar(const ContentExpr& e, std::vector<std::string>& symbols) {
    switch (e.kind) {
        case ContentExpr::Kind::ElemRef: {
            Core c{Core::Kind::Sym, {}, static_cast<int>(symbols.size())};
            symbols.push_back(e.name);
            return c;
        }
        case ContentExpr::Kind::Text: {
            Core c{Core::Kind::Sym, {}, static_cast<int>(symbols.size())};
            symbols.push_back(names::TextToken);
            return c;
        }
        case ContentExpr::Kind::Empty:
            return Core{Core::Kind::Empty, {}, -1};
        case ContentExpr::Kind::Seq: {
            Core c{Core::Kind::Seq, {}, -1};
            for (const auto& ch : e.children) c.children.push_back(desugar(*ch, symbols));
            return c;
        }
        case ContentExpr::Kind::Choice: {
            Core c{Core::Kind::Choice, {}, -1};
            for (const auto& ch : e.children) c.children.push_back(desugar(*ch, symbols));
            return c;
        }
        case ContentExpr::Kind::Rep: {
            // e{m,} -> e^m e* ; e{m,M} -> e^m (e|empty)^(M-m)
            Core seq{Core::Kind::Seq, {}, -1};
            for (std::size_t i = 0; i < e.min; ++i)
                seq.children.push_back(desugar(*e.child, symbols));
            if (!e.max) {
                Core star{Core::Kind::Star, {}, -1};
                star.children.push_back(desugar(*e.child, symbols));
                seq.children.push_back(std::move(star));
            } else {
                for (std::size_t i = e.min; i < *e.max; ++i) {
                    Core opt{Core::Kind::Choice, {}, -1};
                    opt.children.push_back(desugar(*e.child, symbols));
                    opt.children.push_back(Core{Core::Kind::Empty, {}, -1});
                    seq.children.push_back(std::move(opt));
                }
            }
            if (seq.children.empty()) return Core{Core::Kind::Empty, {}, -1};
            if (seq.children.size() == 1) return std::move(seq.children[0]);
            return seq;
        }
        case ContentExpr::Kind::ClassRef:
            throw std::invalid_argument("unresolved class reference: " + e.name);
    }
    return Core{Core::Kind::Empty, {}, -1};
}

struct Facts {
    bool nullable = false;
    std::vector<int> first;
    std::vector<int> last;
};

void merge(std::vector<int>& into, const std::vector<int>& from) {
    into.insert(into.end(), from.begin(), from.end());
}

Facts analyze(const Core& c, std::vector<std::vector<int>>& follow) {
    switch (c.kind) {
        case Core::Kind::Empty:
            return {true, {}, {}};
        case Core::Kind::Sym:
            return {false, {c.pos}, {c.pos}};
        case Core::Kind::Choice: {
            Facts f{false, {}, {}};
            for (const auto& ch : c.children) {
                Facts g = analyze(ch, follow);
                f.nullable = f.nullable || g.nullable;
                merge(f.first, g.first);
                merge(f.last, g.last);
            }
            return f;
        }
        case Core::Kind::Seq: {
            Facts f{true, {}, {}};
            std::vector<int> carryLast;  // lasts that can precede the next factor
            for (const auto& ch : c.children) {
                Facts g = analyze(ch, follow);
                for (int p : carryLast) merge(follow[p], g.first);
                if (f.nullable) merge(f.first, g.first);
                if (g.nullable) {
                    merge(carryLast, g.last);
                } else {
                    carryLast = g.last;
                }
                f.nullable = f.nullable && g.nullable;
            }
            f.last = carryLast;
            return f;
        }
        case Core::Kind::Star: {
            Facts g = analyze(c.children[0], follow);
            for (int p : g.last) merge(follow[p], g.first);
            return {true, g.first, g.last};
        }
    }
    return {true, {}, {}};
}

void dedupe(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Matcher Matcher::compile(const ContentExpr& expr) {
    Matcher m;
    Core core = desugar(expr, m.symbols_);
    m.follow_.assign(m.symbols_.size(), {});
    Facts f = analyze(core, m.follow_);
    m.nullable_ = f.nullable;
    dedupe(f.first);
    m.first_ = std::move(f.first);
    m.last_.assign(m.symbols_.size(), false);
    for (int p : f.last) m.last_[p] = true;
    for (auto& fl : m.follow_) dedupe(fl);
    return m;
}

bool Matcher::accepts(std::span<const std::string> tokens) const {
    if (tokens.empty()) return nullable_;
    std::vector<bool> live(symbols_.size(), false);
    bool any = false;
    for (int p : first_) {
        if (symbols_[p] == tokens[0]) {
            live[p] = true;
            any = true;
        }
    }
    if (!any) return false;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::vector<bool> next(symbols_.size(), false);
        any = false;
        for (std::size_t p = 0; p < live.size(); ++p) {
            if (!live[p]) continue;
            for (int q : follow_[p]) {
                if (symbols_[q] == tokens[i]) {
                    next[q] = true;
                    any = true;
                }
            }
        }
        if (!any) return false;
        live.swap(next);
    }
    for (std::size_t p = 0; p < live.size(); ++p)
        if (live[p] && last_[p]) return true;
    return false;
}

}  // namespace termweave
