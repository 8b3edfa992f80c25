#include "gramkit/printer.hpp"

#include <map>
#include <set>
#include <sstream>

namespace gramkit {

namespace {

void escapeInto(std::ostream& out, const std::string& text, char quote) {
    for (char c : text) {
        if (c == quote || c == '\\') {
            out << '\\' << c;
        } else if (quote == '"' && c == '\n') {
            out << "\\n";
        } else if (quote == '"' && c == '\t') {
            out << "\\t";
        } else {
            out << c;
        }
    }
}

void printClassChar(std::ostream& out, char c) {
    out << '\'';
    if (c == '\'' || c == '\\') out << '\\';
    out << c << '\'';
}

// Names every symbol prints under. Namespace symbols keep their plain name
// unless it collides with another printed symbol, in which case the alias is
// prefixed.
std::map<NodeId, std::string> printedNames(const Grammar& g) {
    std::map<std::string, int> uses;
    for (const auto& s : g.symbols) ++uses[s.name];
    std::map<NodeId, std::string> names;
    for (const auto& s : g.symbols) {
        if (uses[s.name] > 1 && !s.namespaceAlias.empty())
            names[s.id] = s.namespaceAlias + "_" + s.name;
        else
            names[s.id] = s.name;
    }
    return names;
}

class GrammarPrinter {
public:
    explicit GrammarPrinter(const Grammar& g) : g_(g), names_(printedNames(g)) {}

    std::string run() const {
        std::ostringstream out;
        for (const auto& imp : g_.imports) printImport(out, imp);
        for (const auto& s : g_.symbols) {
            out << names_.at(s.id) << " -> ";
            for (std::size_t i = 0; i < s.productions.size(); ++i) {
                if (i > 0) out << " || ";
                printExpr(out, s.productions[i].body, Prec::Alt);
            }
            out << " ;\n";
        }
        return out.str();
    }

    void printImport(std::ostringstream& out, const ImportDecl& imp) const {
        out << "import ";
        if (!imp.alias.empty()) out << imp.alias << " = ";
        out << imp.templateName << "<";
        for (std::size_t i = 0; i < imp.args.size(); ++i) {
            if (i > 0) out << ", ";
            const ImportArg& a = imp.args[i];
            if (a.explicitlyEmpty) {
                out << "empty";
                continue;
            }
            for (std::size_t j = 0; j < a.items.size(); ++j) {
                if (j > 0) out << " || ";
                printExpr(out, a.items[j], Prec::Alt);
            }
        }
        out << ">;\n";
    }

    // Context precedence: Alt admits anything, Seq a sequence or tighter,
    // Term an iterated atom, Atom only a plain atom.
    enum class Prec { Alt, Seq, Term, Atom };

    void printExpr(std::ostream& out, const Expression& e, Prec ctx) const {
        switch (e.kind) {
            case Expression::Kind::Alternative: {
                bool paren = ctx != Prec::Alt;
                if (paren) out << "(";
                for (std::size_t i = 0; i < e.children.size(); ++i) {
                    if (i > 0) out << " | ";
                    printExpr(out, e.children[i], Prec::Seq);
                }
                if (paren) out << ")";
                return;
            }
            case Expression::Kind::Sequence: {
                bool paren = ctx == Prec::Term || ctx == Prec::Atom;
                if (paren) out << "(";
                for (std::size_t i = 0; i < e.children.size(); ++i) {
                    if (i > 0) out << " ";
                    printExpr(out, e.children[i], Prec::Term);
                }
                if (paren) out << ")";
                return;
            }
            case Expression::Kind::Iteration: {
                bool paren = ctx == Prec::Atom;
                if (paren) out << "(";
                printExpr(out, e.children.front(), Prec::Atom);
                out << (e.iter == Expression::Iter::Star ? "*"
                        : e.iter == Expression::Iter::Plus ? "+"
                                                           : "?");
                if (paren) out << ")";
                return;
            }
            case Expression::Kind::SymbolRef: {
                if (e.resolvedSymbol) {
                    auto it = names_.find(e.resolvedSymbol);
                    if (it != names_.end()) {
                        out << it->second;
                        return;
                    }
                }
                out << e.text;
                return;
            }
            case Expression::Kind::StringLiteral:
                out << '\'';
                escapeInto(out, e.text, '\'');
                out << '\'';
                return;
            case Expression::Kind::CharClass:
                out << '[';
                for (std::size_t i = 0; i < e.ranges.size(); ++i) {
                    if (i > 0) out << ' ';
                    printClassChar(out, e.ranges[i].lo);
                    if (e.ranges[i].hi != e.ranges[i].lo) {
                        out << " -- ";
                        printClassChar(out, e.ranges[i].hi);
                    }
                }
                out << ']';
                return;
            case Expression::Kind::Placeholder:
                out << '$' << e.text;
                return;
        }
    }

private:
    const Grammar& g_;
    std::map<NodeId, std::string> names_;
};

}  // namespace

std::string printGrammar(const Grammar& g) { return GrammarPrinter(g).run(); }

std::string printExpression(const Expression& e) {
    Grammar empty;
    std::ostringstream out;
    GrammarPrinter p(empty);
    p.printExpr(out, e, GrammarPrinter::Prec::Alt);
    return out.str();
}

namespace {

void printValueInto(std::ostream& out, const Value& v);

void printAttributeInto(std::ostream& out, const Attribute& a) {
    out << a.name;
    if (a.value) {
        out << " = ";
        printValueInto(out, *a.value);
    }
    out << ";";
}

void printValueInto(std::ostream& out, const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Identifier: out << v.identifierName(); return;
        case Value::Kind::String:
            out << '"';
            escapeInto(out, v.stringText(), '"');
            out << '"';
            return;
        case Value::Kind::Int: out << v.intValue(); return;
        case Value::Kind::Annotation: {
            out << "{ ";
            for (const auto& a : v.attributes()) {
                printAttributeInto(out, a);
                out << " ";
            }
            out << "}";
            return;
        }
        case Value::Kind::Sequence: {
            out << "{{";
            for (const auto& t : v.tokens()) {
                out << " ";
                if (t.isPunct()) {
                    out << t.punct();
                } else if (t.value().kind() == Value::Kind::String) {
                    out << '\'';
                    escapeInto(out, t.value().stringText(), '\'');
                    out << '\'';
                } else {
                    printValueInto(out, t.value());
                }
            }
            out << " }}";
            return;
        }
    }
}

}  // namespace

std::string printValue(const Value& v) {
    std::ostringstream out;
    printValueInto(out, v);
    return out.str();
}

std::string printAttribute(const Attribute& a) {
    std::ostringstream out;
    printAttributeInto(out, a);
    return out.str();
}

std::string printAnnotationsSection(const Grammar& g) {
    std::ostringstream out;
    for (const auto& n : walk(g)) {
        if (!n.annotations || n.annotations->empty()) continue;
        out << nodePath(g, n.id) << " {";
        for (const auto& a : n.annotations->attributes()) {
            out << " ";
            printAttributeInto(out, a);
        }
        out << " }\n";
    }
    return out.str();
}

}  // namespace gramkit
