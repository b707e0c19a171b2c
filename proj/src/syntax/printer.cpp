#include "fpf/syntax.hpp"

namespace fpf {

namespace {

struct InfixSpelling {
    std::string_view function;
    std::string_view unicode;
    std::string_view ascii;
    int level;
    bool right_assoc;
};

constexpr InfixSpelling kInfix[] = {
    {"add", "⊕", "+.", 50, false},
    {"sub", "⊖", "-.", 50, false},
    {"app", "++", "++", 60, true},
};

const InfixSpelling* infix(const Term& t) {
    if (!t.is_app() || t.args.size() != 2) return nullptr;
    for (const auto& op : kInfix) {
        if (op.function == t.name) return &op;
    }
    return nullptr;
}

bool atomic(const Term& t) { return t.is_num() || t.is_var() || (t.is_app() && t.args.empty()); }

void print_term(std::string& out, const Term& t, Notation n);

void print_atomic(std::string& out, const Term& t, Notation n) {
    if (atomic(t)) {
        print_term(out, t, n);
    } else {
        out += '(';
        print_term(out, t, n);
        out += ')';
    }
}

void print_operand(std::string& out, const Term& child, const InfixSpelling& parent, bool right, Notation n) {
    const InfixSpelling* c = infix(child);
    bool parens = false;
    if (c) {
        if (c->level > parent.level) {
            parens = true;
        } else if (c->level == parent.level) {
            parens = c != &parent || right != parent.right_assoc;
        }
    }
    if (parens) out += '(';
    print_term(out, child, n);
    if (parens) out += ')';
}

void print_term(std::string& out, const Term& t, Notation n) {
    switch (t.kind) {
        case Term::Kind::Num:
            out += std::to_string(t.value);
            return;
        case Term::Kind::Var:
            out += t.name;
            return;
        case Term::Kind::App:
            break;
    }
    if (const InfixSpelling* op = infix(t)) {
        print_operand(out, t.args[0], *op, false, n);
        out += ' ';
        out += n == Notation::Unicode ? op->unicode : op->ascii;
        out += ' ';
        print_operand(out, t.args[1], *op, true, n);
        return;
    }
    out += t.name;
    for (const auto& a : t.args) {
        out += ' ';
        print_atomic(out, a, n);
    }
}

std::string sort_part(const std::string& p, Notation n) {
    if (p == kNatSort && n == Notation::Unicode) return "ℕ";
    return p;
}

void print_sort(std::string& out, const Sort& s, Notation n) {
    for (std::size_t i = 0; i < s.parts.size(); ++i) {
        if (i) out += n == Notation::Unicode ? " → " : " -> ";
        out += sort_part(s.parts[i], n);
    }
}

enum Level { kQuant = 0, kImp = 1, kOr = 2, kAnd = 3, kNot = 4, kAtom = 5 };

int level_of(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            return kQuant;
        case Formula::Kind::Imp:
            return kImp;
        case Formula::Kind::Or:
            return kOr;
        case Formula::Kind::And:
            return kAnd;
        case Formula::Kind::Not:
            return f.is_neq() ? kAtom : kNot;
        default:
            return kAtom;
    }
}

std::string_view sym(std::string_view uni, std::string_view ascii, Notation n) {
    return n == Notation::Unicode ? uni : ascii;
}

void print_formula(std::string& out, const Formula& f, int min_level, bool right_open, Notation n);

void print_inner(std::string& out, const Formula& f, bool right_open, Notation n) {
    switch (f.kind) {
        case Formula::Kind::False:
            out += "False";
            return;
        case Formula::Kind::Atom:
            out += f.name;
            for (const auto& a : f.terms) {
                out += ' ';
                print_atomic(out, a, n);
            }
            return;
        case Formula::Kind::Eq:
            print_term(out, f.lhs(), n);
            out += " = ";
            print_term(out, f.rhs(), n);
            return;
        case Formula::Kind::Not:
            if (f.is_neq()) {
                print_term(out, f.body().lhs(), n);
                out += ' ';
                out += sym("≠", "<>", n);
                out += ' ';
                print_term(out, f.body().rhs(), n);
                return;
            }
            out += sym("¬", "~", n);
            print_formula(out, f.body(), kNot, right_open, n);
            return;
        case Formula::Kind::And:
            print_formula(out, f.left(), kNot, false, n);
            out += sym(" ∧ ", " /\\ ", n);
            print_formula(out, f.right(), kAnd, right_open, n);
            return;
        case Formula::Kind::Or:
            print_formula(out, f.left(), kAnd, false, n);
            out += sym(" ∨ ", " \\/ ", n);
            print_formula(out, f.right(), kOr, right_open, n);
            return;
        case Formula::Kind::Imp:
            print_formula(out, f.left(), kOr, false, n);
            out += sym(" → ", " -> ", n);
            print_formula(out, f.right(), kImp, right_open, n);
            return;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            out += f.kind == Formula::Kind::Forall ? sym("∀ ", "forall ", n) : sym("∃ ", "exists ", n);
            const Formula* cur = &f;
            out += cur->name;
            // Merge directly nested binders of the same kind and sort: ∀ n m : ℕ, ...
            while (cur->body().kind == f.kind && cur->body().sort == f.sort) {
                cur = &cur->body();
                out += ' ';
                out += cur->name;
            }
            out += " : ";
            print_sort(out, f.sort, n);
            out += ", ";
            print_formula(out, cur->body(), kQuant, right_open, n);
            return;
        }
    }
}

void print_formula(std::string& out, const Formula& f, int min_level, bool right_open, Notation n) {
    bool parens = f.is_quantifier() ? (!right_open || min_level > kImp) : level_of(f) < min_level;
    if (parens) out += '(';
    print_inner(out, f, parens || right_open, n);
    if (parens) out += ')';
}

}  // namespace

std::string print(const Term& t, Notation n) {
    std::string out;
    print_term(out, t, n);
    return out;
}

std::string print(const Formula& f, Notation n) {
    std::string out;
    print_formula(out, f, kQuant, true, n);
    return out;
}

std::string print(const Sort& s, Notation n) {
    std::string out;
    print_sort(out, s, n);
    return out;
}

std::string print(const TacticLine& line, Notation n) {
    std::string out;
    if (line.bullet) {
        out += *line.bullet;
        if (line.kind == TacticKind::Bullet) return out;
        out += ' ';
    }
    out += tactic_name(line.kind);
    if (line.reverse) out += n == Notation::Unicode ? " ←" : " <-";
    for (const auto& a : line.args) {
        out += ' ';
        print_atomic(out, a, n);
    }
    if (line.target) out += " in " + *line.target;
    out += '.';
    return out;
}

}  // namespace fpf
