#include "fpf/stdlib.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string_view>
#include <utility>

namespace fpf {

namespace embedded {
extern const std::pair<std::string_view, std::string_view> stdlib_files[];
extern const int stdlib_files_count;
}  // namespace embedded

const std::vector<std::string>& stdlib_modules() {
    static const std::vector<std::string> mods{"nat", "list", "tree", "season"};
    return mods;
}

std::string stdlib_source(const std::string& module) {
    const std::string file = module + ".fpf";
    if (const char* dir = std::getenv("FPF_STDLIB"); dir && *dir) {
        std::ifstream in(std::string(dir) + "/" + file, std::ios::binary);
        if (!in) throw Error(ErrorCode::IoError, {}, "cannot read " + std::string(dir) + "/" + file);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    for (int i = 0; i < embedded::stdlib_files_count; ++i) {
        if (embedded::stdlib_files[i].first == file) return std::string(embedded::stdlib_files[i].second);
    }
    throw Error(ErrorCode::IoError, {}, "no library module " + module);
}

Environment load_stdlib() {
    Environment env;
    for (const auto& m : stdlib_modules()) {
        ProofScript s = parse_script(stdlib_source(m));
        check_script(s, env);
    }
    return env;
}

std::shared_ptr<const Environment> shared_stdlib() {
    static std::once_flag once;
    static std::shared_ptr<const Environment> env;
    std::call_once(once, [] { env = std::make_shared<const Environment>(load_stdlib()); });
    return env;
}

std::vector<ProofTrace> check_with_stdlib(const ProofScript& script) {
    for (const auto& d : script.declarations) {
        if (d.kind != Declaration::Kind::Require) continue;
        const auto& mods = stdlib_modules();
        if (std::find(mods.begin(), mods.end(), d.name) == mods.end()) {
            throw Error(ErrorCode::UnresolvedName, d.span, "unknown library module " + d.name,
                        {"", "", "", d.name, "a library module"});
        }
    }
    return check_script(script, *shared_stdlib());
}

// ---------------------------------------------------------------------------
// standard model
// ---------------------------------------------------------------------------

std::string print(const Value& v) {
    if (v.is_nat) return std::to_string(v.nat);
    std::string out = v.ctor;
    for (const auto& a : v.args) {
        out += ' ';
        const bool paren = !a.is_nat && !a.args.empty();
        if (paren) out += '(';
        out += print(a);
        if (paren) out += ')';
    }
    return out;
}

namespace {

[[noreturn]] void not_closed(const std::string& what) {
    throw Error(ErrorCode::ScopeError, {}, "eval_closed: " + what, {"", "", "", what, "a closed library term"});
}

std::uint64_t as_nat(const Value& v) {
    if (!v.is_nat) not_closed("expected a number, got " + print(v));
    return v.nat;
}

Value list_append(const Value& a, const Value& b) {
    if (a.ctor == "nil") return b;
    return Value::data("cons", {a.args[0], list_append(a.args[1], b)});
}

std::uint64_t list_length(const Value& a) {
    std::uint64_t n = 0;
    for (const Value* p = &a; p->ctor == "cons"; p = &p->args[1]) ++n;
    return n;
}

Value tree_mirror(const Value& t) {
    if (t.ctor == "leaf") return t;
    return Value::data("node", {tree_mirror(t.args[2]), t.args[1], tree_mirror(t.args[0])});
}

std::uint64_t tree_size(const Value& t) {
    if (t.ctor == "leaf") return 0;
    return 1 + tree_size(t.args[0]) + tree_size(t.args[2]);
}

const char* kSeasons[] = {"spring", "summer", "autumn", "winter"};

}  // namespace

Value eval_closed(const Term& t) {
    if (t.is_var()) not_closed("variable " + t.name);
    if (t.is_num()) return Value::number(t.value);
    std::vector<Value> a;
    for (const auto& x : t.args) a.push_back(eval_closed(x));
    const std::string& f = t.name;
    auto want = [&](std::size_t n) {
        if (a.size() != n) not_closed(f + " with " + std::to_string(a.size()) + " arguments");
    };
    if (f == "0") return want(0), Value::number(0);
    if (f == "Suc") return want(1), Value::number(as_nat(a[0]) + 1);
    if (f == "pred") return want(1), Value::number(as_nat(a[0]) == 0 ? 0 : as_nat(a[0]) - 1);
    if (f == "add") return want(2), Value::number(as_nat(a[0]) + as_nat(a[1]));
    if (f == "sub") {
        want(2);
        const std::uint64_t n = as_nat(a[0]), m = as_nat(a[1]);
        return Value::number(n > m ? n - m : 0);
    }
    if (f == "nil" || f == "leaf") return want(0), Value::data(f);
    if (f == "cons") return want(2), Value::data(f, std::move(a));
    if (f == "node") return want(3), Value::data(f, std::move(a));
    if (f == "app") return want(2), list_append(a[0], a[1]);
    if (f == "length") return want(1), Value::number(list_length(a[0]));
    if (f == "mirror") return want(1), tree_mirror(a[0]);
    if (f == "size") return want(1), Value::number(tree_size(a[0]));
    for (int i = 0; i < 4; ++i) {
        if (f == kSeasons[i]) return want(0), Value::data(f);
    }
    if (f == "next") {
        want(1);
        for (int i = 0; i < 4; ++i) {
            if (a[0].ctor == kSeasons[i]) return Value::data(kSeasons[(i + 1) % 4]);
        }
        not_closed("next of " + print(a[0]));
    }
    if (f == "mk_day") return want(2), Value::data(f, std::move(a));
    if (f == "day_season") return want(1), a[0].args.at(0);
    if (f == "day_length") return want(1), a[0].args.at(1);
    if (f == "tomorrow_season") {
        want(1);
        return eval_closed(Term::app("next", {Term::app("day_season", {t.args[0]})}));
    }
    not_closed("symbol " + f);
}

}  // namespace fpf
