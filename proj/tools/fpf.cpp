#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpf/interface.hpp"

namespace {

constexpr int kOk = 0, kProof = 1, kParse = 2, kUsage = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fpf::Error(fpf::ErrorCode::IoError, {}, "cannot read " + path, {"", "", "no such file", path, ""});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int exit_code(const fpf::Error& e) {
    switch (e.code()) {
        case fpf::ErrorCode::LexError:
        case fpf::ErrorCode::ParseError: return kParse;
        case fpf::ErrorCode::IoError:
        case fpf::ErrorCode::ProtocolError: return kUsage;
        default: return kProof;
    }
}

int fail(const std::string& file, const fpf::Error& e) {
    const fpf::ErrorReport r = fpf::report(e);
    std::cerr << file;
    if (r.span.valid()) std::cerr << ':' << r.span.line << ':' << r.span.column;
    std::cerr << ": " << fpf::code_name(r.code) << ": " << r.message << '\n';
    return exit_code(e);
}

int cmd_check(const std::string& file) {
    try {
        auto traces = fpf::check_with_stdlib(fpf::parse_script(read_file(file)));
        std::cout << file << ": " << traces.size() << " theorem(s) accepted\n";
        return kOk;
    } catch (const fpf::Error& e) {
        return fail(file, e);
    }
}

int cmd_render(const std::string& file, int level, const std::string& catalog, const std::string& out_path,
               const std::string& format, const std::string& theorem) {
    try {
        auto lv = fpf::level_from_int(level);
        if (!lv) throw fpf::Error(fpf::ErrorCode::IoError, {}, "level must be 0, 1, 2 or 3");
        fpf::Catalog custom;
        const fpf::Catalog* cat = &fpf::Catalog::builtin();
        if (!catalog.empty()) {
            custom = fpf::Catalog::from_json(read_file(catalog));
            cat = &custom;
        }
        auto traces = fpf::check_with_stdlib(fpf::parse_script(read_file(file)));
        std::string text;
        bool found = theorem.empty();
        for (const auto& t : traces) {
            if (!theorem.empty() && t.theorem != theorem) continue;
            found = true;
            const auto doc = fpf::render(*lv, t, *cat);
            if (format == "jsonl") {
                text += fpf::to_jsonl(doc);
            } else {
                if (!text.empty()) text += '\n';
                text += fpf::to_text(doc);
            }
        }
        if (!found) throw fpf::Error(fpf::ErrorCode::IoError, {}, "no theorem named " + theorem + " in " + file);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!(out << text)) throw fpf::Error(fpf::ErrorCode::IoError, {}, "cannot write " + out_path);
        }
        return kOk;
    } catch (const fpf::Error& e) {
        return fail(file, e);
    }
}

int cmd_step(const std::string& file) {
    fpf::ProtocolHandler handler;
    if (!file.empty()) {
        std::string source;
        try {
            source = read_file(file);
        } catch (const fpf::Error& e) {
            return fail(file, e);
        }
        nlohmann::json load = {{"v", fpf::kProtocolVersion}, {"id", nullptr}, {"type", "load"}, {"source", source}};
        std::cout << handler.handle(load.dump()) << std::endl;
    }
    for (std::string line; std::getline(std::cin, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::cout << handler.handle(line) << std::endl;
    }
    return kOk;
}

int cmd_serve(int port) {
    try {
        fpf::serve(port, fpf::Catalog::builtin(), [](int p) {
            std::cout << "listening on 127.0.0.1:" << p << std::endl;
        });
    } catch (const fpf::Error& e) {
        std::cerr << "serve: " << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fpf: check, step through and render proof scripts"};
    app.require_subcommand(1);

    std::string file, catalog, out, format = "text", theorem;
    int level = 1, port = 0;

    auto* check = app.add_subcommand("check", "check every theorem of a script");
    check->add_option("FILE", file, "script")->required();

    auto* render = app.add_subcommand("render", "render the proofs of a script");
    render->add_option("FILE", file, "script")->required();
    render->add_option("--level", level, "formality level 0..3")->check(CLI::Range(0, 3));
    render->add_option("--catalog", catalog, "template catalog (JSON)");
    render->add_option("--out", out, "output file");
    render->add_option("--format", format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
    render->add_option("--theorem", theorem, "render only this theorem");

    auto* step = app.add_subcommand("step", "line protocol on standard input/output");
    step->add_option("FILE", file, "script to load first");

    auto* serve = app.add_subcommand("serve", "line protocol on a local TCP port");
    serve->add_option("--port", port, "port (0 picks a free one)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (*check) return cmd_check(file);
    if (*render) return cmd_render(file, level, catalog, out, format, theorem);
    if (*step) return cmd_step(file);
    if (*serve) return cmd_serve(port);
    return kUsage;
}
