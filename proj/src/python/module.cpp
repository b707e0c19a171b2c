#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fpf/interface.hpp"

namespace py = pybind11;

namespace {

PyObject* g_error = nullptr;

py::dict trace_info(const fpf::ProofTrace& t) {
    py::dict d;
    d["theorem"] = t.theorem;
    d["statement"] = fpf::print(t.statement);
    d["tactics"] = t.tactic_count();
    return d;
}

const fpf::Catalog& pick_catalog(const std::optional<std::string>& json, fpf::Catalog& holder) {
    if (!json) return fpf::Catalog::builtin();
    holder = fpf::Catalog::from_json(*json);
    return holder;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Proof checker and formality renderer for use_/prove_ tactic scripts";

    static py::exception<fpf::Error> exc(m, "FpfError");
    g_error = exc.ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const fpf::Error& e) {
            const fpf::ErrorReport r = fpf::report(e);
            py::object err = py::reinterpret_borrow<py::object>(g_error)(r.message);
            err.attr("code") = static_cast<int>(r.code);
            err.attr("code_name") = std::string(fpf::code_name(r.code));
            err.attr("line") = r.span.line;
            err.attr("column") = r.span.column;
            PyErr_SetObject(g_error, err.ptr());
        }
    });

    m.attr("PROTOCOL_VERSION") = fpf::kProtocolVersion;

    m.def("normalize_formula", [](const std::string& text) { return fpf::print(fpf::parse_formula(text)); },
          py::arg("text"), "Parses a formula and prints it back in canonical Unicode form.");

    m.def("check", [](const std::string& source) {
        py::list out;
        for (const auto& t : fpf::check_with_stdlib(fpf::parse_script(source))) out.append(trace_info(t));
        return out;
    }, py::arg("source"), "Checks every theorem of a script. Raises FpfError on the first problem.");

    m.def("render", [](const std::string& source, int level, const std::string& format,
                       std::optional<std::string> theorem, std::optional<std::string> catalog) {
        auto lv = fpf::level_from_int(level);
        if (!lv) throw py::value_error("level must be 0, 1, 2 or 3");
        if (format != "text" && format != "jsonl") throw py::value_error("format must be text or jsonl");
        fpf::Catalog holder;
        const fpf::Catalog& cat = pick_catalog(catalog, holder);
        std::string out;
        for (const auto& t : fpf::check_with_stdlib(fpf::parse_script(source))) {
            if (theorem && t.theorem != *theorem) continue;
            const auto doc = fpf::render(*lv, t, cat);
            if (format == "jsonl") {
                out += fpf::to_jsonl(doc);
            } else {
                if (!out.empty()) out += '\n';
                out += fpf::to_text(doc);
            }
        }
        return out;
    }, py::arg("source"), py::arg("level") = 1, py::arg("format") = "text", py::arg("theorem") = py::none(),
       py::arg("catalog") = py::none());

    py::class_<fpf::Session>(m, "Session")
        .def(py::init([](const std::string& source) { return fpf::Session::load(source); }), py::arg("source"))
        .def("step_forward", [](fpf::Session& s) { return s.step_forward().source_line; },
             "Accepts the next item and returns its first source line.")
        .def("step_back", &fpf::Session::step_back)
        .def("run_to_end", &fpf::Session::run_to_end)
        .def_property_readonly("cursor", &fpf::Session::cursor)
        .def_property_readonly("at_end", &fpf::Session::at_end)
        .def_property_readonly("accepted_line", &fpf::Session::accepted_line)
        .def_property_readonly("item_count", [](const fpf::Session& s) { return s.items().size(); })
        .def_property_readonly("proved", [](const fpf::Session& s) {
            std::vector<std::string> names;
            for (const auto& t : s.traces()) names.push_back(t.theorem);
            return names;
        })
        .def("state_json", [](const fpf::Session& s) { return fpf::state_view_json(s); });

    py::class_<fpf::ProtocolHandler>(m, "ProtocolHandler")
        .def(py::init<>())
        .def("handle", &fpf::ProtocolHandler::handle, py::arg("line"),
             "Answers one request line with one response line.");
}
