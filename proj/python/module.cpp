#include "treeprod/morse_thue.hpp"
#include "treeprod/pipeline.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace treeprod;

namespace {

PipelineConfig make_config(const std::string& preset, const py::dict& overrides) {
    PipelineConfig c = preset.empty() ? PipelineConfig{} : preset_config(preset);
    for (auto [key, value] : overrides) {
        const auto k = key.cast<std::string>();
        if (k == "space") {
            c.space = value.cast<std::string>();
            c.lattice.clear();
        } else if (k == "depth") {
            c.depth = value.cast<int>();
        } else if (k == "n") {
            c.n = value.cast<int>();
        } else if (k == "space_file") {
            c.space_file = value.cast<std::string>();
        } else if (k == "covering_file") {
            c.covering_file = value.cast<std::string>();
        } else if (k == "r") {
            c.r = parse_rational(py::str(value).cast<std::string>());
        } else if (k == "max_level") {
            c.max_level = value.cast<int>();
        } else if (k == "colors") {
            c.colors = value.cast<int>();
            c.lattice.clear();
        } else if (k == "semantics") {
            c.semantics = parse_semantics(value.cast<std::string>());
        } else if (k == "kappa") {
            c.kappa = value.cast<int>();
        } else if (k == "research_kappa") {
            c.research_kappa = value.cast<bool>();
        } else if (k == "seed") {
            c.seed = value.cast<std::uint64_t>();
        } else if (k == "jobs") {
            c.jobs = value.cast<unsigned>();
        } else {
            throw py::key_error("unknown option '" + k + "'");
        }
    }
    return c;
}

std::string bits_string(const Bits& b) { return format_bits(b); }

Bits parse_bits(const std::string& s) {
    Bits out;
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("bits must be 0 or 1");
        out.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Embeddings of sampled doubling spaces into products of trees";

    py::register_exception<DiaryError>(m, "DiaryError", PyExc_ValueError);
    py::register_exception<StageError>(m, "StageError", PyExc_RuntimeError);

    m.def(
        "encode",
        [](const std::string& sentence, int kappa) {
            Lexicon lex;
            return format(encode(parse_sentence(sentence, lex), kappa), lex);
        },
        py::arg("sentence"), py::arg("kappa"));
    m.def(
        "rest_sentence",
        [](const std::string& sentence, int kappa) {
            Lexicon lex;
            return format(rest_sentence(parse_sentence(sentence, lex), kappa), lex);
        },
        py::arg("sentence"), py::arg("kappa"));
    m.def(
        "reconstruct",
        [](const std::string& diary, int kappa) {
            Lexicon lex;
            return format(reconstruct(parse_diary(diary, lex), kappa), lex);
        },
        py::arg("diary"), py::arg("kappa"));
    m.def(
        "is_member",
        [](const std::string& diary, const std::string& sentence, int kappa) {
            Lexicon lex;
            const auto hat = reconstruct(parse_diary(diary, lex), kappa);
            return membership(hat, parse_sentence(sentence, lex));
        },
        py::arg("diary"), py::arg("sentence"), py::arg("kappa"));

    m.def("mt_prefix", [](std::size_t n) { return bits_string(mt_prefix(n)); }, py::arg("n"));
    m.def("is_cube_free", [](const std::string& bits) { return is_cube_free(parse_bits(bits)); }, py::arg("bits"));

    m.def("min_kappa", &min_kappa, py::arg("colors"));
    m.def("sigma_absorbed", &sigma_absorbed, py::arg("colors"));
    m.attr("presets") = py::make_tuple("cantor", "circle");

    m.def(
        "run_pipeline",
        [](const std::string& preset, const std::string& out_dir, const py::dict& overrides) {
            const auto c = make_config(preset, overrides);
            py::gil_scoped_release release;
            return run_pipeline(c, out_dir).report.dump();
        },
        py::arg("preset") = "", py::arg("out_dir") = "", py::arg("overrides") = py::dict());
    m.def(
        "run_suite",
        [](const std::string& preset, const std::string& suite, const py::dict& overrides) {
            const auto c = make_config(preset, overrides);
            const Suite s = parse_suite(suite);
            py::gil_scoped_release release;
            return run_suite(c, s).dump();
        },
        py::arg("preset") = "", py::arg("suite") = "all", py::arg("overrides") = py::dict());
}
