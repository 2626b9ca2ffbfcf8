#include "sccpda/analysis.hpp"
#include "sccpda/caching_sim.hpp"
#include "sccpda/errors.hpp"
#include "sccpda/pda.hpp"
#include "sccpda/report.hpp"
#include "sccpda/secrecy_audit.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sccpda;

namespace {

SystemConfig config(const std::string &pda_text, int N, std::size_t B, std::uint64_t seed,
                    std::optional<std::uint32_t> poly) {
  Pda p = parse_pda(pda_text);
  std::optional<Field> field;
  if (poly) {
    if (*poly < 3)
      throw DomainError("field polynomial must have degree >= 1");
    unsigned r = 0;
    while ((*poly >> (r + 1)) != 0)
      ++r;
    field = Field(r, *poly);
  }
  return SystemConfig::make(std::move(p), N, B, seed, field);
}

} // namespace

PYBIND11_MODULE(_sccpda, m) {
  m.doc() = "Secretive coded caching from placement delivery arrays";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<InternalFault>(m, "InternalFault", PyExc_RuntimeError);

  m.def("validate", [](const std::string &text) { return validation_report(parse_pda(text)).dump(); },
        py::arg("pda_text"));
  m.def("mn_pda", [](int K, int t) { return serialize_pda(mn_pda(K, t)); }, py::arg("K"), py::arg("t"));

  m.def(
      "simulate",
      [](const std::string &text, int N, std::size_t B, std::vector<int> demand, std::uint64_t seed,
         bool plain, bool audit, std::optional<std::uint32_t> poly, std::optional<std::string> inject) {
        const auto cfg = config(text, N, B, seed, poly);
        InjectedRandomness inj;
        if (inject)
          inj = parse_injection(json::parse(*inject), cfg);
        return simulate_report(cfg, demand, inj, RunOptions{plain, audit, false}).dump();
      },
      py::arg("pda_text"), py::arg("N"), py::arg("B"), py::arg("demand"), py::arg("seed") = 0,
      py::arg("plain") = false, py::arg("audit") = false, py::arg("field_poly") = py::none(),
      py::arg("inject") = py::none());

  m.def(
      "audit",
      [](const std::string &text, int N, std::optional<std::vector<std::vector<int>>> demands,
         std::vector<int> unkeyed, std::vector<int> granted_keys, std::vector<int> exposed,
         std::uint64_t seed, std::optional<std::uint32_t> poly) {
        const auto cfg = config(text, N, 1, seed, poly);
        Ablation ab{unkeyed, granted_keys, exposed, {}};
        const auto ds = demands ? *demands : demand_set(N, cfg.pda.cols(), seed);
        return audit_report(cfg, ds, ab).dump();
      },
      py::arg("pda_text"), py::arg("N"), py::arg("demands") = py::none(),
      py::arg("unkeyed_slots") = std::vector<int>{}, py::arg("granted_keys") = std::vector<int>{},
      py::arg("exposed_keyvecs") = std::vector<int>{}, py::arg("seed") = 0,
      py::arg("field_poly") = py::none());

  m.def(
      "rate_point",
      [](int K, int N, std::optional<int> t) {
        return to_json(t ? mn_rate_point(K, N, *t) : mn_endpoint(K, N)).dump();
      },
      py::arg("K"), py::arg("N"), py::arg("t") = py::none());
  m.def("table1_row", [](int row, int param, int N) { return to_json(table1_row(row, param, N)).dump(); },
        py::arg("row"), py::arg("param"), py::arg("N"));
  m.def("table2", [](int q, int mm, int N) { return to_json(table2(q, mm, N)).dump(); }, py::arg("q"),
        py::arg("m"), py::arg("N"));

  m.def("gf_mul", [](unsigned r, std::uint32_t a, std::uint32_t b) {
    const Field f(r);
    return f.mul(f.element(a), f.element(b)).value();
  });
  m.def("gf_inv", [](unsigned r, std::uint32_t a) {
    const Field f(r);
    return f.inv(f.element(a)).value();
  });
}
