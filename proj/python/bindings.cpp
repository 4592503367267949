#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "manin/counting.hpp"
#include "manin/densities.hpp"
#include "manin/divisor.hpp"
#include "manin/fan.hpp"
#include "manin/hilbert.hpp"
#include "manin/report.hpp"
#include "manin/surface.hpp"

namespace py = pybind11;
using namespace manin;

namespace {

py::object to_fraction(const Rat& q) {
    py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(boost::multiprecision::numerator(q).str(),
                    boost::multiprecision::denominator(q).str());
}

std::vector<std::pair<i64, i64>> ray_pairs(const std::vector<LatticeVec>& rays) {
    std::vector<std::pair<i64, i64>> out;
    for (const auto& r : rays) out.emplace_back(r.a, r.b);
    return out;
}

Fan2D fan_from_pairs(const std::vector<std::pair<i64, i64>>& pairs) {
    std::vector<LatticeVec> rays;
    for (auto [a, b] : pairs) rays.push_back(LatticeVec{a, b});
    return Fan2D(rays);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rational point counts and the predicted leading constant for the cubic "
              "surface x0(x1^2+x2^2) = x3^3";

    py::class_<CountRecord>(m, "CountRecord")
        .def_readonly("B", &CountRecord::B)
        .def_readonly("count", &CountRecord::count)
        .def_readonly("method", &CountRecord::method)
        .def_readonly("elapsed", &CountRecord::elapsed)
        .def("__repr__", [](const CountRecord& r) {
            return "CountRecord(B=" + std::to_string(r.B) + ", count=" + std::to_string(r.count) +
                   ", method='" + r.method + "')";
        });

    py::class_<QFit>(m, "QFit")
        .def_readonly("c3", &QFit::c3)
        .def_readonly("c2", &QFit::c2)
        .def_readonly("c1", &QFit::c1)
        .def_readonly("c0", &QFit::c0)
        .def_readonly("residual", &QFit::residual);

    // fan geometry
    m.def("delta_rays", [] { return ray_pairs(delta().rays()); });
    m.def("delta_tilde_rays", [] { return ray_pairs(delta_tilde().rays()); });
    m.def("resolve_fan", [](const std::vector<std::pair<i64, i64>>& rays) {
        return ray_pairs(hj_resolve(fan_from_pairs(rays)).rays());
    });
    m.def("cone_indices",
          [](const std::vector<std::pair<i64, i64>>& rays) { return fan_from_pairs(rays).cone_indices(); });
    m.def("fan_is_complete",
          [](const std::vector<std::pair<i64, i64>>& rays) { return fan_is_complete(fan_from_pairs(rays)); });
    m.def("fan_is_smooth",
          [](const std::vector<std::pair<i64, i64>>& rays) { return fan_is_smooth(fan_from_pairs(rays)); });
    m.def("picard_rank", [](bool geometric) {
        return geometric ? picard_rank_geometric(delta_tilde())
                         : picard_rank_invariant(delta_tilde(), GaloisInvolution::coordinate_swap());
    }, py::arg("geometric") = false);
    m.def("point_count_fp", [](u64 p, const std::string& method) {
        return point_count_fp(delta_tilde(), p,
                              method == "orbit" ? CountMethod::orbit : CountMethod::trace);
    }, py::arg("p"), py::arg("method") = "trace");
    m.def("alpha", [] { return to_fraction(alpha_volume(paper_divisor_lattice())); });

    // surface points
    m.def("is_on_surface", &is_on_surface);
    m.def("normalize_point", [](i64 x0, i64 x1, i64 x2, i64 x3) {
        SurfacePoint p = normalize_point(x0, x1, x2, x3);
        return py::make_tuple(p.x0, p.x1, p.x2, p.x3);
    });
    m.def("classify_point", [](i64 x0, i64 x1, i64 x2, i64 x3) {
        return to_string(classify_point(normalize_point(x0, x1, x2, x3)));
    });

    // counting
    m.def("brute_force_count", [](u64 B, unsigned workers) { return brute_force_count(B, workers); },
          py::arg("B"), py::arg("workers") = 1);
    m.def("fast_count", [](u64 B, unsigned workers) {
        FactorTable ft(B);
        return fast_count(B, ft, workers);
    }, py::arg("B"), py::arg("workers") = 1);
    m.def("descent_count", [](u64 B, unsigned workers) {
        FactorTable ft(B);
        return descent_count(B, ft, workers);
    }, py::arg("B"), py::arg("workers") = 1);
    m.def("r2", [](u64 n) {
        FactorTable ft(2);
        return r2(n, ft);
    });
    m.def("fit_q", &fit_q);

    // densities
    m.def("chi4", &chi4);
    m.def("sigma_local", [](u64 p) { return to_fraction(sigma_local(p)); });
    m.def("omega_p_good", [](u64 p) { return to_fraction(omega_p_good(p)); });
    m.def("omega_infty_closed", &omega_infty_closed);
    m.def("omega_infty_quadrature", [](double tol) {
        auto q = omega_infty_quadrature(tol);
        return py::make_tuple(q.value, q.error_bound);
    }, py::arg("tol") = 1e-4);
    m.def("local_density", [](u64 p, unsigned k) {
        auto rep = local_density_oracle(p, k);
        py::dict d;
        d["p"] = rep.p;
        d["k"] = rep.k;
        d["count"] = rep.count;
        d["oracle"] = to_fraction(rep.oracle);
        d["closed_form"] = to_fraction(rep.closed_form);
        d["deviation"] = to_fraction(rep.deviation);
        return d;
    });
    m.def("tau_interval", [](u64 cutoff, double tol) {
        auto ep = tau_product(cutoff, tol);
        return py::make_tuple(ep.lo, ep.hi);
    }, py::arg("cutoff") = 1000000, py::arg("tol") = 1e-4);

    // JSON reports (dict-ified on the python side)
    m.def("fan_report_json", [] { return fan_report_json(delta()); });
    m.def("predict_json", [](u64 cutoff, double tol) { return predict_report_json(cutoff, tol); },
          py::arg("cutoff") = 1000000, py::arg("tol") = 1e-4);
    m.def("cox_json", [] { return cox_report_json(); });
    m.def("density_json", [](u64 p, unsigned k) { return density_report_json(p, k); });
}
