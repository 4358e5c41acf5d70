#include "pipdim/corpus.hpp"
#include "pipdim/estimate.hpp"
#include "pipdim/linalg.hpp"
#include "pipdim/montecarlo.hpp"
#include "pipdim/select.hpp"
#include "pipdim/theory.hpp"
#include "pipdim/transforms.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace pipdim;

namespace {

CountKind parse_kind(const std::string& kind) {
  if (kind == "cooccurrence") return CountKind::cooccurrence;
  if (kind == "term_document") return CountKind::term_document;
  throw std::invalid_argument("count kind must be 'cooccurrence' or 'term_document'");
}

}  // namespace

PYBIND11_MODULE(_pipdim, m) {
  m.doc() = "PIP-loss dimensionality selection for matrix-factorization embeddings";

  py::register_exception<NumericalDegeneracy>(m, "NumericalDegeneracy", PyExc_ArithmeticError);

  py::class_<Spectrum>(m, "Spectrum")
      .def(py::init<std::vector<double>, Index>(), "values"_a, "ambient"_a = -1)
      .def_property_readonly("values", &Spectrum::values)
      .def_property_readonly("rank", &Spectrum::rank)
      .def_property_readonly("ambient", &Spectrum::ambient)
      .def("__getitem__", [](const Spectrum& s, Index i) { return s(i); },
           "1-based access with zero padding")
      .def("__repr__", [](const Spectrum& s) {
        return "<Spectrum rank=" + std::to_string(s.rank()) +
               " ambient=" + std::to_string(s.ambient()) + ">";
      });

  py::class_<Vocab>(m, "Vocab")
      .def_readonly("tokens", &Vocab::tokens)
      .def_readonly("frequencies", &Vocab::frequencies)
      .def("__len__", &Vocab::size)
      .def("id", &Vocab::id);

  m.def("tokenize", &tokenize, "text"_a);
  m.def("build_vocab",
        [](const std::vector<std::string>& corpus, std::size_t max_size) {
          return build_vocab(corpus, max_size);
        },
        "corpus"_a, "max_size"_a);
  m.def("cooc_count",
        [](const std::vector<std::string>& corpus, const Vocab& vocab, int window) {
          return cooc_count(corpus, vocab, window).counts;
        },
        "corpus"_a, "vocab"_a, "window"_a = 10);
  m.def("split_corpus",
        [](const std::vector<std::string>& corpus, std::size_t chunk_size, std::uint64_t seed) {
          auto s = split_corpus(corpus, chunk_size, seed);
          return py::make_tuple(std::move(s.first), std::move(s.second));
        },
        "corpus"_a, "chunk_size"_a = 10000, "seed"_a = 0);

  m.def("transform",
        [](const Matrix& counts, const std::string& kind, std::optional<double> shift,
           const std::string& count_kind) {
          std::map<std::string, double> params;
          if (shift) params["shift"] = *shift;
          return transform(CountMatrix{counts, parse_kind(count_kind)}, parse_transform(kind),
                           params)
              .values;
        },
        "counts"_a, "kind"_a, "shift"_a = py::none(), "count_kind"_a = "cooccurrence");

  m.def("factorize",
        [](const Matrix& mat, double alpha, Index k) { return factorize(mat, alpha, k).values; },
        "matrix"_a, "alpha"_a, "k"_a);
  m.def("pip_matrix", py::overload_cast<const Matrix&>(&pip_matrix), "embedding"_a);
  m.def("pip_distance", py::overload_cast<const Matrix&, const Matrix&>(&pip_distance), "e1"_a,
        "e2"_a);
  m.def("principal_angles",
        [](const Matrix& x, const Matrix& y) { return principal_angles(x, y).cosines; }, "x"_a,
        "y"_a, "Cosines of the principal angles, descending");
  m.def("random_orthonormal", &random_orthonormal, "n"_a, "k"_a, "seed"_a = 0);
  m.def("procrustes_align",
        [](const Matrix& e1, const Matrix& e2) {
          auto r = procrustes_align(e1, e2);
          return py::make_tuple(r.rotation, r.residual);
        },
        "e1"_a, "e2"_a);

  m.def("estimate_noise",
        [](const Matrix& m1, const Matrix& m2) { return estimate_noise(m1, m2).sigma; }, "m1"_a,
        "m2"_a);
  m.def("estimate_spectrum", py::overload_cast<const Matrix&, double>(&estimate_spectrum),
        "noisy"_a, "sigma"_a);

  py::class_<BoundBreakdown>(m, "BoundBreakdown")
      .def_readonly("k", &BoundBreakdown::k)
      .def_readonly("bias", &BoundBreakdown::bias)
      .def_readonly("magnitude_variance", &BoundBreakdown::magnitude_variance)
      .def_readonly("direction_variance", &BoundBreakdown::direction_variance)
      .def_readonly("total", &BoundBreakdown::total);

  m.def("exact_loss_alpha0", &exact_loss_alpha0, "e"_a, "e_hat"_a);
  m.def("telescoping_bound", &telescoping_bound, "m"_a, "m_noisy"_a, "alpha"_a, "k"_a);
  m.def("expected_bound",
        [](const Spectrum& s, double sigma, double alpha, Index k, bool gap_clamp) {
          GapPolicy policy;
          policy.clamp = gap_clamp;
          return expected_bound(s, sigma, alpha, k, policy);
        },
        "spectrum"_a, "sigma"_a, "alpha"_a, "k"_a, "gap_clamp"_a = false);
  m.def("subspace_perturbation_term", &subspace_perturbation_term, "spectrum"_a, "sigma"_a, "k"_a);
  m.def("sin_theta_bound", &sin_theta_bound, "spectrum"_a, "sigma"_a, "k"_a);

  py::class_<PipCurve>(m, "PipCurve")
      .def_readonly("alpha", &PipCurve::alpha)
      .def_readonly("sigma", &PipCurve::sigma)
      .def_readonly("ambient", &PipCurve::ambient)
      .def_readonly("k_values", &PipCurve::k_values)
      .def_readonly("losses", &PipCurve::losses)
      .def_readonly("stddevs", &PipCurve::stddevs)
      .def_readonly("samples", &PipCurve::samples)
      .def_property_readonly("method", [](const PipCurve& c) { return to_string(c.method); })
      .def_readonly("warnings", &PipCurve::warnings);

  m.def("simulate_instance", &simulate_instance, "spectrum"_a, "sigma"_a, "alpha"_a, "seed"_a,
        "symmetric"_a = false);
  m.def("mc_curve", &mc_curve, "spectrum"_a, "sigma"_a, "alpha"_a, "samples"_a = 10,
        "base_seed"_a = 0, "symmetric"_a = false, py::call_guard<py::gil_scoped_release>());
  m.def("bound_curve",
        [](const Spectrum& s, double sigma, double alpha, bool gap_clamp) {
          GapPolicy policy;
          policy.clamp = gap_clamp;
          return bound_curve(s, sigma, alpha, policy);
        },
        "spectrum"_a, "sigma"_a, "alpha"_a, "gap_clamp"_a = false);

  py::class_<SelectionReport>(m, "SelectionReport")
      .def_readonly("k_star", &SelectionReport::k_star)
      .def_readonly("loss_at_k_star", &SelectionReport::loss_at_k_star)
      .def_readonly("rank_d", &SelectionReport::rank_d)
      .def_readonly("flat", &SelectionReport::flat)
      .def_readonly("curve", &SelectionReport::curve)
      .def_readonly("warnings", &SelectionReport::warnings)
      .def_property_readonly("intervals", [](const SelectionReport& r) {
        py::dict out;
        for (const auto& [p, iv] : r.intervals) out[py::float_(p)] = py::make_tuple(iv.lo, iv.hi);
        return out;
      });

  m.def("select_dimension",
        [](const PipCurve& curve, const std::vector<double>& p) { return select_dimension(curve, p); },
        "curve"_a, "p_levels"_a = std::vector<double>{5, 10, 20, 50});
  m.def("nsr", &nsr, "e1"_a, "e2"_a);
}
