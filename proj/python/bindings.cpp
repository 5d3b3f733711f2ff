#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cavcal/bounds.hpp"
#include "cavcal/calculus.hpp"
#include "cavcal/gridsup.hpp"
#include "cavcal/maximize.hpp"
#include "cavcal/matfun.hpp"
#include "cavcal/rng.hpp"
#include "cavcal/svd3.hpp"
#include "cavcal/verify.hpp"

namespace py = pybind11;
using namespace cavcal;

namespace {

Mat3 to_mat3(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  Mat3 m;
  if (arr.ndim() == 2 && arr.shape(0) == 3 && arr.shape(1) == 3) {
    auto r = arr.unchecked<2>();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = r(i, j);
    return m;
  }
  if (arr.ndim() == 1 && arr.shape(0) == 9) {
    auto r = arr.unchecked<1>();
    for (int i = 0; i < 9; ++i) m.e[i] = r(i);
    return m;
  }
  throw py::value_error("expected a 3x3 matrix or a flat array of 9 numbers");
}

py::array_t<double> from_mat3(const Mat3& m) {
  py::array_t<double> out({3, 3});
  auto r = out.mutable_unchecked<2>();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = double(m(i, j));
  return out;
}

using NpMat = py::array_t<double, py::array::c_style | py::array::forcecast>;

Variant parse_variant(const std::string& v) {
  if (v == "abs") return Variant::abs;
  if (v == "neg") return Variant::neg;
  throw py::value_error("variant must be 'abs' or 'neg'");
}

SampleShape parse_shape(const std::string& s) {
  if (s == "symmetric") return SampleShape::symmetric;
  if (s == "half-symmetric") return SampleShape::half_symmetric;
  if (s == "full") return SampleShape::full;
  throw py::value_error("shape must be 'symmetric', 'half-symmetric' or 'full'");
}

py::dict estimate_dict(const SupEstimate& est, real lambda) {
  py::list top_values;
  for (const auto& r : est.top_k) top_values.append(double(r.value));
  const real c1 = est.top_k.empty()
                      ? real(0)
                      : frobenius_norm(sub_scaled_identity(
                            est.top_k.front().maximizer, lambda));
  py::dict d;
  d["value"] = double(est.value);
  d["c1"] = double(c1);
  d["c1_spread"] = py::make_tuple(double(est.c1_spread.first),
                                  double(est.c1_spread.second));
  d["top_values"] = top_values;
  d["maximizer"] =
      est.top_k.empty() ? py::object(py::none())
                        : py::object(from_mat3(est.top_k.front().maximizer));
  d["converged"] = est.top_k.empty() ? false : est.top_k.front().converged;
  return d;
}

std::vector<std::pair<real, real>> to_grid(const NpMat& lam, const NpMat& val) {
  if (lam.ndim() != 1 || val.ndim() != 1 || lam.shape(0) != val.shape(0))
    throw py::value_error("expected two 1-d arrays of equal length");
  std::vector<std::pair<real, real>> grid;
  auto rl = lam.unchecked<1>();
  auto rv = val.unchecked<1>();
  for (py::ssize_t i = 0; i < lam.shape(0); ++i)
    grid.emplace_back(rl(i), rv(i));
  return grid;
}

py::dict fit_dict(const FitResult& fit) {
  py::dict d;
  py::list coeffs;
  for (real c : fit.coefficients) coeffs.append(double(c));
  d["model"] = fit.model == FitModel::inverse ? "inverse" : "affine";
  d["coefficients"] = coeffs;
  d["max_abs_deviation"] = double(fit.max_abs_deviation);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "matrix functions and calibration estimates for cavitation loads";

  // scalar matrix functions
  m.def("frobenius_norm", [](const NpMat& a) { return double(frobenius_norm(to_mat3(a))); });
  m.def("minors", [](const NpMat& a) {
    const Minors mm = minors(to_mat3(a));
    return py::make_tuple(double(mm.trace), from_mat3(mm.cofactor),
                          double(mm.determinant));
  });
  m.def("svd3", [](const NpMat& a) {
    const Svd3 d = svd3(to_mat3(a));
    py::array_t<double> sigma(std::vector<py::ssize_t>{3});
    auto rs = sigma.mutable_unchecked<1>();
    for (int i = 0; i < 3; ++i) rs(i) = double(d.sigma[i]);
    return py::make_tuple(from_mat3(d.u_factor), sigma, from_mat3(d.v_factor));
  });
  m.def("singular_values", [](const NpMat& a) {
    const Vec3 s = singular_values(to_mat3(a));
    py::array_t<double> out(std::vector<py::ssize_t>{3});
    auto r = out.mutable_unchecked<1>();
    for (int i = 0; i < 3; ++i) r(i) = double(s[i]);
    return out;
  });
  m.def("alignment_rotation",
        [](const NpMat& a) { return from_mat3(alignment_rotation(to_mat3(a))); });

  m.def("P", [](const NpMat& a, double lam) { return double(P(to_mat3(a), {lam})); },
        py::arg("a"), py::arg("lambda_"));
  m.def("N", [](const NpMat& a, double lam) { return double(N(to_mat3(a), {lam})); },
        py::arg("a"), py::arg("lambda_"));
  m.def("G", [](const NpMat& a, double lam) { return double(G(to_mat3(a), {lam})); },
        py::arg("a"), py::arg("lambda_"));
  m.def("G_minus",
        [](const NpMat& a, double lam) { return double(G_minus(to_mat3(a), {lam})); },
        py::arg("a"), py::arg("lambda_"));
  m.def("H", [](const NpMat& a, double lam) { return double(H(to_mat3(a), {lam})); },
        py::arg("a"), py::arg("lambda_"));
  m.def("K_hat", [](const NpMat& a) { return double(K_hat(to_mat3(a))); });
  m.def("m_l",
        [](const NpMat& a, double lam, int l, const std::string& variant) {
          return double(m_l(to_mat3(a), {lam}, l, parse_variant(variant)));
        },
        py::arg("a"), py::arg("lambda_"), py::arg("l") = 3,
        py::arg("variant") = "abs");
  m.def("rational_profile", [](const NpMat& a) {
    const RationalProfile p = rational_profile(to_mat3(a));
    return py::make_tuple(double(p.a1), double(p.a2), double(p.b1),
                          double(p.b2), double(p.b3));
  });
  m.def("eval_profile",
        [](py::tuple p, double lam, int l, const std::string& variant) {
          if (p.size() != 5) throw py::value_error("profile must have 5 entries");
          RationalProfile rp{p[0].cast<double>(), p[1].cast<double>(),
                             p[2].cast<double>(), p[3].cast<double>(),
                             p[4].cast<double>()};
          return double(eval_profile(rp, {lam}, l, parse_variant(variant)));
        },
        py::arg("profile"), py::arg("lambda_"), py::arg("l") = 3,
        py::arg("variant") = "abs");
  m.def("alpha_beta_gamma", [](const NpMat& a, double lam) {
    const auto abc = alpha_beta_gamma(to_mat3(a), {lam});
    return py::make_tuple(double(abc[0]), double(abc[1]), double(abc[2]));
  }, py::arg("a"), py::arg("lambda_"));
  m.def("stored_energy",
        [](const NpMat& a, double q) {
          const MaterialParams mat{q, kappa_min(q), 0.0};
          return double(stored_energy(to_mat3(a), mat));
        },
        py::arg("a"), py::arg("q") = 2.5);

  // random sampling
  m.def("random_matrix",
        [](std::uint64_t seed, std::uint64_t stream, double alpha,
           bool symmetric) {
          RngStream rng(seed, stream);
          return from_mat3(random_matrix(rng, alpha, symmetric));
        },
        py::arg("seed"), py::arg("stream") = 0, py::arg("alpha") = 5.0,
        py::arg("symmetric") = false);
  m.def("random_rotation", [](std::uint64_t seed, std::uint64_t stream) {
    RngStream rng(seed, stream);
    return from_mat3(random_rotation(rng));
  }, py::arg("seed"), py::arg("stream") = 0);

  // the two estimation algorithms
  m.def("estimate_M",
        [](double lam, int l, const std::string& variant, int restarts,
           double alpha, std::uint64_t seed, int workers, double epsilon) {
          EstimateOptions opt;
          opt.restarts = restarts;
          opt.alpha = alpha;
          opt.seed = seed;
          opt.workers = workers;
          opt.epsilon = epsilon;
          SupEstimate est;
          {
            py::gil_scoped_release release;
            est = estimate_M({lam}, l, parse_variant(variant), opt);
          }
          return estimate_dict(est, lam);
        },
        py::arg("lambda_"), py::arg("l") = 3, py::arg("variant") = "abs",
        py::arg("restarts") = 500, py::arg("alpha") = 5.0,
        py::arg("seed") = 11, py::arg("workers") = 0,
        py::arg("epsilon") = 1e-9);
  m.def("algorithm_b",
        [](int l, const std::string& variant, double lmin, double lmax,
           int np, long long n, double alpha, std::uint64_t seed,
           const std::string& shape, int workers) {
          GridSupOptions opt;
          opt.lambda_minus = lmin;
          opt.lambda_plus = lmax;
          opt.n_points = np;
          opt.n_samples = n;
          opt.alpha = alpha;
          opt.seed = seed;
          opt.shape = parse_shape(shape);
          opt.workers = workers;
          SupremumTable t;
          {
            py::gil_scoped_release release;
            t = algorithm_b(l, parse_variant(variant), opt);
          }
          py::array_t<double> lam(
              std::vector<py::ssize_t>{py::ssize_t(t.lambda_grid.size())});
          py::array_t<double> val(
              std::vector<py::ssize_t>{py::ssize_t(t.values.size())});
          auto rl = lam.mutable_unchecked<1>();
          auto rv = val.mutable_unchecked<1>();
          for (size_t j = 0; j < t.values.size(); ++j) {
            rl(py::ssize_t(j)) = double(t.lambda_grid[j]);
            rv(py::ssize_t(j)) = double(t.values[j]);
          }
          py::dict d;
          d["lambda"] = lam;
          d["values"] = val;
          d["sample_count"] = t.sample_count;
          return d;
        },
        py::arg("l") = 3, py::arg("variant") = "abs", py::arg("lmin") = 1.0,
        py::arg("lmax") = 2.0, py::arg("np") = 100, py::arg("n") = 1000000,
        py::arg("alpha") = 5.0, py::arg("seed") = 11,
        py::arg("shape") = "symmetric", py::arg("workers") = 0);

  // post-processing
  m.def("fit_inverse", [](const NpMat& lam, const NpMat& val) {
    return fit_dict(fit_inverse(to_grid(lam, val)));
  });
  m.def("fit_affine", [](const NpMat& lam, const NpMat& val) {
    return fit_dict(fit_affine(to_grid(lam, val)));
  });
  m.def("fixed_point_cstar",
        [](double nu1, double lam) {
          return double(
              fixed_point_cstar(conjecture_M2(), conjecture_M3(nu1, lam)));
        },
        py::arg("nu1") = 0.4501, py::arg("lambda_") = 1.0);
  m.def("lambda_bound",
        [](double q, double kappa, double lam, double nu1) {
          const BoundReport rep = lambda_bound(q, kappa, {lam}, nu1);
          py::dict d;
          d["q"] = double(rep.q);
          d["kappa"] = double(rep.kappa);
          d["lambda"] = double(rep.lambda);
          d["c_star"] = double(rep.c_star);
          d["term_est1"] = double(rep.term_est1);
          d["term_cstar"] = double(rep.term_cstar);
          d["rhs"] = double(rep.rhs);
          d["hprime_threshold"] = double(rep.satisfied_for_hprime);
          return d;
        },
        py::arg("q"), py::arg("kappa"), py::arg("lambda_"),
        py::arg("nu1") = 0.4501);
  m.def("kappa_min", [](double q) { return double(kappa_min(q)); });
  m.def("kappa_max", [](double q) { return double(kappa_max(q)); });
  m.def("zy_compare", [](double q, double nu) {
    const ZyComparison c = zy_compare(q, nu);
    return py::make_tuple(double(c.z), double(c.y), c.z_less);
  });

  m.def("run_verify",
        [](std::uint64_t seed, const std::string& filter) {
          VerifyOptions opt;
          opt.seed = seed;
          opt.filter = filter;
          std::vector<CheckLine> lines;
          {
            py::gil_scoped_release release;
            lines = run_verify_suite(opt);
          }
          py::list out;
          for (const auto& l : lines) {
            py::dict d;
            d["name"] = l.name;
            d["analytic"] = double(l.analytic);
            d["observed"] = double(l.observed);
            d["error"] = double(l.error);
            d["pass"] = l.pass;
            out.append(d);
          }
          return out;
        },
        py::arg("seed") = 1, py::arg("filter") = "");

  py::register_exception<DegenerateArgument>(m, "DegenerateArgumentError",
                                             PyExc_ValueError);
  py::register_exception<NonpositiveDeterminant>(
      m, "NonpositiveDeterminantError", PyExc_ValueError);
  py::register_exception<ParamRange>(m, "ParamRangeError", PyExc_ValueError);
}
