// Copyright 2026 The CCEQR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cceqr/cceqr.h"

#include <algorithm>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "cceqr/cceqr.hpp"
#include "cceqr/diagnostics.hpp"
#include "cceqr/errors.hpp"
#include "cceqr/matrix_io.hpp"
#include "cceqr/matrixgen.hpp"
#include "cceqr/pivoted_qr.hpp"

struct cceqr_matrix {
  cceqr::Matrix value;
};

struct cceqr_selection {
  std::vector<int64_t> perm;
  std::vector<int64_t> commits;
  int64_t k = 0;
  int64_t cycles = 0;
  int64_t max_tracked = 0;
  std::optional<cceqr::Matrix> r;
  cceqr::CompactWY wy;
};

namespace {

thread_local std::string last_error;

cceqr_status fail(cceqr_status status, const char* what) {
  last_error = what;
  return status;
}

// Runs f, translating exceptions into status codes.
template <class F>
cceqr_status guarded(F&& f) {
  try {
    f();
    return CCEQR_OK;
  } catch (const cceqr::ArgumentError& e) {
    return fail(CCEQR_ERR_ARGUMENT, e.what());
  } catch (const cceqr::ContractError& e) {
    return fail(CCEQR_ERR_CONTRACT, e.what());
  } catch (const cceqr::InvariantError& e) {
    return fail(CCEQR_ERR_INVARIANT, e.what());
  } catch (const cceqr::IoError& e) {
    return fail(CCEQR_ERR_IO, e.what());
  } catch (const cceqr::FormatError& e) {
    return fail(CCEQR_ERR_FORMAT, e.what());
  } catch (const cceqr::DegenerateKernelError& e) {
    return fail(CCEQR_ERR_DEGENERATE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CCEQR_ERR_ALLOC, "out of memory");
  } catch (const std::length_error& e) {
    return fail(CCEQR_ERR_ALLOC, e.what());
  } catch (const std::exception& e) {
    return fail(CCEQR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CCEQR_ERR_INTERNAL, "unknown exception");
  }
}

void require(const void* p, const char* name) {
  if (!p) throw cceqr::ContractError(std::string(name) + " is null");
}

cceqr_matrix* wrap(cceqr::Matrix&& m) { return new cceqr_matrix{std::move(m)}; }

cceqr::Algorithm to_cpp(cceqr_algorithm a) {
  switch (a) {
    case CCEQR_ALGO_CCEQR_CSSP: return cceqr::Algorithm::cceqr_cssp;
    case CCEQR_ALGO_CCEQR_FULL: return cceqr::Algorithm::cceqr_full;
    case CCEQR_ALGO_GB: return cceqr::Algorithm::gb;
    case CCEQR_ALGO_GB_NAIVE: return cceqr::Algorithm::gb_naive;
  }
  throw cceqr::ArgumentError("unknown algorithm");
}

cceqr_algorithm to_c(cceqr::Algorithm a) {
  switch (a) {
    case cceqr::Algorithm::cceqr_cssp: return CCEQR_ALGO_CCEQR_CSSP;
    case cceqr::Algorithm::cceqr_full: return CCEQR_ALGO_CCEQR_FULL;
    case cceqr::Algorithm::gb: return CCEQR_ALGO_GB;
    case cceqr::Algorithm::gb_naive: return CCEQR_ALGO_GB_NAIVE;
  }
  return CCEQR_ALGO_CCEQR_CSSP;
}

cceqr_equivalence to_c(cceqr::Equivalence e) {
  switch (e) {
    case cceqr::Equivalence::equivalent: return CCEQR_EQUIVALENT;
    case cceqr::Equivalence::mismatch: return CCEQR_MISMATCH;
    case cceqr::Equivalence::inconclusive: return CCEQR_INCONCLUSIVE;
  }
  return CCEQR_INCONCLUSIVE;
}

cceqr_rank_metrics to_c(const cceqr::RankRevealMetrics& m) {
  return {m.sigma_ratio, m.residual_ratio, m.q_bound, m.zero_residual ? 1 : 0,
          m.bounds_ok ? 1 : 0};
}

}  // namespace

extern "C" {

CCEQR_API const char* cceqr_version(void) { return "0.1.0"; }

CCEQR_API const char* cceqr_status_string(cceqr_status status) {
  switch (status) {
    case CCEQR_OK: return "ok";
    case CCEQR_ERR_ARGUMENT: return "invalid argument";
    case CCEQR_ERR_CONTRACT: return "contract violation";
    case CCEQR_ERR_IO: return "i/o error";
    case CCEQR_ERR_FORMAT: return "malformed matrix file";
    case CCEQR_ERR_DEGENERATE: return "degenerate kernel";
    case CCEQR_ERR_INVARIANT: return "internal invariant failed";
    case CCEQR_ERR_ALLOC: return "allocation failure";
    case CCEQR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

CCEQR_API const char* cceqr_last_error(void) { return last_error.c_str(); }

CCEQR_API cceqr_status cceqr_matrix_create(int64_t rows, int64_t cols, cceqr_matrix** out) {
  return guarded([&] {
    require(out, "out");
    if (rows < 0 || cols < 0) throw cceqr::ArgumentError("negative matrix dimension");
    *out = wrap(cceqr::Matrix(rows, cols));
  });
}

CCEQR_API cceqr_status cceqr_matrix_from_data(int64_t rows, int64_t cols, const double* data,
                                              cceqr_matrix** out) {
  return guarded([&] {
    require(out, "out");
    if (rows < 0 || cols < 0) throw cceqr::ArgumentError("negative matrix dimension");
    if (rows * cols > 0) require(data, "data");
    *out = wrap(cceqr::Matrix(rows, cols, std::vector<double>(data, data + rows * cols)));
  });
}

CCEQR_API void cceqr_matrix_destroy(cceqr_matrix* m) { delete m; }

CCEQR_API int64_t cceqr_matrix_rows(const cceqr_matrix* m) { return m ? m->value.rows() : 0; }

CCEQR_API int64_t cceqr_matrix_cols(const cceqr_matrix* m) { return m ? m->value.cols() : 0; }

CCEQR_API double* cceqr_matrix_data(cceqr_matrix* m) { return m ? m->value.data() : nullptr; }

CCEQR_API const double* cceqr_matrix_const_data(const cceqr_matrix* m) {
  return m ? m->value.data() : nullptr;
}

CCEQR_API cceqr_status cceqr_matrix_read(const char* path, cceqr_matrix** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = wrap(cceqr::read_matrix(std::filesystem::path(path)));
  });
}

CCEQR_API cceqr_status cceqr_matrix_write(const cceqr_matrix* m, const char* path) {
  return guarded([&] {
    require(m, "matrix");
    require(path, "path");
    cceqr::write_matrix(std::filesystem::path(path), m->value);
  });
}

CCEQR_API cceqr_status cceqr_matrix_read_text(const char* path, cceqr_matrix** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = wrap(cceqr::read_matrix_text(std::filesystem::path(path)));
  });
}

CCEQR_API cceqr_status cceqr_gen_gaussian(int64_t m, int64_t n, uint64_t seed,
                                          cceqr_matrix** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(cceqr::gen_gaussian(m, n, seed));
  });
}

CCEQR_API cceqr_status cceqr_gen_hadamard(int kexp, int rexp, cceqr_matrix** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(cceqr::gen_hadamard_adversary(kexp, rexp));
  });
}

CCEQR_API void cceqr_mixture_spec_init(cceqr_mixture_spec* spec) {
  if (!spec) return;
  const cceqr::MixtureSpec d;
  *spec = {d.m, d.n, d.ell, d.sigma2, d.seed, CCEQR_MIXTURE_AUTO, d.oversample};
}

CCEQR_API cceqr_status cceqr_gen_mixture(const cceqr_mixture_spec* spec, cceqr_matrix** out,
                                         int64_t* labels) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    cceqr::MixtureSpec s;
    s.m = spec->m;
    s.n = spec->n;
    s.ell = spec->ell;
    s.sigma2 = spec->sigma2;
    s.seed = spec->seed;
    s.oversample = spec->oversample;
    switch (spec->method) {
      case CCEQR_MIXTURE_AUTO: s.method = cceqr::MixtureMethod::automatic; break;
      case CCEQR_MIXTURE_DENSE: s.method = cceqr::MixtureMethod::dense; break;
      case CCEQR_MIXTURE_COMPRESSED: s.method = cceqr::MixtureMethod::compressed; break;
      default: throw cceqr::ArgumentError("unknown mixture method");
    }
    cceqr::MixtureSample sample = cceqr::gen_mixture(s);
    if (labels) std::ranges::copy(sample.labels, labels);
    *out = wrap(std::move(sample.W));
  });
}

CCEQR_API const char* cceqr_algorithm_name(cceqr_algorithm algo) {
  try {
    return cceqr::algorithm_name(to_cpp(algo)).data();
  } catch (...) {
    return "unknown";
  }
}

CCEQR_API cceqr_status cceqr_parse_algorithm(const char* name, cceqr_algorithm* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    const auto a = cceqr::parse_algorithm(name);
    if (!a) throw cceqr::ArgumentError(std::string("unknown algorithm '") + name + "'");
    *out = to_c(*a);
  });
}

CCEQR_API cceqr_status cceqr_select(const cceqr_matrix* a, int64_t k, double rho, int full,
                                    cceqr_selection** out) {
  return guarded([&] {
    require(a, "matrix");
    require(out, "out");
    cceqr::CceqrOptions options;
    options.rho = rho;
    options.full = full != 0;
    cceqr::SelectionResult res = cceqr::select_columns(a->value, k, options);
    auto* s = new cceqr_selection;
    s->perm.assign(res.p.begin(), res.p.end());
    s->commits.assign(res.commits_per_cycle.begin(), res.commits_per_cycle.end());
    s->k = res.k;
    s->cycles = res.cycles;
    s->max_tracked = res.max_tracked;
    s->r = std::move(res.R);
    s->wy = std::move(res.wy);
    *out = s;
  });
}

CCEQR_API cceqr_status cceqr_gb(const cceqr_matrix* a, int64_t k, int naive,
                                cceqr_selection** out) {
  return guarded([&] {
    require(a, "matrix");
    require(out, "out");
    cceqr::GbFactorization fac = naive ? cceqr::gb_qr_naive(a->value, k) : cceqr::gb_qr(a->value, k);
    auto* s = new cceqr_selection;
    s->perm.assign(fac.perm.begin(), fac.perm.end());
    s->commits.assign(static_cast<std::size_t>(k), 1);
    s->k = k;
    s->cycles = k;
    s->max_tracked = a->value.cols();
    s->wy = cceqr::compact_wy(fac.reflectors);
    s->r = std::move(fac.R);
    *out = s;
  });
}

CCEQR_API void cceqr_selection_destroy(cceqr_selection* s) { delete s; }

CCEQR_API int64_t cceqr_selection_k(const cceqr_selection* s) { return s ? s->k : 0; }

CCEQR_API int64_t cceqr_selection_cycles(const cceqr_selection* s) { return s ? s->cycles : 0; }

CCEQR_API int64_t cceqr_selection_max_tracked(const cceqr_selection* s) {
  return s ? s->max_tracked : 0;
}

CCEQR_API const int64_t* cceqr_selection_perm(const cceqr_selection* s, int64_t* length) {
  if (length) *length = s ? static_cast<int64_t>(s->perm.size()) : 0;
  return s ? s->perm.data() : nullptr;
}

CCEQR_API const int64_t* cceqr_selection_commits(const cceqr_selection* s, int64_t* length) {
  if (length) *length = s ? static_cast<int64_t>(s->commits.size()) : 0;
  return s ? s->commits.data() : nullptr;
}

CCEQR_API cceqr_status cceqr_selection_r(const cceqr_selection* s, cceqr_matrix** out) {
  return guarded([&] {
    require(s, "selection");
    require(out, "out");
    if (!s->r) throw cceqr::ArgumentError("selection was computed without R");
    *out = wrap(cceqr::Matrix(*s->r));
  });
}

CCEQR_API cceqr_status cceqr_selection_reconstruct_r(const cceqr_selection* s,
                                                     const cceqr_matrix* a, cceqr_matrix** out) {
  return guarded([&] {
    require(s, "selection");
    require(a, "matrix");
    require(out, "out");
    if (a->value.rows() != s->wy.rows() || a->value.cols() != static_cast<int64_t>(s->perm.size()))
      throw cceqr::ContractError("matrix does not match the selection");
    std::vector<cceqr::Index> p(s->perm.begin(), s->perm.end());
    *out = wrap(cceqr::reconstruct_r(a->value, p, s->wy));
  });
}

CCEQR_API cceqr_status cceqr_check_gb_form(const cceqr_matrix* r, int64_t k, double tol,
                                           int* ok) {
  return guarded([&] {
    require(r, "matrix");
    require(ok, "ok");
    *ok = cceqr::check_gb_form(r->value.view(), k, tol).ok ? 1 : 0;
  });
}

CCEQR_API cceqr_status cceqr_verify_equivalence(const cceqr_matrix* a, int64_t k, double rho,
                                                cceqr_equivalence* out) {
  return guarded([&] {
    require(a, "matrix");
    require(out, "out");
    *out = to_c(cceqr::verify_equivalence(a->value, k, rho).status);
  });
}

CCEQR_API cceqr_status cceqr_rank_reveal(const cceqr_matrix* a, const int64_t* perm,
                                         int64_t perm_length, int64_t k,
                                         cceqr_rank_metrics* out) {
  return guarded([&] {
    require(a, "matrix");
    require(perm, "perm");
    require(out, "out");
    if (perm_length < 0) throw cceqr::ArgumentError("negative permutation length");
    std::vector<cceqr::Index> p(perm, perm + perm_length);
    *out = to_c(cceqr::rank_reveal_metrics(a->value, p, k));
  });
}

CCEQR_API cceqr_status cceqr_norm_mass_cdf(const cceqr_matrix* a, const double* quantiles,
                                           int64_t count, double* fractions, int* zero_matrix) {
  return guarded([&] {
    require(a, "matrix");
    if (count < 0) throw cceqr::ArgumentError("negative quantile count");
    if (count > 0) {
      require(quantiles, "quantiles");
      require(fractions, "fractions");
    }
    const cceqr::MassCdf cdf = cceqr::norm_mass_cdf(
        a->value.view(), std::span<const double>(quantiles, static_cast<std::size_t>(count)));
    std::ranges::copy(cdf.fractions, fractions);
    if (zero_matrix) *zero_matrix = cdf.zero_matrix ? 1 : 0;
  });
}

CCEQR_API void cceqr_run_options_init(cceqr_run_options* options) {
  if (!options) return;
  *options = {CCEQR_ALGO_CCEQR_CSSP, 1, cceqr::kDefaultRho, 1, 0};
}

CCEQR_API cceqr_status cceqr_run_report_compute(const cceqr_matrix* a,
                                                const cceqr_run_options* options,
                                                cceqr_run_report* out) {
  return guarded([&] {
    require(a, "matrix");
    require(options, "options");
    require(out, "out");
    cceqr::RunOptions o;
    o.algorithm = to_cpp(options->algorithm);
    o.k = options->k;
    o.rho = options->rho;
    o.repetitions = options->repetitions;
    o.verify = options->verify != 0;
    const cceqr::RunReport rep = cceqr::run_report(a->value, o);
    *out = cceqr_run_report{};
    out->algorithm = to_c(rep.algorithm);
    out->m = rep.m;
    out->n = rep.n;
    out->k = rep.k;
    out->rho = rep.rho;
    out->seconds = rep.seconds;
    out->cycles = rep.cycles;
    out->max_tracked = rep.max_tracked;
    out->gb_ok = rep.gb_ok ? 1 : 0;
    out->has_equivalence = rep.equivalence ? 1 : 0;
    out->equivalence = rep.equivalence ? to_c(*rep.equivalence) : CCEQR_INCONCLUSIVE;
    out->has_metrics = rep.metrics ? 1 : 0;
    if (rep.metrics) out->metrics = to_c(*rep.metrics);
  });
}

}  // extern "C"
