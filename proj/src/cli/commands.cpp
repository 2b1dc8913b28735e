#include "commands.hpp"

#include <limits>
#include <stdexcept>

#include "ecgroups/arith.hpp"
#include "ecgroups/curves.hpp"
#include "ecgroups/localfactors.hpp"
#include "ecgroups/matrixcounts.hpp"
#include "ecgroups/parallel.hpp"

namespace ecg::cli {

std::int64_t RunConfig::param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) throw std::invalid_argument("missing required option --" + name);
    return it->second;
}

std::int64_t RunConfig::param_or(const std::string& name, std::int64_t fallback) const {
    auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
}

void RunConfig::validate() const {
    if (cutoff < 100) throw std::invalid_argument("--cutoff must be >= 100");
    if (threads < 0) throw std::invalid_argument("--threads must be >= 0");
}

namespace {

Cell ratio_cell(const ExactCount& count, const std::optional<MainTerm>& main) {
    if (!main || main->value <= 0.0) return Missing{};
    return count.to_double() / main->value;
}

Cell main_cell(const std::optional<MainTerm>& main) {
    if (!main) return Missing{};
    return main->value;
}

std::optional<MainTerm> main_term_of(const GroupShape& shape, std::int64_t cutoff) {
    if (shape.order() < 2) return std::nullopt;
    return conjectural_main_term(shape, cutoff);
}

std::int64_t narrow(i128 v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error(std::string(what) + " exceeds 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

GroupShape shape_from(const RunConfig& cfg) {
    GroupShape shape{cfg.param("m"), cfg.param("k")};
    shape.validate();
    return shape;
}

}  // namespace

CommandResult cmd_mg(const RunConfig& cfg) {
    const GroupShape shape = shape_from(cfg);
    const auto terms = m_of_group_terms(shape);
    ExactCount total;
    for (const auto& t : terms) total += t.value;
    const auto table = k_of_group(shape, cfg.cutoff);
    const auto main = main_term_of(shape, cfg.cutoff);

    CommandResult result;
    result.doc.command = "mg";
    Table summary{"summary",
                  {"m", "k", "N", "M", "M_decimal", "delta", "aut_order", "K_truncated", "K_tail_bound",
                   "cutoff", "main_term", "ratio"},
                  {}};
    summary.add({shape.m, shape.k, shape.order(), exact(total), total.to_double(), delta_statistic(shape),
                 aut_order(shape), table.truncated_value, table.tail_bound, cfg.cutoff, main_cell(main),
                 ratio_cell(total, main)});
    result.doc.tables.push_back(std::move(summary));

    if (cfg.per_prime) {
        Table primes{"primes", {"p", "d", "M_p", "M_p_decimal"}, {}};
        for (const auto& t : terms) primes.add({t.p, t.discriminant, exact(t.value), t.value.to_double()});
        result.doc.tables.push_back(std::move(primes));
    }
    return result;
}

CommandResult cmd_mn(const RunConfig& cfg) {
    const std::int64_t order = cfg.param("n");
    if (order < 1) throw std::invalid_argument("--n must be >= 1");
    const auto shapes = shapes_of_order(order);
    const ExactCount total = m_of_order(order);

    CommandResult result;
    result.doc.command = "mn";

    std::optional<MainTerm> main;
    if (order >= 2) main = conjectural_main_term_of_order(order, cfg.cutoff);
    const auto table = k_of_order(order, cfg.cutoff);

    Cell x_cell = Missing{}, truncated_cell = Missing{}, residual_cell = Missing{};
    std::vector<ExactCount> parts;
    for (const auto& shape : shapes) parts.push_back(m_of_group(shape));
    if (cfg.has("x")) {
        const std::int64_t x = cfg.param("x");
        if (x < 1) throw std::invalid_argument("--x must be >= 1");
        ExactCount truncated;
        for (std::size_t i = 0; i < shapes.size(); ++i) {
            if (shapes[i].m <= x) truncated += parts[i];
        }
        x_cell = x;
        truncated_cell = exact(truncated);
        residual_cell = exact(total - truncated);
    }

    Table summary{"summary",
                  {"N", "M", "M_decimal", "eta", "K_truncated", "K_tail_bound", "cutoff", "main_term", "ratio",
                   "x", "truncated_sum", "residual"},
                  {}};
    summary.add({order, exact(total), total.to_double(), eta_statistic(order), table.truncated_value,
                 table.tail_bound, cfg.cutoff, main_cell(main), ratio_cell(total, main), x_cell, truncated_cell,
                 residual_cell});
    result.doc.tables.push_back(std::move(summary));

    Table groups{"groups", {"m", "k", "M_G", "M_G_decimal"}, {}};
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        groups.add({shapes[i].m, shapes[i].k, exact(parts[i]), parts[i].to_double()});
    }
    result.doc.tables.push_back(std::move(groups));
    return result;
}

CommandResult cmd_grid(const RunConfig& cfg) {
    const std::int64_t mmax = cfg.param("mmax");
    const std::int64_t kmax = cfg.param("kmax");
    if (mmax < 1 || kmax < 1) throw std::invalid_argument("--mmax and --kmax must be >= 1");
    std::vector<GroupShape> shapes;
    for (std::int64_t m = 1; m <= mmax; ++m) {
        for (std::int64_t k = 1; k <= kmax; ++k) {
            shapes.push_back({m, k});
            shapes.back().validate();
        }
    }
    struct Row {
        ExactCount count;
        double delta = 0.0;
        std::optional<MainTerm> main;
    };
    const auto rows = parallel_map<Row>(static_cast<std::int64_t>(shapes.size()), [&](std::int64_t i) {
        const GroupShape& s = shapes[static_cast<std::size_t>(i)];
        return Row{m_of_group_serial(s), delta_statistic(s), main_term_of(s, cfg.cutoff)};
    });

    CommandResult result;
    result.doc.command = "grid";
    Table grid{"grid", {"m", "k", "N", "M", "M_decimal", "delta", "main_term", "ratio"}, {}};
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        const auto& s = shapes[i];
        const auto& r = rows[i];
        grid.add({s.m, s.k, s.order(), exact(r.count), r.count.to_double(), r.delta, main_cell(r.main),
                  ratio_cell(r.count, r.main)});
    }
    result.doc.tables.push_back(std::move(grid));
    return result;
}

CommandResult cmd_constants(const RunConfig& cfg) {
    const std::int64_t lmax = cfg.param_or("lmax", 50);
    if (lmax < 2) throw std::invalid_argument("--lmax must be >= 2");
    const bool by_order = cfg.has("n");
    if (by_order == (cfg.has("m") || cfg.has("k"))) {
        throw std::invalid_argument("constants needs either --n or --m/--k");
    }

    CommandResult result;
    result.doc.command = "constants";
    LocalFactorTable table;
    Table summary{"summary",
                  {"subject", "N", "aut_order", "script_j", "cutoff", "K_truncated", "K_tail_bound", "main_term"},
                  {}};
    if (by_order) {
        const std::int64_t order = cfg.param("n");
        if (order < 1) throw std::invalid_argument("--n must be >= 1");
        table = k_of_order(order, cfg.cutoff);
        std::optional<MainTerm> main;
        if (order >= 2) main = conjectural_main_term_of_order(order, cfg.cutoff);
        summary.add({"N=" + std::to_string(order), order, Missing{}, Missing{}, cfg.cutoff, table.truncated_value,
                     table.tail_bound, main_cell(main)});
    } else {
        const GroupShape shape{cfg.param_or("m", 1), cfg.param_or("k", 1)};
        shape.validate();
        table = k_of_group(shape, cfg.cutoff);
        summary.add({"m=" + std::to_string(shape.m) + ",k=" + std::to_string(shape.k), shape.order(),
                     aut_order(shape), exact(script_j(shape.m, shape.k)), cfg.cutoff, table.truncated_value,
                     table.tail_bound, main_cell(main_term_of(shape, cfg.cutoff))});
    }
    result.doc.tables.push_back(std::move(summary));

    Table factors{"factors", {"ell", "divides_N", "factor", "factor_decimal"}, {}};
    for (const auto& f : table.factors) {
        const bool divides = table.order % f.ell == 0;
        if (f.ell > lmax && !divides) continue;
        factors.add({f.ell, divides, exact(f.factor), f.factor.to_double()});
    }
    result.doc.tables.push_back(std::move(factors));
    return result;
}

CommandResult cmd_matrix(const RunConfig& cfg) {
    MatrixCountQuery q;
    q.order = cfg.param("N");
    q.n = cfg.param_or("n", 1);
    q.ell = cfg.param("ell");
    const std::int64_t e = cfg.param("e");
    if (e < 1 || e > 30) throw std::invalid_argument("--e must be in [1, 30]");
    q.e = static_cast<int>(e);
    q.validate();
    const std::int64_t budget = cfg.param_or("budget", kDefaultEnumerationBudget);

    const int v = valuation(q.ell, q.order);
    std::optional<std::int64_t> closed, brute;
    if (q.e > v) closed = narrow(count_c_closed(q), "closed count");
    if (ipow_wide(q.ell, 4 * q.e) <= budget) brute = count_c_brute(q, budget);
    const Rational density = euler_density(q.order, q.n, q.ell);

    CommandResult result;
    result.doc.command = "matrix";
    Cell match = Missing{};
    if (closed && brute) {
        match = *closed == *brute;
        if (*closed != *brute) result.code = ExitCode::mismatch;
    }
    Table row{"summary",
              {"N", "n", "ell", "e", "gl2_order", "count_closed", "count_brute", "match", "density",
               "density_decimal"},
              {}};
    row.add({q.order, q.n, q.ell, static_cast<std::int64_t>(q.e), narrow(gl2_order(q.ell, q.e), "gl2 order"),
             closed ? Cell{*closed} : Cell{Missing{}}, brute ? Cell{*brute} : Cell{Missing{}}, match,
             exact(density), density.to_double()});
    result.doc.tables.push_back(std::move(row));
    return result;
}

CommandResult execute(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.command == "mg") return cmd_mg(cfg);
    if (cfg.command == "mn") return cmd_mn(cfg);
    if (cfg.command == "grid") return cmd_grid(cfg);
    if (cfg.command == "constants") return cmd_constants(cfg);
    if (cfg.command == "matrix") return cmd_matrix(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

}  // namespace ecg::cli
