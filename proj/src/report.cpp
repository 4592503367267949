#include "manin/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "manin/hilbert.hpp"

namespace manin {

using json = nlohmann::ordered_json;

const int kSchemaVersion = 1;

Fan2D parse_fan_text(std::istream& in) {
    std::vector<LatticeVec> rays;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        i64 a, b;
        if (ls >> a >> b) {
            i64 extra;
            if (ls >> extra) throw std::invalid_argument("fan file: more than two coordinates on a line");
            rays.push_back(LatticeVec{a, b});
        } else {
            std::string rest;
            ls.clear();
            if (ls >> rest && !rest.empty())
                throw std::invalid_argument("fan file: unparsable line '" + line + "'");
        }
    }
    if (rays.empty()) throw std::invalid_argument("fan file: no rays");
    return Fan2D(rays);
}

void write_fan_text(std::ostream& out, const Fan2D& f) {
    out << "# fan rays, one per line, counterclockwise\n";
    for (const auto& r : f.rays()) out << r.a << " " << r.b << "\n";
}

namespace {

json ray_json(const LatticeVec& r) { return json::array({r.a, r.b}); }

json rays_json(const std::vector<LatticeVec>& rays) {
    json a = json::array();
    for (const auto& r : rays) a.push_back(ray_json(r));
    return a;
}

std::string rat_str(const Rat& q) { return q.str(); }

json divisor_json(const DivisorClassLattice& dcl) {
    json d;
    d["labels"] = dcl.labels;
    json orbits = json::array();
    for (const auto& o : dcl.orbits) orbits.push_back(rays_json(o));
    d["orbits"] = orbits;
    d["relations"] = dcl.relations;
    d["picard_rank"] = dcl.picard_rank_invariant;
    d["picard_rank_geometric"] = dcl.picard_rank_geometric;
    d["anticanonical"] = dcl.anticanonical;
    json elim = json::array();
    for (std::size_t e = 0; e < dcl.eliminated.size(); ++e) {
        json one;
        one["divisor"] = dcl.labels[dcl.eliminated[e]];
        one["class_over_all"] = dcl.elim_expr[e];
        elim.push_back(one);
    }
    d["eliminated"] = elim;
    json kept = json::array();
    for (int kidx : dcl.kept) kept.push_back(dcl.labels[kidx]);
    d["pic_basis"] = kept;
    d["anticanonical_reduced"] = dcl.anticanonical_reduced;

    json poly;
    poly["variables"] = kept;
    json ineqs = json::array();
    for (const auto& q : dcl.alpha_polytope.ineqs) {
        json row;
        json coeffs = json::array();
        for (const auto& c : q.a) coeffs.push_back(rat_str(c));
        row["a"] = coeffs;
        row["b"] = rat_str(q.b);
        ineqs.push_back(row);
    }
    poly["inequalities"] = ineqs;  // a . z <= b
    json hp;
    json hc = json::array();
    for (const auto& c : dcl.alpha_polytope.hyperplane.c) hc.push_back(rat_str(c));
    hp["c"] = hc;
    hp["e"] = rat_str(dcl.alpha_polytope.hyperplane.e);
    poly["hyperplane"] = hp;  // c . z = e
    d["alpha_polytope"] = poly;
    return d;
}

}  // namespace

std::string fan_report_json(const Fan2D& input_fan) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["rays"] = rays_json(input_fan.rays());
    bool complete = fan_is_complete(input_fan);
    j["complete"] = complete;
    j["cone_indices"] = input_fan.cone_indices();
    if (!complete) return j.dump(2);
    j["smooth"] = fan_is_smooth(input_fan);

    Fan2D resolved = hj_resolve(input_fan);
    json res;
    res["rays"] = rays_json(resolved.rays());
    std::vector<LatticeVec> inserted;
    for (const auto& r : resolved.rays())
        if (!input_fan.contains_ray(r)) inserted.push_back(r);
    res["inserted"] = rays_json(inserted);
    res["smooth"] = fan_is_smooth(resolved);
    j["resolution"] = res;

    const auto swap = GaloisInvolution::coordinate_swap();
    json gal;
    bool invariant = galois_check_invariance(resolved, swap);
    gal["swap_invariant"] = invariant;
    if (invariant) {
        DivisorClassLattice dcl = (resolved == delta_tilde())
                                      ? paper_divisor_lattice()
                                      : divisor_class_lattice(resolved, swap);
        gal["picard_rank"] = picard_rank_invariant(resolved, swap);
        gal["picard_rank_geometric"] = picard_rank_geometric(resolved);
        gal["frobenius_trace_split"] = frobenius_trace_pic(resolved, GaloisInvolution::identity());
        gal["frobenius_trace_inert"] = frobenius_trace_pic(resolved, swap);
        j["galois"] = gal;
        j["divisors"] = divisor_json(dcl);
        j["alpha"] = rat_str(alpha_volume(dcl));
    } else {
        j["galois"] = gal;
    }
    return j.dump(2);
}

std::string cox_report_json() {
    CoxBasis cb = cox_hilbert_basis();
    json j;
    j["schema_version"] = kSchemaVersion;
    j["variables"] = cb.variables;
    json gens = json::array();
    for (const auto& g : cb.generators) {
        json one;
        one["name"] = g.name;
        one["exponents"] = g.exponents;
        gens.push_back(one);
    }
    j["generators"] = gens;
    if (!cb.relation_lhs.empty()) {
        json rel;
        rel["lhs"] = cb.relation_lhs;
        rel["rhs"] = cb.relation_rhs;
        rel["display"] = "eta5 * eta5_bar = eta2 * eta3^2 * eta4^3";
        j["relation"] = rel;
    }
    return j.dump(2);
}

std::string density_report_json(u64 p, unsigned k) {
    LocalDensityReport rep = local_density_oracle(p, k);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["p"] = rep.p;
    j["k"] = rep.k;
    j["count"] = rep.count;
    j["oracle"] = rat_str(rep.oracle);
    j["oracle_real"] = rep.oracle.convert_to<double>();
    j["closed_form"] = rat_str(rep.closed_form);
    j["closed_form_real"] = rep.closed_form.convert_to<double>();
    j["deviation"] = rep.deviation.convert_to<double>();
    return j.dump(2);
}

namespace {

json tau_json(const EulerProduct& ep) {
    json t;
    t["cutoff"] = ep.cutoff;
    t["partial_product"] = ep.partial_product;
    t["tail_bound"] = ep.tail_bound;
    t["interval"] = json::array({ep.lo, ep.hi});
    t["certified"] = ep.certified;
    return t;
}

json breakdown_json(const PeyreBreakdown& pb) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["alpha"] = rat_str(pb.alpha);
    j["beta"] = rat_str(pb.beta);
    j["omega_inf"] = pb.omega_inf;
    j["omega_2"] = rat_str(pb.omega_2);
    j["lfun_limit"] = pb.lfun_limit;
    j["tau"] = tau_json(pb.tau);
    j["C"] = json::array({pb.c_lo, pb.c_hi});
    return j;
}

}  // namespace

std::string predict_report_json(u64 cutoff, double tol) {
    EulerProduct tau = tau_product(cutoff, tol);
    Rat alpha = alpha_volume(paper_divisor_lattice());
    PeyreBreakdown pb = peyre_constant(tau, alpha);
    return breakdown_json(pb).dump(2);
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MANIN_CUBIC_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return (unsigned)v;
    }
    return 1;
}

namespace {

struct OutputTarget {
    std::ostream* out;
    std::ofstream file;

    explicit OutputTarget(const std::string& path) {
        if (path.empty()) {
            out = &std::cout;
        } else {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open output file: " + path);
            out = &file;
        }
    }
};

CountRecord count_with_method(const std::string& method, u64 B, const FactorTable* ft,
                              unsigned workers) {
    if (method == "brute") return brute_force_count(B, workers);
    if (method == "fast") return fast_count(B, *ft, workers);
    if (method == "descent") return descent_count(B, *ft, workers);
    throw std::invalid_argument("unknown counting method: " + method);
}

void emit_csv_row(std::ostream& out, const CountRecord& rec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", rec.elapsed);
    out << rec.B << "," << rec.count << "," << rec.method << "," << buf << "\n";
}

int run_count(const RunConfig& cfg, std::ostream& err) {
    std::vector<u64> heights = cfg.heights;
    if (heights.empty()) {
        if (cfg.max_height == 0) throw std::invalid_argument("count: --max-height required");
        heights.push_back(cfg.max_height);
    }
    u64 bmax = *std::max_element(heights.begin(), heights.end());
    unsigned workers = resolve_workers(cfg.workers);
    std::vector<std::string> methods;
    if (cfg.method == "all") methods = {"brute", "fast", "descent"};
    else methods = {cfg.method};
    bool need_ft = cfg.method != "brute";
    FactorTable ft(need_ft ? std::max<u64>(bmax, 2) : 2);

    OutputTarget target(cfg.output);
    std::string format = cfg.format.empty() ? "csv" : cfg.format;
    json records = json::array();
    if (format == "csv") *target.out << "B,count,method,elapsed_seconds\n";
    for (u64 B : heights) {
        std::vector<CountRecord> recs;
        for (const auto& m : methods) recs.push_back(count_with_method(m, B, &ft, workers));
        for (std::size_t i = 1; i < recs.size(); ++i) {
            if (recs[i].count != recs[0].count) {
                json e;
                e["error"] = "counting methods disagree";
                e["B"] = B;
                e[recs[0].method] = recs[0].count;
                e[recs[i].method] = recs[i].count;
                err << e.dump() << "\n";
                return 3;
            }
        }
        for (const auto& rec : recs) {
            if (format == "csv") {
                emit_csv_row(*target.out, rec);
            } else {
                json r;
                r["B"] = rec.B;
                r["count"] = rec.count;
                r["method"] = rec.method;
                r["elapsed_seconds"] = rec.elapsed;
                records.push_back(r);
            }
        }
    }
    if (format == "json") {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["records"] = records;
        *target.out << j.dump(2) << "\n";
    }
    return 0;
}

int run_compare(const RunConfig& cfg, std::ostream&) {
    std::vector<u64> heights = cfg.heights;
    if (heights.empty()) {
        unsigned lo = cfg.k_lo ? cfg.k_lo : 10;
        unsigned hi = cfg.k_hi ? cfg.k_hi : 17;
        if (hi < lo || hi > 62) throw std::invalid_argument("compare: bad k range");
        for (unsigned k = lo; k <= hi; ++k) heights.push_back(1ull << k);
    }
    u64 bmax = *std::max_element(heights.begin(), heights.end());
    unsigned workers = resolve_workers(cfg.workers);
    FactorTable ft(bmax);

    EulerProduct tau = tau_product(cfg.cutoff, cfg.tol);
    Rat alpha = alpha_volume(paper_divisor_lattice());
    PeyreBreakdown pb = peyre_constant(tau, alpha);
    const double C = (pb.c_lo + pb.c_hi) / 2.0;

    std::vector<std::pair<u64, u64>> samples;
    OutputTarget target(cfg.output);
    *target.out << "B,count,predicted,ratio\n";
    for (u64 B : heights) {
        CountRecord rec = fast_count(B, ft, workers);
        double L = std::log((double)B);
        double predicted = C * (double)B * L * L * L;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f", predicted, (double)rec.count / predicted);
        *target.out << B << "," << rec.count << "," << buf << "\n";
        samples.emplace_back(B, rec.count);
    }

    json j;
    j["schema_version"] = kSchemaVersion;
    if (samples.size() >= 8 && samples.back().first >= 100 * samples.front().first) {
        QFit fit = fit_q(samples);
        json f;
        f["c3"] = fit.c3;
        f["c2"] = fit.c2;
        f["c1"] = fit.c1;
        f["c0"] = fit.c0;
        f["residual"] = fit.residual;
        f["b_min"] = fit.b_min;
        f["b_max"] = fit.b_max;
        f["c3_over_predicted"] = fit.c3 / C;
        j["qfit"] = f;
    } else {
        j["qfit"] = nullptr;
        j["note"] = "fit skipped: needs 8 samples across two decades";
    }
    j["predicted_C"] = json::array({pb.c_lo, pb.c_hi});
    if (!cfg.fit_output.empty()) {
        std::ofstream fit_file(cfg.fit_output);
        if (!fit_file) throw std::runtime_error("cannot open output file: " + cfg.fit_output);
        fit_file << j.dump(2) << "\n";
    } else {
        *target.out << j.dump(2) << "\n";
    }
    return 0;
}

int run_fan(const RunConfig& cfg, std::ostream&) {
    Fan2D f = delta();
    if (!cfg.fan_file.empty()) {
        std::ifstream in(cfg.fan_file);
        if (!in) throw std::runtime_error("cannot open fan file: " + cfg.fan_file);
        f = parse_fan_text(in);
    }
    OutputTarget target(cfg.output);
    *target.out << fan_report_json(f) << "\n";
    return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& err) {
    try {
        if (cfg.subcommand == "count") return run_count(cfg, err);
        if (cfg.subcommand == "compare") return run_compare(cfg, err);
        if (cfg.subcommand == "fan") return run_fan(cfg, err);
        if (cfg.subcommand == "predict") {
            OutputTarget target(cfg.output);
            *target.out << predict_report_json(cfg.cutoff, cfg.tol) << "\n";
            return 0;
        }
        if (cfg.subcommand == "density") {
            OutputTarget target(cfg.output);
            *target.out << density_report_json(cfg.p, cfg.k) << "\n";
            return 0;
        }
        if (cfg.subcommand == "cox") {
            OutputTarget target(cfg.output);
            *target.out << cox_report_json() << "\n";
            return 0;
        }
        throw std::invalid_argument("unknown subcommand: " + cfg.subcommand);
    } catch (const std::exception& ex) {
        json e;
        e["error"] = ex.what();
        e["subcommand"] = cfg.subcommand;
        err << e.dump() << "\n";
        return 2;
    }
}

} // namespace manin
