#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pverify/catalog.hpp"
#include "pverify/dynamics.hpp"
#include "pverify/errors.hpp"
#include "pverify/fastcheck.hpp"
#include "pverify/parse.hpp"
#include "pverify/verifier.hpp"

using json = nlohmann::ordered_json;
using namespace pverify;

namespace {

constexpr const char* kEngineVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Small utilities

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UnknownSystem(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Built-in name, else a path to a system file.
SystemDefinition load_system(const std::string& ref) {
    const auto& names = builtin_system_names();
    for (const std::string& n : names) {
        if (n == ref) return builtin_system(ref);
    }
    if (!std::filesystem::exists(ref)) throw UnknownSystem(ref);
    return parse_system(read_file(ref));
}

// "a/b", integer, or plain decimal like -0.125 (exact).
mpq_class rational_of(const std::string& text) {
    std::size_t dot = text.find('.');
    if (dot == std::string::npos) {
        mpq_class q(text);
        q.canonicalize();
        return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || frac_len == 0) throw std::invalid_argument("bad rational: " + text);
    mpq_class q(digits);
    mpz_class den = 1;
    for (std::size_t k = 0; k < frac_len; ++k) den *= 10;
    q /= mpq_class(den);
    q.canonicalize();
    return q;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

json witness_json(const std::vector<GaussianRational>& w) {
    json arr = json::array();
    for (const GaussianRational& v : w) arr.push_back(v.to_string());
    return arr;
}

std::string witness_text(const std::vector<GaussianRational>& w) {
    std::string out = "(";
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) out += ", ";
        out += w[k].to_string();
    }
    return out + ")";
}

const char* status_name(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::verified: return "verified";
        case VerdictStatus::refuted: return "refuted";
        case VerdictStatus::verified_under_convention: return "verified-under-convention";
    }
    return "?";
}

// Monomial over a generator basis, e.g. "A1^2*B1"; "1" for the unit.
std::string basis_monomial(const std::vector<std::string>& basis, const std::vector<int>& e) {
    std::string out;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (e[k] == 0) continue;
        if (!out.empty()) out += "*";
        out += basis[k];
        if (e[k] > 1) out += "^" + std::to_string(e[k]);
    }
    return out.empty() ? "1" : out;
}

json fit_json(const FitResult& fit) {
    json f;
    f["basis"] = fit.ansatz.generator_basis;
    f["max_generator_degree"] = fit.ansatz.max_generator_degree;
    f["max_parameter_degree"] = fit.ansatz.max_parameter_degree;
    f["solvable"] = fit.solvable;
    f["residual_zero"] = fit.residual_zero;
    f["nullspace_dim"] = fit.nullspace_dim;
    json terms = json::array();
    for (const auto& [e, c] : fit.coefficients) {
        json t;
        t["monomial"] = basis_monomial(fit.ansatz.generator_basis, e);
        t["coefficient"] = c.to_string();
        terms.push_back(std::move(t));
    }
    f["terms"] = std::move(terms);
    f["text"] = fit_to_string(fit);
    if (!fit.note.empty()) f["note"] = fit.note;
    return f;
}

void print_fit_terms(const FitResult& fit, const std::string& indent) {
    for (const auto& [e, c] : fit.coefficients) {
        std::cout << indent << basis_monomial(fit.ansatz.generator_basis, e) << ": "
                  << c.to_string() << "\n";
    }
}

// Generator names mentioned by a formal claim, in declaration order.
std::vector<std::string> claim_basis(const SystemDefinition& sys, const FormalPtr& claim) {
    std::set<std::string> seen;
    formal_for_each_symbol(claim, [&](const std::string& s) { seen.insert(s); });
    std::vector<std::string> basis;
    for (const std::string& g : sys.generator_order) {
        if (seen.count(g)) basis.push_back(g);
    }
    return basis;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
    bool json_out = false;
    bool strict = false;
    bool fast = false;
    std::string only;  // empty = every section
    BracketConvention conv{};
    unsigned long long seed = kDefaultSeed;
    int jobs = 1;
    double timeout = 0;  // seconds; 0 = none
};

struct RelationRow {
    std::string provenance;
    int index = 1;  // 1-based ordinal within the provenance (chain pair number)
    std::string status;
    std::string convention;
    std::string residual_excerpt;
    std::vector<GaussianRational> witness;
    std::string residual_value;  // fast mode: residual at the witness
};

json row_json(const RelationRow& r) {
    json e;
    e["provenance"] = r.provenance;
    e["index"] = r.index;
    e["status"] = r.status;
    e["convention"] = r.convention;
    if (!r.residual_excerpt.empty()) e["residual_excerpt"] = r.residual_excerpt;
    if (!r.residual_value.empty()) e["residual_value"] = r.residual_value;
    if (!r.witness.empty()) e["witness"] = witness_json(r.witness);
    return e;
}

RelationRow row_of(const RelationVerdict& v, int index) {
    RelationRow r;
    r.provenance = v.relation.provenance;
    r.index = index;
    r.status = status_name(v.status);
    r.convention = v.convention.name();
    if (v.status == VerdictStatus::refuted) {
        r.residual_excerpt = v.residual_excerpt;
        r.witness = v.witness;
    }
    return r;
}

RelationRow row_of_fast(const FastVerdict& v, int index) {
    RelationRow r;
    r.provenance = v.relation.provenance;
    r.index = index;
    r.status = v.refuted ? "refuted" : "probable";
    r.convention = "";  // set by the caller
    if (v.refuted) {
        r.witness = v.witness;
        r.residual_value = v.residual_value.to_string();
    }
    return r;
}

void count_rows(const std::vector<RelationRow>& rows, json& section) {
    int verified = 0, refuted = 0, downgraded = 0, skipped = 0, probable = 0;
    for (const RelationRow& r : rows) {
        if (r.status == "verified") ++verified;
        if (r.status == "refuted") ++refuted;
        if (r.status == "verified-under-convention") ++downgraded;
        if (r.status == "skipped") ++skipped;
        if (r.status == "probable") ++probable;
    }
    section["verified"] = verified;
    section["refuted"] = refuted;
    section["verified_under_convention"] = downgraded;
    section["probable"] = probable;
    section["skipped"] = skipped;
}

// Assigns 1-based ordinals within runs of equal provenance (chain pair order).
std::vector<int> provenance_ordinals(const std::vector<Relation>& rels) {
    std::vector<int> out(rels.size(), 1);
    for (std::size_t k = 1; k < rels.size(); ++k) {
        out[k] = rels[k].provenance == rels[k - 1].provenance ? out[k - 1] + 1 : 1;
    }
    return out;
}

int exit_code_of_report(const json& rep) {
    bool strict = rep.value("strict_convention", false);
    bool fail = rep.value("partial", false);
    if (rep.contains("commutation") && !rep["commutation"]["discrepancies"].empty()) fail = true;
    for (const char* section : {"relations", "structure_claims", "special_structure"}) {
        if (!rep.contains(section)) continue;
        for (const auto& row : rep[section]["rows"]) {
            const std::string& st = row["status"].get_ref<const std::string&>();
            if (st == "refuted") fail = true;
            if (st == "skipped") fail = true;
            if (strict && st == "verified-under-convention") fail = true;
        }
    }
    return fail ? 1 : 0;
}

void render_rows_human(const json& section, const std::string& title) {
    std::cout << title << ": " << section["verified"].get<int>() << " verified, "
              << section["refuted"].get<int>() << " refuted";
    if (section["probable"].get<int>() > 0)
        std::cout << ", " << section["probable"].get<int>() << " probable";
    if (section["verified_under_convention"].get<int>() > 0)
        std::cout << ", " << section["verified_under_convention"].get<int>()
                  << " under alternate convention";
    if (section["skipped"].get<int>() > 0)
        std::cout << ", " << section["skipped"].get<int>() << " skipped";
    std::cout << "\n";
    for (const auto& row : section["rows"]) {
        const std::string& st = row["status"].get_ref<const std::string&>();
        if (st == "verified" || st == "probable") continue;
        std::cout << "  " << st << "  " << row["provenance"].get_ref<const std::string&>()
                  << " [" << row["index"].get<int>() << "]";
        if (row.contains("residual_excerpt"))
            std::cout << "\n    residual: " << row["residual_excerpt"].get_ref<const std::string&>();
        if (row.contains("residual_value"))
            std::cout << "\n    residual at witness: "
                      << row["residual_value"].get_ref<const std::string&>();
        if (row.contains("witness")) {
            std::cout << "\n    witness: (";
            bool first = true;
            for (const auto& w : row["witness"]) {
                if (!first) std::cout << ", ";
                first = false;
                std::cout << w.get_ref<const std::string&>();
            }
            std::cout << ")";
        }
        if (row.contains("fit")) {
            const auto& fit = row["fit"];
            std::cout << "\n    refit: " << fit["text"].get_ref<const std::string&>()
                      << "  [nullspace " << fit["nullspace_dim"].get<int>() << "]";
        }
        std::cout << "\n";
    }
}

void render_verify_human(const json& rep) {
    std::cout << "system " << rep["system"].get_ref<const std::string&>() << "  [convention "
              << rep["convention"].get_ref<const std::string&>() << ", seed "
              << rep["seed"].get<unsigned long long>() << "]\n";
    if (rep.contains("commutation")) {
        const auto& c = rep["commutation"];
        std::cout << "commutation table: " << c["pairs"].size()
                  << (c["pairs"].size() == 1 ? " pair" : " pairs") << ", vanishing set";
        for (const auto& p : c["vanishing_pairs"]) {
            std::cout << " (" << p[0].get_ref<const std::string&>() << ","
                      << p[1].get_ref<const std::string&>() << ")";
        }
        std::cout << "\n";
        if (c["discrepancies"].empty()) {
            std::cout << "  discrepancies: none\n";
        } else {
            for (const auto& d : c["discrepancies"]) {
                std::cout << "  discrepancy (" << d["a"].get_ref<const std::string&>() << ","
                          << d["b"].get_ref<const std::string&>() << "): "
                          << d["kind"].get_ref<const std::string&>();
                if (d.contains("witness")) {
                    std::cout << ", witness (";
                    bool first = true;
                    for (const auto& w : d["witness"]) {
                        if (!first) std::cout << ", ";
                        first = false;
                        std::cout << w.get_ref<const std::string&>();
                    }
                    std::cout << ")";
                }
                std::cout << "\n";
            }
        }
    }
    if (rep.contains("relations")) render_rows_human(rep["relations"], "relations");
    if (rep.contains("structure_claims"))
        render_rows_human(rep["structure_claims"], "structure claims");
    if (rep.contains("special_structure"))
        render_rows_human(rep["special_structure"], "special structure");
    if (rep.contains("variants")) {
        for (const auto& v : rep["variants"]) {
            std::cout << "variant " << v["generator"].get_ref<const std::string&>() << " \""
                      << v["label"].get_ref<const std::string&>() << "\": "
                      << (v["conserved"].get<bool>() ? "conserved" : "not conserved");
            if (v.contains("detail"))
                std::cout << " (" << v["detail"].get_ref<const std::string&>() << ")";
            std::cout << "\n";
        }
    }
    if (rep.contains("independence")) {
        std::cout << rep["independence"]["summary"].get_ref<const std::string&>() << "\n";
    }
    for (const auto& w : rep["warnings"]) {
        std::cout << "warning: " << w.get_ref<const std::string&>() << "\n";
    }
    std::cout << "result: " << rep["verdict"].get_ref<const std::string&>() << "\n";
}

json independence_json(const SystemDefinition& sys, const BracketConvention& conv,
                       unsigned long long seed) {
    std::vector<std::string> five;
    for (const std::string& g : sys.generator_order) {
        if (g != "F") five.push_back(g);
    }
    RankReport base = check_functional_independence(sys, five, conv, 3, seed);
    json ind;
    ind["names"] = five;
    ind["functional_rank"] = base.rank;
    std::string summary = "functional rank(";
    for (std::size_t k = 0; k < five.size(); ++k) summary += (k ? "," : "") + five[k];
    summary += ")=" + std::to_string(base.rank);
    if (sys.has_generator("F")) {
        RankReport with_f = check_functional_independence(sys, sys.generator_order, conv, 3, seed);
        ind["rank_with_F"] = with_f.rank;
        summary += "; rank with F=" + std::to_string(with_f.rank);
    }
    LinearIndependenceReport lin = check_linear_independence(sys, sys.generator_order, conv, seed);
    ind["linear_independent"] = lin.independent;
    summary += "; linear: ";
    summary += lin.independent ? "independent" : "dependent";
    if (!lin.independent) {
        ind["dependency"] = witness_json(lin.dependency);
        ind["affine_shift"] = lin.affine_shift.to_string();
        summary += " (" + lin.note + ")";
    }
    ind["summary"] = summary;
    return ind;
}

json compute_verify_report(const SystemDefinition& sys, const VerifyConfig& cfg) {
    json rep;
    rep["report"] = "verify";
    rep["engine_version"] = kEngineVersion;
    rep["seed"] = cfg.seed;
    rep["system"] = sys.name;
    rep["convention"] = cfg.conv.name();
    rep["strict_convention"] = cfg.strict;
    rep["fast"] = cfg.fast;
    rep["partial"] = false;

    auto start_time = std::chrono::steady_clock::now();
    auto expired = [&] {
        if (cfg.timeout <= 0) return false;
        std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_time;
        return elapsed.count() > cfg.timeout;
    };

    VerificationSession session(sys);
    std::vector<std::string> warnings;
    bool partial = false;
    auto want = [&](const char* s) { return cfg.only.empty() || cfg.only == s; };

    if (want("commutation")) {
        CommutationTable table = commutation_table(session, cfg.conv, cfg.seed);
        json c;
        json pairs = json::array();
        for (const PairClassification& p : table.pairs) {
            json e;
            e["a"] = p.a;
            e["b"] = p.b;
            e["zero"] = p.zero;
            pairs.push_back(std::move(e));
        }
        c["pairs"] = std::move(pairs);
        json vanishing = json::array();
        for (const auto& [a, b] : table.vanishing_pairs()) vanishing.push_back({a, b});
        c["vanishing_pairs"] = std::move(vanishing);
        json discrepancies = json::array();
        for (const PairDiscrepancy& d : table.discrepancies) {
            json e;
            e["a"] = d.a;
            e["b"] = d.b;
            e["kind"] = d.claimed_zero ? "claimed zero, computed nonzero"
                                       : "computed zero, never claimed";
            if (!d.witness.empty()) e["witness"] = witness_json(d.witness);
            discrepancies.push_back(std::move(e));
        }
        c["discrepancies"] = std::move(discrepancies);
        rep["commutation"] = std::move(c);
    }

    if (want("relations") && !sys.relations.empty()) {
        const std::vector<Relation>& rels = sys.relations;
        std::vector<int> ordinals = provenance_ordinals(rels);
        std::vector<RelationRow> rows(rels.size());
        if (cfg.fast) {
            std::vector<FastVerdict> fast = fast_verify_all(sys, cfg.conv, 5, cfg.seed);
            for (std::size_t k = 0; k < fast.size(); ++k) {
                rows[k] = row_of_fast(fast[k], ordinals[k]);
                rows[k].convention = cfg.conv.name();
            }
        } else if (cfg.jobs <= 1) {
            for (std::size_t k = 0; k < rels.size(); ++k) {
                if (expired()) {
                    partial = true;
                    rows[k] = RelationRow{rels[k].provenance, ordinals[k], "skipped",
                                          cfg.conv.name(),    "",          {}};
                    continue;
                }
                rows[k] = row_of(verify_relation(session, rels[k], cfg.conv, cfg.seed),
                                 ordinals[k]);
            }
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<char> done(rels.size(), 0);
            auto worker = [&] {
                VerificationSession local(sys);
                for (;;) {
                    std::size_t k = next.fetch_add(1);
                    if (k >= rels.size() || expired()) return;
                    rows[k] = row_of(verify_relation(local, rels[k], cfg.conv, cfg.seed),
                                     ordinals[k]);
                    done[k] = 1;
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < cfg.jobs; ++t) pool.emplace_back(worker);
            for (std::thread& t : pool) t.join();
            for (std::size_t k = 0; k < rels.size(); ++k) {
                if (done[k]) continue;
                partial = true;
                rows[k] = RelationRow{rels[k].provenance, ordinals[k], "skipped",
                                      cfg.conv.name(),    "",          {}};
            }
        }
        json section;
        count_rows(rows, section);
        json out = json::array();
        for (const RelationRow& r : rows) {
            if (r.status == "verified-under-convention") {
                warnings.push_back("relation '" + r.provenance + "' [" +
                                   std::to_string(r.index) + "] verifies only under convention '" +
                                   r.convention + "'");
            }
            out.push_back(row_json(r));
        }
        section["rows"] = std::move(out);
        rep["relations"] = std::move(section);
    }

    if (want("structure") && !sys.structure_claims.empty()) {
        std::vector<RelationRow> rows;
        json fits = json::array();
        std::vector<json> row_fits(sys.structure_claims.size());
        if (cfg.fast) {
            std::vector<FastVerdict> fast =
                fast_verify_structure_claims(sys, cfg.conv, 5, cfg.seed);
            for (std::size_t k = 0; k < fast.size(); ++k) {
                RelationRow r = row_of_fast(fast[k], 1);
                r.convention = cfg.conv.name();
                rows.push_back(std::move(r));
            }
        } else {
            for (std::size_t k = 0; k < sys.structure_claims.size(); ++k) {
                const StructureClaim& claim = sys.structure_claims[k];
                Relation rel;
                rel.lhs = FormalExpr::make_pow(FormalExpr::make_symbol(claim.squared_name), 2);
                rel.rhs = claim.rhs;
                rel.provenance = "structure: " + claim.squared_name + "^2";
                if (expired()) {
                    partial = true;
                    rows.push_back({rel.provenance, 1, "skipped", cfg.conv.name(), "", {}, ""});
                    continue;
                }
                RelationVerdict v = verify_relation(session, rel, cfg.conv, cfg.seed);
                RelationRow row = row_of(v, 1);
                if (v.status == VerdictStatus::refuted && !expired()) {
                    // A refuted claim is accompanied by an exact refit of the
                    // true structure function over the claim's own generators,
                    // escalating to the full basis when needed.
                    StructureAnsatz ansatz;
                    ansatz.generator_basis = claim_basis(sys, claim.rhs);
                    FitResult fit =
                        fit_structure_function(sys, claim.squared_name, ansatz, cfg.conv, cfg.seed);
                    if (!fit.residual_zero) {
                        ansatz.generator_basis = sys.generator_order;
                        fit = fit_structure_function(sys, claim.squared_name, ansatz, cfg.conv,
                                                     cfg.seed);
                    }
                    row_fits[k] = fit_json(fit);
                }
                rows.push_back(std::move(row));
            }
        }
        json section;
        count_rows(rows, section);
        json out = json::array();
        for (std::size_t k = 0; k < rows.size(); ++k) {
            json e = row_json(rows[k]);
            e["name"] = sys.structure_claims[k].squared_name + "^2";
            if (!row_fits[k].is_null()) e["fit"] = row_fits[k];
            out.push_back(std::move(e));
        }
        section["rows"] = std::move(out);
        rep["structure_claims"] = std::move(section);
    }

    // The special-structure lines are phrased over the A1/A2/B1/B2 naming
    // scheme; systems without those generators simply have no such section.
    bool special_applicable = sys.has_generator("A1") && sys.has_generator("A2") &&
                              sys.has_generator("B1") && sys.has_generator("B2");
    if (want("special") && !special_applicable && cfg.only == "special") {
        warnings.push_back(
            "special structure lines require generators A1, A2, B1, B2; section skipped");
    }
    if (want("special") && special_applicable) {
        auto [two_f1, two_f2] = declared_structure_claims(sys);
        std::vector<Relation> lines = special_structure_relations(sys, two_f1, two_f2);
        std::vector<RelationRow> rows;
        for (const Relation& rel : lines) {
            if (expired()) {
                partial = true;
                rows.push_back({rel.provenance, 1, "skipped", cfg.conv.name(), "", {}, ""});
                continue;
            }
            if (cfg.fast) {
                RelationRow r = row_of_fast(fast_verify_relation(sys, rel, cfg.conv, 5, cfg.seed), 1);
                r.convention = cfg.conv.name();
                rows.push_back(std::move(r));
            } else {
                rows.push_back(row_of(verify_relation(session, rel, cfg.conv, cfg.seed), 1));
            }
        }
        json section;
        count_rows(rows, section);
        json out = json::array();
        for (const RelationRow& r : rows) out.push_back(row_json(r));
        section["rows"] = std::move(out);
        rep["special_structure"] = std::move(section);
    }

    if (want("variants") && !sys.variants.empty()) {
        if (expired()) {
            partial = true;
        } else {
            json out = json::array();
            for (const VariantReport& v : check_variants(sys, cfg.conv)) {
                json e;
                e["generator"] = v.variant.generator;
                e["label"] = v.variant.label;
                e["conserved"] = v.conserved;
                if (!v.detail.empty()) e["detail"] = v.detail;
                out.push_back(std::move(e));
            }
            rep["variants"] = std::move(out);
        }
    }

    if (want("independence")) {
        if (expired()) {
            partial = true;
        } else {
            rep["independence"] = independence_json(sys, cfg.conv, cfg.seed);
        }
    }

    rep["partial"] = partial;
    rep["warnings"] = warnings;
    int code = exit_code_of_report(rep);
    rep["verdict"] = code == 0 ? "verified" : (partial ? "partial" : "refuted");
    return rep;
}

int run_verify(const std::string& ref, const VerifyConfig& cfg) {
    SystemDefinition sys = load_system(ref);

    std::string cache_dir;
    if (const char* env = std::getenv("POISSON_VERIFY_CACHE")) cache_dir = env;
    bool cacheable = !cache_dir.empty() && cfg.json_out && cfg.timeout <= 0;
    std::string cache_path;
    if (cacheable) {
        std::string key_material = std::string(kEngineVersion) + "\n" + serialize_system(sys) +
                                   "\n" + cfg.conv.name() + "\n" + std::to_string(cfg.seed) +
                                   "\n" + cfg.only + "\n" + (cfg.fast ? "fast" : "exact") + "\n" +
                                   (cfg.strict ? "strict" : "lenient");
        cache_path = cache_dir + "/verify-" + hex64(fnv1a64(key_material)) + ".json";
        std::ifstream hit(cache_path, std::ios::binary);
        if (hit) {
            std::ostringstream buf;
            buf << hit.rdbuf();
            std::cout << buf.str();
            return exit_code_of_report(json::parse(buf.str()));
        }
    }

    json rep = compute_verify_report(sys, cfg);
    int code = exit_code_of_report(rep);
    if (cfg.json_out) {
        std::string payload = rep.dump(2) + "\n";
        std::cout << payload;
        if (cacheable) {
            std::error_code ec;
            std::filesystem::create_directories(cache_dir, ec);
            std::string tmp = cache_path + ".tmp";
            std::ofstream out(tmp, std::ios::binary);
            out << payload;
            out.close();
            if (out) std::filesystem::rename(tmp, cache_path, ec);
        }
    } else {
        render_verify_human(rep);
    }
    return code;
}

// ---------------------------------------------------------------------------
// fit

int run_fit(const std::string& ref, const std::vector<std::string>& pair,
            const std::vector<std::string>& closure, int degree, int param_degree, bool json_out,
            const BracketConvention& conv, unsigned long long seed) {
    SystemDefinition sys = load_system(ref);
    json rep;
    rep["report"] = "fit";
    rep["engine_version"] = kEngineVersion;
    rep["seed"] = seed;
    rep["system"] = sys.name;
    rep["convention"] = conv.name();

    FitResult fit;
    std::string target_text;
    bool degenerate = false;
    if (!pair.empty()) {
        target_text = "{" + pair[0] + ", " + pair[1] + "}^2";
        VerificationSession session(sys);
        SystemEvaluator& ev = session.evaluator(conv);
        RatExpr br = ev.evaluate(FormalExpr::make_bracket(FormalExpr::make_symbol(pair[0]),
                                                          FormalExpr::make_symbol(pair[1])));
        if (br.is_zero()) {
            degenerate = true;
        } else {
            StructureAnsatz ansatz;
            ansatz.max_generator_degree = degree > 0 ? degree : 3;
            ansatz.max_parameter_degree = param_degree;
            // Prefer the basis of a declared claim for this bracket; fall back
            // to every generator.
            for (const StructureClaim& claim : sys.structure_claims) {
                const NamedBracket* nb = sys.find_named_bracket(claim.squared_name);
                if (nb && ((nb->lhs == pair[0] && nb->rhs == pair[1]) ||
                           (nb->lhs == pair[1] && nb->rhs == pair[0]))) {
                    ansatz.generator_basis = claim_basis(sys, claim.rhs);
                }
            }
            if (ansatz.generator_basis.empty()) ansatz.generator_basis = sys.generator_order;
            fit = fit_target(sys, br * br, ansatz, conv, seed);
            if (!fit.residual_zero) {
                ansatz.generator_basis = sys.generator_order;
                fit = fit_target(sys, br * br, ansatz, conv, seed);
            }
        }
    } else {
        target_text = "{" + closure[0] + ", {" + closure[1] + ", " + closure[2] + "}}";
        StructureAnsatz ansatz = closure_ansatz(sys);
        if (degree > 0) ansatz.max_generator_degree = degree;
        ansatz.max_parameter_degree = param_degree;
        fit = fit_quadratic_closure(sys, closure[0], closure[1], closure[2], ansatz, conv, seed);
    }

    rep["target"] = target_text;
    rep["degenerate"] = degenerate;
    if (!degenerate) rep["fit"] = fit_json(fit);

    int code = degenerate ? 1 : (fit.solvable && fit.residual_zero ? 0 : 1);
    if (json_out) {
        std::cout << rep.dump(2) << "\n";
        return code;
    }
    std::cout << "fit " << target_text << "  [system " << sys.name << ", convention "
              << conv.name() << ", seed " << seed << "]\n";
    if (degenerate) {
        std::cout << "degenerate: the bracket vanishes identically; the square admits only the "
                     "trivial fit 0\n";
        return 1;
    }
    if (!fit.solvable || !fit.residual_zero) {
        std::cout << "no exact fit within degree " << fit.ansatz.max_generator_degree
                  << " in generators, " << fit.ansatz.max_parameter_degree << " in parameters";
        if (!fit.note.empty()) std::cout << " (" << fit.note << ")";
        std::cout << "\n";
        return 1;
    }
    print_fit_terms(fit, "  ");
    std::cout << "fit: " << fit_to_string(fit) << "\n";
    std::cout << "nullspace dimension: " << fit.nullspace_dim << "\n";
    std::cout << "residual: zero (exact)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// independence

int run_independence(const std::string& ref, bool json_out, const BracketConvention& conv,
                     unsigned long long seed) {
    SystemDefinition sys = load_system(ref);
    json rep;
    rep["report"] = "independence";
    rep["engine_version"] = kEngineVersion;
    rep["seed"] = seed;
    rep["system"] = sys.name;
    rep["convention"] = conv.name();
    rep["independence"] = independence_json(sys, conv, seed);
    if (json_out) {
        std::cout << rep.dump(2) << "\n";
    } else {
        std::cout << rep["independence"]["summary"].get_ref<const std::string&>() << "\n";
        if (!rep["independence"]["linear_independent"].get<bool>()) {
            std::cout << "dependency certificate:";
            for (const auto& c : rep["independence"]["dependency"])
                std::cout << " " << c.get_ref<const std::string&>();
            std::cout << "  affine shift: "
                      << rep["independence"]["affine_shift"].get_ref<const std::string&>() << "\n";
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// dynamics

ParamValues default_params(const SystemDefinition& sys) {
    ParamValues out;
    if (sys.name == "V_I") {
        out["delta"] = mpq_class(3, 256);
        out["alpha1"] = mpq_class(1, 128);
        out["alpha2"] = mpq_class(5, 512);
        out["alpha3"] = mpq_class(7, 1024);
        out["k"] = 0;
        return out;
    }
    const std::vector<mpq_class> table = {
        mpq_class(3, 256),  mpq_class(-1, 128), mpq_class(5, 512),  mpq_class(7, 1024),
        mpq_class(0),       mpq_class(1, 64),   mpq_class(-3, 512), mpq_class(9, 2048)};
    const std::vector<std::string>& names = sys.context->parameter_names();
    for (std::size_t k = 0; k < names.size(); ++k) {
        out[names[k]] = table[k % table.size()];
    }
    return out;
}

PhasePoint default_start(const SystemDefinition& sys) {
    PhasePoint start;
    start.q = {sys.name == "V_iv" ? 0.5 : 1.0, 1.0, 1.0};
    start.p = {1.0 / 32, 1.0 / 64, 1.0 / 32};
    return start;
}

int run_dynamics(const std::string& ref, double dt, double horizon, double tolerance,
                 const std::string& dump_path, int stride,
                 const std::vector<std::string>& param_args, const std::string& start_arg,
                 bool json_out, const BracketConvention& conv, unsigned long long seed) {
    SystemDefinition sys = load_system(ref);
    ParamValues params = default_params(sys);
    for (const std::string& p : param_args) {
        std::size_t eq = p.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected NAME=VALUE: " + p);
        params[p.substr(0, eq)] = rational_of(p.substr(eq + 1));
    }
    PhasePoint start = default_start(sys);
    if (!start_arg.empty()) {
        std::vector<double> vals;
        std::stringstream ss(start_arg);
        std::string item;
        while (std::getline(ss, item, ',')) vals.push_back(rational_of(item).get_d());
        if (vals.size() != 6)
            throw std::invalid_argument("--start wants x,y,z,p_x,p_y,p_z (6 values)");
        start.q = {vals[0], vals[1], vals[2]};
        start.p = {vals[3], vals[4], vals[5]};
    }

    IntegrationSpec spec;
    spec.dt = dt;
    spec.horizon = horizon;
    double tol_h = tolerance / 100;

    std::vector<DriftReport> drifts = conservation_drift(sys, params, start, spec, conv);

    json rep;
    rep["report"] = "dynamics";
    rep["engine_version"] = kEngineVersion;
    rep["seed"] = seed;
    rep["system"] = sys.name;
    rep["convention"] = conv.name();
    rep["dt"] = dt;
    rep["horizon"] = horizon;
    rep["tolerance"] = tolerance;
    rep["tolerance_h"] = tol_h;
    json jparams;
    for (const auto& [name, value] : params) {
        std::ostringstream v;
        v << value;
        jparams[name] = v.str();
    }
    rep["params"] = std::move(jparams);
    rep["start"] = {{"q", {start.q[0], start.q[1], start.q[2]}},
                    {"p", {start.p[0], start.p[1], start.p[2]}}};

    bool exceeded = false;
    json rows = json::array();
    for (const DriftReport& d : drifts) {
        double limit = d.name == "H" ? tol_h : tolerance;
        bool ok = d.max_relative_drift <= limit;
        exceeded = exceeded || !ok;
        json e;
        e["name"] = d.name;
        e["initial"] = d.initial;
        e["max_relative_drift"] = d.max_relative_drift;
        e["tolerance"] = limit;
        e["within_tolerance"] = ok;
        rows.push_back(std::move(e));
    }
    rep["drifts"] = std::move(rows);
    if (!dump_path.empty()) {
        std::ofstream out(dump_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open CSV path: " + dump_path);
        write_trajectory_csv(out, sys, params, start, spec, stride, conv);
        rep["csv"] = dump_path;
    }
    rep["verdict"] = exceeded ? "tolerance exceeded" : "within tolerance";

    if (json_out) {
        std::cout << rep.dump(2) << "\n";
        return exceeded ? 1 : 0;
    }
    std::cout << "dynamics " << sys.name << "  [dt " << dt << ", horizon " << horizon << "]\n";
    std::cout << "  params:";
    for (const auto& [name, value] : params) std::cout << " " << name << "=" << value;
    std::cout << "\n  start: q=(" << start.q[0] << ", " << start.q[1] << ", " << start.q[2]
              << ") p=(" << start.p[0] << ", " << start.p[1] << ", " << start.p[2] << ")\n";
    for (const DriftReport& d : drifts) {
        double limit = d.name == "H" ? tol_h : tolerance;
        std::cout << "  " << d.name << ": initial " << d.initial << ", max relative drift "
                  << d.max_relative_drift << " (tolerance " << limit << ") "
                  << (d.max_relative_drift <= limit ? "ok" : "EXCEEDED") << "\n";
    }
    if (!dump_path.empty()) std::cout << "  trajectory CSV: " << dump_path << "\n";
    std::cout << "result: " << (exceeded ? "tolerance exceeded" : "within tolerance") << "\n";
    return exceeded ? 1 : 0;
}

// ---------------------------------------------------------------------------
// list / dump

int run_list(bool json_out) {
    if (json_out) {
        json rep;
        rep["report"] = "list";
        rep["engine_version"] = kEngineVersion;
        rep["seed"] = kDefaultSeed;
        rep["systems"] = builtin_system_names();
        std::cout << rep.dump(2) << "\n";
        return 0;
    }
    for (const std::string& n : builtin_system_names()) std::cout << n << "\n";
    return 0;
}

int run_dump(const std::string& name, bool json_out) {
    std::string text = serialize_system(builtin_system(name));
    if (json_out) {
        json rep;
        rep["report"] = "dump";
        rep["engine_version"] = kEngineVersion;
        rep["seed"] = kDefaultSeed;
        rep["system"] = name;
        rep["text"] = text;
        std::cout << rep.dump(2) << "\n";
        return 0;
    }
    std::cout << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of quadratic Poisson algebras of superintegrable systems"};
    app.require_subcommand(1);

    std::string ref, only, convention = "default", dump_path, start_arg;
    bool json_out = false, strict = false, fast = false;
    unsigned long long seed = kDefaultSeed;
    int jobs = 1, degree = -1, param_degree = 3, stride = 100;
    double timeout = 0, dt = 1e-3, horizon = 10, tolerance = 1e-6;
    std::vector<std::string> pair_names, closure_names, param_args;

    const std::vector<std::string> conv_names = {"default", "half", "neg", "half-neg"};
    const std::vector<std::string> sections = {"commutation", "relations",    "structure",
                                               "special",     "independence", "variants"};

    CLI::App* verify = app.add_subcommand("verify", "Adjudicate every claim of a system");
    verify->add_option("system", ref, "built-in name or system file path")->required();
    verify->add_flag("--json", json_out, "machine-readable report");
    verify->add_option("--only", only, "restrict to one section")
        ->check(CLI::IsMember(sections));
    verify->add_option("--convention", convention, "bracket convention")
        ->check(CLI::IsMember(conv_names));
    verify->add_flag("--strict-convention", strict,
                     "alternate-convention verifications count as failures");
    verify->add_option("--seed", seed, "RNG seed echoed in the report");
    verify->add_option("--jobs", jobs, "relation-check worker threads")
        ->check(CLI::Range(1, 64));
    verify->add_flag("--fast", fast, "probabilistic adjudication only; verdicts are 'probable'");
    verify->add_option("--timeout", timeout, "seconds before a graceful partial report")
        ->check(CLI::PositiveNumber);

    CLI::App* fit = app.add_subcommand("fit", "Fit a structure function or closure right-hand side");
    fit->add_option("system", ref, "built-in name or system file path")->required();
    fit->add_option("--pair", pair_names, "generators A B: fit {A,B}^2")->expected(2);
    fit->add_option("--closure", closure_names, "generators A B C: fit {A,{B,C}}")->expected(3);
    fit->add_flag("--json", json_out, "machine-readable report");
    fit->add_option("--degree", degree, "max degree in generators (default 3 pair / 2 closure)");
    fit->add_option("--param-degree", param_degree, "max degree in parameters (default 3)");
    fit->add_option("--convention", convention, "bracket convention")
        ->check(CLI::IsMember(conv_names));
    fit->add_option("--seed", seed, "RNG seed");

    CLI::App* indep = app.add_subcommand("independence", "Functional and linear independence");
    indep->add_option("system", ref, "built-in name or system file path")->required();
    indep->add_flag("--json", json_out, "machine-readable report");
    indep->add_option("--convention", convention, "bracket convention")
        ->check(CLI::IsMember(conv_names));
    indep->add_option("--seed", seed, "RNG seed");

    CLI::App* dynamics = app.add_subcommand("dynamics", "Symplectic integration drift check");
    dynamics->add_option("system", ref, "built-in name or system file path")->required();
    dynamics->add_option("--dt", dt, "time step (negative integrates backward)");
    dynamics->add_option("--horizon", horizon, "integration horizon")->check(CLI::PositiveNumber);
    dynamics->add_option("--tolerance", tolerance,
                         "max relative drift for non-H integrals (H gets tolerance/100)")
        ->check(CLI::PositiveNumber);
    dynamics->add_option("--dump", dump_path, "write the trajectory as CSV");
    dynamics->add_option("--stride", stride, "CSV row stride")->check(CLI::PositiveNumber);
    dynamics->add_option("--param", param_args, "override one parameter as NAME=VALUE");
    dynamics->add_option("--start", start_arg, "start state x,y,z,p_x,p_y,p_z");
    dynamics->add_flag("--json", json_out, "machine-readable report");
    dynamics->add_option("--convention", convention, "bracket convention")
        ->check(CLI::IsMember(conv_names));
    dynamics->add_option("--seed", seed, "RNG seed echoed in the report");

    CLI::App* list = app.add_subcommand("list", "List the built-in systems");
    list->add_flag("--json", json_out, "machine-readable report");

    CLI::App* dump = app.add_subcommand("dump", "Serialize a built-in system definition");
    dump->add_option("system", ref, "built-in name")->required();
    dump->add_flag("--json", json_out, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    BracketConvention conv = *BracketConvention::from_name(convention);
    try {
        if (*verify) {
            VerifyConfig cfg;
            cfg.json_out = json_out;
            cfg.strict = strict;
            cfg.fast = fast;
            cfg.only = only;
            cfg.conv = conv;
            cfg.seed = seed;
            cfg.jobs = jobs;
            cfg.timeout = timeout;
            return run_verify(ref, cfg);
        }
        if (*fit) {
            if (pair_names.empty() == closure_names.empty()) {
                std::cerr << "fit: exactly one of --pair or --closure is required\n";
                return 2;
            }
            return run_fit(ref, pair_names, closure_names, degree, param_degree, json_out, conv,
                           seed);
        }
        if (*indep) return run_independence(ref, json_out, conv, seed);
        if (*dynamics)
            return run_dynamics(ref, dt, horizon, tolerance, dump_path, stride, param_args,
                                start_arg, json_out, conv, seed);
        if (*list) return run_list(json_out);
        if (*dump) return run_dump(ref, json_out);
    } catch (const UnknownSystem& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnboundName& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DuplicateGenerator& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnresolvedName& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ComplexResidue& e) {
        std::cerr << "error: ComplexResidue: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NoSolution& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SingularityApproach& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SamplingExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DenominatorZero& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
