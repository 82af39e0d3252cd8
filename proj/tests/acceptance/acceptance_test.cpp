// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <wdcalc/cli.hpp>
#include <wdcalc/json_io.hpp>
#include <wdcalc/wdcalc.hpp>

#include "../support/enumerate.hpp"
#include "../support/generators.hpp"

using namespace wdcalc;
namespace fs = std::filesystem;

namespace
{

const Field Q = Field::rational();

struct Outcome
{
    bool ok = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (ok) {
            detail = why;
        }
        ok = false;
    }
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += o.ok ? 0 : 1;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << id << " " << name << " (" << secs << " s)";
    if (!o.detail.empty()) {
        std::cout << ": " << o.detail;
    }
    std::cout << std::endl;
}

// Exhaustive universe shared by criteria 1 and 2.
const std::vector<Multisegment>& universe()
{
    static const auto all = wdtest::all_multisegments("L", 0, 5, 6);
    return all;
}

Outcome order_oracle()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto& all = universe();
    std::size_t pairs = 0;
    std::size_t related = 0;
    for (const auto& s : all) {
        const auto below = down_set(s, default_search_bound);
        for (const auto& sp : all) {
            const bool fast = leq(sp, s);
            const bool slow = below.count(sp) > 0;
            ++pairs;
            related += fast ? 1 : 0;
            if (fast != slow) {
                o.fail("disagree on " + sp.to_string() + " vs " + s.to_string());
                return o;
            }
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 30.0) {
        o.fail("took " + std::to_string(secs) + " s");
    }
    o.detail = std::to_string(all.size()) + " multisegments, " + std::to_string(pairs) + " ordered pairs, "
               + std::to_string(related) + " related";
    return o;
}

// Grouped by support: the order never relates different supports, and
// criterion 1 already confirms that.
Outcome order_axioms()
{
    Outcome o;
    std::map<std::map<CuspidalLabel, std::size_t>, std::vector<Multisegment>> groups;
    for (const auto& s : universe()) {
        if (!leq(s, s)) {
            o.fail("not reflexive at " + s.to_string());
            return o;
        }
        groups[wdtest::support_profile(s)].push_back(s);
    }
    std::size_t triples = 0;
    for (const auto& [support, members] : groups) {
        const std::size_t k = members.size();
        std::vector<char> rel(k * k);
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) {
                rel[a * k + b] = leq(members[a], members[b]) ? 1 : 0;
            }
        }
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) {
                if (!rel[a * k + b]) {
                    continue;
                }
                if (a != b && rel[b * k + a]) {
                    o.fail("not antisymmetric: " + members[a].to_string() + ", " + members[b].to_string());
                    return o;
                }
                for (std::size_t c = 0; c < k; ++c) {
                    if (rel[b * k + c]) {
                        ++triples;
                        if (!rel[a * k + c]) {
                            o.fail("not transitive at " + members[a].to_string());
                            return o;
                        }
                    }
                }
            }
        }
    }
    o.detail = std::to_string(groups.size()) + " supports, " + std::to_string(triples) + " chains checked";
    return o;
}

Matrix random_invertible(wdtest::Rng& rng, std::size_t n)
{
    static const std::vector<std::string> pool = {"-3", "-2", "-1", "0",   "1",    "2",   "3",
                                                  "1/2", "-1/2", "1/3", "-1/3"};
    while (true) {
        Matrix m(Q, n, n);
        const bool triangular = rng() % 3 == 0;
        const Scalar d = wdtest::rat(wdtest::pick(rng, pool));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!triangular) {
                    m(i, j) = wdtest::rat(wdtest::pick(rng, pool));
                } else if (i == j) {
                    // repeated diagonal values force a nontrivial unipotent part
                    m(i, j) = rng() % 2 == 0 ? d : wdtest::rat(wdtest::pick(rng, pool));
                } else if (j > i) {
                    m(i, j) = wdtest::rat(wdtest::pick(rng, pool));
                }
            }
        }
        if (determinant(m).is_zero()) {
            continue;
        }
        if (!triangular) {
            return m;
        }
        const Matrix a = wdtest::random_unimodular(rng, n);
        return a * m * inverse(a);
    }
}

Outcome jordan_chevalley_check()
{
    Outcome o;
    wdtest::Rng rng(1003);
    std::size_t nontrivial = 0;
    for (int k = 0; k < 600; ++k) {
        const std::size_t n = 1 + rng() % 5;
        const Matrix p = random_invertible(rng, n);
        const auto jc = jordan_chevalley(p);
        const Matrix& s = jc.semisimple;
        const Matrix& u = jc.unipotent;
        const Matrix id = Matrix::identity(Q, n);
        if (s * u != p || u * s != p) {
            o.fail("s u != u s != P for " + std::to_string(k));
            return o;
        }
        if (!pow(u - id, n).is_zero()) {
            o.fail("u not unipotent for " + std::to_string(k));
            return o;
        }
        if (!squarefree_part(charpoly(p)).evaluate(s).is_zero()) {
            o.fail("q(s) != 0 for " + std::to_string(k));
            return o;
        }
        nontrivial += u == id ? 0 : 1;
    }
    o.detail = "600 matrices, " + std::to_string(nontrivial) + " with u != I";
    if (nontrivial < 50) {
        o.fail("too few non-semisimple samples: " + std::to_string(nontrivial));
    }
    return o;
}

Outcome deligne_round_trip()
{
    Outcome o;
    wdtest::Rng rng(1004);
    for (int k = 0; k < 250; ++k) {
        const Matrix u = wdtest::random_unipotent(rng, 1 + rng() % 6);
        if (nilpotent_exp(nilpotent_log(u)) != u) {
            o.fail("exp(log u) != u at sample " + std::to_string(k));
            return o;
        }
    }
    for (int k = 0; k < 100; ++k) {
        const auto n = 1 + rng() % 4;
        const WeilDeligneRep w = wdtest::conjugate(wdtest::random_chain_rep(rng, 3, n, 1), wdtest::random_unimodular(rng, n));
        const WeilDeligneRep back = from_galois_sample({3, w.frobenius(), nilpotent_exp(w.monodromy())});
        if (back != w) {
            o.fail("galois sample round trip failed at " + std::to_string(k));
            return o;
        }
    }
    std::ifstream in(std::string(WDCALC_FIXTURES) + "/fss/invalid_galois_sample.json");
    const auto bad = json_io::decode_galois_sample(nlohmann::json::parse(in));
    try {
        (void)from_galois_sample(bad);
        o.fail("forced-invalid sample accepted");
    } catch (const invalid_input&) {
    }
    o.detail = "250 unipotents, 100 samples, invalid fixture rejected";
    return o;
}

Outcome reduction_consistency()
{
    Outcome o;
    wdtest::Rng rng(1005);
    for (int k = 0; k < 250; ++k) {
        const std::int64_t p = wdtest::pick<std::int64_t>(rng, {5, 7, 11});
        const WeilDeligneRep w = wdtest::random_integral_rep(rng, 2, p);
        const auto pu = static_cast<std::uint64_t>(p);
        if (frobenius_semisimplify(reduce_wd(frobenius_semisimplify(w), pu)) != frobenius_semisimplify(reduce_wd(w, pu))) {
            o.fail("mismatch at sample " + std::to_string(k));
            return o;
        }
    }
    o.detail = "250 inputs";
    return o;
}

// Randomized suite shared by criteria 6 and 7.
struct SpecializationSuite
{
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::size_t rejected = 0;
    std::size_t strict = 0;
    std::size_t dominance_failures = 0;
    std::size_t lift_mismatches = 0;
    std::string first_problem;
};

const SpecializationSuite& specialization_suite()
{
    static const SpecializationSuite suite = [] {
        SpecializationSuite s;
        wdtest::Rng rng(1006);
        while (s.checked < 600 && s.checked + s.skipped < 3000) {
            const std::int64_t p = wdtest::pick<std::int64_t>(rng, {5, 7, 11});
            const std::int64_t q = wdtest::pick<std::int64_t>(rng, {2, 3});
            const auto n = 1 + rng() % 5;
            const WeilDeligneRep w =
                wdtest::conjugate(wdtest::random_chain_rep(rng, q, n, p), wdtest::random_unimodular(rng, n));
            const auto pu = static_cast<std::uint64_t>(p);
            SpecializationReport r;
            try {
                r = specialize(w, pu);
            } catch (const internal_error& e) {
                // specialize raises internal_error when dominance fails
                ++s.dominance_failures;
                if (s.first_problem.empty()) {
                    s.first_problem = e.what();
                }
                continue;
            } catch (const characteristic_too_small&) {
                // dimension >= p: reduction has no Jordan-Chevalley splitting
                ++s.skipped;
                continue;
            } catch (const invalid_input& e) {
                ++s.rejected;
                if (s.first_problem.empty()) {
                    s.first_problem = std::string("rejected valid input: ") + e.what();
                }
                continue;
            }
            ++s.checked;
            s.strict += r.is_isomorphism ? 0 : 1;
            if (!r.dominance_ok) {
                ++s.dominance_failures;
            }
            if (r.is_isomorphism != is_minimal_lift(w, pu)) {
                ++s.lift_mismatches;
                if (s.first_problem.empty()) {
                    s.first_problem = "minimal-lift mismatch, p = " + std::to_string(p);
                }
            }
        }
        return s;
    }();
    return suite;
}

Outcome specialization_dominance()
{
    Outcome o;
    const auto& s = specialization_suite();
    std::cerr << "specialization suite: " << s.checked << " checked, " << s.skipped
              << " skipped (dimension >= p)\n";
    if (s.checked < 500) {
        o.fail("only " + std::to_string(s.checked) + " valid inputs");
    }
    if (s.rejected > 0) {
        o.fail(std::to_string(s.rejected) + " inputs rejected: " + s.first_problem);
    }
    if (s.dominance_failures > 0) {
        o.fail(std::to_string(s.dominance_failures) + " dominance failures: " + s.first_problem);
    }

    const auto sp = specialize(special_rep(wdtest::rat(1), 2, 2), 5);
    if (!sp.dominance_ok || !sp.is_isomorphism) {
        o.fail("Sp(1,2) at p = 5 is not an isomorphism");
    }
    const WeilDeligneRep scaled(2, Matrix::diagonal(Q, {wdtest::rat(1), wdtest::rat("1/2")}),
                                Matrix::parse(Q, {{"0", "0"}, {"5", "0"}}));
    const auto sc = specialize(scaled, 5);
    const Multisegment bar{Segment{"F5:1", 0, 2, 4}};
    const Multisegment prime{Segment{"F5:1", 0, 1, 4}, Segment{"F5:1", 1, 1, 4}};
    if (!sc.dominance_ok || sc.is_isomorphism || sc.s_bar.ms != bar || sc.s_prime.ms != prime) {
        o.fail("scaled monodromy fixture: S_bar = " + sc.s_bar.ms.to_string() + ", S' = " + sc.s_prime.ms.to_string());
    }
    o.detail = std::to_string(s.checked) + " checked (" + std::to_string(s.strict) + " strict), "
               + std::to_string(s.skipped) + " skipped";
    return o;
}

Outcome minimal_lift()
{
    Outcome o;
    const auto& s = specialization_suite();
    if (s.lift_mismatches > 0) {
        o.fail(std::to_string(s.lift_mismatches) + " mismatches: " + s.first_problem);
    }
    if (s.checked < 500) {
        o.fail("only " + std::to_string(s.checked) + " valid inputs");
    }
    o.detail = std::to_string(s.checked) + " inputs";
    return o;
}

Outcome generic_uniqueness()
{
    Outcome o;
    std::map<std::map<CuspidalLabel, std::size_t>, std::vector<Multisegment>> unlinked;
    for (const auto& s : wdtest::all_multisegments("L", 0, 4, 5)) {
        const auto& segs = s.segments();
        bool ok = true;
        for (std::size_t a = 0; a < segs.size() && ok; ++a) {
            for (std::size_t b = a + 1; b < segs.size() && ok; ++b) {
                ok = !linked(segs[a], segs[b]);
            }
        }
        auto& bucket = unlinked[wdtest::support_profile(s)];
        if (ok) {
            bucket.push_back(s);
        }
    }
    for (const auto& [profile, found] : unlinked) {
        std::vector<CuspidalLabel> support;
        for (const auto& [label, mult] : profile) {
            support.insert(support.end(), mult, label);
        }
        if (found.size() != 1) {
            o.fail(std::to_string(found.size()) + " unlinked multisegments for a support of size "
                   + std::to_string(support.size()));
            return o;
        }
        if (generic_multisegment(support) != found.front()) {
            o.fail("generic_multisegment differs from " + found.front().to_string());
            return o;
        }
    }
    o.detail = std::to_string(unlinked.size()) + " supports";
    return o;
}

Outcome gl2_table()
{
    Outcome o;
    using List = std::vector<std::string>;
    const std::uint64_t p = 7;
    const std::map<std::pair<std::uint64_t, Gl2Shape>, List> expected = {
        {{1, Gl2Shape::Split}, {"St", "1", "1"}},
        {{1, Gl2Shape::NonsplitCycByOne}, {"St", "1"}},
        {{1, Gl2Shape::NonsplitOneByCyc}, {"St", "1"}},
        {{6, Gl2Shape::Split}, {"π(1)", "1", "|·|∘det"}},
        {{6, Gl2Shape::NonsplitCycByOne}, {"π(1)", "|·|∘det"}},
        {{6, Gl2Shape::NonsplitOneByCyc}, {"π(1)", "1"}},
        {{3, Gl2Shape::Split}, {"St⊗(|·|∘det)", "|·|∘det"}},
        {{3, Gl2Shape::NonsplitCycByOne}, {"St⊗(|·|∘det)"}},
        {{3, Gl2Shape::NonsplitOneByCyc}, {"St⊗(|·|∘det)"}},
    };
    for (const auto& [key, list] : expected) {
        const auto out = gl2_modp_table({key.first, p, key.second});
        if (out.constituents != list) {
            o.fail("cell q = " + std::to_string(key.first) + ", " + to_string(key.second));
        }
    }
    o.detail = std::to_string(expected.size()) + " cells";
    return o;
}

Outcome length_bounds()
{
    Outcome o;
    const std::vector<std::uint64_t> expected = {1, 3, 21, 315, 9765};
    for (std::uint64_t n = 1; n <= expected.size(); ++n) {
        if (length_bound(n) != expected[n - 1]) {
            o.fail("n = " + std::to_string(n) + " gives " + std::to_string(length_bound(n)));
        }
    }
    return o;
}

Outcome cli_determinism()
{
    Outcome o;
    std::size_t seen = 0;
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(WDCALC_FIXTURES)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    for (const auto& file : files) {
        const std::string command = file.parent_path().filename().string();
        std::string outputs[2];
        int codes[2];
        for (int round = 0; round < 2; ++round) {
            std::istringstream in;
            std::ostringstream out;
            std::ostringstream err;
            codes[round] = cli::run({command, "--input", file.string()}, in, out, err);
            outputs[round] = out.str();
        }
        if (outputs[0] != outputs[1] || codes[0] != codes[1]) {
            o.fail("nondeterministic output for " + file.string());
            return o;
        }
        if (codes[0] > 2 || !nlohmann::json::accept(outputs[0])) {
            o.fail("bad output for " + file.string());
            return o;
        }
        ++seen;
    }
    if (seen == 0) {
        o.fail("no fixtures found");
    }
    o.detail = std::to_string(seen) + " fixtures";
    return o;
}

} // namespace

int main()
{
    report(1, "order oracle equivalence", order_oracle);
    report(2, "partial order axioms", order_axioms);
    report(3, "Jordan-Chevalley decomposition", jordan_chevalley_check);
    report(4, "log/exp and Galois sample round trip", deligne_round_trip);
    report(5, "reduction commutes with semisimplification", reduction_consistency);
    report(6, "specialization dominance", specialization_dominance);
    report(7, "minimal lift equivalence", minimal_lift);
    report(8, "generic multisegment uniqueness", generic_uniqueness);
    report(9, "GL2 mod p table", gl2_table);
    report(10, "length bound", length_bounds);
    report(11, "CLI determinism", cli_determinism);
    return failures == 0 ? 0 : 1;
}
