// Command-line front end: loads a ring description file, runs the lattice
// and order calculus, and prints a deterministic key/value report.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crystalline/oracle.hpp"
#include "crystalline/report.hpp"
#include "crystalline/specfile.hpp"

using namespace crystalline;

namespace {

struct CliState {
    std::string ring_path;
    long budget = 4;
    bool use_oracle = false;
    ParsedSpec spec;

    oracle::EnumBudget enum_budget() const { return {budget, 2000000}; }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("E_IO", "cannot open ring file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void load(CliState& st) {
    st.spec = instantiate_spec(parse_spec(read_file(st.ring_path)));
}

Doc ring_doc(const CliState& st) {
    Doc d;
    const RingSpec& R = st.spec.ring->ring;
    d.put("kind", R.kind == RingKind::Quadratic ? std::string("quadratic")
                                                : std::string("rational-integers"));
    if (R.kind == RingKind::Quadratic) {
        d.put("d", (long)R.d);
        d.put("half_basis", R.half_basis);
    }
    d.put("group_order", (long)st.spec.ring->n());
    d.put("centrally_crystalline", st.spec.ring->centrally_crystalline);
    return d;
}

int emit_ok(Doc& doc) {
    doc.put("status", std::string("ok"));
    std::cout << doc.emit();
    return 0;
}

int run_validate(CliState& st) {
    // reparse so that validation failures are reported (instantiate throws)
    SpecFile file = parse_spec(read_file(st.ring_path));
    ValidityReport rep = validate_ring(file.ring, file.group, file.action, file.alpha);
    Doc doc;
    doc.put("command", std::string("validate"));
    if (!rep.ok) {
        Doc& err = doc.child("error");
        err.put("code", std::string("E_VALIDATION"));
        err.put("identity", rep.identity);
        if (rep.g >= 0) err.put("g", (long)rep.g);
        if (rep.h >= 0) err.put("h", (long)rep.h);
        if (rep.t >= 0) err.put("t", (long)rep.t);
        err.put("message", rep.message);
        doc.put("status", std::string("invalid"));
        std::cout << doc.emit();
        return 2;
    }
    st.spec = instantiate_spec(file);
    doc.child("ring") = ring_doc(st);
    Doc& inputs = doc.child("inputs");
    for (const auto& [name, lat] : st.spec.lattices) {
        Doc& l = inputs.child("lattice_" + name);
        l = doc_of_lattice(lat);
        l.put("is_order", is_order(lat));
    }
    for (const auto& [name, g] : st.spec.graded) {
        Doc& l = inputs.child("graded_" + name);
        l = doc_of_graded(g);
        l.put("is_gr_order", gr_validate_order(g));
    }
    return emit_ok(doc);
}

int run_orders(CliState& st, const std::string& name) {
    load(st);
    const FullLattice& M = st.spec.lattice(name);
    Doc doc;
    doc.put("command", std::string("orders"));
    doc.put("input", name);
    FullLattice ol = left_order(M), orr = right_order(M);
    Doc& res = doc.child("result");
    res.child("left_order") = doc_of_lattice(ol);
    res.child("left_order").put("is_maximal", is_maximal(ol));
    res.child("right_order") = doc_of_lattice(orr);
    res.child("right_order").put("is_maximal", is_maximal(orr));
    return emit_ok(doc);
}

int run_inverse(CliState& st, const std::string& name) {
    load(st);
    const FullLattice& M = st.spec.lattice(name);
    Doc doc;
    doc.put("command", std::string("inverse"));
    doc.put("input", name);
    FullLattice inv = inverse_lattice(M);
    bool agree = lat_equal(inv, inverse_via_definition(M)) && lat_equal(inv, inverse_via_right(M));
    Doc& res = doc.child("result");
    res.child("inverse") = doc_of_lattice(inv);
    res.put("characterizations_agree", agree);
    if (!agree) throw Error("E_INTERNAL", "inverse characterizations disagree");
    return emit_ok(doc);
}

int run_maximize(CliState& st, const std::string& name) {
    load(st);
    const FullLattice& M = st.spec.lattice(name);
    Doc doc;
    doc.put("command", std::string("maximize"));
    doc.put("input", name);
    OrderHandle h = maximize(M);
    Doc& res = doc.child("result");
    res.child("order") = doc_of_lattice(h.lattice);
    res.put("index", lat_index(h.lattice, M));
    const RingSpec& R = st.spec.ring->ring;
    {
        std::ostringstream os;
        const auto& ps = h.certificate->primes_checked;
        for (std::size_t i = 0; i < ps.size(); ++i)
            os << (i ? ", " : "") << relem_to_string(R, ps[i]);
        res.put("primes_checked", ps.empty() ? std::string("none") : os.str());
        res.put("discriminant", relem_to_string(R, h.certificate->disc));
    }
    if (st.use_oracle)
        res.put("oracle_certified", oracle::certify_maximal(h.lattice, st.enum_budget()));
    return emit_ok(doc);
}

int run_factor(CliState& st, const std::string& name) {
    load(st);
    const FullLattice& M = st.spec.lattice(name);
    Doc doc;
    doc.put("command", std::string("factor"));
    doc.put("input", name);
    OrderHandle h = as_maximal_order(left_order(M));
    TwoSidedFactorization f = factor_two_sided(h, M);
    Doc& res = doc.child("result");
    res.child("order") = doc_of_lattice(h.lattice);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        std::ostringstream key;
        key << "factor_" << (i < 10 ? "0" : "") << i;
        Doc& fd = res.child(key.str());
        fd.child("ideal") = doc_of_lattice(f.factors[i].first.ideal);
        fd.put("below", f.factors[i].first.below);
        fd.put("multiplicity", (long)f.factors[i].second);
    }
    return emit_ok(doc);
}

int run_factor_left(CliState& st, const std::string& name) {
    load(st);
    const FullLattice& M = st.spec.lattice(name);
    Doc doc;
    doc.put("command", std::string("factor-left"));
    doc.put("input", name);
    OrderHandle h = as_maximal_order(left_order(M));
    LeftFactorization f = factor_left_ideal(h, M);
    Doc& res = doc.child("result");
    res.child("order") = doc_of_lattice(h.lattice);
    res.put("length", (long)f.factors.size());
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        std::ostringstream key;
        key << "factor_" << (i < 10 ? "0" : "") << i;
        res.child(key.str()) = doc_of_lattice(f.factors[i]);
    }
    return emit_ok(doc);
}

int run_gr_maximize(CliState& st, const std::string& name) {
    load(st);
    const GradedLattice& G = st.spec.graded_lattice(name);
    Doc doc;
    doc.put("command", std::string("gr-maximize"));
    doc.put("input", name);
    GradedLattice top = gr_maximize(G);
    Doc& res = doc.child("result");
    res.child("order") = doc_of_graded(top);
    res.put("already_gr_maximal", gr_equal(top, G));
    return emit_ok(doc);
}

int run_gr_factor(CliState& st, const std::string& name) {
    load(st);
    const GradedLattice& G = st.spec.graded_lattice(name);
    Doc doc;
    doc.put("command", std::string("gr-factor"));
    doc.put("input", name);
    GradedLattice order = to_graded(left_order(from_graded(G)));
    GradedFactorization f = gr_factor(order, G);
    Doc& res = doc.child("result");
    res.child("order") = doc_of_graded(order);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        std::ostringstream key;
        key << "factor_" << (i < 10 ? "0" : "") << i;
        Doc& fd = res.child(key.str());
        fd.child("ideal") = doc_of_graded(f.factors[i].first);
        fd.put("multiplicity", (long)f.factors[i].second);
    }
    return emit_ok(doc);
}

int run_phi(CliState& st, const std::string& o1, const std::string& o2, const std::string& xi) {
    load(st);
    OrderHandle h1 = as_maximal_order(st.spec.lattice(o1));
    OrderHandle h2 = as_maximal_order(st.spec.lattice(o2));
    const FullLattice& X = st.spec.lattice(xi);
    Doc doc;
    doc.put("command", std::string("phi"));
    doc.put("input", o1 + " " + o2 + " " + xi);
    FullLattice img = phi_map(h1, h2, X);
    doc.child("result").child("image") = doc_of_lattice(img);
    return emit_ok(doc);
}

int run_report(CliState& st) {
    load(st);
    Doc doc;
    doc.put("command", std::string("report"));
    doc.child("ring") = ring_doc(st);
    Doc& lats = doc.child("lattices");
    for (const auto& [name, lat] : st.spec.lattices) {
        Doc& l = lats.child(name);
        l = doc_of_lattice(lat);
        bool ord = is_order(lat);
        l.put("is_order", ord);
        if (ord) {
            l.put("is_maximal", is_maximal(lat));
            if (st.use_oracle)
                l.put("oracle_certified_maximal", oracle::certify_maximal(lat, st.enum_budget()));
        } else {
            l.child("left_order") = doc_of_lattice(left_order(lat));
            l.child("right_order") = doc_of_lattice(right_order(lat));
        }
    }
    Doc& grs = doc.child("graded");
    for (const auto& [name, g] : st.spec.graded) {
        Doc& l = grs.child(name);
        l = doc_of_graded(g);
        bool ord = gr_validate_order(g);
        l.put("is_gr_order", ord);
        if (ord) l.put("is_gr_maximal", gr_is_maximal(g));
    }
    return emit_ok(doc);
}

int render_error(const std::string& command, const Error& e) {
    Doc doc;
    doc.put("command", command);
    Doc& err = doc.child("error");
    err.put("code", e.code());
    err.put("message", std::string(e.what()));
    if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
        err.put("identity", v->identity);
        if (v->g >= 0) err.put("g", (long)v->g);
        if (v->h >= 0) err.put("h", (long)v->h);
        if (v->t >= 0) err.put("t", (long)v->t);
    }
    if (const auto* a = dynamic_cast<const GrAmbiguousError*>(&e)) {
        Doc& anti = err.child("antichain");
        for (std::size_t i = 0; i < a->antichain.size(); ++i) {
            std::ostringstream key;
            key << "order_" << (i < 10 ? "0" : "") << i;
            anti.child(key.str()) = doc_of_graded(a->antichain[i]);
        }
    }
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        err.put("line", (long)pe->line);
        err.put("column", (long)pe->col);
        err.put("expected", pe->expected);
    }
    doc.put("status", std::string("error"));
    std::cout << doc.emit();
    return e.code() == "E_BUDGET_EXCEEDED" ? 3 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice and maximal-order calculus over crossed-product rings"};
    app.require_subcommand(1);

    CliState st;
    app.add_option("--ring", st.ring_path, "ring description file")->required();
    app.add_option("--budget", st.budget, "index bound for oracle enumerations");
    app.add_flag("--oracle", st.use_oracle, "enable brute-force cross-checks");

    std::string arg1, arg2, arg3;
    auto* c_validate = app.add_subcommand("validate", "check the ring axioms");
    auto* c_orders = app.add_subcommand("orders", "left and right order of a lattice");
    c_orders->add_option("lattice", arg1)->required();
    auto* c_inverse = app.add_subcommand("inverse", "inverse of a full lattice");
    c_inverse->add_option("lattice", arg1)->required();
    auto* c_maximize = app.add_subcommand("maximize", "maximal order above an order");
    c_maximize->add_option("lattice", arg1)->required();
    auto* c_factor = app.add_subcommand("factor", "factor a two-sided ideal into primes");
    c_factor->add_option("ideal", arg1)->required();
    auto* c_factor_left = app.add_subcommand("factor-left", "factor a left ideal");
    c_factor_left->add_option("ideal", arg1)->required();
    auto* c_gr_max = app.add_subcommand("gr-maximize", "gr-maximal order above a graded order");
    c_gr_max->add_option("graded", arg1)->required();
    auto* c_gr_factor = app.add_subcommand("gr-factor", "factor a graded two-sided ideal");
    c_gr_factor->add_option("graded", arg1)->required();
    auto* c_phi = app.add_subcommand("phi", "conjugation isomorphism between ideal groups");
    c_phi->add_option("order1", arg1)->required();
    c_phi->add_option("order2", arg2)->required();
    c_phi->add_option("ideal", arg3)->required();
    auto* c_report = app.add_subcommand("report", "full summary of the ring file");

    CLI11_PARSE(app, argc, argv);

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (c_validate->parsed()) return run_validate(st);
        if (c_orders->parsed()) return run_orders(st, arg1);
        if (c_inverse->parsed()) return run_inverse(st, arg1);
        if (c_maximize->parsed()) return run_maximize(st, arg1);
        if (c_factor->parsed()) return run_factor(st, arg1);
        if (c_factor_left->parsed()) return run_factor_left(st, arg1);
        if (c_gr_max->parsed()) return run_gr_maximize(st, arg1);
        if (c_gr_factor->parsed()) return run_gr_factor(st, arg1);
        if (c_phi->parsed()) return run_phi(st, arg1, arg2, arg3);
        if (c_report->parsed()) return run_report(st);
    } catch (const Error& e) {
        return render_error(command, e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
