//! Acceptance run: one PASS/FAIL line per criterion, all comparisons exact.
//!
//! Exits 0 after printing every line so that a known failure does not hide
//! the others. Set `ACCEPTANCE_STRICT=1` to exit 1 when any line is FAIL.

use std::time::{Duration, Instant};

use num_traits::Signed;

use hopf_tr::graph::eo::recursion_term_count;
use hopf_tr::graph::{
    catalan, contract, enumerate_family, parse_graph, tree_from_permutation, GraphFamilyId, Limits, Permutation,
};
use hopf_tr::hopf::{
    antipode, coproduct, lr_product, parse_combo, star, verify_axioms, Law, LawStatus, Q,
};
use hopf_tr::spectral::{
    bergmann, coeff_table, decide_catalan_index, decide_handle_factor, s_sequence, verify_coproduct_identity,
    w_direct, w_graph_sum, CoeffKind, CoeffMode, CurveModel, Recursion,
};
use hopf_tr::{Combo, Result, TaggedGraph};

struct Check {
    notes: Vec<String>,
    failed: bool,
}

impl Check {
    fn new() -> Check {
        Check {
            notes: Vec::new(),
            failed: false,
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failed = true;
            self.notes.push(format!("FAILED {}", what.into()));
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn c(s: &str) -> Combo {
    parse_combo(s).unwrap()
}

fn g(s: &str) -> TaggedGraph {
    parse_graph(s).unwrap()
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn family(id: GraphFamilyId) -> Result<Vec<TaggedGraph>> {
    enumerate_family(id, &Limits::default())
}

fn golden(ch: &mut Check) -> Result<()> {
    let products = [
        ("<1>", "<1 2>", "<1 <2 3>> + <<1 2> 3>"),
        ("<1 2>", "<1>", "<1 <2 3>> + <<1 2> 3>"),
        ("<<1 2> 3>", "<1>", "<<<1 2> 3> 4> + <<1 2> <3 4>>"),
        ("<1>", "<<1 2> 3>", "<<<1 2> 3> 4> + <<1 <2 3>> 4> + <1 <<2 3> 4>>"),
        (
            "<1 2>",
            "<1 2>",
            "<<1 2> <3 4>> + <<<1 2> 3> 4> + <<1 <2 3>> 4> + <1 <2 <3 4>>> + <1 <<2 3> 4>>",
        ),
    ];
    for (a, b, want) in products {
        let got = star(&c(a), &c(b))?;
        ch.expect(got == c(want), format!("{a} * {b} = {got}"));
    }

    fn three_leaf(top: &str) -> Vec<(&str, String)> {
        vec![
            ("0", top.to_string()),
            ("<1>", "<2 3>".into()),
            ("<2>", "<1 3>".into()),
            ("<3>", "<1 2>".into()),
            ("<1 2>", "<3>".into()),
            ("<1 3>", "<2>".into()),
            ("<2 3>", "<1>".into()),
            (top, "0".into()),
        ]
    }
    let g2 = "<_ _> | 1~2";
    let g3 = "<1 <_ _>> | 2~3";
    type Expected<'a> = Vec<(&'a str, String, Q)>;
    let coproducts: Vec<(&str, Expected)> = vec![
        ("<1 2>", [("0", "<1 2>"), ("<1>", "<2>"), ("<2>", "<1>"), ("<1 2>", "0")]
            .into_iter()
            .map(|(l, r)| (l, r.to_string(), q(1, 1)))
            .collect()),
        ("<<1 2> 3>", three_leaf("<<1 2> 3>").into_iter().map(|(l, r)| (l, r, q(1, 1))).collect()),
        ("<1 <2 3>>", three_leaf("<1 <2 3>>").into_iter().map(|(l, r)| (l, r, q(1, 1))).collect()),
        // the two overlined middle terms both close to a lone leaf
        (g2, vec![("0", g2.into(), q(1, 1)), ("<1>", "0".into(), q(2, 1)), (g2, "0".into(), q(1, 1))]),
        (
            g3,
            vec![
                ("0", g3.into(), q(1, 1)),
                ("<1>", g2.into(), q(1, 1)),
                ("<1 2>", "0".into(), q(4, 1)),
                (g2, "<1>".into(), q(1, 1)),
                (g3, "0".into(), q(1, 1)),
            ],
        ),
    ];
    for (x, want) in coproducts {
        let d = coproduct(&c(x))?;
        let exact = d.len() == want.len() && want.iter().all(|(l, r, k)| d.coefficient(&g(l), &g(r)) == *k);
        ch.expect(exact, format!("coproduct of {x} = {d}"));
    }

    let antipodes = [
        ("<1>", "-<1>"),
        ("<1 2>", "<2 1>"),
        ("<<1 2> 3>", "<1 <2 3>> - <<3 2> 1> - <3 <2 1>>"),
    ];
    for (x, want) in antipodes {
        let s = antipode(&c(x))?;
        ch.expect(s == c(want), format!("antipode of {x} = {s}"));
    }

    let t = tree_from_permutation(&Permutation::new(vec![2, 3, 1])?)?;
    ch.expect(t.render() == "<<1 2> <3 4>>", format!("tree of (231) = {}", t.render()));
    let u = tree_from_permutation(&Permutation::new(vec![1, 3, 2])?)?;
    ch.expect(t == u, "(231) and (132) share a tree");
    ch.note("14 displays compared term by term");
    Ok(())
}

fn counting(ch: &mut Check) -> Result<()> {
    for n in 0..=10 {
        let len = family(GraphFamilyId::Y(n))?.len();
        ch.expect(catalan(n as u32) == len.into(), format!("|Y({n})| = {len}"));
    }
    for n in 0..=8 {
        let (x, y) = (family(GraphFamilyId::X(n + 1))?.len(), family(GraphFamilyId::Y(n))?.len());
        ch.expect(x == y, format!("|X({})| = {x} vs |Y({n})| = {y}", n + 1));
    }
    let xg = family(GraphFamilyId::Xg { k: 0, g: 2 })?;
    ch.expect(xg.len() == 5, format!("|Xg(0,2)| = {}", xg.len()));
    ch.expect(s_sequence(2) == 5.into(), format!("s2 = {}", s_sequence(2)));
    ch.expect(recursion_term_count(2, 0) == 5u32.into(), "recursion terms of W_1^2");
    ch.note(format!("|Y(10)| = {}, Xg(0,2) = {}", catalan(10), xg.iter().map(|t| t.render()).collect::<Vec<_>>().join(", ")));
    Ok(())
}

fn star_powers(ch: &mut Check) -> Result<()> {
    let leaf = c("<1>");
    let mut power = leaf.clone();
    for n in 1..=8 {
        if n > 1 {
            power = star(&power, &leaf)?;
        }
        let mut want = Combo::zero();
        for t in family(GraphFamilyId::X(n))? {
            want.add_term(t, q(1, 1));
        }
        ch.expect(power == want, format!("n = {n}: {} terms vs {}", power.len(), want.len()));
    }
    ch.note(format!("n = 8 gives {} unit terms", power.len()));
    Ok(())
}

fn star_relation(ch: &mut Check) -> Result<()> {
    let one = c("<1 2>");
    let mut pairs = 0;
    for n in 0..=5 {
        for m in 0..=(5 - n) {
            for a in family(GraphFamilyId::Y(n))? {
                for b in family(GraphFamilyId::Y(m))? {
                    let (a, b) = (Combo::from_graph(a.clone()), Combo::from_graph(b));
                    let lhs = star(&a, &b)?;
                    let rhs = lr_product(&lr_product(&a, &one)?, &b)?;
                    ch.expect(lhs == rhs, format!("{a} with {b}"));
                    pairs += 1;
                }
            }
        }
    }
    ch.note(format!("{pairs} pairs"));
    Ok(())
}

fn axioms(ch: &mut Check) -> Result<()> {
    let report = verify_axioms(6, 2, &Limits { max_work: u128::MAX })?;
    for law in Law::ALL {
        let r = report.result(law);
        match &r.status {
            LawStatus::Pass => ch.note(format!("{} pass ({})", law.name(), r.checked)),
            LawStatus::Violation { counterexample, attributed } => {
                let inputs: Vec<String> = counterexample.iter().map(|t| t.render()).collect();
                if *attributed {
                    ch.note(format!("{} documented straddle-rule violation on {inputs:?}", law.name()));
                } else {
                    ch.expect(false, format!("{} on {inputs:?}", law.name()));
                }
            }
        }
    }
    Ok(())
}

fn recursion(ch: &mut Check) -> Result<()> {
    let airy = CurveModel::airy();
    let r = Recursion::new(airy.clone());
    ch.expect(w_direct(&airy, 0, 2)?.value == bergmann("z0", "z1")?, "W_2^0");
    let want = monomial("1/2", &[("z0", -2), ("z1", -2), ("z2", -2)]);
    ch.expect(r.value(0, 3)? == want, format!("W_3^0 = {}", r.value(0, 3)?));
    let w11 = r.value(1, 1)?;
    let coeff = w11
        .as_poly()
        .and_then(|p| p.terms().find(|(m, _)| m.factors() == [("z0".to_string(), -4)]).map(|(_, c)| c.clone()));
    ch.expect(coeff.as_ref().map(Signed::abs) == Some(q(1, 16)), format!("W_1^1 = {w11}"));
    for (gen, n) in [(0, 3), (0, 4), (1, 2), (1, 3)] {
        ch.expect(r.correlator(gen, n)?.is_symmetric(), format!("symmetry of W_{n}^{gen}"));
    }
    ch.note("W_3^0 = 1/2 z0^-2 z1^-2 z2^-2, W_1^1 = 1/16 z0^-4, symmetric for (0,3),(0,4),(1,2),(1,3)");
    Ok(())
}

fn monomial(c: &str, exps: &[(&str, i32)]) -> hopf_tr::RatExpr {
    use hopf_tr::laurent::{Monomial, Poly};
    let m = Monomial::from_pairs(exps.iter().map(|(v, e)| (v.to_string(), *e)));
    hopf_tr::RatExpr::from(Poly::term(m, hopf_tr::hopf::parse_rational(c).unwrap()))
}

fn graph_sums(ch: &mut Check) -> Result<()> {
    let airy = CurveModel::airy();
    let r = Recursion::new(airy.clone());
    for (gen, n) in [(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 1)] {
        let t = Instant::now();
        let sum = w_graph_sum(&airy, gen, n)?;
        ch.expect(sum.value == r.value(gen, n)?, format!("W_{n}^{gen}"));
        ch.note(format!("({gen},{n}) {:.2?}", t.elapsed()));
    }
    Ok(())
}

fn coefficients(ch: &mut Check) -> Result<()> {
    let limits = Limits::default();
    let airy = CurveModel::airy();
    let a1 = coeff_table(0, 2, CoeffMode::Brute, &limits)?;
    let v = a1.value(CoeffKind::A { m: 0, i: 1 }).cloned();
    ch.expect(v == Some(q(1, 2)), format!("a1 at (0,2) = {v:?}"));

    let catalan_index = decide_catalan_index(&limits)?;
    ch.expect(catalan_index.winner != "neither", format!("{catalan_index}"));
    ch.note(format!("k=4, i=2: brute {} -> {}", show(&catalan_index.brute), catalan_index.winner));

    for (gen, k) in [(0, 2), (0, 3), (0, 4), (1, 1), (1, 2), (2, 0)] {
        let report = verify_coproduct_identity(&airy, gen, k, &limits)?;
        for part in &report.parts {
            if !part.holds() {
                let implied = part.implied_coefficient().map_or("none".into(), |c| c.to_string());
                ch.expect(false, format!("identity at ({gen},{k}) on {} (implied {implied})", part.kind));
            }
        }
        for e in report.table.integrality_violations() {
            ch.expect(false, format!("{} at ({gen},{k}) = {} has no integer reciprocal", e.kind, show(&e.value)));
        }
    }

    let handle = decide_handle_factor(&limits)?;
    ch.expect(handle.winner != "neither", format!("{handle}"));
    Ok(())
}

fn show(v: &Option<Q>) -> String {
    v.as_ref().map_or("undefined".into(), |c| c.to_string())
}

fn sign_laws(ch: &mut Check) -> Result<()> {
    for n in 1..=5 {
        let mut power = c("<1>");
        let mut reversed = c(&format!("<{n}>"));
        for i in 2..=n {
            power = star(&power, &c("<1>"))?;
            reversed = star(&reversed, &c(&format!("<{}>", n + 1 - i)))?;
        }
        let sign = if n % 2 == 0 { q(1, 1) } else { q(-1, 1) };
        let s = antipode(&power)?;
        ch.expect(s == reversed.scale(&sign), format!("n = {n}"));
    }
    let lhs = antipode(&Combo::from_graph(contract(&g("<1 2>"), 1)?))?;
    let rhs = Combo::from_graph(contract(&g("<2 1>"), 1)?);
    ch.expect(lhs == rhs, format!("contraction example gives {lhs}"));
    Ok(())
}

fn round_trip(ch: &mut Check) -> Result<()> {
    let mut ids: Vec<GraphFamilyId> = (0..=10).map(GraphFamilyId::Y).collect();
    ids.extend((0..=9).map(GraphFamilyId::X));
    ids.push(GraphFamilyId::Xg { k: 0, g: 2 });
    let mut count = 0;
    for id in ids {
        for t in family(id)? {
            let back = parse_graph(&t.render())?;
            ch.expect(back == t && back.render() == t.render(), format!("{id}: {}", t.render()));
            count += 1;
        }
    }
    ch.note(format!("{count} graphs"));
    Ok(())
}

type Criterion = fn(&mut Check) -> Result<()>;

fn main() {
    let criteria: [(&str, Criterion, u64); 10] = [
        ("golden worked examples", golden, 1),
        ("family counts", counting, 10),
        ("star powers", star_powers, 30),
        ("star relation", star_relation, 60),
        ("hopf axioms (6 leaves, 2 loops)", axioms, 300),
        ("airy recursion", recursion, 120),
        ("graph sums", graph_sums, 600),
        ("coefficient propositions", coefficients, 900),
        ("antipode sign laws", sign_laws, 60),
        ("round trip", round_trip, 60),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let mut ch = Check::new();
        let start = Instant::now();
        if let Err(e) = run(&mut ch) {
            ch.expect(false, format!("error: {e}"));
        }
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(budget) {
            ch.expect(false, format!("took {elapsed:.2?}, budget {budget}s"));
        }
        if ch.failed {
            failures += 1;
        }
        let verdict = if ch.failed { "FAIL" } else { "PASS" };
        println!("criterion {:>2}: {verdict} {name} [{elapsed:.2?} / {budget}s, tolerance 0]", i + 1);
        for n in &ch.notes {
            println!("    {n}");
        }
    }
    println!("{} of 10 criteria pass", 10 - failures);
    if failures > 0 && std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
