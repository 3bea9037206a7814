//! Acceptance criteria, one line each. All comparisons are exact integer or
//! isomorphism checks (tolerance 0). Exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use voltops::analysis::{
    certify, find_lift, lifted_group, orbit_accounting, z_upsilon, DEFAULT_DIRECT_LIMIT,
};
use voltops::cosetenum::{realize_schreier, DEFAULT_CAP};
use voltops::coxword::normal_form;
use voltops::operators::{
    builtin, double_cover, dual, medial, omnitruncation, prism, pyramid, rhombitruncation,
    truncated_dual, truncation,
};
use voltops::symmetry::{automorphisms, covers, AutomorphismGroup, FlagPermutation};
use voltops::voltage::{compose, preserves_connectivity, product, Connectivity};
use voltops::Premaniplex;

struct Check {
    ok: bool,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            ok: true,
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, what: &str, ok: bool) {
        if !ok {
            self.ok = false;
            self.notes.push(what.to_string());
        }
    }

    fn equal<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.ok = false;
            self.notes
                .push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }
}

fn aut_order(p: &Premaniplex) -> usize {
    automorphisms(p).unwrap().order()
}

fn orbit_count(p: &Premaniplex) -> usize {
    automorphisms(p).unwrap().orbit_count()
}

fn swap() -> FlagPermutation {
    FlagPermutation::new(vec![1, 0]).unwrap()
}

fn truncation_example(c: &mut Check) {
    let x = cox(&[2, 4]);
    c.equal("|{2,4}|", x.flag_count(), 16);
    let p = product(&x, &truncation()).unwrap();
    c.equal("|X⋊Y|", p.flag_count(), 48);
    c.expect("X⋊Y ≅ {4,3}", iso(&p, &cox(&[4, 3])));
    c.equal("|Aut(X)|", aut_order(&x), 16);
    c.equal("|Aut(X⋊Y)|", aut_order(&p), 48);
    c.equal(
        "lifted order",
        lifted_group(&x, &truncation(), DEFAULT_CAP)
            .unwrap()
            .group
            .order(),
        16,
    );
    let cert = certify(&x, &truncation(), DEFAULT_CAP, DEFAULT_DIRECT_LIMIT).unwrap();
    let two = Premaniplex::two_flag(3, &[0, 1]).unwrap();
    c.expect("X covers 2_{0,1}", covers(&x, &two).unwrap().is_some());
    c.expect(
        "certificate records a covered 2-flag Z",
        cert.records
            .iter()
            .any(|r| r.x_covers_z == Some(true) && r.z_flags == Some(2)),
    );
}

fn z_examples(c: &mut Check) {
    let two = Premaniplex::two_flag(3, &[0, 1]).unwrap();
    let one = Premaniplex::one_vertex(3).unwrap();
    c.expect(
        "Z_b ≅ 2_{0,1}",
        iso(&z_upsilon(&truncation(), 1, DEFAULT_CAP).unwrap(), &two),
    );
    c.expect(
        "Z_c ≅ 2_{0,1}",
        iso(&z_upsilon(&truncation(), 2, DEFAULT_CAP).unwrap(), &two),
    );
    c.expect(
        "Z_m2 ≅ 1^3",
        iso(&z_upsilon(&medial(), 1, DEFAULT_CAP).unwrap(), &one),
    );
}

fn table_rows(c: &mut Check) {
    let cube = cox(&[4, 3]);
    let rows = [
        ("medial", medial(), 96, 2),
        ("truncation", truncation(), 144, 3),
        ("truncation of the dual", truncated_dual(), 144, 3),
        ("medial∘medial", rhombitruncation(), 192, 4),
        ("omnitruncation", omnitruncation(), 288, 6),
    ];
    for (name, op, flags, orbits) in rows {
        let p = product(&cube, &op).unwrap();
        c.equal(&format!("{name} flags"), p.flag_count(), flags);
        c.equal(&format!("{name} orbits"), orbit_count(&p), orbits);
    }
    c.expect(
        "compose(medial, medial) is the medial twice",
        rhombitruncation() == compose(&medial(), &medial()).unwrap(),
    );
}

fn medial_self_duality(c: &mut Check) {
    let a = orbit_accounting(&cox(&[3, 3]), &medial()).unwrap();
    c.equal(
        "tetra: (|Aut(P)|, index, |Aut(X)|)",
        (a.product_aut_order, a.index, a.x_aut_order),
        (48, 2, 24),
    );
    let a = orbit_accounting(&cox(&[4, 3]), &medial()).unwrap();
    c.equal(
        "cube: (|Aut(P)|, index, |Aut(X)|)",
        (a.product_aut_order, a.index, a.x_aut_order),
        (48, 1, 48),
    );
    let mut corpus = vec![
        ("tetrahedron", cox(&[3, 3])),
        ("cube", cox(&[4, 3])),
        ("octahedron", cox(&[3, 4])),
    ];
    for p in 3..=6 {
        corpus.push(("pyramid", polygon_pyramid(p).flag_graph()));
    }
    for (name, x) in corpus {
        let lifts = find_lift(&x, &medial(), &swap()).unwrap().is_some();
        let self_dual = iso(&x, &product(&x, &dual(3).unwrap()).unwrap());
        c.equal(
            &format!("{name}: lift exists = self-dual"),
            lifts,
            self_dual,
        );
        let expected = name != "cube" && name != "octahedron";
        c.equal(&format!("{name}: self-dual"), self_dual, expected);
    }
}

fn prism_law(c: &mut Check) {
    for p in 3..=6 {
        let x = Premaniplex::polygon(p).unwrap();
        let prod = product(&x, &prism(2).unwrap()).unwrap();
        c.equal(&format!("p={p} flags"), prod.flag_count(), 12 * p);
        c.equal(&format!("p={p} |Aut|"), aut_order(&prod), 4 * p);
        let g = lifted_group(&x, &prism(2).unwrap(), DEFAULT_CAP).unwrap();
        c.expect(
            &format!(
                "p={p} lifted group = full group ({} vs {})",
                g.group.order(),
                g.product_aut_order
            ),
            g.is_full,
        );
        c.equal(&format!("p={p} |Γ̃|"), g.group.order(), g.x_aut_order * 2);
    }
}

fn pyramid_law(c: &mut Check) {
    for p in 3..=6 {
        let prod = product(&Premaniplex::polygon(p).unwrap(), &pyramid(2).unwrap()).unwrap();
        c.equal(&format!("p={p} flags"), prod.flag_count(), 8 * p);
        c.equal(
            &format!("p={p} orbits"),
            orbit_count(&prod),
            if p == 3 { 1 } else { 4 },
        );
    }
}

fn orbit_sweep(c: &mut Check) -> usize {
    let pairs = corpus_pairs();
    for (name, x, op) in &pairs {
        let op_v = builtin(op).unwrap();
        let a = orbit_accounting(x, &op_v).unwrap();
        c.equal(
            &format!("{name}⋊{op}: orbits·index"),
            a.product_orbits * a.index,
            a.k * a.y_size,
        );
        if preserves_connectivity(&op_v, DEFAULT_CAP) == Connectivity::Yes {
            c.expect(&format!("{name}⋊{op}: index ≤ |Y|"), a.index <= a.y_size);
        }
    }
    pairs.len()
}

fn embed(g: &FlagPermutation, ky: usize) -> FlagPermutation {
    FlagPermutation::new(
        (0..g.len() * ky)
            .map(|f| g.image(f / ky) * ky + f % ky)
            .collect(),
    )
    .unwrap()
}

fn quotient_commutation(c: &mut Check) -> usize {
    let mut checked = 0;
    for (name, x, op) in corpus_pairs() {
        let op_v = builtin(&op).unwrap();
        let aut = automorphisms(&x).unwrap();
        let intermediate = aut
            .elements
            .iter()
            .map(|g| AutomorphismGroup::generated_by(std::slice::from_ref(g), x.flag_count()))
            .find(|h| h.order() > 1 && h.order() < aut.order())
            .unwrap_or_else(|| AutomorphismGroup::generated_by(&[], x.flag_count()));
        let groups = [
            ("trivial", vec![FlagPermutation::identity(x.flag_count())]),
            ("full", aut.elements.clone()),
            ("cyclic", intermediate.elements),
        ];
        let p = product(&x, &op_v).unwrap();
        for (label, gamma) in groups {
            let ky = op_v.flag_count();
            let lifted: Vec<FlagPermutation> = gamma.iter().map(|g| embed(g, ky)).collect();
            let left = product(&x.quotient(&gamma).unwrap().premaniplex, &op_v).unwrap();
            let right = p.quotient(&lifted).unwrap().premaniplex;
            c.expect(&format!("{name}⋊{op}, Γ {label}"), iso(&left, &right));
            checked += 1;
        }
    }
    checked
}

fn double_cover_example(c: &mut Check) {
    let hemi = hemicube();
    c.equal("|hemicube|", hemi.flag_count(), 24);
    let dc = double_cover(3).unwrap();
    let p = product(&hemi, &dc).unwrap();
    c.expect("hemicube⋊2_∅ connected", p.is_connected());
    c.expect("hemicube⋊2_∅ ≅ cube", iso(&p, &cox(&[4, 3])));
    let q = product(&cox(&[4, 3]), &dc).unwrap();
    let comps = q.components();
    c.equal("cube⋊2_∅ components", comps.len(), 2);
    for comp in comps {
        let (part, _) = q.component_of(comp[0]).unwrap();
        c.expect("component ≅ cube", iso(&part, &cox(&[4, 3])));
    }
    c.equal(
        "preserves_connectivity(2_∅)",
        preserves_connectivity(&dc, DEFAULT_CAP),
        Connectivity::No { index: Some(2) },
    );
}

fn word_problem(c: &mut Check) -> usize {
    const CASES: usize = 100_000;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for case in 0..CASES {
        let n = rng.gen_range(2..=6);
        let len = rng.gen_range(0..=14);
        let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let mut v = w.clone();
        for _ in 0..rng.gen_range(1..=3) {
            let i = rng.gen_range(0..n);
            let distant: Vec<usize> = (0..n).filter(|j| i.abs_diff(*j) >= 2).collect();
            let rel = if distant.is_empty() || rng.gen_bool(0.5) {
                vec![i, i]
            } else {
                let j = distant[rng.gen_range(0..distant.len())];
                vec![i, j, i, j]
            };
            let at = rng.gen_range(0..=v.len());
            v.splice(at..at, rel);
        }
        if normal_form(&w, n).unwrap() != normal_form(&v, n).unwrap() {
            c.expect(&format!("case {case}: {w:?} vs {v:?}"), false);
            break;
        }
    }
    for (name, x) in maniplexes() {
        let gens = x.schreier_generators(0).unwrap().generators;
        let z = realize_schreier(x.rank(), &gens, DEFAULT_CAP).unwrap();
        c.expect(&format!("{name}: Schreier round trip"), iso(&z, &x));
    }
    for p in 3..=8 {
        let x = Premaniplex::polygon(p).unwrap();
        let gens = x.schreier_generators(0).unwrap().generators;
        c.expect(
            &format!("polygon({p}): round trip"),
            iso(&realize_schreier(2, &gens, DEFAULT_CAP).unwrap(), &x),
        );
    }
    CASES
}

fn operator_oracles(c: &mut Check) {
    for (name, x) in [("tetrahedron", tetrahedron()), ("cube", cube())] {
        let fx = x.flag_graph();
        c.expect(
            &format!("{name} medial"),
            iso(&product(&fx, &medial()).unwrap(), &x.medial().flag_graph()),
        );
        c.expect(
            &format!("{name} truncation"),
            iso(
                &product(&fx, &truncation()).unwrap(),
                &x.truncation().flag_graph(),
            ),
        );
        c.expect(
            &format!("{name} dual"),
            iso(
                &product(&fx, &dual(3).unwrap()).unwrap(),
                &x.dual().flag_graph(),
            ),
        );
    }
    for p in 3..=6 {
        let fx = polygon(p).flag_graph();
        c.expect(
            &format!("polygon({p}) prism"),
            iso(
                &product(&fx, &prism(2).unwrap()).unwrap(),
                &polygon_prism(p).flag_graph(),
            ),
        );
        c.expect(
            &format!("polygon({p}) pyramid"),
            iso(
                &product(&fx, &pyramid(2).unwrap()).unwrap(),
                &polygon_pyramid(p).flag_graph(),
            ),
        );
    }
}

fn composition_law(c: &mut Check) {
    let comp = compose(&medial(), &truncation()).unwrap();
    for (name, x) in [
        ("tetrahedron", cox(&[3, 3])),
        ("cube", cox(&[4, 3])),
        ("{2,4}", cox(&[2, 4])),
    ] {
        let lhs = product(&product(&x, &medial()).unwrap(), &truncation()).unwrap();
        c.expect(name, iso(&lhs, &product(&x, &comp).unwrap()));
    }
}

type Criterion = (&'static str, Box<dyn Fn(&mut Check) -> String>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "truncation of {2,4}",
            Box::new(|c| {
                truncation_example(c);
                String::new()
            }),
        ),
        (
            "Z_y1 examples",
            Box::new(|c| {
                z_examples(c);
                String::new()
            }),
        ),
        (
            "Wythoffian orbit table on the cube",
            Box::new(|c| {
                table_rows(c);
                String::new()
            }),
        ),
        (
            "medial and self-duality",
            Box::new(|c| {
                medial_self_duality(c);
                String::new()
            }),
        ),
        (
            "prism over polygons",
            Box::new(|c| {
                prism_law(c);
                String::new()
            }),
        ),
        (
            "pyramid over polygons",
            Box::new(|c| {
                pyramid_law(c);
                String::new()
            }),
        ),
        (
            "orbit arithmetic sweep",
            Box::new(|c| format!("{} pairs", orbit_sweep(c))),
        ),
        (
            "quotient commutation",
            Box::new(|c| format!("{} isomorphisms", quotient_commutation(c))),
        ),
        (
            "orientable double cover",
            Box::new(|c| {
                double_cover_example(c);
                String::new()
            }),
        ),
        (
            "word problem and Schreier round trip",
            Box::new(|c| format!("{} random cases", word_problem(c))),
        ),
        (
            "operator tables against incidence oracles",
            Box::new(|c| {
                operator_oracles(c);
                String::new()
            }),
        ),
        (
            "composition law",
            Box::new(|c| {
                composition_law(c);
                String::new()
            }),
        ),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let mut check = Check::new();
        let start = Instant::now();
        let extra = run(&mut check);
        let secs = start.elapsed().as_secs_f64();
        let status = if check.ok { "PASS" } else { "FAIL" };
        let extra = if extra.is_empty() {
            String::new()
        } else {
            format!(", {extra}")
        };
        println!(
            "criterion {:2}: {status}  {name} (tolerance exact{extra}, {secs:.2}s)",
            k + 1
        );
        for note in &check.notes {
            println!("    {note}");
        }
        if !check.ok {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
