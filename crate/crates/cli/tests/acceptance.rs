//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! The process exits non-zero when the set of failing criteria differs from `KNOWN_RED`,
//! so a regression (or an unexpected fix) is never silent.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use homlie::action::{derivation_space, HomAction};
use homlie::algebra::{yau_twist, HomLie};
use homlie::cohomology::{
    coboundaries, coboundary_preimage, cochain_space, cocycles, cohomologous, cohomology_group, differential,
    differential_matrix, h0_matches_invariants, is_cocycle, is_equivariant, wedge_basis, Cochain,
};
use homlie::crossed::*;
use homlie::dsl::{parse_workspace, Workspace};
use homlie::exactla::{Matrix, Subspace};
use homlie::extension::{
    baer_scalar, baer_scalar_cocycle, baer_sum, baer_sum_cocycle, cocycle_from_extension, equivalent_extensions,
    extension_from_cocycle, find_section, five_term_report, is_equivalence, splitting, AbelianExtension,
    ShortExactSequence,
};
use homlie::free::*;
use homlie::{Field, Rational};

/// Criteria expected to fail, with the reason recorded alongside the implementation.
const KNOWN_RED: &[u32] = &[1];

type Check = Result<(), String>;

fn q(x: i64) -> Rational {
    Rational::from_i64(x)
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| q(x)).collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| q((k == i) as i64)).collect()
}

fn diag(xs: &[i64]) -> Matrix<Rational> {
    Matrix::from_linear_map(xs.len(), xs.len(), |u: &[Rational]| {
        u.iter().zip(xs).map(|(a, &b)| a.clone() * q(b)).collect()
    })
}

fn ensure(cond: bool, what: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn fixture(name: &str) -> Workspace {
    let text = std::fs::read_to_string(fixtures_dir().join(name)).unwrap();
    parse_workspace(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn sl2() -> HomLie<Rational> {
    HomLie::from_brackets(
        3,
        Matrix::identity(3),
        &[(0, 1, v(&[0, 0, 1])), (2, 0, v(&[2, 0, 0])), (2, 1, v(&[0, -2, 0]))],
    )
    .unwrap()
}

fn twisted_sl2() -> HomLie<Rational> {
    let alpha = Matrix::from_rows(vec![
        vec![q(2), q(0), q(0)],
        vec![q(0), frac(1, 2), q(0)],
        vec![q(0), q(0), q(1)],
    ])
    .unwrap();
    yau_twist(&sl2(), &alpha).unwrap()
}

fn two_dim() -> HomLie<Rational> {
    HomLie::from_brackets(2, Matrix::from_i64_rows(&[&[1, 1], &[0, 1]]), &[(0, 1, v(&[1, 0]))]).unwrap()
}

/// Basis `z, x, y` with `[x, y] = z`.
fn heisenberg(alpha: &[i64]) -> HomLie<Rational> {
    HomLie::from_brackets(3, diag(alpha), &[(1, 2, v(&[1, 0, 0]))]).unwrap()
}

fn trivial(l: HomLie<Rational>, alpha_m: &[i64]) -> HomAction<Rational> {
    HomAction::trivial(l, diag(alpha_m)).unwrap()
}

// ---------------------------------------------------------------- criterion 1

fn criterion_1() -> Check {
    let mut failures = Vec::new();
    let ws = fixture("jackson_t1.hla");
    let j = &ws.algebra("J").unwrap().algebra;
    let r = j.validate();
    // Independent evaluation on the pair (e, f): α[e,f] against [αe, αf].
    let (e, f) = (unit(3, 0), unit(3, 1));
    let lhs = j.twist(&j.bracket(&e, &f));
    let rhs = j.bracket(&j.twist(&e), &j.twist(&f));
    if !r.skew {
        failures.push("Jackson: skew".to_string());
    }
    if !r.hom_jacobi {
        failures.push("Jackson: Hom-Jacobi".to_string());
    }
    if !r.multiplicative {
        failures.push(format!(
            "Jackson: multiplicativity (α[e,f] = {}·h, [αe,αf] = {}·h)",
            lhs[2], rhs[2]
        ));
    }
    let ws = fixture("ex_action.hla");
    if !ws.module("M").unwrap().action.is_module() {
        failures.push("ex action (d): not a Hom-module".into());
    }
    let ws = fixture("alpha_cm.hla");
    let cm = CrossedModule::new(
        ws.module("M").unwrap().action.clone(),
        ws.map("mu").unwrap().matrix.clone(),
    )
    .unwrap();
    if !cm.validate(Flavor::Alpha).map(|r| r.holds()).unwrap_or(false) {
        failures.push("alpha crossed module: α-axioms".into());
    }
    if cm.validate(Flavor::Standard).map(|r| r.holds()).unwrap_or(true) {
        failures.push("alpha crossed module: standard axioms should fail".into());
    }
    ensure(failures.is_empty(), failures.join("; "))
}

// ---------------------------------------------------------------- criterion 2

fn complex_fixtures() -> Vec<(&'static str, HomAction<Rational>)> {
    let jackson = fixture("jackson_t1.hla").algebra("J").unwrap().algebra.clone();
    let sl2_ws = fixture("sl2.hla");
    let alpha_cm = fixture("alpha_cm.hla");
    vec![
        ("sl2 adjoint", HomAction::adjoint_module(sl2())),
        ("sl2 on V", sl2_ws.module("V").unwrap().action.clone()),
        ("Jackson t=1 adjoint-type", HomAction::adjoint_module(jackson)),
        (
            "ex action (d)",
            fixture("ex_action.hla").module("M").unwrap().action.clone(),
        ),
        (
            "abelian plane, trivial line",
            fixture("heis.hla").module("M").unwrap().action.clone(),
        ),
        ("Heisenberg, trivial line", trivial(heisenberg(&[1, 1, 1]), &[1])),
        (
            "twisted Heisenberg, trivial line",
            trivial(heisenberg(&[2, 2, 1]), &[2]),
        ),
        ("two-dim adjoint", HomAction::adjoint_module(two_dim())),
        ("twisted sl2 adjoint", HomAction::adjoint_module(twisted_sl2())),
        ("zero algebra, plane", trivial(HomLie::zero(), &[1, 2])),
        (
            "abelian 3-dim, zero module",
            trivial(HomLie::abelian(3, Matrix::identity(3)).unwrap(), &[]),
        ),
        (
            "abelian 3-dim, α = 0",
            trivial(HomLie::abelian(3, Matrix::zeros(3, 3)).unwrap(), &[0, 0]),
        ),
        ("abelian on b1,b2,b3", alpha_cm.module("M").unwrap().action.clone()),
    ]
}

fn criterion_2() -> Check {
    let mut failures = Vec::new();
    for (name, action) in complex_fixtures() {
        for n in 0..=2 {
            let d0 = differential_matrix(&action, n);
            let d1 = differential_matrix(&action, n + 1);
            for b in cochain_space(&action, n).space.basis() {
                if !d1.apply(&d0.apply(b)).iter().all(|c| c == &q(0)) {
                    failures.push(format!("{name}: d{}∘d{} ≠ 0", n + 1, n));
                    break;
                }
            }
        }
    }
    ensure(failures.is_empty(), failures.join("; "))
}

// ---------------------------------------------------------------- criterion 3

fn criterion_3() -> Check {
    let mut failures = Vec::new();
    for (name, action) in complex_fixtures() {
        if !action.is_module() {
            continue;
        }
        // H⁰ by the invariants formula, computed from scratch.
        let (l, m) = (action.dim_l(), action.dim_m());
        let mut stacked = action.alpha_m().sub(&Matrix::identity(m));
        for i in 0..l {
            stacked = stacked.vstack(&action.representation(&unit(l, i)));
        }
        let invariants = stacked.kernel();
        if cocycles(&action, 0) != invariants || !h0_matches_invariants(&action) {
            failures.push(format!("{name}: H⁰ ≠ invariants"));
        }
        let h1 = cohomology_group(&action, 1).dim;
        let der = derivation_space(&action, action.algebra().alpha()).unwrap().dim();
        let im_d0 = coboundaries(&action, 1).dim();
        if h1 != der - im_d0 {
            failures.push(format!("{name}: dim H¹ = {h1}, Der_α − im d⁰ = {der} − {im_d0}"));
        }
    }
    // Whitehead on sl₂: with α = Id every alternating cochain is equivariant, so the
    // ranks of the raw differential matrices give the cohomology.
    let ad = HomAction::adjoint_module(sl2());
    let rank = |n: usize| differential_matrix(&ad, n).rank();
    let ker = |n: usize| differential_matrix(&ad, n).kernel().dim();
    let (h1, h2) = (ker(1) - rank(0), ker(2) - rank(1));
    if h1 != 0 || h2 != 0 {
        failures.push(format!("sl2 adjoint: H¹ = {h1}, H² = {h2}"));
    }
    if cohomology_group(&ad, 1).dim != 0 || cohomology_group(&ad, 2).dim != 0 {
        failures.push("sl2 adjoint: library disagrees with rank oracle".into());
    }
    ensure(failures.is_empty(), failures.join("; "))
}

// ---------------------------------------------------------------- criterion 4

fn cochain2(action: &HomAction<Rational>, values: &[i64]) -> Cochain<Rational> {
    let c = wedge_basis(action.dim_l(), 2).len();
    Cochain::new(
        2,
        action.dim_l(),
        Matrix::from_flat(action.dim_m(), c, v(values)).unwrap(),
    )
    .unwrap()
}

/// An arbitrary coboundary `d¹g` to shift cocycles within their class.
fn shift(action: &HomAction<Rational>, seed: i64) -> Cochain<Rational> {
    let space = cochain_space(action, 1);
    let mut g = Cochain::zero(1, action.dim_l(), action.dim_m());
    for (k, b) in space.basis_cochains(action.dim_l(), action.dim_m()).iter().enumerate() {
        g = g.add(&b.scale(&q(seed + k as i64)));
    }
    differential(action, &g)
}

fn criterion_4() -> Check {
    let mut failures = Vec::new();
    let heis3 = trivial(heisenberg(&[1, 1, 1]), &[1]);
    let plane = fixture("heis.hla").module("M").unwrap().action.clone();
    let sl2_v = fixture("sl2.hla").module("V").unwrap().action.clone();
    if cohomology_group(&heis3, 2).dim < 1 {
        failures.push("Heisenberg: H² = 0".into());
    }
    // Wedge order on (z, x, y): [z,x], [z,y], [x,y].
    let a = cochain2(&heis3, &[1, 0, 0]);
    let b = cochain2(&heis3, &[0, 1, 0]);
    let zero = Cochain::zero(2, 3, 1);
    let cases: Vec<(&str, &HomAction<Rational>, Vec<Cochain<Rational>>)> = vec![
        (
            "Heisenberg",
            &heis3,
            vec![
                a.clone(),
                a.add(&shift(&heis3, 3)),
                b.clone(),
                a.add(&b),
                zero.clone(),
                shift(&heis3, -2),
            ],
        ),
        (
            "plane",
            &plane,
            vec![cochain2(&plane, &[1]), cochain2(&plane, &[-2]), cochain2(&plane, &[0])],
        ),
        (
            "sl2 on V (trivial class)",
            &sl2_v,
            vec![Cochain::zero(2, 3, 2), shift(&sl2_v, 1), shift(&sl2_v, 5)],
        ),
    ];
    for (name, action, ws) in &cases {
        for w in ws {
            if !is_cocycle(action, w).unwrap() {
                failures.push(format!("{name}: fixture is not a cocycle"));
                continue;
            }
            let e = extension_from_cocycle(action, w).unwrap();
            let back = cocycle_from_extension(&e).unwrap();
            if cohomologous(action, w, &back).unwrap().is_none() {
                failures.push(format!("{name}: round trip changed the class"));
            }
            // Same extension read through another Hom-linear section.
            if let Some(t) = e.section_offsets().basis().first() {
                let t = Matrix::from_flat(e.dim_m(), e.dim_l(), t.clone()).unwrap();
                let moved = e.with_section(e.offset_section(&t));
                let w2 = cocycle_from_extension(&moved).unwrap();
                if cohomologous(action, w, &w2).unwrap().is_none() {
                    failures.push(format!("{name}: class depends on the section"));
                }
            }
        }
        for (i, w1) in ws.iter().enumerate() {
            for w2 in ws.iter().skip(i) {
                let (e1, e2) = (
                    extension_from_cocycle(action, w1).unwrap(),
                    extension_from_cocycle(action, w2).unwrap(),
                );
                let phi = equivalent_extensions(&e1, &e2).unwrap();
                let theta = cohomologous(action, w1, w2).unwrap();
                if phi.is_some() != theta.is_some() {
                    failures.push(format!("{name}: equivalence and cohomology disagree"));
                }
                if let Some(phi) = &phi {
                    if !is_equivalence(phi, &e1, &e2) {
                        failures.push(format!("{name}: returned map is not an equivalence"));
                    }
                }
                if let Some(theta) = &theta {
                    if differential(action, theta) != w1.sub(w2) && differential(action, theta) != w2.sub(w1) {
                        failures.push(format!("{name}: primitive does not certify the difference"));
                    }
                }
            }
        }
    }
    ensure(failures.is_empty(), failures.join("; "))
}

// ---------------------------------------------------------------- criterion 5

fn criterion_5() -> Check {
    let mut failures = Vec::new();
    let heis3 = trivial(heisenberg(&[1, 1, 1]), &[1]);
    let plane = fixture("heis.hla").module("M").unwrap().action.clone();
    let ex = fixture("ex_action.hla").module("M").unwrap().action.clone();
    let sl2_v = fixture("sl2.hla").module("V").unwrap().action.clone();
    let twisted = trivial(heisenberg(&[2, 2, 1]), &[2]);
    let h2 = |a: &HomAction<Rational>| cohomology_group(a, 2).representatives;
    let pick = |a: &HomAction<Rational>, i: usize| {
        h2(a)
            .get(i)
            .cloned()
            .unwrap_or_else(|| Cochain::zero(2, a.dim_l(), a.dim_m()))
    };
    let pairs: Vec<(&str, &HomAction<Rational>, Cochain<Rational>, Cochain<Rational>)> = vec![
        (
            "Heisenberg a+b",
            &heis3,
            cochain2(&heis3, &[1, 0, 0]),
            cochain2(&heis3, &[0, 1, 0]),
        ),
        (
            "Heisenberg a+shifted a",
            &heis3,
            cochain2(&heis3, &[1, 0, 0]),
            cochain2(&heis3, &[1, 0, 0]).add(&shift(&heis3, 2)),
        ),
        ("plane", &plane, cochain2(&plane, &[1]), cochain2(&plane, &[-2])),
        ("ex action", &ex, pick(&ex, 0), pick(&ex, 0).scale(&q(3))),
        ("sl2 on V", &sl2_v, shift(&sl2_v, 1), shift(&sl2_v, 4)),
        ("twisted Heisenberg", &twisted, pick(&twisted, 0), pick(&twisted, 1)),
    ];
    let equiv = |a: &AbelianExtension<Rational>, b: &AbelianExtension<Rational>| {
        equivalent_extensions(a, b).ok().flatten().is_some()
    };
    for (name, action, w1, w2) in &pairs {
        let (e1, e2) = (
            extension_from_cocycle(action, w1).unwrap(),
            extension_from_cocycle(action, w2).unwrap(),
        );
        let trivial_ext = extension_from_cocycle(action, &Cochain::zero(2, action.dim_l(), action.dim_m())).unwrap();
        if !equiv(&baer_sum(&e1, &e2).unwrap(), &baer_sum_cocycle(&e1, &e2).unwrap()) {
            failures.push(format!("{name}: E1 + E2 routes differ"));
        }
        // The sum class is w1 + w2.
        let sum_w = cocycle_from_extension(&baer_sum(&e1, &e2).unwrap()).unwrap();
        if cohomologous(action, &sum_w, &w1.add(w2)).unwrap().is_none() {
            failures.push(format!("{name}: sum class is not w1 + w2"));
        }
        for k in [q(-1), q(2), frac(1, 3)] {
            if !equiv(&baer_scalar(&e1, &k).unwrap(), &baer_scalar_cocycle(&e1, &k).unwrap()) {
                failures.push(format!("{name}: k·E routes differ for k = {k}"));
            }
        }
        if !equiv(&baer_sum(&e1, &trivial_ext).unwrap(), &e1) {
            failures.push(format!("{name}: E + trivial ≠ E"));
        }
        let neg = baer_scalar(&e1, &q(-1)).unwrap();
        if !equiv(&baer_sum(&e1, &neg).unwrap(), &trivial_ext) {
            failures.push(format!("{name}: E + (−1)E ≠ trivial"));
        }
    }
    ensure(failures.is_empty(), failures.join("; "))
}

// ---------------------------------------------------------------- criterion 6

fn criterion_6() -> Check {
    let mut failures = Vec::new();
    let ws = fixture("no_section.hla");
    let (x, y) = (&ws.algebra("X").unwrap().algebra, &ws.algebra("Y").unwrap().algebra);
    if find_section(&ws.map("pi").unwrap().matrix, x.alpha(), y.alpha())
        .unwrap()
        .is_some()
    {
        failures.push("no_section: a section was found".into());
    }
    let mut surjections = vec![
        ws_map("sections.hla", "q"),
        Matrix::identity(3),
        Matrix::from_i64_rows(&[&[1, 2, 3], &[0, 1, -1]]),
    ];
    surjections.push(Matrix::from_i64_rows(&[&[2, 0, 0, 1], &[1, 1, 0, 0], &[0, 0, 3, 5]]));
    surjections.push(Matrix::from_i64_rows(&[&[0, 0, 7]]));
    for pi in &surjections {
        let (y, x) = pi.shape();
        match find_section(pi, &Matrix::identity(x), &Matrix::identity(y)).unwrap() {
            Some(s) if pi.mul(&s).is_identity() => {}
            Some(_) => failures.push("returned map is not a section".into()),
            None => failures.push(format!("no section for a {y}×{x} surjection with α = Id")),
        }
    }
    ensure(failures.is_empty(), failures.join("; "))
}

fn ws_map(file: &str, name: &str) -> Matrix<Rational> {
    fixture(file).map(name).unwrap().matrix.clone()
}

// ---------------------------------------------------------------- criterion 7

fn criterion_7() -> Check {
    let mut failures = Vec::new();
    let heis3 = trivial(heisenberg(&[1, 1, 1]), &[1]);
    let plane = fixture("heis.hla").module("M").unwrap().action.clone();
    let ex = fixture("ex_action.hla").module("M").unwrap().action.clone();
    let cases = vec![
        ("plane, split", plane.clone(), cochain2(&plane, &[0])),
        ("plane, Heisenberg", plane.clone(), cochain2(&plane, &[1])),
        ("Heisenberg, non-split", heis3.clone(), cochain2(&heis3, &[0, 1, 0])),
        ("Heisenberg, split", heis3.clone(), Cochain::zero(2, 3, 1)),
        (
            "ex action, non-split",
            ex.clone(),
            cohomology_group(&ex, 2).representatives[0].clone(),
        ),
    ];
    let mut split_seen = false;
    let mut non_split_seen = false;
    for (name, action, w) in cases {
        let e = extension_from_cocycle(&action, &w).unwrap();
        let split = splitting(&e).unwrap().is_some();
        split_seen |= split;
        non_split_seen |= !split;
        let seq = ShortExactSequence::from_extension(&e);
        let r = five_term_report(&seq, &action).unwrap();
        if !(r.exact_at_der_e && r.exact_at_hom && r.exact_at_h2_l && r.injective_at_der_l) {
            failures.push(format!("{name}: {r:?}"));
        }
    }
    if !(split_seen && non_split_seen) {
        failures.push("need both a split and a non-split extension".into());
    }
    ensure(failures.is_empty(), failures.join("; "))
}

// ---------------------------------------------------------------- criterion 8

fn standard_crossed() -> Vec<(&'static str, CrossedModule<Rational>)> {
    let ex_action = HomAction::module(two_dim(), Matrix::from_i64_rows(&[&[1]]), vec![v(&[0]), v(&[-1])]).unwrap();
    let ws = fixture("cat1.hla");
    vec![
        (
            "sl2 ⊆ sl2",
            CrossedModule::ideal_inclusion(sl2(), &Subspace::full(3)).unwrap(),
        ),
        (
            "span e ⊆ two-dim",
            CrossedModule::ideal_inclusion(two_dim(), &Subspace::from_spanning(2, &[v(&[1, 0])])).unwrap(),
        ),
        (
            "centre ⊆ Heisenberg",
            CrossedModule::ideal_inclusion(heisenberg(&[1, 1, 1]), &Subspace::from_spanning(3, &[v(&[1, 0, 0])]))
                .unwrap(),
        ),
        (
            "twisted sl2 ⊆ twisted sl2",
            CrossedModule::ideal_inclusion(twisted_sl2(), &Subspace::full(3)).unwrap(),
        ),
        ("ex action, μ = 0", CrossedModule::zero_map(ex_action)),
        (
            "sl2 adjoint module, μ = 0",
            CrossedModule::zero_map(HomAction::adjoint_module(sl2())),
        ),
        (
            "cat1.hla K → L",
            CrossedModule::new(
                ws.module("K").unwrap().action.clone(),
                ws.map("inc").unwrap().matrix.clone(),
            )
            .unwrap(),
        ),
    ]
}

fn criterion_8() -> Check {
    let mut failures = Vec::new();
    let fixtures = standard_crossed();
    let mut cat1s = Vec::new();
    for (name, cm) in &fixtures {
        if !cm.validate(Flavor::Standard).unwrap().holds() {
            failures.push(format!("{name}: not a crossed module"));
            continue;
        }
        let c = functor_s(cm).unwrap();
        if !c.validate().holds() {
            failures.push(format!("{name}: S(cm) fails the cat¹ conditions"));
        }
        let back = functor_p(&c).unwrap();
        if !back.validate(Flavor::Standard).unwrap().holds() {
            failures.push(format!("{name}: P(S(cm)) is not a crossed module"));
        }
        match ps_isomorphism(cm) {
            Ok((f, phi))
                if f.is_invertible() && phi.is_invertible() && is_crossed_morphism(&f, &phi, cm, &back).unwrap() => {}
            _ => failures.push(format!("{name}: no explicit isomorphism cm ≅ P(S(cm))")),
        }
        cat1s.push((*name, c));
    }
    let ws = fixture("cat1.hla");
    let p = ws.algebra("P").unwrap().algebra.clone();
    let s = ws.map("s").unwrap().matrix.clone();
    cat1s.push((
        "cat1.hla",
        Cat1 {
            algebra: p,
            sub: s.image(),
            s,
            t: ws.map("t").unwrap().matrix.clone(),
        },
    ));
    for (name, c) in &cat1s {
        let cm = match functor_p(c) {
            Ok(cm) => cm,
            Err(e) => {
                failures.push(format!("{name}: P(c) failed: {e}"));
                continue;
            }
        };
        if !cm.validate(Flavor::Standard).unwrap().holds() {
            failures.push(format!("{name}: P(c) is not a crossed module"));
        }
        let back = functor_s(&cm).unwrap();
        match sp_isomorphism(c) {
            Ok(phi) if phi.is_invertible() && is_cat1_morphism(&phi, &back, c) => {}
            _ => failures.push(format!("{name}: no explicit isomorphism S(P(c)) ≅ c")),
        }
    }
    if cat1s.len() < 5 {
        failures.push("fewer than five fixtures".into());
    }
    // The semidirect characterisation agrees with the axioms everywhere, including on
    // data that is not a crossed module.
    let alpha_ws = fixture("alpha_cm.hla");
    let alpha_cm = CrossedModule::new(
        alpha_ws.module("M").unwrap().action.clone(),
        alpha_ws.map("mu").unwrap().matrix.clone(),
    )
    .unwrap();
    let mut all: Vec<(String, CrossedModule<Rational>)> =
        fixtures.into_iter().map(|(n, c)| (n.to_string(), c)).collect();
    all.push(("alpha but not standard".into(), alpha_cm.clone()));
    let mut scaled = all[2].1.clone();
    scaled.mu = scaled.mu.scale(&q(2));
    all.push(("centre ⊆ Heisenberg with μ doubled".into(), scaled));
    let mut wrong = all[1].1.clone();
    wrong.mu = Matrix::from_i64_rows(&[&[0], &[1]]);
    all.push(("span e → f".into(), wrong));
    for (name, cm) in &all {
        let axioms = cm.validate(Flavor::Standard).map(|r| r.holds());
        let semi = cm.validate_via_semidirect();
        match (axioms, semi) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => failures.push(format!("{name}: axioms {a:?} vs semidirect {b:?}")),
        }
    }
    ensure(failures.is_empty(), failures.join("; "))
}

// ---------------------------------------------------------------- criterion 9

fn eta_fixture(l: [i64; 3], heis: bool) -> AlphaCrossedExtension<Rational> {
    let [a, b, c] = l;
    let p = HomLie::from_brackets(
        6,
        diag(&[a, b, c, a * b, a * c, b * c]),
        &[(0, 1, unit(6, 3)), (0, 2, unit(6, 4)), (1, 2, unit(6, 5))],
    )
    .unwrap();
    let abc = a * b * c;
    if !heis {
        let n = HomLie::abelian(4, diag(&[a * b, a * c, b * c, abc])).unwrap();
        let action = HomAction::from_fn(p, n, |i, j| match (i, j) {
            (0, 2) | (2, 0) => unit(4, 3),
            (1, 1) => v(&[0, 0, 0, -1]),
            _ => v(&[0, 0, 0, 0]),
        })
        .unwrap();
        let mu = Matrix::from_columns(6, &[unit(6, 3), unit(6, 4), unit(6, 5), v(&[0; 6])]).unwrap();
        let mut rho = Matrix::zeros(4, 6);
        for k in 0..3 {
            rho.set(k, 3 + k, q(1));
        }
        AlphaCrossedExtension {
            module: trivial(HomLie::abelian(3, diag(&[a, b, c])).unwrap(), &[abc]),
            crossed: CrossedModule::new(action, mu).unwrap(),
            chi: Matrix::from_columns(4, &[unit(4, 3)]).unwrap(),
            pi: Matrix::identity(3).hstack(&Matrix::zeros(3, 3)),
            sigma: Matrix::identity(3).vstack(&Matrix::zeros(3, 3)),
            rho,
        }
    } else {
        let n = HomLie::abelian(3, diag(&[a * c, b * c, abc])).unwrap();
        let action = HomAction::from_fn(p, n, |i, j| match (i, j) {
            (0, 1) => v(&[0, 0, 1]),
            (1, 0) => v(&[0, 0, -1]),
            _ => v(&[0, 0, 0]),
        })
        .unwrap();
        let mu = Matrix::from_columns(6, &[unit(6, 4), unit(6, 5), v(&[0; 6])]).unwrap();
        let base = HomLie::from_brackets(4, diag(&[a, b, c, a * b]), &[(0, 1, unit(4, 3))]).unwrap();
        let pi = Matrix::identity(4).hstack(&Matrix::zeros(4, 2));
        let mut rho = Matrix::zeros(3, 6);
        rho.set(0, 4, q(1));
        rho.set(1, 5, q(1));
        AlphaCrossedExtension {
            module: trivial(base, &[abc]),
            crossed: CrossedModule::new(action, mu).unwrap(),
            chi: Matrix::from_columns(3, &[unit(3, 2)]).unwrap(),
            sigma: pi.transpose(),
            pi,
            rho,
        }
    }
}

fn eta_from_file() -> AlphaCrossedExtension<Rational> {
    let ws = fixture("eta.hla");
    let map = |n: &str| ws.map(n).unwrap().matrix.clone();
    AlphaCrossedExtension {
        module: ws.module("M").unwrap().action.clone(),
        crossed: CrossedModule::new(ws.module("N").unwrap().action.clone(), map("mu")).unwrap(),
        chi: map("chi"),
        pi: map("pi"),
        sigma: map("sigma"),
        rho: map("rho"),
    }
}

/// `ξ ⊕ (ℚu →^id ℚv)` with `ρ'` moved by a ρ-offset, and the inclusions as a morphism.
fn with_contractible_summand(
    xi: &AlphaCrossedExtension<Rational>,
) -> (AlphaCrossedExtension<Rational>, Matrix<Rational>, Matrix<Rational>) {
    let (p, n) = (xi.crossed.target(), xi.crossed.source());
    let (dp, dn) = (p.dim(), n.dim());
    let line = HomLie::abelian(1, diag(&[1])).unwrap();
    let act = &xi.crossed.action;
    let action = HomAction::from_fn(p.direct_sum(&line), n.direct_sum(&line), |i, j| {
        if i < dp && j < dn {
            let mut out = act.act(&unit(dp, i), &unit(dn, j));
            out.push(q(0));
            out
        } else {
            vec![q(0); dn + 1]
        }
    })
    .unwrap();
    let mu = xi.crossed.mu.block_diag(&Matrix::identity(1));
    let inc_n = Matrix::identity(dn).vstack(&Matrix::zeros(1, dn));
    let inc_p = Matrix::identity(dp).vstack(&Matrix::zeros(1, dp));
    let mut rho = xi.rho.block_diag(&Matrix::identity(1));
    if let Some(o) = xi.rho_offsets().basis().first() {
        rho.set_block(0, 0, &xi.rho.add(&Matrix::from_flat(dn, dp, o.clone()).unwrap()));
    }
    let other = AlphaCrossedExtension {
        module: xi.module.clone(),
        crossed: CrossedModule::new(action, mu).unwrap(),
        chi: inc_n.mul(&xi.chi),
        pi: xi.pi.hstack(&Matrix::zeros(xi.pi.rows(), 1)),
        sigma: inc_p.mul(&xi.sigma),
        rho,
    };
    (other, inc_n, inc_p)
}

fn criterion_9() -> Check {
    let mut failures = Vec::new();
    let fixtures = vec![
        ("abelian base (1,1,1)", eta_fixture([1, 1, 1], false)),
        ("abelian base (1,2,2)", eta_fixture([1, 2, 2], false)),
        ("abelian base (0,1,1)", eta_fixture([0, 1, 1], false)),
        ("Heisenberg base (2,1,3)", eta_fixture([2, 1, 3], true)),
        ("eta.hla", eta_from_file()),
    ];
    for (name, xi) in &fixtures {
        if !xi.validate().holds() {
            failures.push(format!("{name}: {:?}", xi.validate()));
            continue;
        }
        let e = match eta(xi) {
            Ok(e) => e,
            Err(err) => {
                failures.push(format!("{name}: {err}"));
                continue;
            }
        };
        // h lands in ker μ: χ(h) is killed by μ.
        let mu_chi = xi.crossed.mu.mul(&xi.chi);
        let in_ker = mu_chi.mul(e.h.values()).is_zero() && e.in_kernel;
        if !in_ker || !e.equivariant || !is_equivariant(&xi.module, &e.h) {
            failures.push(format!("{name}: h outside ker μ or not equivariant"));
        }
        if !differential(&xi.module, &e.h).is_zero() {
            failures.push(format!("{name}: d³h ≠ 0"));
        }
        let trials = eta_section_independence(xi, 5).unwrap();
        for (t, cert) in trials.certificates.iter().enumerate() {
            let (sigma, rho) = trial_sections(xi, t);
            let diff = eta(&xi.with_sections(sigma, rho)).unwrap().h.sub(&e.h);
            match cert {
                Some(b) if differential(&xi.module, b) == diff => {}
                _ => failures.push(format!("{name}: trial {t} not certified")),
            }
        }
        let (other, phi_n, phi_p) = with_contractible_summand(xi);
        let h2 = eta(&other).unwrap().h;
        let morphism = other.validate().holds() && is_crossed_extension_morphism(&phi_n, &phi_p, xi, &other).unwrap();
        let (_, certified) = morphism_certificate(&phi_n, &phi_p, xi, &other).unwrap();
        if !morphism || !certified || coboundary_preimage(&xi.module, &e.h.sub(&h2)).unwrap().is_none() {
            failures.push(format!("{name}: morphism changed the class"));
        }
    }
    ensure(failures.is_empty(), failures.join("; "))
}

// ---------------------------------------------------------------- criterion 10

fn letters(k: usize) -> HomSet {
    HomSet::identity((0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()).unwrap()
}

fn catalan_oracle(n: usize) -> usize {
    // C(2n, n) / (n + 1)
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * (2 * n as u128 - i) / (i + 1);
    }
    (c / (n as u128 + 1)) as usize
}

fn mobius(n: usize) -> i64 {
    let (mut m, mut k, mut result) = (n, 2, 1);
    while k * k <= m {
        if m % k == 0 {
            m /= k;
            if m % k == 0 {
                return 0;
            }
            result = -result;
        }
        k += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

fn witt(k: usize, n: usize) -> usize {
    let sum: i64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) * (k as i64).pow((n / d) as u32))
        .sum();
    (sum / n as i64) as usize
}

fn sl2_eval(w: &Word, gens: &[[i64; 3]]) -> [i64; 3] {
    match w {
        Word::Leaf(i) => gens[*i],
        Word::Node(a, b) => {
            let ([e1, f1, h1], [e2, f2, h2]) = (sl2_eval(a, gens), sl2_eval(b, gens));
            [2 * (h1 * e2 - e1 * h2), -2 * (h1 * f2 - f1 * h2), e1 * f2 - f1 * e2]
        }
    }
}

fn criterion_10() -> Check {
    let mut failures = Vec::new();
    for k in 1..=3 {
        let w = free_words(&letters(k), 5).unwrap();
        for n in 1..=5 {
            if w.count(n) != catalan_oracle(n - 1) * k.pow(n as u32) {
                failures.push(format!("word count k={k} n={n}"));
            }
        }
        let free = FreeHomLie::<Rational>::new(&letters(k), 4).unwrap();
        for n in 1..=4 {
            if free.degree_dim(n) != witt(k, n) {
                failures.push(format!(
                    "dim k={k} n={n}: {} vs Witt {}",
                    free.degree_dim(n),
                    witt(k, n)
                ));
            }
        }
    }
    let free = FreeHomLie::<Rational>::new(&letters(2), 4).unwrap();
    let gens = [[1, 0, 0], [1, 1, -1]];
    let images: Vec<Vec<Rational>> = gens.iter().map(|g| v(g)).collect();
    let ext = free_univ_extend(&free, &sl2(), &images, 4).unwrap();
    if !(ext.relations_vanish && ext.preserves_brackets && ext.intertwines_alpha) {
        failures.push("extension into sl2 is not a morphism".into());
    }
    let trunc = free.truncation(4).unwrap();
    for (col, w) in trunc.words.iter().enumerate() {
        if ext.map.column(col) != v(&sl2_eval(w, &gens)) {
            failures.push(format!("nested bracket mismatch at word {col}"));
        }
    }
    // A presented extension of the bound-2 truncation by a trivial line, with a cocycle
    // that is nonzero on two generators.
    let trunc = FreeHomLie::<Rational>::new(&letters(2), 2)
        .unwrap()
        .truncation(2)
        .unwrap();
    let module = trivial(trunc.algebra.clone(), &[1]);
    let (a, b) = (trunc.generator_index(0).unwrap(), trunc.generator_index(1).unwrap());
    let w = Cochain::from_basis_values(2, trunc.dim(), 1, |t| vec![q((t == [a.min(b), a.max(b)]) as i64)]);
    let probe = free_h2_probe(&trunc, &module, &w).unwrap();
    if !probe.splits() {
        failures.push("free_h2_probe did not split".into());
    }
    ensure(failures.is_empty(), failures.join("; "))
}

// ---------------------------------------------------------------- criterion 11

fn cli_suite() -> Vec<Vec<&'static str>> {
    let eta = "eta.hla --module M --action N --mu mu --chi chi --pi pi --sigma sigma --rho rho";
    [
        "validate jackson_t1.hla",
        "validate ex_action.hla",
        "validate alpha_cm.hla",
        "validate heis.hla",
        "validate broken.hla",
        "--pretty validate cat1.hla",
        "cohomology sl2.hla --algebra S --module adjoint --max-degree 3",
        "cohomology sl2.hla --algebra S --module V",
        "cohomology heis.hla --algebra L --module M --max-degree 2",
        "cohomology ex_action.hla --algebra L --module M",
        "extension build heis.hla --module M --cocycle w",
        "extension extract heis.hla --module M --ext E:i:p:s2",
        "extension equiv heis.hla --module M --ext w E:i:p:s",
        "extension equiv heis.hla --module M --ext w w2",
        "extension baer heis.hla --module M --ext w w2",
        "extension baer heis.hla --module M --ext w --scalar -1/2",
        "extension five-term heis.hla --module M --ext w",
        "section no_section.hla --map pi",
        "section sections.hla --map q",
        "free --generators a,b,c --max-length 4",
        "free --generators a->b,b->0 --max-length 3",
        "crossed check alpha_cm.hla --action M --mu mu",
        "crossed check alpha_cm.hla --action M --mu mu --flavor alpha",
        "crossed functor-s cat1.hla --action K --mu inc",
        "crossed cat1 cat1.hla --algebra P --s s --t t",
        "crossed functor-p cat1.hla --algebra P --s s --t t",
    ]
    .iter()
    .map(|s| s.split(' ').collect())
    .chain(std::iter::once(
        ["crossed", "eta"].into_iter().chain(eta.split(' ')).collect(),
    ))
    .collect()
}

fn run_suite() -> Vec<u8> {
    let mut out = Vec::new();
    for args in cli_suite() {
        let o = Command::new(env!("CARGO_BIN_EXE_homlie"))
            .args(&args)
            .current_dir(fixtures_dir())
            .output()
            .unwrap();
        out.extend(o.stdout);
        out.extend(o.stderr);
        out.push(o.status.code().unwrap_or(-1) as u8);
    }
    out
}

fn criterion_11() -> Check {
    let first = run_suite();
    let started = Instant::now();
    let second = run_suite();
    let elapsed = started.elapsed();
    ensure(first == second, "two runs differ")?;
    ensure(
        elapsed < Duration::from_secs(5),
        format!("one pass of the CLI suite took {elapsed:?}"),
    )
}

// ---------------------------------------------------------------- driver

fn main() {
    let criteria: Vec<(u32, &str, Duration, fn() -> Check)> = vec![
        (1, "validator fixtures", Duration::from_secs(1), criterion_1),
        (2, "d∘d = 0", Duration::from_secs(10), criterion_2),
        (3, "H⁰ and H¹ identifications", Duration::from_secs(10), criterion_3),
        (4, "extensions ≅ H²", Duration::from_secs(10), criterion_4),
        (5, "Baer sum consistency", Duration::from_secs(10), criterion_5),
        (6, "section counterexample", Duration::from_secs(1), criterion_6),
        (7, "five-term exact sequence", Duration::from_secs(10), criterion_7),
        (8, "cat¹ and crossed modules", Duration::from_secs(10), criterion_8),
        (9, "η map", Duration::from_secs(30), criterion_9),
        (10, "free objects", Duration::from_secs(60), criterion_10),
        (11, "CLI determinism", Duration::from_secs(20), criterion_11),
    ];
    let mut red = Vec::new();
    for (id, name, budget, check) in criteria {
        let started = Instant::now();
        let mut result = check();
        let elapsed = started.elapsed();
        if result.is_ok() && elapsed > budget {
            result = Err(format!("took {elapsed:?}, budget {budget:?}"));
        }
        match &result {
            Ok(()) => println!("criterion {id:>2} PASS  {name} ({} ms)", elapsed.as_millis()),
            Err(why) => {
                println!("criterion {id:>2} FAIL  {name} ({} ms): {why}", elapsed.as_millis());
                red.push(id);
            }
        }
    }
    if red != KNOWN_RED {
        eprintln!("failing criteria {red:?}, expected {KNOWN_RED:?}");
        std::process::exit(1);
    }
    println!("{} of 11 criteria pass; known red: {KNOWN_RED:?}", 11 - red.len());
}
