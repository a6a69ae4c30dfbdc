//! Acceptance gate: every criterion runs at exact integer equality and
//! prints one PASS/FAIL line. Exits nonzero if any criterion fails.

mod common;

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{add, free_gc_dims, module_dim, mul, var, Poly};
use repho_core::builders::{
    builtin, koszul, matrixified_koszul_data, shafarevich, structurally_equal, Builtin,
};
use repho_core::commdga::{CommDgAlgebra, CommElement};
use repho_core::homology::{betti, euler_check, h0_oracle, BettiOptions, BettiTable, HomologyBlock};
use repho_core::linalg::{rank_exact, rank_modular, SparseVec, PRIMES};
use repho_core::matrixify::{is_gl_invariant, matrixify};
use repho_core::presentation::{DgPresentation, Mode};
use repho_core::tangent::{tangent_complex, RepPoint};
use repho_core::traces::{tr1_kxy, trace_word, Differential, MatrixWord};
use repho_core::Q;

type Check = std::result::Result<(), String>;

const CAP: usize = 500_000;

thread_local! {
    /// Every graded (algebra, table) pair produced by the criteria, for the
    /// Euler and modular-rank sweeps.
    static RUNS: RefCell<Vec<(CommDgAlgebra, BettiTable)>> = const { RefCell::new(Vec::new()) };
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pres(b: Builtin) -> Result<DgPresentation, String> {
    builtin(&b).map_err(|e| e.to_string())
}

fn alg(b: Builtin, n: usize) -> Result<CommDgAlgebra, String> {
    matrixify(&pres(b)?, n).map_err(|e| e.to_string())
}

fn run(a: &CommDgAlgebra, p: u32, w: u32) -> Result<BettiTable, String> {
    let t = betti(a, &BettiOptions::new(p, w).monomial_cap(CAP)).map_err(|e| e.to_string())?;
    if t.mode == Mode::Graded {
        RUNS.with(|r| r.borrow_mut().push((a.clone(), t.clone())));
    }
    Ok(t)
}

fn expect_dim(t: &BettiTable, p: u32, w: u32, want: usize, what: &str) -> Check {
    let got = t.dim(p, w);
    ensure(got == want, || format!("{what}: homDim({p},{w}) = {got}, expected {want}"))
}

fn c1_commuting_plane_n1() -> Check {
    let t = run(&alg(Builtin::CommutingPlane, 1)?, 2, 8)?;
    for w in 0..=8u32 {
        expect_dim(&t, 0, w, w as usize + 1, "H0")?;
        expect_dim(&t, 1, w, w.saturating_sub(1) as usize, "H1")?;
        expect_dim(&t, 2, w, 0, "H2")?;
    }
    Ok(())
}

fn c2_commuting_plane_n2_vanishing() -> Check {
    let t = run(&alg(Builtin::CommutingPlane, 2)?, 4, 5)?;
    for w in 0..=5 {
        expect_dim(&t, 3, w, 0, "H3")?;
        expect_dim(&t, 4, w, 0, "H4")?;
    }
    Ok(())
}

/// Variables x11, x12, x21, x22, y11, y12, y21, y22 of the oracle ring.
fn xy_ring() -> (impl Fn(usize, usize) -> Poly, impl Fn(usize, usize) -> Poly) {
    let x = |i: usize, j: usize| var(8, (i - 1) * 2 + (j - 1));
    let y = |i: usize, j: usize| var(8, 4 + (i - 1) * 2 + (j - 1));
    (x, y)
}

fn c3_commuting_plane_n2_low() -> Check {
    let (x, y) = xy_ring();
    // entries of [X, Y]
    let mut ideal = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            let mut e = Poly::new();
            for k in 1..=2 {
                e = add(&e, &mul(&x(i, k), &y(k, j)), 1);
                e = add(&e, &mul(&y(i, k), &x(k, j)), -1);
            }
            if !e.is_empty() {
                ideal.push(e);
            }
        }
    }
    let z = Poly::new();
    let minor = |a: Poly, b: Poly, c: Poly, d: Poly| add(&mul(&a, &b), &mul(&c, &d), -1);
    // H1 on generators (tau, xi, eta) of weights (2, 3, 3)
    let h1_rel = vec![
        vec![
            add(&z, &minor(x(1, 2), y(1, 1), y(1, 2), x(1, 1)), -1),
            add(&z, &y(1, 2), -1),
            x(1, 2),
        ],
        vec![
            add(&z, &minor(x(2, 1), y(2, 2), y(2, 1), x(2, 2)), -1),
            add(&z, &y(2, 1), -1),
            x(2, 1),
        ],
        vec![
            add(&z, &minor(x(1, 1), y(2, 2), y(1, 1), x(2, 2)), -1),
            add(&z, &add(&y(1, 1), &y(2, 2), -1), -1),
            add(&x(1, 1), &x(2, 2), -1),
        ],
    ];
    // H2 on generators (xi tau, eta tau), both of weight 5
    let h2_rel = vec![
        vec![add(&z, &y(1, 2), -1), x(1, 2)],
        vec![add(&z, &y(2, 1), -1), x(2, 1)],
        vec![add(&z, &add(&y(1, 1), &y(2, 2), -1), -1), add(&x(1, 1), &x(2, 2), -1)],
    ];
    let t = run(&alg(Builtin::CommutingPlane, 2)?, 2, 5)?;
    for w in 0..=5 {
        let h1 = module_dim(8, &[2, 3, 3], &ideal, &h1_rel, w);
        let h2 = module_dim(8, &[5, 5], &ideal, &h2_rel, w);
        expect_dim(&t, 1, w, h1, "H1 vs presentation oracle")?;
        expect_dim(&t, 2, w, h2, "H2 vs presentation oracle")?;
    }
    Ok(())
}

fn c4_dual_numbers() -> Check {
    let a = matrixify(&pres(Builtin::DualNumbers(8))?, 1).map_err(|e| e.to_string())?;
    let t = run(&a, 4, 8)?;
    let expected: [(u32, BTreeMap<u32, usize>); 4] = [
        (1, BTreeMap::new()),
        (2, [(3, 1), (4, 1)].into()),
        (3, [(5, 1), (6, 1)].into()),
        (4, [(5, 1), (6, 2), (7, 1)].into()),
    ];
    let mut wrong = Vec::new();
    for (p, dims) in &expected {
        for w in 0..=8 {
            let want = dims.get(&w).copied().unwrap_or(0);
            let got = t.dim(*p, w);
            if got != want {
                wrong.push(format!("({p},{w}) = {got}, expected {want}"));
            }
        }
    }
    ensure(wrong.is_empty(), || format!("homDim {}", wrong.join("; ")))
}

fn c5_smooth_vanishing() -> Check {
    for m in 1..=3 {
        for n in 1..=3 {
            let t = run(&alg(Builtin::Free(m), n)?, 3, 4)?;
            for e in t.entries.iter().filter(|e| e.hdeg >= 1) {
                ensure(e.dim == 0, || format!("free({m}) n={n}: homDim({},{}) = {}", e.hdeg, e.weight, e.dim))?;
            }
        }
    }
    Ok(())
}

fn c6_qplane() -> Check {
    let p = pres(Builtin::QPlane(Q::from_integer(2.into())))?;
    let h0 = h0_oracle(&p, 1, 5, CAP).map_err(|e| e.to_string())?;
    ensure(h0.oracle == vec![1, 2, 2, 2, 2, 2], || format!("H0 oracle dims {:?}", h0.oracle))?;
    let t = run(&matrixify(&p, 1).map_err(|e| e.to_string())?, 3, 8)?;
    for e in t.entries.iter().filter(|e| e.hdeg >= 1) {
        ensure(e.dim == 0, || format!("n=1: homDim({},{}) = {}", e.hdeg, e.weight, e.dim))?;
    }
    let t = run(&matrixify(&p, 2).map_err(|e| e.to_string())?, 3, 5)?;
    let h1_vanishes = (0..=5).all(|w| t.dim(1, w) == 0);
    ensure(h1_vanishes, || "n=2: H1 does not vanish".into())?;
    for w in 0..=5 {
        expect_dim(&t, 2, w, 0, "n=2 rigidity H2")?;
        expect_dim(&t, 3, w, 0, "n=2 rigidity H3")?;
    }
    Ok(())
}

fn c7_usl2_filtered() -> Check {
    let a = alg(Builtin::Usl2, 1)?;
    let t = betti(&a, &BettiOptions::new(6, 9).margin(3).monomial_cap(CAP)).map_err(|e| e.to_string())?;
    ensure(t.mode == Mode::Filtered, || "usl2 must run filtered".into())?;
    let mut stable = 0;
    for e in &t.entries {
        if e.stable != Some(true) {
            continue;
        }
        stable += 1;
        let want = usize::from(e.hdeg % 2 == 0 && 3 * e.hdeg == 2 * e.weight);
        ensure(e.dim == want, || format!("stable homDim({},{}) = {}, expected {want}", e.hdeg, e.weight, e.dim))?;
    }
    ensure(stable > 0, || "no entry is stable".into())
}

fn c8_poly3_n1() -> Check {
    let p = pres(Builtin::Poly3)?;
    let a = matrixify(&p, 1).map_err(|e| e.to_string())?;
    ensure((0..a.vars().len()).all(|i| a.d_var(i).is_zero()), || "differential nonzero at n=1".into())?;
    let t = run(&a, 3, 6)?;
    let shape: Vec<(u32, u32)> = p.gens.infos().iter().map(|g| (g.hdeg, g.weight)).collect();
    let want = free_gc_dims(&shape, 3, 6);
    for pp in 0..=3u32 {
        for w in 0..=6u32 {
            expect_dim(&t, pp, w, want[pp as usize][w as usize] as usize, "free graded-commutative")?;
        }
    }
    Ok(())
}

fn c9_shafarevich_koszul() -> Check {
    for b in [Builtin::CommutingPlane, Builtin::QPlane(Q::from_integer(2.into()))] {
        let data = b.ncci_data().map_err(|e| e.to_string())?.ok_or("no presentation data")?;
        let sh = shafarevich(&data).map_err(|e| e.to_string())?;
        for n in 1..=3 {
            let lhs = matrixify(&sh, n).map_err(|e| e.to_string())?;
            let kd = matrixified_koszul_data(&data, n).map_err(|e| e.to_string())?;
            let rhs = koszul(&kd).map_err(|e| e.to_string())?;
            ensure(structurally_equal(&lhs, &rhs), || format!("{b} n={n}: complexes differ"))?;
        }
    }
    Ok(())
}

fn c10_h0_agreement() -> Check {
    let q2 = Builtin::QPlane(Q::from_integer(2.into()));
    let cases = [
        (Builtin::CommutingPlane, 1),
        (Builtin::CommutingPlane, 2),
        (q2.clone(), 1),
        (q2, 2),
        (Builtin::Poly3, 1),
    ];
    for (b, n) in cases {
        let r = h0_oracle(&pres(b.clone())?, n, 4, CAP).map_err(|e| e.to_string())?;
        ensure(r.equal, || format!("{b} n={n}: oracle {:?} vs betti {:?}", r.oracle, r.betti))?;
    }
    Ok(())
}

fn c11_traces() -> Check {
    let a = alg(Builtin::CommutingPlane, 2)?;
    let tw = |w: &[&str]| trace_word(&a, &MatrixWord::new(w)).map_err(|e| e.to_string());
    let (tau, xi, eta) = (tw(&["t"])?, tw(&["x", "t"])?, tw(&["y", "t"])?);
    for e in [&tau, &xi, &eta] {
        ensure(is_gl_invariant(&a, e).map_err(|e| e.to_string())?, || "trace not GL-invariant".into())?;
    }
    let b2 = HomologyBlock::compute(&a, 1, 2, CAP).map_err(|e| e.to_string())?;
    let b3 = HomologyBlock::compute(&a, 1, 3, CAP).map_err(|e| e.to_string())?;
    ensure(b2.span_dim(std::slice::from_ref(&tau)).map_err(|e| e.to_string())? == 1, || "Tr(T) is zero".into())?;
    for e in [&xi, &eta] {
        ensure(b3.span_dim(std::slice::from_ref(e)).map_err(|e| e.to_string())? == 1, || "weight-3 trace is zero".into())?;
    }
    ensure(b3.span_dim(&[xi.clone(), eta.clone()]).map_err(|e| e.to_string())? == 2, || "Tr(XT), Tr(YT) dependent".into())?;

    let t = run(&a, 1, 5)?;
    for w in 0..=5u32 {
        let block = HomologyBlock::compute(&a, 1, w, CAP).map_err(|e| e.to_string())?;
        let mut elems: Vec<CommElement> = Vec::new();
        for (g, gw) in [(&tau, 2u32), (&xi, 3), (&eta, 3)] {
            if gw > w {
                continue;
            }
            for m in a.monomial_basis(0, w - gw, CAP).map_err(|e| e.to_string())? {
                elems.push(&CommElement::from_monomial(m, Q::from_integer(1.into())) * g);
            }
        }
        let span = block.span_dim(&elems).map_err(|e| e.to_string())?;
        ensure(span == t.dim(1, w), || format!("weight {w}: traces span {span} of {}", t.dim(1, w)))?;
    }
    for l in 0..=4usize {
        for m in 0..=4 - l {
            for d in [Differential::Dx, Differential::Dy] {
                let e = tr1_kxy(&a, l, m, d).map_err(|e| e.to_string())?;
                ensure(a.apply_d(&e).is_zero(), || format!("tr1({l},{m},{d:?}) is not a cycle"))?;
            }
        }
    }
    Ok(())
}

fn block_rows(a: &CommDgAlgebra, p: u32, w: u32) -> Result<Vec<SparseVec>, String> {
    let src = a.monomial_basis(p, w, CAP).map_err(|e| e.to_string())?;
    let tgt = a.monomial_basis(p - 1, w, CAP).map_err(|e| e.to_string())?;
    let index: BTreeMap<_, _> = tgt.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Ok(src
        .iter()
        .map(|m| {
            let mut v: SparseVec = a.d_monomial(m).terms().map(|(t, c)| (index[t], c.clone())).collect();
            v.sort_by_key(|e| e.0);
            v
        })
        .collect())
}

fn c12_properties() -> Check {
    let builtins = [
        Builtin::Free(2),
        Builtin::CommutingPlane,
        Builtin::QPlane(Q::from_integer(2.into())),
        Builtin::MultiQ(vec![Q::from_integer(2.into()), Q::from_integer(3.into())]),
        Builtin::Poly3,
        Builtin::Usl2,
        Builtin::DualNumbers(6),
    ];
    for b in &builtins {
        let p = pres(b.clone())?;
        ensure(p.validate().valid, || format!("{b} fails validation"))?;
        for n in 1..=2 {
            ensure(alg(b.clone(), n)?.check_d_squared(), || format!("{b} n={n}: d^2 != 0"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    for k in 0..100 {
        let p = common::random_presentation(&mut rng);
        let rep = p.validate();
        ensure(rep.valid, || format!("random #{k} invalid: {rep}"))?;
        for n in 1..=2 {
            let a = matrixify(&p, n).map_err(|e| e.to_string())?;
            ensure(a.check_d_squared(), || format!("random #{k} n={n}: d^2 != 0"))?;
        }
    }

    let lo = run(&alg(Builtin::DualNumbers(6), 1)?, 4, 6)?;
    let hi = run(&alg(Builtin::DualNumbers(8), 1)?, 4, 8)?;
    for e in &lo.entries {
        ensure(hi.dim(e.hdeg, e.weight) == e.dim, || format!("truncation differs at ({},{})", e.hdeg, e.weight))?;
    }

    let a = alg(Builtin::CommutingPlane, 2)?;
    let base = betti(&a, &BettiOptions::new(3, 5).threads(1)).map_err(|e| e.to_string())?;
    for th in [2, 4, 8] {
        let t = betti(&a, &BettiOptions::new(3, 5).threads(th)).map_err(|e| e.to_string())?;
        ensure(t == base, || format!("{th} threads changed the table"))?;
    }

    let runs = RUNS.with(|r| r.borrow().clone());
    let mut blocks = 0;
    for (a, t) in &runs {
        ensure(euler_check(t).map_err(|e| e.to_string())?, || format!("Euler identity fails for {}", a.name))?;
        for p in 1..=t.max_hdeg + 1 {
            for w in 0..=t.max_weight {
                let rows = block_rows(a, p, w)?;
                if rows.is_empty() || rows.len() > 400 {
                    continue;
                }
                blocks += 1;
                let exact = rank_exact(&rows);
                let modular = rank_modular(&rows, &PRIMES);
                ensure(modular == Some(exact), || {
                    format!("{} block ({p},{w}): modular {modular:?} vs exact {exact}", a.name)
                })?;
            }
        }
    }
    ensure(blocks > 0, || "no blocks compared".into())
}

fn c13_tangent() -> Check {
    let mut runs = Vec::new();
    let z = |v: i64| Q::from_integer(v.into());
    let diag = |a: i64, b: i64| vec![vec![z(a), z(0)], vec![z(0), z(b)]];
    let free2 = alg(Builtin::Free(2), 2)?;
    for pt in [
        RepPoint::zero(2, &["x", "y"]),
        RepPoint::new([("x".into(), diag(1, 2)), ("y".into(), vec![vec![z(0), z(1)], vec![z(3), z(0)]])].into())
            .map_err(|e| e.to_string())?,
    ] {
        let tc = tangent_complex(&free2, &pt).map_err(|e| e.to_string())?;
        let pi = tc.homology();
        ensure(pi[0] == 8 && pi[1..].iter().all(|&x| x == 0), || format!("free(2): π = {pi:?}"))?;
        runs.push(tc);
    }
    let cp = alg(Builtin::CommutingPlane, 2)?;
    let pt = RepPoint::new([("x".into(), diag(0, 1)), ("y".into(), diag(0, 0))].into()).map_err(|e| e.to_string())?;
    runs.push(tangent_complex(&cp, &pt).map_err(|e| e.to_string())?);
    let p3 = alg(Builtin::Poly3, 2)?;
    runs.push(tangent_complex(&p3, &RepPoint::zero(2, &["x", "y", "z"])).map_err(|e| e.to_string())?);
    let dn = alg(Builtin::DualNumbers(5), 1)?;
    runs.push(tangent_complex(&dn, &RepPoint::zero(1, &["x"])).map_err(|e| e.to_string())?);
    for tc in &runs {
        ensure(tc.euler_holds(), || format!("Euler identity fails: dims {:?}, π {:?}", tc.dims, tc.homology()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("k[x,y] n=1 Betti table", c1_commuting_plane_n1),
        ("k[x,y] n=2 vanishing above n", c2_commuting_plane_n2_vanishing),
        ("k[x,y] n=2 H1, H2 vs presentation oracle", c3_commuting_plane_n2_low),
        ("dual numbers n=1", c4_dual_numbers),
        ("smooth vanishing for free algebras", c5_smooth_vanishing),
        ("q-plane q=2: H0 and rigidity", c6_qplane),
        ("U(sl2) n=1 filtered", c7_usl2_filtered),
        ("k[x,y,z] n=1", c8_poly3_n1),
        ("Shafarevich vs Koszul structural equality", c9_shafarevich_koszul),
        ("H0 oracle agreement", c10_h0_agreement),
        ("trace suite", c11_traces),
        ("property suites", c12_properties),
        ("tangent suite", c13_tangent),
    ];
    let mut failed = 0;
    let total = Instant::now();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let dt: Duration = start.elapsed();
        match r {
            Ok(()) => println!("PASS  {:>2}  {name}  ({:.2?})", i + 1, dt),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}  ({:.2?}): {msg}", i + 1, dt);
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), total.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
