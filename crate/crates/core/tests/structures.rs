//! Structural statements checked on bounded windows: the splitting of the
//! trace part of `L_0`, and the module structure of dual-number homology.

use repho_core::builders::{builtin, l0_complement_koszul, Builtin};
use repho_core::commdga::{CommDgAlgebra, CommElement};
use repho_core::homology::{betti, class_of, BettiOptions, BettiTable, HomologyBlock};
use repho_core::matrixify::matrixify;
use repho_core::Q;

const CAP: usize = 200_000;

fn table(a: &CommDgAlgebra, p: u32, w: u32) -> BettiTable {
    betti(a, &BettiOptions::new(p, w).monomial_cap(CAP)).unwrap()
}

/// `H(K') ⊗ Λ(e_1, ..., e_k)` with each `e_i` odd of bidegree `(1, weights[i])`.
fn tensor_exterior(t: &BettiTable, weights: &[u32], p: u32, w: u32) -> usize {
    let mut total = 0;
    for mask in 0u32..(1 << weights.len()) {
        let dp = mask.count_ones();
        let dw: u32 = (0..weights.len()).filter(|i| mask >> i & 1 == 1).map(|i| weights[i]).sum();
        if dp <= p && dw <= w {
            total += t.dim(p - dp, w - dw);
        }
    }
    total
}

fn check_l0_factorization(b: Builtin, n: usize, pmax: u32, wmax: u32, expect_split: &[u32]) {
    let pres = builtin(&b).unwrap();
    let data = b.ncci_data().unwrap().unwrap();
    let (k_prime, split) = l0_complement_koszul(&data, n).unwrap();
    assert_eq!(split, expect_split, "{b} n={n}");
    let full = table(&matrixify(&pres, n).unwrap(), pmax, wmax);
    let reduced = table(&k_prime, pmax, wmax);
    for p in 0..=pmax {
        for w in 0..=wmax {
            assert_eq!(full.dim(p, w), tensor_exterior(&reduced, &split, p, w), "{b} n={n} at ({p},{w})");
        }
    }
}

#[test]
fn commuting_plane_splits_off_the_trace_of_t() {
    // Tr(xy - yx) vanishes, so L_0 is spanned by t
    check_l0_factorization(Builtin::CommutingPlane, 1, 2, 6, &[2]);
    check_l0_factorization(Builtin::CommutingPlane, 2, 3, 5, &[2]);
}

#[test]
fn qplane_has_trivial_l0() {
    check_l0_factorization(Builtin::QPlane(Q::from_integer(2.into())), 2, 3, 4, &[]);
}

#[test]
fn multi_q_factorization() {
    let qs = vec![Q::from_integer(2.into()), Q::from_integer(3.into())];
    check_l0_factorization(Builtin::MultiQ(qs), 1, 2, 4, &[]);
}

fn dual(weight_cap: u32) -> CommDgAlgebra {
    matrixify(&builtin(&Builtin::DualNumbers(weight_cap)).unwrap(), 1).unwrap()
}

fn elem(a: &CommDgAlgebra, s: &str) -> CommElement {
    a.parse(s).unwrap()
}

fn assert_boundary(a: &CommDgAlgebra, s: &str) {
    let e = elem(a, s);
    let c = class_of(a, &e, CAP).unwrap();
    let witness = c.boundary_witness.as_ref().unwrap_or_else(|| panic!("{s} is not a boundary"));
    assert_eq!(a.apply_d(witness), e, "witness for {s}");
}

fn assert_nonzero_class(a: &CommDgAlgebra, s: &str, bidegree: (u32, u32)) {
    let c = class_of(a, &elem(a, s), CAP).unwrap();
    assert_eq!((c.hdeg, c.weight), bidegree);
    assert!(!c.is_zero(), "{s} should be a nonzero class");
}

#[test]
fn dual_numbers_generators_are_killed_by_x() {
    let a = dual(8);
    assert_nonzero_class(&a, "t2[1][1]", (2, 3));
    assert_boundary(&a, "x[1][1]*t2[1][1]");

    assert_nonzero_class(&a, "x[1][1]*t3[1][1] - 2*t1[1][1]*t2[1][1]", (3, 5));
    assert_boundary(&a, "x[1][1]*x[1][1]*t3[1][1] - 2*x[1][1]*t1[1][1]*t2[1][1]");

    assert_nonzero_class(&a, "t2[1][1]*t2[1][1]", (4, 6));
    assert_nonzero_class(&a, "x[1][1]*t4[1][1]", (4, 6));
    assert_boundary(&a, "t2[1][1]*t2[1][1] + 2*x[1][1]*t4[1][1]");
    assert_nonzero_class(&a, "t4[1][1]", (4, 5));
}

#[test]
fn dual_numbers_classes_span_each_block() {
    let a = dual(8);
    let cases: [(u32, u32, &[&str]); 4] = [
        (2, 3, &["t2[1][1]"]),
        (3, 5, &["x[1][1]*t3[1][1] - 2*t1[1][1]*t2[1][1]"]),
        (4, 5, &["t4[1][1]"]),
        (4, 6, &["t2[1][1]*t2[1][1]", "x[1][1]*t4[1][1]"]),
    ];
    for (p, w, gens) in cases {
        let block = HomologyBlock::compute(&a, p, w, CAP).unwrap();
        let elems: Vec<CommElement> = gens.iter().map(|s| elem(&a, s)).collect();
        assert_eq!(block.dim(), 1, "({p},{w})");
        assert_eq!(block.span_dim(&elems).unwrap(), 1, "({p},{w})");
    }
}

#[test]
fn dual_numbers_truncation_is_stable_below_the_cap() {
    let lo = table(&dual(6), 4, 6);
    let hi = table(&dual(8), 4, 8);
    for e in &lo.entries {
        assert_eq!(hi.dim(e.hdeg, e.weight), e.dim, "({},{})", e.hdeg, e.weight);
    }
}
